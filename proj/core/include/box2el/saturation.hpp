#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "box2el/normal_form.hpp"

namespace box2el {

struct SaturationLimits {
  // Total number of derivation steps before giving up. The default is
  // generous for desk-scale inputs.
  std::uint64_t max_derivations = 5'000'000;
};

// All atomic subsumptions A <= B entailed by the normalized ontology,
// computed by fixpoint application of the standard completion rules over
// NF1-NF5 and RI1/RI2 (nominals are treated as plain atoms). The result
// includes the reflexive pairs (A, A) and (A, Top) for every non-sentinel
// atom A; when A is unsatisfiable it is paired with every atom.
// Throws ResourceLimitError when the derivation cap is exceeded.
std::vector<std::pair<Atom, Atom>> saturate_nf1(const NormalizedOntology& ontology,
                                                const SaturationLimits& limits = {});

}  // namespace box2el
