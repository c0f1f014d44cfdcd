#pragma once

#include <cstdint>
#include <string>

#include "box2el/normal_form.hpp"

namespace box2el {

struct SplitRatios {
  double train = 1.0, valid = 0.0, test = 0.0;
};

// Per-tag train/valid/test axiom lists. Role inclusions always go entirely
// to train; NF1-NF5 are shuffled per tag and cut by the ratios.
struct DatasetSplit {
  TaggedAxioms train, valid, test;
  SplitRatios ratios;
  std::uint64_t seed = 0;
};

DatasetSplit make_splits(const NormalizedOntology& ontology, const SplitRatios& ratios,
                         std::uint64_t seed);

void save_axioms_tsv(const std::string& path, const TaggedAxioms& axioms);
TaggedAxioms load_axioms_tsv(const std::string& path);

}  // namespace box2el
