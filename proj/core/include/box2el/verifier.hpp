#pragma once

#include <map>
#include <string>
#include <vector>

#include "box2el/embedding.hpp"
#include "box2el/loss.hpp"
#include "box2el/normal_form.hpp"

namespace box2el {

struct AxiomVerdict {
  NormalizedAxiom axiom;
  bool satisfied = false;
  // Largest per-coordinate violation of the axiom's geometric condition;
  // <= 0 means slack, +inf means structurally impossible.
  double violation = 0.0;
};

struct VerificationReport {
  std::vector<AxiomVerdict> verdicts;
  std::map<NfTag, std::pair<int, int>> counts;  // tag -> (satisfied, violated)
  bool is_model = false;
  double epsilon = 0.0;
};

// Check one axiom's geometric condition with eps slack per coordinate:
//   NF1: Box(C) in Box(D)
//   NF2: Box(C) ^ Box(D) in Box(E)
//   NF3: Box(C)+Bump(D) in Head(r) and Box(D)+Bump(C) in Tail(r)
//   NF4: Head(r)-Bump(C) in Box(D)
//   NF5: Box(C) and Box(D) share no dimension overlap beyond eps
//   RI1: Head(r) in Head(s) and Tail(r) in Tail(s)
//   RI2: Head(r1) in Head(s) and Tail(r2) in Tail(s)
// Translation-mode stores use the corresponding translational conditions.
AxiomVerdict satisfies(const EmbeddingStore& store, const NormalizedAxiom& axiom, double eps,
                       const LossConfig& cfg);

VerificationReport is_model(const EmbeddingStore& store, const TaggedAxioms& axioms, double eps,
                            const LossConfig& cfg);

std::string report_tsv(const VerificationReport& report);

struct FiniteDiffResult {
  double max_rel_err = 0.0;
  int checked = 0;
  int skipped = 0;  // coordinates within h of a hinge/abs kink
};

// Central-difference check of the analytic gradient at step h. Coordinates
// whose branch trace differs between theta-h and theta+h are skipped.
FiniteDiffResult finite_difference_check(const EmbeddingStore& store,
                                         const std::vector<BatchItem>& batch,
                                         const LossConfig& cfg, double h, double tolerance);

}  // namespace box2el
