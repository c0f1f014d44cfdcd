#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "box2el/embedding.hpp"
#include "box2el/loss.hpp"
#include "box2el/normal_form.hpp"

namespace box2el {

struct RankingMetrics {
  std::map<int, double> hits;  // k in {1, 10, 100} -> fraction
  double mrr = 0;
  double mean_rank = 0;
  double median_rank = 0;  // lower median for even counts
  double auc = 0;          // rank-normalized: mean (n - rank) / (n - 1)
  int n_queries = 0;
};

// Metrics over a list of 1-based ranks against n_candidates alternatives.
// Throws on empty ranks or n_candidates < 2.
RankingMetrics compute_metrics(const std::vector<int>& ranks, int n_candidates);

// Center-distance likelihood score; higher is more likely. Defined for
// NF1-NF4 only.
double score_axiom(const EmbeddingStore& store, const NormalizedAxiom& axiom,
                   const LossConfig& cfg);

// Which atom of the axiom is replaced when ranking candidates.
enum class AxiomSlot { C, D, E };

NormalizedAxiom substitute(const NormalizedAxiom& axiom, AxiomSlot slot, const Atom& atom);
const Atom& slot_atom(const NormalizedAxiom& axiom, AxiomSlot slot);

// Rank of the true axiom among all candidate substitutions, counting
// strictly better scores only (ties resolve optimistically to rank 1 side).
// `filter` removes known-true candidates other than the true one before
// ranking. The true atom's name must be a member of `candidates`.
int rank_candidates(const EmbeddingStore& store, const NormalizedAxiom& axiom, AxiomSlot slot,
                    const std::vector<std::string>& candidates,
                    const std::set<std::string>* filter, const LossConfig& cfg);

// Index of known-true substitutions, for filtered metrics: for every axiom
// and every evaluated slot, records the names seen in that slot with the
// rest of the axiom fixed.
class FilterIndex {
 public:
  void add(const TaggedAxioms& axioms);
  const std::set<std::string>* lookup(const NormalizedAxiom& axiom, AxiomSlot slot) const;
  static std::string key(const NormalizedAxiom& axiom, AxiomSlot slot);

 private:
  std::map<std::string, std::set<std::string>> sets_;
};

// The slots evaluated for a tag: NF1 is queried from both sides, NF2 on the
// right-hand atom, NF3 on the subsumed atom, NF4 on the subsuming atom.
std::vector<AxiomSlot> eval_slots(NfTag tag);

enum class EvalMode { Raw, Filtered, Both };

struct QueryRecord {
  NfTag tag = NfTag::NF1;
  AxiomSlot slot = AxiomSlot::C;
  int raw_rank = 0;
  int filtered_rank = 0;  // == raw_rank when filtering is off
};

struct MetricsRow {
  std::string tag;  // "NF1".."NF4" or "combined"
  std::string mode; // "raw" or "filtered"
  RankingMetrics metrics;
};

struct EvalResult {
  std::vector<MetricsRow> rows;
  std::vector<QueryRecord> queries;
  int n_candidates = 0;
  int skipped_queries = 0;  // corrupt position was not a plain concept
};

EvalResult evaluate_split(const EmbeddingStore& store, const TaggedAxioms& test_axioms,
                          const FilterIndex& filters, const LossConfig& cfg, EvalMode mode);

std::string metrics_tsv(const EvalResult& result);

// Raw MRR over all queries of the given axioms; used for checkpoint
// selection during training.
double validation_mrr(const EmbeddingStore& store, const TaggedAxioms& axioms,
                      const LossConfig& cfg);

}  // namespace box2el
