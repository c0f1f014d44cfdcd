#include "box2el/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "box2el/box.hpp"
#include "box2el/errors.hpp"

namespace box2el {

RankingMetrics compute_metrics(const std::vector<int>& ranks, int n_candidates) {
  if (ranks.empty()) throw DataError("compute_metrics: no ranks");
  if (n_candidates < 2) throw DataError("compute_metrics: need at least 2 candidates");
  // Reductions run over sorted ranks so the result is independent of the
  // query order.
  std::vector<int> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  RankingMetrics m;
  m.n_queries = static_cast<int>(sorted.size());
  const double n = static_cast<double>(sorted.size());
  for (int k : {1, 10, 100}) {
    int c = 0;
    for (int r : sorted) c += (r <= k) ? 1 : 0;
    m.hits[k] = c / n;
  }
  double mrr = 0, mr = 0, auc = 0;
  for (int r : sorted) {
    mrr += 1.0 / r;
    mr += r;
    auc += static_cast<double>(n_candidates - r) / (n_candidates - 1);
  }
  m.mrr = mrr / n;
  m.mean_rank = mr / n;
  m.auc = auc / n;
  m.median_rank = sorted[(sorted.size() - 1) / 2];
  return m;
}

namespace {

double norm2(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Vec sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec add(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec center_of(const EmbeddingStore& store, const Atom& a) {
  Box b = store.concept_box(a);
  if (!b.is_regular()) {
    throw DataError("cannot score an axiom mentioning " + a.to_string());
  }
  return b.center();
}

Vec raw_intersection_center(const EmbeddingStore& store, const Atom& c, const Atom& d) {
  Box bc = store.concept_box(c);
  Box bd = store.concept_box(d);
  if (bc.is_universal()) return center_of(store, d);
  if (bd.is_universal()) return center_of(store, c);
  if (!bc.is_regular() || !bd.is_regular()) {
    throw DataError("cannot score an NF2 axiom with an empty conjunct");
  }
  Vec center(bc.lower().size());
  for (size_t i = 0; i < center.size(); ++i) {
    // Corner box of the intersection; may be inverted, the midpoint is
    // still the natural score location.
    center[i] = 0.5 * (std::max(bc.lower()[i], bd.lower()[i]) +
                       std::min(bc.upper()[i], bd.upper()[i]));
  }
  return center;
}

Vec bump_or_zero(const EmbeddingStore& store, const Atom& a) {
  if (a.is_sentinel()) return Vec(store.dim(), 0.0);
  return store.bump_of(a);
}

}  // namespace

double score_axiom(const EmbeddingStore& store, const NormalizedAxiom& axiom,
                   const LossConfig& cfg) {
  switch (axiom.tag) {
    case NfTag::NF1:
      return -norm2(sub(center_of(store, axiom.c), center_of(store, axiom.d)));
    case NfTag::NF2:
      return -norm2(sub(raw_intersection_center(store, axiom.c, axiom.d),
                        center_of(store, axiom.e)));
    case NfTag::NF3: {
      if (cfg.role_mode == RoleMode::Translations) {
        Vec lhs = add(center_of(store, axiom.c), store.role_vector(axiom.r1));
        return -norm2(sub(lhs, center_of(store, axiom.d)));
      }
      Vec head = add(center_of(store, axiom.c), bump_or_zero(store, axiom.d));
      Vec tail = add(center_of(store, axiom.d), bump_or_zero(store, axiom.c));
      return -norm2(sub(head, store.role_head(axiom.r1).center())) -
             norm2(sub(tail, store.role_tail(axiom.r1).center()));
    }
    case NfTag::NF4: {
      if (cfg.role_mode == RoleMode::Translations) {
        Vec lhs = sub(center_of(store, axiom.c), store.role_vector(axiom.r1));
        return -norm2(sub(lhs, center_of(store, axiom.d)));
      }
      Vec lhs = sub(store.role_head(axiom.r1).center(), bump_or_zero(store, axiom.c));
      return -norm2(sub(lhs, center_of(store, axiom.d)));
    }
    default:
      throw DataError(std::string("axioms tagged ") + tag_name(axiom.tag) +
                      " have no scoring function");
  }
}

NormalizedAxiom substitute(const NormalizedAxiom& axiom, AxiomSlot slot, const Atom& atom) {
  NormalizedAxiom out = axiom;
  switch (slot) {
    case AxiomSlot::C: out.c = atom; break;
    case AxiomSlot::D: out.d = atom; break;
    case AxiomSlot::E: out.e = atom; break;
  }
  return out;
}

const Atom& slot_atom(const NormalizedAxiom& axiom, AxiomSlot slot) {
  switch (slot) {
    case AxiomSlot::C: return axiom.c;
    case AxiomSlot::D: return axiom.d;
    case AxiomSlot::E: return axiom.e;
  }
  throw DataError("bad slot");
}

int rank_candidates(const EmbeddingStore& store, const NormalizedAxiom& axiom, AxiomSlot slot,
                    const std::vector<std::string>& candidates,
                    const std::set<std::string>* filter, const LossConfig& cfg) {
  const Atom& truth = slot_atom(axiom, slot);
  if (std::find(candidates.begin(), candidates.end(), truth.name) == candidates.end()) {
    throw DataError("true atom '" + truth.name + "' is not in the candidate set");
  }
  const double true_score = score_axiom(store, axiom, cfg);
  int better = 0;
  for (const std::string& name : candidates) {
    if (name == truth.name) continue;
    if (filter && filter->count(name)) continue;
    double s = score_axiom(store, substitute(axiom, slot, Atom::named(name)), cfg);
    if (s > true_score) ++better;
  }
  return better + 1;
}

std::string FilterIndex::key(const NormalizedAxiom& axiom, AxiomSlot slot) {
  NormalizedAxiom masked = substitute(axiom, slot, Atom::named("\x01"));
  const char* slot_name = slot == AxiomSlot::C ? "C" : (slot == AxiomSlot::D ? "D" : "E");
  return std::string(tag_name(axiom.tag)) + "|" + slot_name + "|" + masked.to_tsv();
}

void FilterIndex::add(const TaggedAxioms& axioms) {
  for (const auto& [tag, list] : axioms) {
    for (const auto& ax : list) {
      for (AxiomSlot slot : eval_slots(tag)) {
        const Atom& a = slot_atom(ax, slot);
        if (a.kind == Atom::Kind::Concept) sets_[key(ax, slot)].insert(a.name);
      }
    }
  }
}

const std::set<std::string>* FilterIndex::lookup(const NormalizedAxiom& axiom,
                                                 AxiomSlot slot) const {
  auto it = sets_.find(key(axiom, slot));
  return it == sets_.end() ? nullptr : &it->second;
}

std::vector<AxiomSlot> eval_slots(NfTag tag) {
  switch (tag) {
    case NfTag::NF1: return {AxiomSlot::C, AxiomSlot::D};
    case NfTag::NF2: return {AxiomSlot::E};
    case NfTag::NF3: return {AxiomSlot::C};
    case NfTag::NF4: return {AxiomSlot::D};
    default: return {};
  }
}

EvalResult evaluate_split(const EmbeddingStore& store, const TaggedAxioms& test_axioms,
                          const FilterIndex& filters, const LossConfig& cfg, EvalMode mode) {
  EvalResult result;
  const std::vector<std::string>& candidates = store.embedded_concepts();
  result.n_candidates = static_cast<int>(candidates.size());
  const bool want_raw = mode != EvalMode::Filtered;
  const bool want_filtered = mode != EvalMode::Raw;

  std::map<NfTag, std::vector<int>> raw_ranks, filtered_ranks;
  for (NfTag tag : {NfTag::NF1, NfTag::NF2, NfTag::NF3, NfTag::NF4}) {
    auto it = test_axioms.find(tag);
    if (it == test_axioms.end()) continue;
    for (const auto& ax : it->second) {
      for (AxiomSlot slot : eval_slots(tag)) {
        if (slot_atom(ax, slot).kind != Atom::Kind::Concept) {
          ++result.skipped_queries;
          continue;
        }
        QueryRecord q;
        q.tag = tag;
        q.slot = slot;
        q.raw_rank = rank_candidates(store, ax, slot, candidates, nullptr, cfg);
        if (want_filtered) {
          q.filtered_rank =
              rank_candidates(store, ax, slot, candidates, filters.lookup(ax, slot), cfg);
        } else {
          q.filtered_rank = q.raw_rank;
        }
        raw_ranks[tag].push_back(q.raw_rank);
        filtered_ranks[tag].push_back(q.filtered_rank);
        result.queries.push_back(q);
      }
    }
  }

  auto emit = [&](const std::map<NfTag, std::vector<int>>& per_tag, const char* mode_name) {
    std::vector<int> combined;
    for (NfTag tag : {NfTag::NF1, NfTag::NF2, NfTag::NF3, NfTag::NF4}) {
      auto it = per_tag.find(tag);
      if (it == per_tag.end() || it->second.empty()) continue;
      result.rows.push_back(
          {tag_name(tag), mode_name, compute_metrics(it->second, result.n_candidates)});
      combined.insert(combined.end(), it->second.begin(), it->second.end());
    }
    if (!combined.empty()) {
      result.rows.push_back(
          {"combined", mode_name, compute_metrics(combined, result.n_candidates)});
    }
  };
  if (want_raw) emit(raw_ranks, "raw");
  if (want_filtered) emit(filtered_ranks, "filtered");
  return result;
}

std::string metrics_tsv(const EvalResult& result) {
  std::ostringstream os;
  os << "tag\tmode\tH@1\tH@10\tH@100\tMed\tMRR\tMR\tAUC\tn_queries\n";
  char buf[256];
  for (const auto& row : result.rows) {
    const RankingMetrics& m = row.metrics;
    std::snprintf(buf, sizeof buf, "%s\t%s\t%.4f\t%.4f\t%.4f\t%.1f\t%.4f\t%.2f\t%.6f\t%d\n",
                  row.tag.c_str(), row.mode.c_str(), m.hits.at(1), m.hits.at(10), m.hits.at(100),
                  m.median_rank, m.mrr, m.mean_rank, m.auc, m.n_queries);
    os << buf;
  }
  return os.str();
}

double validation_mrr(const EmbeddingStore& store, const TaggedAxioms& axioms,
                      const LossConfig& cfg) {
  const std::vector<std::string>& candidates = store.embedded_concepts();
  double sum = 0;
  int n = 0;
  for (const auto& [tag, list] : axioms) {
    for (const auto& ax : list) {
      for (AxiomSlot slot : eval_slots(tag)) {
        if (slot_atom(ax, slot).kind != Atom::Kind::Concept) continue;
        sum += 1.0 / rank_candidates(store, ax, slot, candidates, nullptr, cfg);
        ++n;
      }
    }
  }
  return n == 0 ? 0.0 : sum / n;
}

}  // namespace box2el
