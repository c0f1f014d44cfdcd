#include "box2el/verifier.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "box2el/box.hpp"
#include "box2el/errors.hpp"

namespace box2el {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec bump_or_zero(const EmbeddingStore& store, const Atom& a) {
  if (a.is_sentinel()) return Vec(store.dim(), 0.0);
  return store.bump_of(a);
}

Vec negate(Vec v) {
  for (double& x : v) x = -x;
  return v;
}

Vec vsum(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// Smallest per-dimension overlap of two regular boxes; disjointness needs
// some dimension with overlap <= 0.
double min_overlap(const Box& a, const Box& b) {
  double best = kInf;
  for (size_t i = 0; i < a.lower().size(); ++i) {
    double o = std::min(a.upper()[i], b.upper()[i]) - std::max(a.lower()[i], b.lower()[i]);
    best = std::min(best, o);
  }
  return best;
}

double max_norm_diff(const Vec& a, const Vec& b) {
  double worst = 0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double check_nf3(const EmbeddingStore& store, const NormalizedAxiom& ax, const LossConfig& cfg) {
  if (cfg.role_mode == RoleMode::Translations) {
    Box c = store.concept_box(ax.c);
    if (!c.is_regular()) return c.is_empty() ? -kInf : kInf;
    Box shifted = translate(c, store.role_vector(ax.r1));
    return containment_violation(shifted, store.concept_box(ax.d));
  }
  Box c = store.concept_box(ax.c);
  if (c.is_universal()) return kInf;
  if (c.is_empty()) return -kInf;  // Bottom on the left holds trivially
  if (ax.d.is_bottom()) {
    // exists r.Bottom is empty, so Box(C) itself must be empty; realized
    // boxes never are.
    return kInf;
  }
  Box head_cond = translate(c, bump_or_zero(store, ax.d));
  double v = containment_violation(head_cond, store.role_head(ax.r1));
  if (ax.d.is_top()) {
    // No finite tail condition; membership reduces to the head inclusion.
    return v;
  }
  Box d = store.concept_box(ax.d);
  Box tail_cond = translate(d, bump_or_zero(store, ax.c));
  return std::max(v, containment_violation(tail_cond, store.role_tail(ax.r1)));
}

double check_violation(const EmbeddingStore& store, const NormalizedAxiom& ax,
                       const LossConfig& cfg) {
  switch (ax.tag) {
    case NfTag::NF1:
      return containment_violation(store.concept_box(ax.c), store.concept_box(ax.d));
    case NfTag::NF2:
      return containment_violation(
          intersect(store.concept_box(ax.c), store.concept_box(ax.d)), store.concept_box(ax.e));
    case NfTag::NF3:
      return check_nf3(store, ax, cfg);
    case NfTag::NF4: {
      if (cfg.role_mode == RoleMode::Translations) {
        Box c = store.concept_box(ax.c);
        if (!c.is_regular()) return c.is_empty() ? -kInf : kInf;
        Box shifted = translate(c, negate(store.role_vector(ax.r1)));
        return containment_violation(shifted, store.concept_box(ax.d));
      }
      Box shifted = translate(store.role_head(ax.r1), negate(bump_or_zero(store, ax.c)));
      return containment_violation(shifted, store.concept_box(ax.d));
    }
    case NfTag::NF5: {
      Box a = store.concept_box(ax.c);
      Box b = store.concept_box(ax.d);
      if (a.is_empty() || b.is_empty()) return -kInf;
      if (a.is_universal() || b.is_universal()) return kInf;
      return min_overlap(a, b);
    }
    case NfTag::RI1: {
      if (cfg.role_mode == RoleMode::Translations) {
        return max_norm_diff(store.role_vector(ax.r1), store.role_vector(ax.rsup));
      }
      double v = containment_violation(store.role_head(ax.r1), store.role_head(ax.rsup));
      return std::max(v, containment_violation(store.role_tail(ax.r1), store.role_tail(ax.rsup)));
    }
    case NfTag::RI2: {
      if (cfg.role_mode == RoleMode::Translations) {
        return max_norm_diff(vsum(store.role_vector(ax.r1), store.role_vector(ax.r2)),
                             store.role_vector(ax.rsup));
      }
      double v = containment_violation(store.role_head(ax.r1), store.role_head(ax.rsup));
      return std::max(v, containment_violation(store.role_tail(ax.r2), store.role_tail(ax.rsup)));
    }
  }
  throw DataError("bad tag");
}

}  // namespace

AxiomVerdict satisfies(const EmbeddingStore& store, const NormalizedAxiom& axiom, double eps,
                       const LossConfig& cfg) {
  if (eps < 0) throw DataError("epsilon must be >= 0");
  AxiomVerdict verdict;
  verdict.axiom = axiom;
  verdict.violation = check_violation(store, axiom, cfg);
  verdict.satisfied = verdict.violation <= eps;
  return verdict;
}

VerificationReport is_model(const EmbeddingStore& store, const TaggedAxioms& axioms, double eps,
                            const LossConfig& cfg) {
  VerificationReport report;
  report.epsilon = eps;
  report.is_model = true;
  for (NfTag tag : kAllTags) {
    auto it = axioms.find(tag);
    if (it == axioms.end()) continue;
    for (const auto& ax : it->second) {
      AxiomVerdict v = satisfies(store, ax, eps, cfg);
      auto& [ok, bad] = report.counts[tag];
      (v.satisfied ? ok : bad) += 1;
      if (!v.satisfied) report.is_model = false;
      report.verdicts.push_back(std::move(v));
    }
  }
  return report;
}

std::string report_tsv(const VerificationReport& report) {
  std::ostringstream os;
  os << "axiom\ttag\tverdict\tmargin\n";
  char buf[64];
  for (const auto& v : report.verdicts) {
    if (std::isinf(v.violation)) {
      std::snprintf(buf, sizeof buf, "%s", v.violation > 0 ? "inf" : "-inf");
    } else {
      std::snprintf(buf, sizeof buf, "%.6g", v.violation);
    }
    os << v.axiom.render() << '\t' << tag_name(v.axiom.tag) << '\t'
       << (v.satisfied ? "satisfied" : "violated") << '\t' << buf << '\n';
  }
  return os.str();
}

FiniteDiffResult finite_difference_check(const EmbeddingStore& store,
                                         const std::vector<BatchItem>& batch,
                                         const LossConfig& cfg, double h, double tolerance) {
  (void)tolerance;
  std::vector<double> grad;
  total_loss_grad(store, batch, cfg, grad);

  EmbeddingStore probe = store;
  std::vector<double>& p = probe.params();

  FiniteDiffResult result;
  for (size_t k = 0; k < p.size(); ++k) {
    const double saved = p[k];
    BranchTrace plus_trace, minus_trace;
    p[k] = saved + h;
    double f_plus = total_loss(probe, batch, cfg, &plus_trace).total();
    p[k] = saved - h;
    double f_minus = total_loss(probe, batch, cfg, &minus_trace).total();
    p[k] = saved;
    if (plus_trace != minus_trace) {
      ++result.skipped;
      continue;
    }
    double fd = (f_plus - f_minus) / (2.0 * h);
    double rel = std::abs(grad[k] - fd) / std::max({1.0, std::abs(grad[k]), std::abs(fd)});
    result.max_rel_err = std::max(result.max_rel_err, rel);
    ++result.checked;
  }
  return result;
}

}  // namespace box2el
