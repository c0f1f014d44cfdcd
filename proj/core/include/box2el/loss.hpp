#pragma once

#include <string>
#include <vector>

#include "box2el/embedding.hpp"
#include "box2el/normal_form.hpp"

namespace box2el {

struct LossConfig {
  double margin = 0.0;        // gamma
  double neg_distance = 2.0;  // delta, target distance for negatives
  double reg_lambda = 0.0;    // bump regularization strength
  bool viz_loss = false;
  double viz_min_offset = 0.2;
  RoleMode role_mode = RoleMode::Boxes;
};

struct LossReport {
  double nf1 = 0, nf2 = 0, nf3 = 0, nf4 = 0, nf5 = 0, ri1 = 0, ri2 = 0;
  double negative = 0, regularization = 0, viz = 0;

  double total() const {
    return nf1 + nf2 + nf3 + nf4 + nf5 + ri1 + ri2 + negative + regularization + viz;
  }
  LossReport& operator+=(const LossReport& o);
};

enum class LossTag { NF1, NF2, NF3, NF4, NF5, RI1, RI2, Negative };

LossTag loss_tag_for(NfTag tag);
const char* loss_tag_name(LossTag tag);

struct BatchItem {
  LossTag tag = LossTag::NF1;
  NormalizedAxiom axiom;

  static BatchItem positive(NormalizedAxiom ax) {
    return {loss_tag_for(ax.tag), std::move(ax)};
  }
  // A corrupted NF3 triple C <= exists r.D.
  static BatchItem negative_sample(NormalizedAxiom nf3_shaped) {
    return {LossTag::Negative, std::move(nf3_shaped)};
  }
};

// Branch decisions (hinge activity, abs/max tie sides) recorded during one
// evaluation; two evaluations with equal traces lie on the same smooth
// piece of the loss.
using BranchTrace = std::vector<signed char>;

// Sum of the per-axiom losses plus bump regularization (always) and the
// minimum-offset term (when enabled).
LossReport total_loss(const EmbeddingStore& store, const std::vector<BatchItem>& batch,
                      const LossConfig& cfg, BranchTrace* trace = nullptr);

// Same value, and the exact (sub)gradient of total() in `grad` (resized and
// zeroed). Conventions: d|x|/dx = sign(x) with 0 at x = 0; hinges are
// one-sided; max/min ties route to the first operand.
LossReport total_loss_grad(const EmbeddingStore& store, const std::vector<BatchItem>& batch,
                           const LossConfig& cfg, std::vector<double>& grad);

// Single-axiom values.
double loss_nf1(const EmbeddingStore&, const Atom& c, const Atom& d, const LossConfig&);
double loss_nf2(const EmbeddingStore&, const Atom& c, const Atom& d, const Atom& e, const LossConfig&);
double loss_nf3(const EmbeddingStore&, const Atom& c, const std::string& r, const Atom& d, const LossConfig&);
double loss_nf4(const EmbeddingStore&, const std::string& r, const Atom& c, const Atom& d, const LossConfig&);
double loss_nf5(const EmbeddingStore&, const Atom& c, const Atom& d, const LossConfig&);
double loss_ri1(const EmbeddingStore&, const std::string& r, const std::string& s, const LossConfig&);
double loss_ri2(const EmbeddingStore&, const std::string& r1, const std::string& r2,
                const std::string& s, const LossConfig&);
double loss_negative(const EmbeddingStore&, const Atom& c, const std::string& r, const Atom& d,
                     const LossConfig&);
double regularization(const EmbeddingStore&, double lambda);
double viz_loss(const EmbeddingStore&, double min_offset = 0.2);

// True when the loss of this axiom is defined under the given role mode
// (e.g. Top on the left of NF1/NF3 has no finite box).
bool loss_defined(const NormalizedAxiom& axiom, RoleMode mode);

}  // namespace box2el
