#include "box2el/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "box2el/errors.hpp"

namespace box2el {

LossReport& LossReport::operator+=(const LossReport& o) {
  nf1 += o.nf1;
  nf2 += o.nf2;
  nf3 += o.nf3;
  nf4 += o.nf4;
  nf5 += o.nf5;
  ri1 += o.ri1;
  ri2 += o.ri2;
  negative += o.negative;
  regularization += o.regularization;
  viz += o.viz;
  return *this;
}

LossTag loss_tag_for(NfTag tag) {
  switch (tag) {
    case NfTag::NF1: return LossTag::NF1;
    case NfTag::NF2: return LossTag::NF2;
    case NfTag::NF3: return LossTag::NF3;
    case NfTag::NF4: return LossTag::NF4;
    case NfTag::NF5: return LossTag::NF5;
    case NfTag::RI1: return LossTag::RI1;
    case NfTag::RI2: return LossTag::RI2;
  }
  throw DataError("bad tag");
}

const char* loss_tag_name(LossTag tag) {
  switch (tag) {
    case LossTag::NF1: return "NF1";
    case LossTag::NF2: return "NF2";
    case LossTag::NF3: return "NF3";
    case LossTag::NF4: return "NF4";
    case LossTag::NF5: return "NF5";
    case LossTag::RI1: return "RI1";
    case LossTag::RI2: return "RI2";
    case LossTag::Negative: return "negative";
  }
  return "?";
}

namespace {

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

struct Ctx {
  const EmbeddingStore& store;
  const LossConfig& cfg;
  double* grad = nullptr;  // flat gradient, or null
  BranchTrace* trace = nullptr;

  void push(signed char b) {
    if (trace) trace->push_back(b);
  }
};

// A realized box operand: corner coordinates plus where its parameters
// live, so corner gradients can be scattered back.
struct Operand {
  Box::Kind kind = Box::Kind::Regular;
  Vec lo, up;

  enum class Base { None, Concept, Individual, RoleHead, RoleTail };
  Base base = Base::None;
  int idx = -1;
  enum class Shift { None, Bump, RoleVec };
  Shift shift = Shift::None;
  int sidx = -1;
  double ssign = 1.0;
  Vec dsign;  // sign of each delta parameter, for boxes realized as lower + |delta|

  bool regular() const { return kind == Box::Kind::Regular; }
  bool empty() const { return kind == Box::Kind::Empty; }
  bool universal() const { return kind == Box::Kind::Universal; }
};

Operand realize_box(Ctx& ctx, Operand::Base base, int idx, size_t lower_off, size_t delta_off) {
  const int n = ctx.store.dim();
  const auto& p = ctx.store.params();
  Operand op;
  op.base = base;
  op.idx = idx;
  op.lo.resize(n);
  op.up.resize(n);
  op.dsign.resize(n);
  for (int i = 0; i < n; ++i) {
    double d = p[delta_off + i];
    op.lo[i] = p[lower_off + i];
    op.up[i] = op.lo[i] + std::abs(d);
    op.dsign[i] = sgn(d);
    ctx.push(static_cast<signed char>(op.dsign[i]));
  }
  return op;
}

Operand atom_operand(Ctx& ctx, const Atom& a) {
  const StoreLayout& L = ctx.store.layout();
  switch (a.kind) {
    case Atom::Kind::Top: {
      Operand op;
      op.kind = Box::Kind::Universal;
      return op;
    }
    case Atom::Kind::Bottom: {
      Operand op;
      op.kind = Box::Kind::Empty;
      return op;
    }
    case Atom::Kind::Concept: {
      int s = ctx.store.concept_slot(a.name);
      return realize_box(ctx, Operand::Base::Concept, s, L.concept_lower(s), L.concept_delta(s));
    }
    case Atom::Kind::Nominal: {
      int s = ctx.store.individual_slot(a.name);
      const int n = ctx.store.dim();
      size_t off = L.individual_point(s);
      Operand op;
      op.base = Operand::Base::Individual;
      op.idx = s;
      op.lo.assign(ctx.store.params().begin() + off, ctx.store.params().begin() + off + n);
      op.up = op.lo;
      return op;
    }
  }
  throw DataError("bad atom");
}

Operand head_operand(Ctx& ctx, const std::string& role) {
  const StoreLayout& L = ctx.store.layout();
  int s = ctx.store.role_slot(role);
  return realize_box(ctx, Operand::Base::RoleHead, s, L.role_head_lower(s), L.role_head_delta(s));
}

Operand tail_operand(Ctx& ctx, const std::string& role) {
  const StoreLayout& L = ctx.store.layout();
  int s = ctx.store.role_slot(role);
  return realize_box(ctx, Operand::Base::RoleTail, s, L.role_tail_lower(s), L.role_tail_delta(s));
}

// Shift a regular operand by the bump vector of `a`; sentinels bump by zero.
void apply_bump(Ctx& ctx, Operand& op, const Atom& a, double sign = 1.0) {
  if (!op.regular() || a.is_sentinel()) return;
  int slot = ctx.store.bump_slot(a);
  size_t off = ctx.store.layout().bump(slot);
  const auto& p = ctx.store.params();
  for (int i = 0; i < ctx.store.dim(); ++i) {
    op.lo[i] += sign * p[off + i];
    op.up[i] += sign * p[off + i];
  }
  op.shift = Operand::Shift::Bump;
  op.sidx = slot;
  op.ssign = sign;
}

void apply_role_vector(Ctx& ctx, Operand& op, const std::string& role, double sign) {
  if (!op.regular()) return;
  int s = ctx.store.role_slot(role);
  size_t off = ctx.store.layout().role_head_lower(s);
  const auto& p = ctx.store.params();
  for (int i = 0; i < ctx.store.dim(); ++i) {
    op.lo[i] += sign * p[off + i];
    op.up[i] += sign * p[off + i];
  }
  op.shift = Operand::Shift::RoleVec;
  op.sidx = s;
  op.ssign = sign;
}

void scatter(Ctx& ctx, const Operand& op, const Vec& gl, const Vec& gu) {
  if (!ctx.grad || !op.regular() || op.base == Operand::Base::None) return;
  const StoreLayout& L = ctx.store.layout();
  const int n = ctx.store.dim();
  size_t lower_off = 0, delta_off = 0;
  bool has_delta = true;
  switch (op.base) {
    case Operand::Base::Concept:
      lower_off = L.concept_lower(op.idx);
      delta_off = L.concept_delta(op.idx);
      break;
    case Operand::Base::Individual:
      lower_off = L.individual_point(op.idx);
      has_delta = false;
      break;
    case Operand::Base::RoleHead:
      lower_off = L.role_head_lower(op.idx);
      delta_off = L.role_head_delta(op.idx);
      break;
    case Operand::Base::RoleTail:
      lower_off = L.role_tail_lower(op.idx);
      delta_off = L.role_tail_delta(op.idx);
      break;
    case Operand::Base::None:
      return;
  }
  for (int i = 0; i < n; ++i) {
    // upper = lower + |delta| for delta-realized boxes; a point box has a
    // single parameter vector behind both corners.
    ctx.grad[lower_off + i] += gl[i] + gu[i];
    if (has_delta) ctx.grad[delta_off + i] += op.dsign[i] * gu[i];
  }
  if (op.shift == Operand::Shift::Bump) {
    size_t off = L.bump(op.sidx);
    for (int i = 0; i < n; ++i) ctx.grad[off + i] += op.ssign * (gl[i] + gu[i]);
  } else if (op.shift == Operand::Shift::RoleVec) {
    size_t off = L.role_head_lower(op.sidx);
    for (int i = 0; i < n; ++i) ctx.grad[off + i] += op.ssign * (gl[i] + gu[i]);
  }
}

enum class HingeKind { Inclusion, Disjoint, MinDistance };

// Shared core of the three hinge-norm primitives over raw corners. Fills
// per-corner gradients of (scale * value) when requested.
double hinge_norm(Ctx& ctx, HingeKind kind, const Vec& loA, const Vec& upA, const Vec& loB,
                  const Vec& upB, double scale, Vec* glA, Vec* guA, Vec* glB, Vec* guB) {
  const size_t n = loA.size();
  const double gamma = ctx.cfg.margin;
  Vec m(n), s(n);
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double cA = 0.5 * (loA[i] + upA[i]);
    double cB = 0.5 * (loB[i] + upB[i]);
    double oA = 0.5 * (upA[i] - loA[i]);
    double oB = 0.5 * (upB[i] - loB[i]);
    double diff = cA - cB;
    s[i] = sgn(diff);
    ctx.push(static_cast<signed char>(s[i]));
    // same association as box_distance, so values match it bit for bit
    double d = std::abs(diff) - (oA + oB);
    double t = 0.0;
    switch (kind) {
      case HingeKind::Inclusion: t = d + 2.0 * oA - gamma; break;
      case HingeKind::Disjoint: t = -(d + gamma); break;
      case HingeKind::MinDistance: t = d + gamma; break;
    }
    m[i] = std::max(0.0, t);
    ctx.push(m[i] > 0 ? 1 : 0);
    sum += m[i] * m[i];
  }
  double value = std::sqrt(sum);
  if (ctx.grad && glA && value > 0.0) {
    for (size_t i = 0; i < n; ++i) {
      if (m[i] <= 0) continue;
      double g = scale * m[i] / value;
      double dcA, doA, dcB, doB;
      switch (kind) {
        case HingeKind::Inclusion:
          dcA = s[i]; doA = 1; dcB = -s[i]; doB = -1;
          break;
        case HingeKind::Disjoint:
          dcA = -s[i]; doA = 1; dcB = s[i]; doB = 1;
          break;
        case HingeKind::MinDistance:
          dcA = s[i]; doA = -1; dcB = -s[i]; doB = -1;
          break;
      }
      (*glA)[i] += g * 0.5 * (dcA - doA);
      (*guA)[i] += g * 0.5 * (dcA + doA);
      (*glB)[i] += g * 0.5 * (dcB - doB);
      (*guB)[i] += g * 0.5 * (dcB + doB);
    }
  }
  return value;
}

// Inclusion of operand A in operand B, handling sentinel operands. Returns
// the raw (unscaled) term value; gradients are accumulated scaled.
double term_inclusion(Ctx& ctx, const Operand& A, const Operand& B, double scale) {
  if (B.universal()) return 0.0;
  if (A.empty()) return 0.0;
  if (B.empty()) {
    if (!A.regular()) throw std::invalid_argument("inclusion loss: Universal operand");
    // Drives o(A)_1 <= -1, which marks A as empty in the trained geometry.
    double oA0 = 0.5 * (A.up[0] - A.lo[0]);
    double t = oA0 + 1.0;
    bool active = t > 0;
    ctx.push(active ? 1 : 0);
    if (ctx.grad && active) {
      const size_t n = A.lo.size();
      Vec gl(n, 0.0), gu(n, 0.0);
      gl[0] = -0.5 * scale;
      gu[0] = 0.5 * scale;
      scatter(ctx, A, gl, gu);
    }
    return std::max(0.0, t);
  }
  if (!A.regular()) {
    throw std::invalid_argument("inclusion loss: Universal operand with a finite target");
  }
  const size_t n = A.lo.size();
  Vec glA, guA, glB, guB;
  Vec *pglA = nullptr, *pguA = nullptr, *pglB = nullptr, *pguB = nullptr;
  if (ctx.grad) {
    glA.assign(n, 0.0);
    guA.assign(n, 0.0);
    glB.assign(n, 0.0);
    guB.assign(n, 0.0);
    pglA = &glA; pguA = &guA; pglB = &glB; pguB = &guB;
  }
  double v = hinge_norm(ctx, HingeKind::Inclusion, A.lo, A.up, B.lo, B.up, scale,
                        pglA, pguA, pglB, pguB);
  if (ctx.grad) {
    scatter(ctx, A, glA, guA);
    scatter(ctx, B, glB, guB);
  }
  return v;
}

double term_nf1(Ctx& ctx, const NormalizedAxiom& ax) {
  Operand A = atom_operand(ctx, ax.c);
  Operand B = atom_operand(ctx, ax.d);
  return term_inclusion(ctx, A, B, 1.0);
}

double term_nf2(Ctx& ctx, const NormalizedAxiom& ax) {
  Operand C = atom_operand(ctx, ax.c);
  Operand D = atom_operand(ctx, ax.d);
  Operand E = atom_operand(ctx, ax.e);
  // Degenerate conjuncts: Bottom absorbs, Top is the identity.
  if (C.empty() || D.empty()) return 0.0;
  if (C.universal()) return term_inclusion(ctx, D, E, 1.0);
  if (D.universal()) return term_inclusion(ctx, C, E, 1.0);

  const size_t n = C.lo.size();
  // Pre-canonicalized intersection corners; may be inverted, which is
  // exactly the state the non-emptiness term repairs, so the inclusion
  // term is evaluated on the raw corners to keep gradients flowing.
  Vec lo(n), up(n), cl(n), cu(n);
  for (size_t i = 0; i < n; ++i) {
    cl[i] = C.lo[i] >= D.lo[i] ? 1.0 : 0.0;  // ties route to the first operand
    lo[i] = cl[i] != 0.0 ? C.lo[i] : D.lo[i];
    ctx.push(static_cast<signed char>(cl[i]));
    cu[i] = C.up[i] <= D.up[i] ? 1.0 : 0.0;
    up[i] = cu[i] != 0.0 ? C.up[i] : D.up[i];
    ctx.push(static_cast<signed char>(cu[i]));
  }

  Vec glI, guI, glE, guE;
  Vec *pglI = nullptr, *pguI = nullptr, *pglE = nullptr, *pguE = nullptr;
  if (ctx.grad) {
    glI.assign(n, 0.0);
    guI.assign(n, 0.0);
    glE.assign(n, 0.0);
    guE.assign(n, 0.0);
    pglI = &glI; pguI = &guI; pglE = &glE; pguE = &guE;
  }

  double value = 0.0;
  if (E.universal()) {
    // Inclusion into Top costs nothing; only the non-emptiness term remains.
  } else if (E.empty()) {
    throw std::invalid_argument("NF2 with an empty right side is NF5");
  } else {
    value += hinge_norm(ctx, HingeKind::Inclusion, lo, up, E.lo, E.up, 1.0, pglI, pguI, pglE, pguE);
  }

  // Non-emptiness: || max{0, max(l_C,l_D) - min(u_C,u_D)} ||.
  Vec w(n);
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    w[i] = std::max(0.0, lo[i] - up[i]);
    ctx.push(w[i] > 0 ? 1 : 0);
    sum += w[i] * w[i];
  }
  double wnorm = std::sqrt(sum);
  value += wnorm;

  if (ctx.grad) {
    if (wnorm > 0.0) {
      for (size_t i = 0; i < n; ++i) {
        if (w[i] <= 0) continue;
        glI[i] += w[i] / wnorm;
        guI[i] -= w[i] / wnorm;
      }
    }
    // Route the intersection-corner gradients to the winning operand.
    Vec glC(n, 0.0), guC(n, 0.0), glD(n, 0.0), guD(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      (cl[i] != 0.0 ? glC : glD)[i] += glI[i];
      (cu[i] != 0.0 ? guC : guD)[i] += guI[i];
    }
    scatter(ctx, C, glC, guC);
    scatter(ctx, D, glD, guD);
    if (!E.universal()) scatter(ctx, E, glE, guE);
  }
  return value;
}

double term_nf3(Ctx& ctx, const NormalizedAxiom& ax, LossReport& report) {
  if (ax.c.is_top()) {
    throw std::invalid_argument("NF3 with Top on the left has no finite box");
  }
  if (ctx.cfg.role_mode == RoleMode::Translations) {
    Operand A = atom_operand(ctx, ax.c);
    apply_role_vector(ctx, A, ax.r1, 1.0);
    Operand B = atom_operand(ctx, ax.d);
    double v = term_inclusion(ctx, A, B, 1.0);
    report.nf3 += v;
    return v;
  }
  Operand A1 = atom_operand(ctx, ax.c);
  apply_bump(ctx, A1, ax.d);
  Operand H = head_operand(ctx, ax.r1);
  double value = 0.5 * term_inclusion(ctx, A1, H, 0.5);

  if (ax.d.is_top()) {
    // Box(Top) has no finite tail condition; with a non-empty tail box the
    // membership condition reduces to the head inclusion alone.
  } else {
    Operand A2 = atom_operand(ctx, ax.d);
    apply_bump(ctx, A2, ax.c);
    Operand T = tail_operand(ctx, ax.r1);
    value += 0.5 * term_inclusion(ctx, A2, T, 0.5);
    if (ax.d.is_bottom()) {
      // An empty filler forces Box(C) itself to be empty.
      Operand C = atom_operand(ctx, ax.c);
      Operand empty;
      empty.kind = Box::Kind::Empty;
      value += term_inclusion(ctx, C, empty, 1.0);
    }
  }
  report.nf3 += value;
  return value;
}

double term_nf4(Ctx& ctx, const NormalizedAxiom& ax) {
  if (ctx.cfg.role_mode == RoleMode::Translations) {
    if (ax.c.is_top()) {
      throw std::invalid_argument("translation-mode NF4 with Top filler has no finite box");
    }
    Operand A = atom_operand(ctx, ax.c);
    apply_role_vector(ctx, A, ax.r1, -1.0);
    Operand B = atom_operand(ctx, ax.d);
    return term_inclusion(ctx, A, B, 1.0);
  }
  Operand A = head_operand(ctx, ax.r1);
  apply_bump(ctx, A, ax.c, -1.0);
  Operand B = atom_operand(ctx, ax.d);
  return term_inclusion(ctx, A, B, 1.0);
}

double term_nf5(Ctx& ctx, const NormalizedAxiom& ax) {
  Operand A = atom_operand(ctx, ax.c);
  Operand B = atom_operand(ctx, ax.d);
  if (!A.regular() || !B.regular()) {
    throw std::invalid_argument("disjointness loss: sentinel operand");
  }
  const size_t n = A.lo.size();
  Vec glA, guA, glB, guB;
  Vec *pglA = nullptr, *pguA = nullptr, *pglB = nullptr, *pguB = nullptr;
  if (ctx.grad) {
    glA.assign(n, 0.0); guA.assign(n, 0.0);
    glB.assign(n, 0.0); guB.assign(n, 0.0);
    pglA = &glA; pguA = &guA; pglB = &glB; pguB = &guB;
  }
  double v = hinge_norm(ctx, HingeKind::Disjoint, A.lo, A.up, B.lo, B.up, 1.0,
                        pglA, pguA, pglB, pguB);
  if (ctx.grad) {
    scatter(ctx, A, glA, guA);
    scatter(ctx, B, glB, guB);
  }
  return v;
}

// || v || with gradient scale * v / ||v|| added at `offsets` with `signs`.
double vector_norm_term(Ctx& ctx, const Vec& v, double scale,
                        const std::vector<std::pair<size_t, double>>& targets) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  double norm = std::sqrt(sum);
  ctx.push(norm > 0 ? 1 : 0);
  if (ctx.grad && norm > 0) {
    for (const auto& [off, sign] : targets) {
      for (size_t i = 0; i < v.size(); ++i) {
        ctx.grad[off + i] += scale * sign * v[i] / norm;
      }
    }
  }
  return norm;
}

double term_ri1(Ctx& ctx, const NormalizedAxiom& ax) {
  if (ctx.cfg.role_mode == RoleMode::Translations) {
    const StoreLayout& L = ctx.store.layout();
    int r = ctx.store.role_slot(ax.r1);
    int s = ctx.store.role_slot(ax.rsup);
    const auto& p = ctx.store.params();
    Vec w(ctx.store.dim());
    for (int i = 0; i < ctx.store.dim(); ++i) {
      w[i] = p[L.role_head_lower(r) + i] - p[L.role_head_lower(s) + i];
    }
    return vector_norm_term(ctx, w, 1.0,
                            {{L.role_head_lower(r), 1.0}, {L.role_head_lower(s), -1.0}});
  }
  Operand Hr = head_operand(ctx, ax.r1);
  Operand Hs = head_operand(ctx, ax.rsup);
  double v = 0.5 * term_inclusion(ctx, Hr, Hs, 0.5);
  Operand Tr = tail_operand(ctx, ax.r1);
  Operand Ts = tail_operand(ctx, ax.rsup);
  v += 0.5 * term_inclusion(ctx, Tr, Ts, 0.5);
  return v;
}

double term_ri2(Ctx& ctx, const NormalizedAxiom& ax) {
  if (ctx.cfg.role_mode == RoleMode::Translations) {
    const StoreLayout& L = ctx.store.layout();
    int r1 = ctx.store.role_slot(ax.r1);
    int r2 = ctx.store.role_slot(ax.r2);
    int s = ctx.store.role_slot(ax.rsup);
    const auto& p = ctx.store.params();
    Vec w(ctx.store.dim());
    for (int i = 0; i < ctx.store.dim(); ++i) {
      w[i] = p[L.role_head_lower(r1) + i] + p[L.role_head_lower(r2) + i] -
             p[L.role_head_lower(s) + i];
    }
    return vector_norm_term(ctx, w, 1.0,
                            {{L.role_head_lower(r1), 1.0},
                             {L.role_head_lower(r2), 1.0},
                             {L.role_head_lower(s), -1.0}});
  }
  Operand H1 = head_operand(ctx, ax.r1);
  Operand Hs = head_operand(ctx, ax.rsup);
  double v = 0.5 * term_inclusion(ctx, H1, Hs, 0.5);
  Operand T2 = tail_operand(ctx, ax.r2);
  Operand Ts = tail_operand(ctx, ax.rsup);
  v += 0.5 * term_inclusion(ctx, T2, Ts, 0.5);
  return v;
}

// (delta - mu(A, B))^2 with gradients chained through mu.
double squared_mu_gap(Ctx& ctx, const Operand& A, const Operand& B) {
  if (!A.regular() || !B.regular()) {
    throw std::invalid_argument("negative-sample loss: sentinel operand");
  }
  const size_t n = A.lo.size();
  const double delta = ctx.cfg.neg_distance;

  // First pass: value of mu.
  Ctx value_only{ctx.store, ctx.cfg, nullptr, ctx.trace};
  double mu = hinge_norm(value_only, HingeKind::MinDistance, A.lo, A.up, B.lo, B.up, 1.0,
                         nullptr, nullptr, nullptr, nullptr);
  double gap = delta - mu;
  if (ctx.grad) {
    Vec glA(n, 0.0), guA(n, 0.0), glB(n, 0.0), guB(n, 0.0);
    Ctx no_trace{ctx.store, ctx.cfg, ctx.grad, nullptr};
    hinge_norm(no_trace, HingeKind::MinDistance, A.lo, A.up, B.lo, B.up, -2.0 * gap,
               &glA, &guA, &glB, &guB);
    scatter(ctx, A, glA, guA);
    scatter(ctx, B, glB, guB);
  }
  return gap * gap;
}

double term_negative(Ctx& ctx, const NormalizedAxiom& ax) {
  if (ctx.cfg.role_mode == RoleMode::Translations) {
    Operand A = atom_operand(ctx, ax.c);
    apply_role_vector(ctx, A, ax.r1, 1.0);
    Operand B = atom_operand(ctx, ax.d);
    return squared_mu_gap(ctx, A, B);
  }
  Operand A1 = atom_operand(ctx, ax.c);
  apply_bump(ctx, A1, ax.d);
  Operand H = head_operand(ctx, ax.r1);
  double v = squared_mu_gap(ctx, A1, H);
  Operand A2 = atom_operand(ctx, ax.d);
  apply_bump(ctx, A2, ax.c);
  Operand T = tail_operand(ctx, ax.r1);
  v += squared_mu_gap(ctx, A2, T);
  return v;
}

double term_regularization(Ctx& ctx) {
  const double lambda = ctx.cfg.reg_lambda;
  if (lambda == 0.0) return 0.0;
  const StoreLayout& L = ctx.store.layout();
  const auto& p = ctx.store.params();
  const int n = ctx.store.dim();
  double value = 0.0;
  const int bumps = L.n_concepts + L.n_individuals;
  for (int b = 0; b < bumps; ++b) {
    size_t off = L.bump(b);
    Vec v(p.begin() + off, p.begin() + off + n);
    value += lambda * vector_norm_term(ctx, v, lambda, {{off, 1.0}});
  }
  return value;
}

double term_viz(Ctx& ctx) {
  const StoreLayout& L = ctx.store.layout();
  if (L.n_concepts == 0) return 0.0;
  const auto& p = ctx.store.params();
  const int n = ctx.store.dim();
  const double scale = 1.0 / (static_cast<double>(n) * L.n_concepts);
  const double min_off = ctx.cfg.viz_min_offset;
  double value = 0.0;
  for (int cidx = 0; cidx < L.n_concepts; ++cidx) {
    size_t off = L.concept_delta(cidx);
    for (int i = 0; i < n; ++i) {
      double delta = p[off + i];
      double o = 0.5 * std::abs(delta);
      double t = min_off - o;
      bool active = t > 0;
      ctx.push(active ? 1 : 0);
      ctx.push(static_cast<signed char>(sgn(delta)));
      if (active) {
        value += scale * t;
        if (ctx.grad) ctx.grad[off + i] -= scale * 0.5 * sgn(delta);
      }
    }
  }
  return value;
}

LossReport evaluate(Ctx& ctx, const std::vector<BatchItem>& batch) {
  LossReport report;
  for (const BatchItem& item : batch) {
    switch (item.tag) {
      case LossTag::NF1: report.nf1 += term_nf1(ctx, item.axiom); break;
      case LossTag::NF2: report.nf2 += term_nf2(ctx, item.axiom); break;
      case LossTag::NF3: term_nf3(ctx, item.axiom, report); break;
      case LossTag::NF4: report.nf4 += term_nf4(ctx, item.axiom); break;
      case LossTag::NF5: report.nf5 += term_nf5(ctx, item.axiom); break;
      case LossTag::RI1: report.ri1 += term_ri1(ctx, item.axiom); break;
      case LossTag::RI2: report.ri2 += term_ri2(ctx, item.axiom); break;
      case LossTag::Negative: report.negative += term_negative(ctx, item.axiom); break;
      default: throw DataError("unknown batch tag");
    }
  }
  report.regularization = term_regularization(ctx);
  if (ctx.cfg.viz_loss) report.viz = term_viz(ctx);
  return report;
}

}  // namespace

LossReport total_loss(const EmbeddingStore& store, const std::vector<BatchItem>& batch,
                      const LossConfig& cfg, BranchTrace* trace) {
  Ctx ctx{store, cfg, nullptr, trace};
  return evaluate(ctx, batch);
}

LossReport total_loss_grad(const EmbeddingStore& store, const std::vector<BatchItem>& batch,
                           const LossConfig& cfg, std::vector<double>& grad) {
  grad.assign(store.param_count(), 0.0);
  Ctx ctx{store, cfg, grad.data(), nullptr};
  return evaluate(ctx, batch);
}

double loss_nf1(const EmbeddingStore& s, const Atom& c, const Atom& d, const LossConfig& cfg) {
  return total_loss(s, {BatchItem::positive(NormalizedAxiom::nf1(c, d))}, cfg).nf1;
}
double loss_nf2(const EmbeddingStore& s, const Atom& c, const Atom& d, const Atom& e,
                const LossConfig& cfg) {
  return total_loss(s, {BatchItem::positive(NormalizedAxiom::nf2(c, d, e))}, cfg).nf2;
}
double loss_nf3(const EmbeddingStore& s, const Atom& c, const std::string& r, const Atom& d,
                const LossConfig& cfg) {
  return total_loss(s, {BatchItem::positive(NormalizedAxiom::nf3(c, r, d))}, cfg).nf3;
}
double loss_nf4(const EmbeddingStore& s, const std::string& r, const Atom& c, const Atom& d,
                const LossConfig& cfg) {
  return total_loss(s, {BatchItem::positive(NormalizedAxiom::nf4(r, c, d))}, cfg).nf4;
}
double loss_nf5(const EmbeddingStore& s, const Atom& c, const Atom& d, const LossConfig& cfg) {
  return total_loss(s, {BatchItem::positive(NormalizedAxiom::nf5(c, d))}, cfg).nf5;
}
double loss_ri1(const EmbeddingStore& s, const std::string& r, const std::string& sup,
                const LossConfig& cfg) {
  return total_loss(s, {BatchItem::positive(NormalizedAxiom::ri1(r, sup))}, cfg).ri1;
}
double loss_ri2(const EmbeddingStore& s, const std::string& r1, const std::string& r2,
                const std::string& sup, const LossConfig& cfg) {
  return total_loss(s, {BatchItem::positive(NormalizedAxiom::ri2(r1, r2, sup))}, cfg).ri2;
}
double loss_negative(const EmbeddingStore& s, const Atom& c, const std::string& r, const Atom& d,
                     const LossConfig& cfg) {
  return total_loss(s, {BatchItem::negative_sample(NormalizedAxiom::nf3(c, r, d))}, cfg).negative;
}
double regularization(const EmbeddingStore& s, double lambda) {
  LossConfig cfg;
  cfg.reg_lambda = lambda;
  return total_loss(s, {}, cfg).regularization;
}
double viz_loss(const EmbeddingStore& s, double min_offset) {
  LossConfig cfg;
  cfg.viz_loss = true;
  cfg.viz_min_offset = min_offset;
  return total_loss(s, {}, cfg).viz;
}

bool loss_defined(const NormalizedAxiom& axiom, RoleMode mode) {
  switch (axiom.tag) {
    case NfTag::NF1: return !axiom.c.is_top();
    case NfTag::NF2: return true;
    case NfTag::NF3: return !axiom.c.is_top();
    case NfTag::NF4: return mode == RoleMode::Boxes || !axiom.c.is_top();
    case NfTag::NF5: return !axiom.c.is_sentinel() && !axiom.d.is_sentinel();
    case NfTag::RI1:
    case NfTag::RI2: return true;
  }
  return false;
}

}  // namespace box2el
