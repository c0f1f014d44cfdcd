#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "box2el/loss.hpp"
#include "box2el/rng.hpp"
#include "box2el/verifier.hpp"
#include "test_support.hpp"

using namespace box2el;
using namespace box2el::testing;

namespace {

struct Draw {
  EmbeddingStore store;
  std::vector<BatchItem> batch;
  LossConfig cfg;
};

Draw random_draw(Rng& rng, RoleMode mode) {
  Signature sig;
  for (const char* c : {"A", "B", "C", "D", "E", "F"}) sig.add_concept(c);
  sig.add_role("r");
  sig.add_role("s");
  sig.add_individual("a");
  sig.add_individual("b");
  int dim = 2 + static_cast<int>(rng.below(3));
  EmbeddingStore store = EmbeddingStore::init(sig, dim, rng.next());
  for (double& p : store.params()) p = rng.uniform(-1.5, 1.5);
  store.role_mode = mode;

  LossConfig cfg;
  cfg.margin = rng.uniform(-0.15, 0.15);
  cfg.neg_distance = rng.uniform(0.5, 2.5);
  cfg.reg_lambda = rng.uniform(0.0, 0.8);
  cfg.viz_loss = rng.coin();
  cfg.role_mode = mode;

  auto concept_atom = [&rng] {
    const char* names[] = {"A", "B", "C", "D", "E", "F"};
    return Atom::named(names[rng.below(6)]);
  };
  auto mixed_atom = [&] {
    if (rng.below(4) == 0) return Atom::nominal(rng.coin() ? "a" : "b");
    return concept_atom();
  };
  auto role = [&rng] { return std::string(rng.coin() ? "r" : "s"); };

  std::vector<BatchItem> batch;
  int n_items = 4 + static_cast<int>(rng.below(8));
  for (int i = 0; i < n_items; ++i) {
    switch (rng.below(8)) {
      case 0: batch.push_back(BatchItem::positive(NormalizedAxiom::nf1(mixed_atom(), mixed_atom()))); break;
      case 1: batch.push_back(BatchItem::positive(NormalizedAxiom::nf2(mixed_atom(), mixed_atom(), concept_atom()))); break;
      case 2: batch.push_back(BatchItem::positive(NormalizedAxiom::nf3(mixed_atom(), role(), mixed_atom()))); break;
      case 3: batch.push_back(BatchItem::positive(NormalizedAxiom::nf4(role(), mixed_atom(), mixed_atom()))); break;
      case 4: batch.push_back(BatchItem::positive(NormalizedAxiom::nf5(concept_atom(), concept_atom()))); break;
      case 5: batch.push_back(BatchItem::positive(NormalizedAxiom::ri1(role(), role()))); break;
      case 6: batch.push_back(BatchItem::positive(NormalizedAxiom::ri2(role(), role(), role()))); break;
      case 7: batch.push_back(BatchItem::negative_sample(NormalizedAxiom::nf3(concept_atom(), role(), concept_atom()))); break;
    }
  }
  return {std::move(store), std::move(batch), cfg};
}

}  // namespace

TEST_CASE("analytic gradients match central differences") {
  Rng rng(515);
  double worst = 0.0;
  int total_checked = 0;
  for (int it = 0; it < 40; ++it) {
    RoleMode mode = (it % 2 == 0) ? RoleMode::Boxes : RoleMode::Translations;
    Draw d = random_draw(rng, mode);
    FiniteDiffResult r = finite_difference_check(d.store, d.batch, d.cfg, 1e-5, 1e-4);
    worst = std::max(worst, r.max_rel_err);
    total_checked += r.checked;
    CHECK(r.max_rel_err < 1e-4);
  }
  CHECK(total_checked > 1000);
  MESSAGE("max relative error over draws: " << worst);
}

TEST_CASE("zero-loss flat region has a zero gradient") {
  NormalizedOntology onto = family_tbox();
  EmbeddingStore store = family_model();
  LossConfig cfg;  // gamma 0, no reg, no viz
  std::vector<BatchItem> batch;
  for (const auto& ax : onto.all()) batch.push_back(BatchItem::positive(ax));
  std::vector<double> grad;
  LossReport rep = total_loss_grad(store, batch, cfg, grad);
  CHECK(rep.total() == 0.0);
  for (double g : grad) CHECK(g == 0.0);
}

TEST_CASE("regularization gradient is lambda * b / |b|") {
  Signature sig;
  sig.add_concept("C");
  EmbeddingStore store = EmbeddingStore::init(sig, 2, 2);
  set_bump(store, Atom::named("C"), {3, 4});
  LossConfig cfg;
  cfg.reg_lambda = 0.7;
  std::vector<double> grad;
  total_loss_grad(store, {}, cfg, grad);
  size_t off = store.layout().bump(0);
  CHECK(grad[off + 0] == doctest::Approx(0.7 * 3.0 / 5.0));
  CHECK(grad[off + 1] == doctest::Approx(0.7 * 4.0 / 5.0));
  // subgradient at zero is zero
  set_bump(store, Atom::named("C"), {0, 0});
  total_loss_grad(store, {}, cfg, grad);
  CHECK(grad[off + 0] == 0.0);
  CHECK(grad[off + 1] == 0.0);
}

TEST_CASE("a corrupted gradient fails the finite-difference check") {
  Rng rng(626);
  Draw d = random_draw(rng, RoleMode::Boxes);
  std::vector<double> grad;
  total_loss_grad(d.store, d.batch, d.cfg, grad);

  // repeat the check by hand with one coordinate deliberately off by 1
  size_t k = grad.size() / 2;
  grad[k] += 1.0;
  EmbeddingStore probe = d.store;
  double h = 1e-5;
  const double saved = probe.params()[k];
  BranchTrace plus, minus;
  probe.params()[k] = saved + h;
  double fp = total_loss(probe, d.batch, d.cfg, &plus).total();
  probe.params()[k] = saved - h;
  double fm = total_loss(probe, d.batch, d.cfg, &minus).total();
  if (plus == minus) {
    double fd = (fp - fm) / (2 * h);
    double rel = std::abs(grad[k] - fd) / std::max({1.0, std::abs(grad[k]), std::abs(fd)});
    CHECK(rel > 1e-4);
  }
}

TEST_CASE("kink coordinates are detected and skipped") {
  Signature sig;
  sig.add_concept("A");
  sig.add_concept("B");
  EmbeddingStore store = EmbeddingStore::init(sig, 1, 3);
  // put a hinge argument exactly at zero: identical boxes at gamma 0 give
  // t = 0 in the inclusion term
  set_box(store, "A", {0}, {1});
  set_box(store, "B", {0}, {1});
  LossConfig cfg;
  std::vector<BatchItem> batch = {
      BatchItem::positive(NormalizedAxiom::nf1(Atom::named("A"), Atom::named("B")))};
  FiniteDiffResult r = finite_difference_check(store, batch, cfg, 1e-5, 1e-4);
  CHECK(r.skipped > 0);
  CHECK(r.max_rel_err < 1e-4);
}
