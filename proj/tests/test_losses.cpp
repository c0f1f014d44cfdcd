#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "box2el/box.hpp"
#include "box2el/loss.hpp"
#include "box2el/rng.hpp"
#include "test_support.hpp"

using namespace box2el;
using namespace box2el::testing;

namespace {

LossConfig at_margin(double gamma) {
  LossConfig cfg;
  cfg.margin = gamma;
  return cfg;
}

EmbeddingStore random_store(Rng& rng, int dim = 3) {
  Signature sig;
  for (const char* c : {"A", "B", "C", "D", "E"}) sig.add_concept(c);
  sig.add_role("r");
  sig.add_role("s");
  sig.add_individual("a");
  sig.add_individual("b");
  EmbeddingStore store = EmbeddingStore::init(sig, dim, rng.next());
  for (double& p : store.params()) p = rng.uniform(-2, 2);
  return store;
}

}  // namespace

TEST_CASE("loss_nf1 equals the geometric inclusion loss") {
  Rng rng(101);
  for (int it = 0; it < 200; ++it) {
    EmbeddingStore store = random_store(rng);
    LossConfig cfg = at_margin(rng.uniform(-0.2, 0.2));
    Atom c = Atom::named("A"), d = Atom::named("B");
    CHECK(loss_nf1(store, c, d, cfg) ==
          inclusion_loss(store.concept_box(c), store.concept_box(d), cfg.margin));
    CHECK(loss_nf5(store, c, d, cfg) ==
          disjoint_loss(store.concept_box(c), store.concept_box(d), cfg.margin));
  }
}

TEST_CASE("loss_nf1 special targets") {
  NormalizedOntology onto = family_tbox();
  EmbeddingStore store = family_model();
  LossConfig cfg = at_margin(0.0);
  // contained strictly
  CHECK(loss_nf1(store, Atom::named("Father"), Atom::named("Parent"), cfg) == 0.0);
  // identity
  CHECK(loss_nf1(store, Atom::named("Child"), Atom::named("Child"), cfg) == 0.0);
  // empty target: unit box has offset 0.5 in its first dimension
  set_box(store, "Child", {5, 0}, {6, 1});
  CHECK(loss_nf1(store, Atom::named("Child"), Atom::bottom(), cfg) == doctest::Approx(1.5));
}

TEST_CASE("loss_nf2 on exact intersections and disjoint conjuncts") {
  Signature sig;
  for (const char* c : {"C", "D", "E"}) sig.add_concept(c);
  EmbeddingStore store = EmbeddingStore::init(sig, 2, 1);
  LossConfig cfg = at_margin(0.0);
  set_box(store, "C", {0, 0}, {2, 2});
  set_box(store, "D", {1, 1}, {3, 3});
  set_box(store, "E", {1, 1}, {2, 2});
  CHECK(loss_nf2(store, Atom::named("C"), Atom::named("D"), Atom::named("E"), cfg) == 0.0);

  // all equal boxes: intersection is the box itself
  set_box(store, "D", {0, 0}, {2, 2});
  set_box(store, "E", {0, 0}, {2, 2});
  CHECK(loss_nf2(store, Atom::named("C"), Atom::named("D"), Atom::named("E"), cfg) == 0.0);

  // disjoint conjuncts: the non-emptiness term fires
  set_box(store, "D", {5, 5}, {6, 6});
  CHECK(loss_nf2(store, Atom::named("C"), Atom::named("D"), Atom::named("E"), cfg) > 0.0);
}

TEST_CASE("loss_nf3 is zero on the family model and tracks bumps") {
  EmbeddingStore store = family_model();
  LossConfig cfg = at_margin(0.0);
  CHECK(loss_nf3(store, Atom::named("Child"), "hasParent", Atom::named("Father"), cfg) == 0.0);
  CHECK(loss_nf3(store, Atom::named("Child"), "hasParent", Atom::named("Mother"), cfg) == 0.0);
  // the role inclusion of the family TBox also holds
  CHECK(loss_ri1(store, "hasParent", "relatedTo", cfg) == 0.0);
  // and the model implies Child <= exists relatedTo.Father
  CHECK(loss_nf3(store, Atom::named("Child"), "relatedTo", Atom::named("Father"), cfg) == 0.0);

  // a bump shifts the child box out of the head box
  set_bump(store, Atom::named("Father"), {10, 0});
  CHECK(loss_nf3(store, Atom::named("Child"), "hasParent", Atom::named("Father"), cfg) > 0.0);
}

TEST_CASE("loss_nf3 empty filler adds the emptiness term") {
  EmbeddingStore store = family_model();
  LossConfig cfg = at_margin(0.0);
  // Box(Child) = [5,0]..[6,1] is inside Head(hasParent), so the halved head
  // term is 0 and only the o_1 + 1 = 1.5 emptiness term remains.
  CHECK(loss_nf3(store, Atom::named("Child"), "hasParent", Atom::bottom(), cfg) ==
        doctest::Approx(1.5));
}

TEST_CASE("loss_nf4 follows the bump-translated head box") {
  EmbeddingStore store = family_model();
  LossConfig cfg = at_margin(0.0);
  // Head(relatedTo) contains Head(hasParent); check exists hasParent.X <= HeadCover
  // by making D a box that covers the head box exactly.
  set_box(store, "Male", {4.8, -0.2}, {6.2, 1.2});
  CHECK(loss_nf4(store, "hasParent", Atom::named("Child"), Atom::named("Male"), cfg) == 0.0);
  CHECK(loss_nf4(store, "hasParent", Atom::top(), Atom::named("Male"), cfg) == 0.0);
  // Top target costs nothing
  CHECK(loss_nf4(store, "hasParent", Atom::named("Child"), Atom::top(), cfg) == 0.0);
  // a bump moves the head box away from D by (1,0): inclusion loss of the
  // shifted box in D
  set_bump(store, Atom::named("Child"), {-1, 0});
  Box shifted = translate(store.role_head("hasParent"), {1, 0});
  CHECK(loss_nf4(store, "hasParent", Atom::named("Child"), Atom::named("Male"), cfg) ==
        doctest::Approx(inclusion_loss(shifted, store.concept_box(Atom::named("Male")), 0.0)));
}

TEST_CASE("loss_nf5 mirrors the geometry examples") {
  Signature sig;
  sig.add_concept("C");
  sig.add_concept("D");
  EmbeddingStore store = EmbeddingStore::init(sig, 2, 3);
  LossConfig cfg = at_margin(0.0);
  set_box(store, "C", {0, 0}, {1, 1});
  set_box(store, "D", {2, 0}, {3, 1});
  CHECK(loss_nf5(store, Atom::named("C"), Atom::named("D"), cfg) == doctest::Approx(1.0));
  set_box(store, "D", {2, 2}, {3, 3});
  CHECK(loss_nf5(store, Atom::named("C"), Atom::named("D"), cfg) == 0.0);
}

TEST_CASE("role inclusion losses") {
  EmbeddingStore store = family_model();
  LossConfig cfg = at_margin(0.0);
  CHECK(loss_ri1(store, "hasParent", "hasParent", cfg) == 0.0);  // r = s
  CHECK(loss_ri1(store, "relatedTo", "hasParent", cfg) > 0.0);   // reversed containment fails
  CHECK(loss_ri2(store, "hasParent", "hasParent", "relatedTo", cfg) == 0.0);
}

TEST_CASE("negative sampling loss is two-sided") {
  Signature sig;
  sig.add_concept("C");
  sig.add_concept("D");
  sig.add_role("r");
  EmbeddingStore store = EmbeddingStore::init(sig, 2, 5);
  LossConfig cfg = at_margin(0.0);
  cfg.neg_distance = 2.0;
  // everything overlapping: mu = 0 on both sides -> 2 * delta^2 = 8
  set_box(store, "C", {0, 0}, {1, 1});
  set_box(store, "D", {0, 0}, {1, 1});
  set_role(store, "r", {0, 0}, {1, 1}, {0, 0}, {1, 1});
  set_bump(store, Atom::named("C"), {0, 0});
  set_bump(store, Atom::named("D"), {0, 0});
  CHECK(loss_negative(store, Atom::named("C"), "r", Atom::named("D"), cfg) == doctest::Approx(8.0));

  // mu = delta exactly -> 0; realized via point boxes at distance delta in one dim
  set_box(store, "C", {0, 0}, {0, 0});
  set_box(store, "D", {0, 0}, {0, 0});
  set_role(store, "r", {2, 0}, {2, 0}, {2, 0}, {2, 0});
  CHECK(loss_negative(store, Atom::named("C"), "r", Atom::named("D"), cfg) ==
        doctest::Approx(0.0));

  // mu = delta + 1 on both sides is penalized quadratically: 1 + 1 = 2
  set_role(store, "r", {3, 0}, {3, 0}, {3, 0}, {3, 0});
  CHECK(loss_negative(store, Atom::named("C"), "r", Atom::named("D"), cfg) ==
        doctest::Approx(2.0));
}

TEST_CASE("regularization is the sum of bump norms") {
  Signature sig;
  sig.add_concept("C");
  sig.add_individual("a");
  EmbeddingStore store = EmbeddingStore::init(sig, 2, 7);
  CHECK(regularization(store, 1.0) == 0.0);  // bumps start at zero
  set_bump(store, Atom::named("C"), {3, 4});
  CHECK(regularization(store, 1.0) == doctest::Approx(5.0));
  CHECK(regularization(store, 0.5) == doctest::Approx(2.5));
  CHECK(regularization(store, 0.0) == 0.0);
  set_bump(store, Atom::nominal("a"), {0, 1});
  CHECK(regularization(store, 1.0) == doctest::Approx(6.0));
}

TEST_CASE("viz loss drives offsets to the minimum") {
  Signature sig;
  sig.add_concept("C");
  EmbeddingStore store = EmbeddingStore::init(sig, 1, 9);
  set_box(store, "C", {0}, {0});  // offset 0
  CHECK(viz_loss(store) == doctest::Approx(0.2));
  set_box(store, "C", {0}, {0.4});  // offset exactly 0.2
  CHECK(viz_loss(store) == 0.0);
  set_box(store, "C", {0}, {3});
  CHECK(viz_loss(store) == 0.0);
}

TEST_CASE("total_loss dispatch and the zero-loss family model") {
  NormalizedOntology onto = family_tbox();
  EmbeddingStore store = family_model();
  LossConfig cfg = at_margin(0.0);
  cfg.reg_lambda = 1.0;
  cfg.viz_loss = true;

  std::vector<BatchItem> batch;
  for (const auto& ax : onto.all()) batch.push_back(BatchItem::positive(ax));
  LossReport report = total_loss(store, batch, cfg);
  CHECK(report.total() == 0.0);
  CHECK(report.nf1 == 0.0);
  CHECK(report.nf3 == 0.0);
  CHECK(report.ri1 == 0.0);
  CHECK(report.regularization == 0.0);
  CHECK(report.viz == 0.0);

  // empty batch with lambda 0: exactly zero
  LossConfig plain;
  CHECK(total_loss(store, {}, plain).total() == 0.0);

  // single identity axiom: only regularization remains
  set_bump(store, Atom::named("Child"), {0.6, 0.8});
  std::vector<BatchItem> one = {BatchItem::positive(
      NormalizedAxiom::nf1(Atom::named("Child"), Atom::named("Child")))};
  LossReport r2 = total_loss(store, one, cfg);
  CHECK(r2.nf1 == 0.0);
  CHECK(r2.regularization == doctest::Approx(1.0));
  CHECK(r2.total() == doctest::Approx(r2.nf1 + r2.nf2 + r2.nf3 + r2.nf4 + r2.nf5 + r2.ri1 +
                                      r2.ri2 + r2.negative + r2.regularization + r2.viz));
}

TEST_CASE("every component is non-negative on random stores") {
  Rng rng(202);
  for (int it = 0; it < 100; ++it) {
    EmbeddingStore store = random_store(rng);
    LossConfig cfg = at_margin(rng.uniform(-0.3, 0.3));
    cfg.reg_lambda = rng.uniform(0, 1);
    cfg.viz_loss = true;
    cfg.neg_distance = rng.uniform(0.5, 3);
    std::vector<BatchItem> batch = {
        BatchItem::positive(NormalizedAxiom::nf1(Atom::named("A"), Atom::named("B"))),
        BatchItem::positive(NormalizedAxiom::nf2(Atom::named("A"), Atom::named("B"), Atom::named("C"))),
        BatchItem::positive(NormalizedAxiom::nf3(Atom::named("A"), "r", Atom::nominal("a"))),
        BatchItem::positive(NormalizedAxiom::nf4("r", Atom::named("B"), Atom::named("D"))),
        BatchItem::positive(NormalizedAxiom::nf5(Atom::named("C"), Atom::named("D"))),
        BatchItem::positive(NormalizedAxiom::ri1("r", "s")),
        BatchItem::positive(NormalizedAxiom::ri2("r", "s", "r")),
        BatchItem::negative_sample(NormalizedAxiom::nf3(Atom::named("E"), "s", Atom::named("A"))),
    };
    LossReport rep = total_loss(store, batch, cfg);
    for (double v : {rep.nf1, rep.nf2, rep.nf3, rep.nf4, rep.nf5, rep.ri1, rep.ri2, rep.negative,
                     rep.regularization, rep.viz}) {
      CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("total loss is invariant under global translation") {
  Rng rng(303);
  for (int it = 0; it < 50; ++it) {
    EmbeddingStore store = random_store(rng, 2);
    LossConfig cfg = at_margin(rng.uniform(-0.2, 0.2));
    cfg.reg_lambda = 0.7;
    cfg.viz_loss = true;
    std::vector<BatchItem> batch = {
        BatchItem::positive(NormalizedAxiom::nf1(Atom::named("A"), Atom::named("B"))),
        BatchItem::positive(NormalizedAxiom::nf2(Atom::named("A"), Atom::named("B"), Atom::named("C"))),
        BatchItem::positive(NormalizedAxiom::nf3(Atom::nominal("a"), "r", Atom::named("D"))),
        BatchItem::positive(NormalizedAxiom::nf4("s", Atom::named("B"), Atom::named("E"))),
        BatchItem::positive(NormalizedAxiom::nf5(Atom::named("C"), Atom::named("D"))),
        BatchItem::positive(NormalizedAxiom::ri1("r", "s")),
        BatchItem::negative_sample(NormalizedAxiom::nf3(Atom::named("E"), "s", Atom::named("A"))),
    };
    double before = total_loss(store, batch, cfg).total();

    Vec t = {rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const StoreLayout& L = store.layout();
    auto shift_block = [&](size_t off, int count) {
      for (int b = 0; b < count; ++b) {
        for (int i = 0; i < 2; ++i) store.params()[off + static_cast<size_t>(b) * 2 + i] += t[i];
      }
    };
    shift_block(L.concept_lower(0), L.n_concepts);
    shift_block(L.individual_point(0), L.n_individuals);
    shift_block(L.role_head_lower(0), L.n_roles);
    shift_block(L.role_tail_lower(0), L.n_roles);
    double after = total_loss(store, batch, cfg).total();
    CHECK(before == doctest::Approx(after).epsilon(1e-9));
  }
}

TEST_CASE("translation role mode changes only NF3/NF4/negatives") {
  Rng rng(404);
  for (int it = 0; it < 50; ++it) {
    EmbeddingStore store = random_store(rng);
    LossConfig box_cfg = at_margin(rng.uniform(-0.1, 0.1));
    LossConfig tr_cfg = box_cfg;
    tr_cfg.role_mode = RoleMode::Translations;
    std::vector<BatchItem> batch = {
        BatchItem::positive(NormalizedAxiom::nf1(Atom::named("A"), Atom::named("B"))),
        BatchItem::positive(NormalizedAxiom::nf2(Atom::named("A"), Atom::named("B"), Atom::named("C"))),
        BatchItem::positive(NormalizedAxiom::nf5(Atom::named("C"), Atom::named("D"))),
    };
    LossReport a = total_loss(store, batch, box_cfg);
    LossReport b = total_loss(store, batch, tr_cfg);
    CHECK(a.nf1 == b.nf1);
    CHECK(a.nf2 == b.nf2);
    CHECK(a.nf5 == b.nf5);

    std::vector<BatchItem> role_batch = {
        BatchItem::positive(NormalizedAxiom::nf3(Atom::named("A"), "r", Atom::named("B"))),
        BatchItem::positive(NormalizedAxiom::nf4("r", Atom::named("A"), Atom::named("B"))),
    };
    LossReport ra = total_loss(store, role_batch, box_cfg);
    LossReport rb = total_loss(store, role_batch, tr_cfg);
    // different geometry in the role terms (generic position)
    CHECK(ra.nf3 + ra.nf4 != rb.nf3 + rb.nf4);
  }
}

TEST_CASE("losses on Top-left axioms are rejected") {
  EmbeddingStore store = family_model();
  LossConfig cfg = at_margin(0.0);
  CHECK_THROWS(loss_nf1(store, Atom::top(), Atom::named("Child"), cfg));
  CHECK_THROWS(loss_nf3(store, Atom::top(), "hasParent", Atom::named("Father"), cfg));
  CHECK(loss_defined(NormalizedAxiom::nf1(Atom::top(), Atom::named("Child")), RoleMode::Boxes) ==
        false);
  CHECK(loss_defined(NormalizedAxiom::nf1(Atom::named("Child"), Atom::top()), RoleMode::Boxes));
  CHECK(loss_nf1(store, Atom::named("Child"), Atom::top(), cfg) == 0.0);
}
