#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "box2el/box.hpp"
#include "box2el/rng.hpp"

using namespace box2el;

namespace {

Box B(Vec lo, Vec up) { return Box::from_corners(std::move(lo), std::move(up)); }

Box random_box(Rng& rng, int dim, double span = 2.0) {
  Vec lo(dim), up(dim);
  for (int i = 0; i < dim; ++i) {
    double a = rng.uniform(-span, span);
    double b = rng.uniform(-span, span);
    lo[i] = std::min(a, b);
    up[i] = std::max(a, b);
  }
  return B(lo, up);
}

}  // namespace

TEST_CASE("construction canonicalizes inverted corners to Empty") {
  CHECK(B({0, 0}, {1, 1}).is_regular());
  CHECK(B({0, 2}, {1, 1}).is_empty());
  CHECK(B({1, 1}, {1, 1}).is_regular());  // touching corners stay regular
  CHECK(Box::point({3, 4}).is_regular());
  CHECK(Box::point({3, 4}).offset() == Vec{0, 0});
}

TEST_CASE("box_distance") {
  Box a = B({0, 0}, {1, 1});
  CHECK(box_distance(a, a) == Vec{-1, -1});
  CHECK(box_distance(B({0, 0}, {2, 2}), B({3, 1}, {5, 3})) == Vec{1, -1});
  // distinct points reduce to |p - q|
  CHECK(box_distance(Box::point({0, 0}), Box::point({3, 4})) == Vec{3, 4});
  CHECK_THROWS(box_distance(Box::empty(), a));
}

TEST_CASE("inclusion_loss") {
  CHECK(inclusion_loss(B({0.25, 0.25}, {0.75, 0.75}), B({0, 0}, {1, 1}), 0.0) == 0.0);
  Box a = B({0, 0}, {1, 1});
  CHECK(inclusion_loss(a, a, 0.0) == 0.0);
  CHECK(inclusion_loss(B({0, 0}, {2, 2}), B({1, 1}, {2, 2}), 0.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(inclusion_loss(a, Box::empty(), 0.0) == doctest::Approx(1.5));
  CHECK(inclusion_loss(a, Box::universal(), 0.0) == 0.0);
  CHECK(inclusion_loss(Box::empty(), a, 0.0) == 0.0);
  CHECK(inclusion_loss(Box::empty(), Box::empty(), 0.0) == 0.0);
  CHECK_THROWS(inclusion_loss(Box::universal(), a, 0.0));
}

TEST_CASE("disjoint_loss") {
  CHECK(disjoint_loss(B({0, 0}, {1, 1}), B({2, 0}, {3, 1}), 0.0) == doctest::Approx(1.0));
  CHECK(disjoint_loss(B({0, 0}, {1, 1}), B({2, 2}, {3, 3}), 0.0) == 0.0);
  // d = 0 at the boundary is not penalized
  CHECK(disjoint_loss(Box::point({1, 2}), Box::point({1, 2}), 0.0) == 0.0);
  CHECK_THROWS(disjoint_loss(Box::empty(), B({0, 0}, {1, 1}), 0.0));
}

TEST_CASE("min_point_distance") {
  CHECK(min_point_distance(B({0, 0}, {2, 2}), B({1, 1}, {3, 3}), 0.0) == 0.0);
  CHECK(min_point_distance(Box::point({0, 0}), Box::point({3, 4}), 0.0) == doctest::Approx(5.0));
  Box a = B({-1, 0}, {4, 2});
  CHECK(min_point_distance(a, a, 0.0) == 0.0);
}

TEST_CASE("intersect") {
  CHECK(intersect(B({0, 0}, {2, 2}), B({1, 1}, {3, 3})) == B({1, 1}, {2, 2}));
  CHECK(intersect(B({0, 0}, {1, 1}), B({2, 2}, {3, 3})).is_empty());
  Box a = B({0, 0}, {1, 1});
  CHECK(intersect(a, Box::universal()) == a);
  CHECK(intersect(a, Box::empty()).is_empty());
}

TEST_CASE("translate") {
  CHECK(translate(B({0, 0}, {1, 1}), {2, -1}) == B({2, -1}, {3, 0}));
  Box a = B({0.5, -2}, {1, 7});
  CHECK(translate(a, {0, 0}) == a);
  CHECK(translate(translate(a, {3, -4}), {-3, 4}) == a);
  CHECK(translate(Box::empty(), {1, 1}).is_empty());
}

TEST_CASE("symmetry of the distance-based primitives") {
  Rng rng(7);
  for (int it = 0; it < 200; ++it) {
    int dim = 1 + static_cast<int>(rng.below(4));
    Box a = random_box(rng, dim);
    Box b = random_box(rng, dim);
    double gamma = rng.uniform(-0.2, 0.2);
    CHECK(box_distance(a, b) == box_distance(b, a));
    CHECK(disjoint_loss(a, b, gamma) == doctest::Approx(disjoint_loss(b, a, gamma)));
    CHECK(min_point_distance(a, b, gamma) == doctest::Approx(min_point_distance(b, a, gamma)));
  }
}

TEST_CASE("zero inclusion loss implies corner containment") {
  Rng rng(11);
  int zero_cases = 0;
  for (int it = 0; it < 5000; ++it) {
    int dim = 1 + static_cast<int>(rng.below(3));
    double gamma = -rng.uniform(0.0, 0.3);
    Box a = random_box(rng, dim, 1.0);
    // Half the draws are built nested so the zero branch is exercised.
    Box b = (it % 2 == 0) ? random_box(rng, dim, 1.5)
                          : B([&] {
                              Vec lo = a.lower();
                              for (double& x : lo) x -= rng.uniform(0.3, 1.0);
                              return lo;
                            }(),
                              [&] {
                                Vec up = a.upper();
                                for (double& x : up) x += rng.uniform(0.3, 1.0);
                                return up;
                              }());
    if (inclusion_loss(a, b, gamma) == 0.0) {
      ++zero_cases;
      for (int i = 0; i < dim; ++i) {
        CHECK(b.lower()[i] <= a.lower()[i]);
        CHECK(a.upper()[i] <= b.upper()[i]);
      }
    }
  }
  CHECK(zero_cases > 1000);
}

TEST_CASE("zero disjoint loss implies empty intersection") {
  Rng rng(13);
  int zero_cases = 0;
  for (int it = 0; it < 5000; ++it) {
    int dim = 1 + static_cast<int>(rng.below(3));
    double gamma = -rng.uniform(0.001, 0.3);
    Box a = random_box(rng, dim, 1.0);
    Box b = random_box(rng, dim, 1.0);
    if (it % 2 == 1) b = translate(b, Vec(dim, rng.uniform(2.5, 4.0)));
    if (disjoint_loss(a, b, gamma) == 0.0) {
      ++zero_cases;
      CHECK(intersect(a, b).is_empty());
    }
  }
  CHECK(zero_cases > 500);
}

TEST_CASE("translation invariance of the loss primitives") {
  Rng rng(17);
  for (int it = 0; it < 300; ++it) {
    int dim = 2;
    Box a = random_box(rng, dim);
    Box b = random_box(rng, dim);
    Vec t = {rng.uniform(-5, 5), rng.uniform(-5, 5)};
    double gamma = rng.uniform(-0.2, 0.2);
    CHECK(inclusion_loss(a, b, gamma) ==
          doctest::Approx(inclusion_loss(translate(a, t), translate(b, t), gamma)).epsilon(1e-9));
    CHECK(disjoint_loss(a, b, gamma) ==
          doctest::Approx(disjoint_loss(translate(a, t), translate(b, t), gamma)).epsilon(1e-9));
    CHECK(min_point_distance(a, b, gamma) ==
          doctest::Approx(min_point_distance(translate(a, t), translate(b, t), gamma)).epsilon(1e-9));
  }
}

TEST_CASE("shrinking A around its center never increases inclusion loss") {
  Rng rng(19);
  for (int it = 0; it < 300; ++it) {
    int dim = 3;
    Box a = random_box(rng, dim);
    Box b = random_box(rng, dim);
    double gamma = rng.uniform(-0.1, 0.1);
    Vec c = a.center(), o = a.offset();
    Vec lo(dim), up(dim);
    for (int i = 0; i < dim; ++i) {
      double shrunk = o[i] * rng.uniform(0.0, 1.0);
      lo[i] = c[i] - shrunk;
      up[i] = c[i] + shrunk;
    }
    CHECK(inclusion_loss(B(lo, up), b, gamma) <= inclusion_loss(a, b, gamma) + 1e-12);
  }
}

TEST_CASE("intersection algebra") {
  Rng rng(23);
  for (int it = 0; it < 300; ++it) {
    Box a = random_box(rng, 2);
    Box b = random_box(rng, 2);
    Box c = random_box(rng, 2);
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    CHECK(intersect(a, a) == a);
    CHECK(intersect(a, Box::universal()) == a);
    CHECK(intersect(a, Box::empty()).is_empty());
  }
}

TEST_CASE("containment checks with eps slack") {
  Box outer = B({0, 0}, {2, 2});
  CHECK(box_contains(outer, B({0.5, 0.5}, {1.5, 1.5})));
  CHECK(box_contains(outer, outer));
  CHECK_FALSE(box_contains(outer, B({-0.01, 0.5}, {1, 1})));
  CHECK(box_contains(outer, B({-0.01, 0.5}, {1, 1}), 0.02));
  CHECK(containment_violation(B({-0.3, 0}, {1, 1}), outer) == doctest::Approx(0.3));
  CHECK(box_contains(outer, Box::empty()));
  CHECK(box_contains(Box::universal(), outer));
  CHECK_FALSE(box_contains(Box::empty(), outer));
}
