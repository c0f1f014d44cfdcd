#pragma once

#include <string>
#include <vector>

namespace box2el {

using Vec = std::vector<double>;

// An axis-aligned hyperrectangle, or one of the two sentinels. Regular
// boxes always satisfy lower <= upper element-wise: corners that invert in
// any dimension canonicalize to Empty at construction.
class Box {
 public:
  enum class Kind { Regular, Empty, Universal };

  static Box empty() { return Box(Kind::Empty); }
  static Box universal() { return Box(Kind::Universal); }
  static Box from_corners(Vec lower, Vec upper);
  static Box point(Vec p);

  Kind kind() const { return kind_; }
  bool is_regular() const { return kind_ == Kind::Regular; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_universal() const { return kind_ == Kind::Universal; }

  // Regular boxes only.
  const Vec& lower() const;
  const Vec& upper() const;
  Vec center() const;
  Vec offset() const;
  int dim() const;  // -1 for sentinels

  std::string to_string() const;

  bool operator==(const Box& other) const = default;

 private:
  explicit Box(Kind kind) : kind_(kind) {}
  Box(Vec lower, Vec upper)
      : kind_(Kind::Regular), lower_(std::move(lower)), upper_(std::move(upper)) {}

  Kind kind_;
  Vec lower_, upper_;
};

// Element-wise distance |c(A) - c(B)| - o(A) - o(B). Negative entries mean
// overlap along that dimension. Both operands must be Regular.
Vec box_distance(const Box& a, const Box& b);

// || max{0, d(A,B) + 2 o(A) - gamma} ||_2 for a Regular target; zero for a
// Universal target or an Empty A; max{0, o(A)_1 + 1} for an Empty target.
// A Universal operand with a finite target is rejected.
double inclusion_loss(const Box& a, const Box& b, double gamma);

// || max{0, -(d(A,B) + gamma)} ||_2; zero iff every dimension is separated
// by at least -gamma.
double disjoint_loss(const Box& a, const Box& b, double gamma);

// mu(A,B) = || max{0, d(A,B) + gamma} ||_2, the minimal distance between
// points of A and B (at gamma = 0).
double min_point_distance(const Box& a, const Box& b, double gamma);

Box intersect(const Box& a, const Box& b);

// Shift a Regular box by v; sentinels pass through unchanged.
Box translate(const Box& a, const Vec& v);

// Largest per-coordinate violation of inner <= outer (<= 0 when contained,
// +infinity when impossible, e.g. a Regular box inside Empty).
double containment_violation(const Box& inner, const Box& outer);

// inner is contained in outer, allowing eps slack per coordinate.
bool box_contains(const Box& outer, const Box& inner, double eps = 0.0);

}  // namespace box2el
