#include "box2el/box.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace box2el {

namespace {

void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

void require_regular(const Box& b, const char* what) {
  if (!b.is_regular()) {
    throw std::invalid_argument(std::string(what) + ": sentinel operand");
  }
}

}  // namespace

Box Box::from_corners(Vec lower, Vec upper) {
  require_same_dim(lower, upper, "Box::from_corners");
  if (lower.empty()) throw std::invalid_argument("Box::from_corners: zero dimensions");
  for (size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) return Box(Kind::Empty);
  }
  return Box(std::move(lower), std::move(upper));
}

Box Box::point(Vec p) {
  Vec q = p;
  return Box(std::move(p), std::move(q));
}

const Vec& Box::lower() const {
  if (!is_regular()) throw std::invalid_argument("Box::lower on a sentinel");
  return lower_;
}

const Vec& Box::upper() const {
  if (!is_regular()) throw std::invalid_argument("Box::upper on a sentinel");
  return upper_;
}

Vec Box::center() const {
  const Vec& l = lower();
  const Vec& u = upper_;
  Vec c(l.size());
  for (size_t i = 0; i < l.size(); ++i) c[i] = 0.5 * (l[i] + u[i]);
  return c;
}

Vec Box::offset() const {
  const Vec& l = lower();
  const Vec& u = upper_;
  Vec o(l.size());
  for (size_t i = 0; i < l.size(); ++i) o[i] = 0.5 * (u[i] - l[i]);
  return o;
}

int Box::dim() const { return is_regular() ? static_cast<int>(lower_.size()) : -1; }

std::string Box::to_string() const {
  switch (kind_) {
    case Kind::Empty: return "Empty";
    case Kind::Universal: return "Universal";
    case Kind::Regular: {
      std::ostringstream os;
      os << "[";
      for (size_t i = 0; i < lower_.size(); ++i) os << (i ? "," : "") << lower_[i];
      os << "]..[";
      for (size_t i = 0; i < upper_.size(); ++i) os << (i ? "," : "") << upper_[i];
      os << "]";
      return os.str();
    }
  }
  return "?";
}

Vec box_distance(const Box& a, const Box& b) {
  require_regular(a, "box_distance");
  require_regular(b, "box_distance");
  require_same_dim(a.lower(), b.lower(), "box_distance");
  const size_t n = a.lower().size();
  Vec d(n);
  for (size_t i = 0; i < n; ++i) {
    double ca = 0.5 * (a.lower()[i] + a.upper()[i]);
    double cb = 0.5 * (b.lower()[i] + b.upper()[i]);
    double oa = 0.5 * (a.upper()[i] - a.lower()[i]);
    double ob = 0.5 * (b.upper()[i] - b.lower()[i]);
    // offsets grouped so the result is exactly symmetric in A and B
    d[i] = std::abs(ca - cb) - (oa + ob);
  }
  return d;
}

double inclusion_loss(const Box& a, const Box& b, double gamma) {
  if (b.is_universal()) return 0.0;
  if (a.is_empty()) return 0.0;
  if (b.is_empty()) {
    require_regular(a, "inclusion_loss");
    return std::max(0.0, a.offset()[0] + 1.0);
  }
  if (a.is_universal()) {
    throw std::invalid_argument("inclusion_loss: Universal operand with a finite target");
  }
  Vec d = box_distance(a, b);
  Vec oa = a.offset();
  double sum = 0.0;
  for (size_t i = 0; i < d.size(); ++i) {
    double t = std::max(0.0, d[i] + 2.0 * oa[i] - gamma);
    sum += t * t;
  }
  return std::sqrt(sum);
}

double disjoint_loss(const Box& a, const Box& b, double gamma) {
  require_regular(a, "disjoint_loss");
  require_regular(b, "disjoint_loss");
  Vec d = box_distance(a, b);
  double sum = 0.0;
  for (double di : d) {
    double t = std::max(0.0, -(di + gamma));
    sum += t * t;
  }
  return std::sqrt(sum);
}

double min_point_distance(const Box& a, const Box& b, double gamma) {
  require_regular(a, "min_point_distance");
  require_regular(b, "min_point_distance");
  Vec d = box_distance(a, b);
  double sum = 0.0;
  for (double di : d) {
    double t = std::max(0.0, di + gamma);
    sum += t * t;
  }
  return std::sqrt(sum);
}

Box intersect(const Box& a, const Box& b) {
  if (a.is_empty() || b.is_empty()) return Box::empty();
  if (a.is_universal()) return b;
  if (b.is_universal()) return a;
  require_same_dim(a.lower(), b.lower(), "intersect");
  const size_t n = a.lower().size();
  Vec lo(n), up(n);
  for (size_t i = 0; i < n; ++i) {
    lo[i] = std::max(a.lower()[i], b.lower()[i]);
    up[i] = std::min(a.upper()[i], b.upper()[i]);
  }
  return Box::from_corners(std::move(lo), std::move(up));
}

Box translate(const Box& a, const Vec& v) {
  if (!a.is_regular()) return a;
  require_same_dim(a.lower(), v, "translate");
  Vec lo = a.lower(), up = a.upper();
  for (size_t i = 0; i < v.size(); ++i) {
    lo[i] += v[i];
    up[i] += v[i];
  }
  return Box::from_corners(std::move(lo), std::move(up));
}

double containment_violation(const Box& inner, const Box& outer) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (inner.is_empty()) return 0.0;
  if (outer.is_universal()) return 0.0;
  if (outer.is_empty()) return kInf;   // inner is non-empty here
  if (inner.is_universal()) return kInf;
  require_same_dim(inner.lower(), outer.lower(), "containment_violation");
  double worst = -kInf;
  for (size_t i = 0; i < inner.lower().size(); ++i) {
    worst = std::max(worst, outer.lower()[i] - inner.lower()[i]);
    worst = std::max(worst, inner.upper()[i] - outer.upper()[i]);
  }
  return worst;
}

bool box_contains(const Box& outer, const Box& inner, double eps) {
  return containment_violation(inner, outer) <= eps;
}

}  // namespace box2el
