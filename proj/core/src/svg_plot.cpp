#include "box2el/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "box2el/box.hpp"
#include "box2el/errors.hpp"

namespace box2el {

namespace {

struct Frame {
  double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
  double scale = 1;
  static constexpr double kWidth = 900.0;

  void include(double x, double y) {
    min_x = std::min(min_x, x);
    min_y = std::min(min_y, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }

  void finish() {
    double pad = 0.08 * std::max(max_x - min_x, max_y - min_y) + 0.05;
    min_x -= pad;
    min_y -= pad;
    max_x += pad;
    max_y += pad;
    scale = kWidth / (max_x - min_x);
  }

  double x(double wx) const { return (wx - min_x) * scale; }
  // SVG y grows downward.
  double y(double wy) const { return (max_y - wy) * scale; }
  double w(double len) const { return len * scale; }
  double height() const { return (max_y - min_y) * scale; }
};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void rect(std::ostringstream& os, const Frame& f, const Box& b, const std::string& style) {
  os << "  <rect x=\"" << num(f.x(b.lower()[0])) << "\" y=\"" << num(f.y(b.upper()[1]))
     << "\" width=\"" << num(f.w(b.upper()[0] - b.lower()[0])) << "\" height=\""
     << num(f.w(b.upper()[1] - b.lower()[1])) << "\" " << style << "/>\n";
}

void label(std::ostringstream& os, const Frame& f, double wx, double wy, const std::string& text,
           const char* cls) {
  os << "  <text class=\"" << cls << "\" x=\"" << num(f.x(wx)) << "\" y=\"" << num(f.y(wy))
     << "\">" << esc(text) << "</text>\n";
}

}  // namespace

std::string render_svg(const EmbeddingStore& store) {
  if (store.dim() != 2) {
    throw DataError("SVG export needs a 2-dimensional store (got dim=" +
                    std::to_string(store.dim()) + ")");
  }

  Frame frame;
  bool any = false;
  auto include_box = [&](const Box& b) {
    if (!b.is_regular()) return;
    if (!any) {
      frame.min_x = frame.max_x = b.lower()[0];
      frame.min_y = frame.max_y = b.lower()[1];
      any = true;
    }
    frame.include(b.lower()[0], b.lower()[1]);
    frame.include(b.upper()[0], b.upper()[1]);
  };

  const auto& sig = store.signature();
  for (const auto& c : store.embedded_concepts()) include_box(store.concept_box(Atom::named(c)));
  for (const auto& r : sig.roles()) {
    include_box(store.role_head(r));
    include_box(store.role_tail(r));
  }
  for (const auto& i : sig.individuals()) include_box(store.concept_box(Atom::nominal(i)));
  frame.finish();

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(Frame::kWidth)
     << "\" height=\"" << num(frame.height()) << "\" viewBox=\"0 0 " << num(Frame::kWidth) << " "
     << num(frame.height()) << "\">\n";
  os << "  <defs>\n"
     << "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"7\" "
        "markerHeight=\"7\" orient=\"auto-start-reverse\">\n"
     << "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#444\"/>\n"
     << "    </marker>\n"
     << "  </defs>\n";
  os << "  <style>text{font:13px sans-serif}.role-label{fill:#1859a9}"
        ".concept-label{fill:#333}.ind-label{fill:#7a242c}</style>\n";

  for (const auto& r : sig.roles()) {
    Box head = store.role_head(r);
    Box tail = store.role_tail(r);
    rect(os, frame, head, "fill=\"#5b8ff9\" fill-opacity=\"0.18\" stroke=\"#1859a9\" "
                          "stroke-dasharray=\"6 3\"");
    label(os, frame, head.lower()[0] + 0.02, head.upper()[1] - 0.02, r + " (head)", "role-label");
    rect(os, frame, tail, "fill=\"#5b8ff9\" fill-opacity=\"0.18\" stroke=\"#1859a9\" "
                          "stroke-dasharray=\"6 3\"");
    label(os, frame, tail.lower()[0] + 0.02, tail.upper()[1] - 0.02, r + " (tail)", "role-label");
  }

  for (const auto& c : store.embedded_concepts()) {
    Box b = store.concept_box(Atom::named(c));
    os << "  <g class=\"concept\">\n  ";
    rect(os, frame, b, "fill=\"#f2a950\" fill-opacity=\"0.25\" stroke=\"#b1702a\"");
    os << "  ";
    label(os, frame, b.lower()[0] + 0.02, b.lower()[1] + 0.04, c, "concept-label");
    os << "  </g>\n";
  }

  for (const auto& i : sig.individuals()) {
    Box p = store.concept_box(Atom::nominal(i));
    os << "  <circle cx=\"" << num(frame.x(p.lower()[0])) << "\" cy=\""
       << num(frame.y(p.lower()[1])) << "\" r=\"3\" fill=\"#7a242c\"/>\n";
    label(os, frame, p.lower()[0] + 0.03, p.lower()[1] + 0.03, i, "ind-label");
  }

  // Bump arrows start at the owner's center.
  auto bump_arrow = [&](const Atom& atom, const Vec& origin) {
    Vec b = store.bump_of(atom);
    if (std::hypot(b[0], b[1]) < 1e-9) return;
    os << "  <line x1=\"" << num(frame.x(origin[0])) << "\" y1=\"" << num(frame.y(origin[1]))
       << "\" x2=\"" << num(frame.x(origin[0] + b[0])) << "\" y2=\""
       << num(frame.y(origin[1] + b[1]))
       << "\" stroke=\"#444\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>\n";
  };
  for (const auto& c : store.embedded_concepts()) {
    bump_arrow(Atom::named(c), store.concept_box(Atom::named(c)).center());
  }
  for (const auto& i : sig.individuals()) {
    bump_arrow(Atom::nominal(i), store.concept_box(Atom::nominal(i)).center());
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace box2el
