#include "box2el/normal_form.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "box2el/errors.hpp"

namespace box2el {

const char* tag_name(NfTag tag) {
  switch (tag) {
    case NfTag::NF1: return "NF1";
    case NfTag::NF2: return "NF2";
    case NfTag::NF3: return "NF3";
    case NfTag::NF4: return "NF4";
    case NfTag::NF5: return "NF5";
    case NfTag::RI1: return "RI1";
    case NfTag::RI2: return "RI2";
  }
  return "?";
}

std::optional<NfTag> tag_from_name(const std::string& name) {
  for (NfTag t : kAllTags) {
    if (name == tag_name(t)) return t;
  }
  return std::nullopt;
}

std::string Atom::to_string() const {
  switch (kind) {
    case Kind::Top: return kTopName;
    case Kind::Bottom: return kBottomName;
    case Kind::Concept: return name;
    case Kind::Nominal: return "{" + name + "}";
  }
  return "?";
}

Atom Atom::parse(const std::string& text) {
  if (text == kTopName) return top();
  if (text == kBottomName) return bottom();
  if (text.size() >= 3 && text.front() == '{' && text.back() == '}') {
    return nominal(text.substr(1, text.size() - 2));
  }
  if (text.empty()) throw DataError("empty atom");
  return named(text);
}

NormalizedAxiom NormalizedAxiom::nf1(Atom c, Atom d) {
  NormalizedAxiom ax;
  ax.tag = NfTag::NF1;
  ax.c = std::move(c);
  ax.d = std::move(d);
  return ax;
}

NormalizedAxiom NormalizedAxiom::nf2(Atom c, Atom d, Atom e) {
  NormalizedAxiom ax;
  ax.tag = NfTag::NF2;
  ax.c = std::move(c);
  ax.d = std::move(d);
  ax.e = std::move(e);
  return ax;
}

NormalizedAxiom NormalizedAxiom::nf3(Atom c, std::string r, Atom d) {
  NormalizedAxiom ax;
  ax.tag = NfTag::NF3;
  ax.c = std::move(c);
  ax.r1 = std::move(r);
  ax.d = std::move(d);
  return ax;
}

NormalizedAxiom NormalizedAxiom::nf4(std::string r, Atom c, Atom d) {
  NormalizedAxiom ax;
  ax.tag = NfTag::NF4;
  ax.r1 = std::move(r);
  ax.c = std::move(c);
  ax.d = std::move(d);
  return ax;
}

NormalizedAxiom NormalizedAxiom::nf5(Atom c, Atom d) {
  NormalizedAxiom ax;
  ax.tag = NfTag::NF5;
  ax.c = std::move(c);
  ax.d = std::move(d);
  return ax;
}

NormalizedAxiom NormalizedAxiom::ri1(std::string r, std::string s) {
  NormalizedAxiom ax;
  ax.tag = NfTag::RI1;
  ax.r1 = std::move(r);
  ax.rsup = std::move(s);
  return ax;
}

NormalizedAxiom NormalizedAxiom::ri2(std::string r1, std::string r2, std::string s) {
  NormalizedAxiom ax;
  ax.tag = NfTag::RI2;
  ax.r1 = std::move(r1);
  ax.r2 = std::move(r2);
  ax.rsup = std::move(s);
  return ax;
}

std::string NormalizedAxiom::to_tsv() const {
  std::string t = tag_name(tag);
  switch (tag) {
    case NfTag::NF1: return t + "\t" + c.to_string() + "\t" + d.to_string();
    case NfTag::NF2: return t + "\t" + c.to_string() + "\t" + d.to_string() + "\t" + e.to_string();
    case NfTag::NF3: return t + "\t" + c.to_string() + "\t" + r1 + "\t" + d.to_string();
    case NfTag::NF4: return t + "\t" + r1 + "\t" + c.to_string() + "\t" + d.to_string();
    case NfTag::NF5: return t + "\t" + c.to_string() + "\t" + d.to_string();
    case NfTag::RI1: return t + "\t" + r1 + "\t" + rsup;
    case NfTag::RI2: return t + "\t" + r1 + "\t" + r2 + "\t" + rsup;
  }
  return t;
}

NormalizedAxiom NormalizedAxiom::from_tsv(const std::string& line) {
  std::vector<std::string> f;
  std::string cur;
  for (char ch : line) {
    if (ch == '\t') {
      f.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  f.push_back(cur);
  if (f.empty()) throw DataError("empty axiom line");
  auto tag = tag_from_name(f[0]);
  if (!tag) throw DataError("unknown normal-form tag '" + f[0] + "'");
  auto need = [&](size_t n) {
    if (f.size() != n + 1) {
      throw DataError(std::string("bad field count for ") + f[0] + " line: '" + line + "'");
    }
  };
  switch (*tag) {
    case NfTag::NF1: need(2); return nf1(Atom::parse(f[1]), Atom::parse(f[2]));
    case NfTag::NF2: need(3); return nf2(Atom::parse(f[1]), Atom::parse(f[2]), Atom::parse(f[3]));
    case NfTag::NF3: need(3); return nf3(Atom::parse(f[1]), f[2], Atom::parse(f[3]));
    case NfTag::NF4: need(3); return nf4(f[1], Atom::parse(f[2]), Atom::parse(f[3]));
    case NfTag::NF5: need(2); return nf5(Atom::parse(f[1]), Atom::parse(f[2]));
    case NfTag::RI1: need(2); return ri1(f[1], f[2]);
    case NfTag::RI2: need(3); return ri2(f[1], f[2], f[3]);
  }
  throw DataError("unreachable");
}

namespace {
std::string atom_fs(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::Top: return "owl:Thing";
    case Atom::Kind::Bottom: return "owl:Nothing";
    case Atom::Kind::Concept: return a.name;
    case Atom::Kind::Nominal: return "ObjectOneOf(" + a.name + ")";
  }
  return "?";
}
}  // namespace

std::string NormalizedAxiom::render() const {
  switch (tag) {
    case NfTag::NF1:
      return "SubClassOf(" + atom_fs(c) + " " + atom_fs(d) + ")";
    case NfTag::NF2:
      return "SubClassOf(ObjectIntersectionOf(" + atom_fs(c) + " " + atom_fs(d) + ") " + atom_fs(e) + ")";
    case NfTag::NF3:
      return "SubClassOf(" + atom_fs(c) + " ObjectSomeValuesFrom(" + r1 + " " + atom_fs(d) + "))";
    case NfTag::NF4:
      return "SubClassOf(ObjectSomeValuesFrom(" + r1 + " " + atom_fs(c) + ") " + atom_fs(d) + ")";
    case NfTag::NF5:
      return "SubClassOf(ObjectIntersectionOf(" + atom_fs(c) + " " + atom_fs(d) + ") owl:Nothing)";
    case NfTag::RI1:
      return "SubObjectPropertyOf(" + r1 + " " + rsup + ")";
    case NfTag::RI2:
      return "SubObjectPropertyOf(ObjectPropertyChain(" + r1 + " " + r2 + ") " + rsup + ")";
  }
  return "?";
}

size_t axiom_count(const TaggedAxioms& axioms) {
  size_t n = 0;
  for (const auto& [tag, list] : axioms) n += list.size();
  return n;
}

const std::vector<NormalizedAxiom>& NormalizedOntology::list(NfTag tag) const {
  static const std::vector<NormalizedAxiom> empty;
  auto it = axioms.find(tag);
  return it == axioms.end() ? empty : it->second;
}

std::vector<NormalizedAxiom> NormalizedOntology::all() const {
  std::vector<NormalizedAxiom> out;
  out.reserve(size());
  for (NfTag t : kAllTags) {
    const auto& l = list(t);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

void write_axioms_tsv(std::ostream& out, const TaggedAxioms& axioms) {
  for (NfTag t : kAllTags) {
    auto it = axioms.find(t);
    if (it == axioms.end()) continue;
    for (const auto& ax : it->second) out << ax.to_tsv() << '\n';
  }
}

TaggedAxioms read_axioms_tsv(std::istream& in) {
  TaggedAxioms out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    try {
      NormalizedAxiom ax = NormalizedAxiom::from_tsv(line);
      out[ax.tag].push_back(std::move(ax));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace box2el
