#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "box2el/signature.hpp"

namespace box2el {

enum class NfTag { NF1, NF2, NF3, NF4, NF5, RI1, RI2 };

inline constexpr NfTag kAllTags[] = {NfTag::NF1, NfTag::NF2, NfTag::NF3,
                                     NfTag::NF4, NfTag::NF5, NfTag::RI1,
                                     NfTag::RI2};

const char* tag_name(NfTag tag);
std::optional<NfTag> tag_from_name(const std::string& name);

// An atomic-level concept: a concept name, a nominal, or a sentinel.
struct Atom {
  enum class Kind { Top, Bottom, Concept, Nominal };

  Kind kind = Kind::Concept;
  std::string name;  // empty for sentinels

  static Atom top() { return {Kind::Top, ""}; }
  static Atom bottom() { return {Kind::Bottom, ""}; }
  static Atom named(std::string concept_name) { return {Kind::Concept, std::move(concept_name)}; }
  static Atom nominal(std::string individual_name) { return {Kind::Nominal, std::move(individual_name)}; }

  bool is_sentinel() const { return kind == Kind::Top || kind == Kind::Bottom; }
  bool is_top() const { return kind == Kind::Top; }
  bool is_bottom() const { return kind == Kind::Bottom; }

  // "X" for concepts, "{a}" for nominals, "Top"/"Bottom" for sentinels.
  std::string to_string() const;
  static Atom parse(const std::string& text);

  auto operator<=>(const Atom&) const = default;
};

// One axiom in normal form. Field usage per tag:
//   NF1: c <= d
//   NF2: c and d <= e
//   NF3: c <= exists r1.d
//   NF4: exists r1.c <= d
//   NF5: c and d <= Bottom
//   RI1: r1 <= rsup
//   RI2: r1 o r2 <= rsup
struct NormalizedAxiom {
  NfTag tag = NfTag::NF1;
  Atom c, d, e;
  std::string r1, r2, rsup;

  static NormalizedAxiom nf1(Atom c, Atom d);
  static NormalizedAxiom nf2(Atom c, Atom d, Atom e);
  static NormalizedAxiom nf3(Atom c, std::string r, Atom d);
  static NormalizedAxiom nf4(std::string r, Atom c, Atom d);
  static NormalizedAxiom nf5(Atom c, Atom d);
  static NormalizedAxiom ri1(std::string r, std::string s);
  static NormalizedAxiom ri2(std::string r1, std::string r2, std::string s);

  // Tab-separated external form, e.g. "NF3\tC\tr\tD".
  std::string to_tsv() const;
  static NormalizedAxiom from_tsv(const std::string& line);

  // Functional-syntax rendering for reports.
  std::string render() const;

  auto operator<=>(const NormalizedAxiom&) const = default;
};

using TaggedAxioms = std::map<NfTag, std::vector<NormalizedAxiom>>;

size_t axiom_count(const TaggedAxioms& axioms);

struct NormalizeStats {
  int tautologies_dropped = 0;
  int assertions_transformed = 0;
  int fresh_concepts = 0;
  int fresh_roles = 0;
  int duplicates_dropped = 0;
};

struct NormalizedOntology {
  Signature signature;
  TaggedAxioms axioms;
  // Fresh auxiliary name -> functional-syntax rendering of the expression
  // it stands for.
  std::map<std::string, std::string> provenance;
  NormalizeStats stats;

  const std::vector<NormalizedAxiom>& list(NfTag tag) const;
  size_t size() const { return axiom_count(axioms); }
  std::vector<NormalizedAxiom> all() const;
};

void write_axioms_tsv(std::ostream& out, const TaggedAxioms& axioms);
TaggedAxioms read_axioms_tsv(std::istream& in);

}  // namespace box2el
