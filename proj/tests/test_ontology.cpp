#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "box2el/errors.hpp"
#include "box2el/normalize.hpp"
#include "box2el/parser.hpp"
#include "box2el/rng.hpp"
#include "box2el/saturation.hpp"

using namespace box2el;

namespace {

const char* kFamilyExample = R"(
# family domain
Declaration(Class(Father))
Declaration(Class(Mother))
Declaration(Class(Parent))
Declaration(Class(Male))
Declaration(Class(Female))
Declaration(Class(Child))
Declaration(ObjectProperty(hasParent))
Declaration(ObjectProperty(relatedTo))
Declaration(NamedIndividual(Alex))
Declaration(NamedIndividual(Bob))

SubClassOf(Father ObjectIntersectionOf(Parent Male))
SubClassOf(Mother ObjectIntersectionOf(Parent Female))
SubClassOf(Child ObjectSomeValuesFrom(hasParent Father))
SubClassOf(Child ObjectSomeValuesFrom(hasParent Mother))
SubObjectPropertyOf(hasParent relatedTo)

ClassAssertion(Father Alex)
ClassAssertion(Child Bob)
ObjectPropertyAssertion(hasParent Bob Alex)
)";

std::set<std::pair<std::string, std::string>> pair_names(
    const std::vector<std::pair<Atom, Atom>>& pairs) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : pairs) out.insert({a.to_string(), b.to_string()});
  return out;
}

}  // namespace

TEST_CASE("parser handles the family example") {
  ParsedOntology parsed = parse_ontology(kFamilyExample);
  CHECK(parsed.axioms.size() == 8);
  CHECK(parsed.signature.concepts().size() == 8);  // 6 named + Top + Bottom
  CHECK(parsed.signature.roles().size() == 2);
  CHECK(parsed.signature.individuals().size() == 2);

  const Axiom& father = parsed.axioms[0];
  CHECK(father.kind == Axiom::Kind::Subsumption);
  CHECK(father.sub->kind == ConceptExpr::Kind::Atomic);
  CHECK(father.sub->name == "Father");
  CHECK(father.sup->kind == ConceptExpr::Kind::Conjunction);
  CHECK(father.sup->left->name == "Parent");
  CHECK(father.sup->right->name == "Male");

  const Axiom& assertion = parsed.axioms[5];
  CHECK(assertion.kind == Axiom::Kind::ConceptAssertion);
  CHECK(assertion.expr->name == "Father");
  CHECK(assertion.subject == "Alex");
}

TEST_CASE("empty document parses to the bare signature") {
  ParsedOntology parsed = parse_ontology("  # nothing here\n\n");
  CHECK(parsed.axioms.empty());
  CHECK(parsed.signature.concepts() == std::vector<std::string>{kBottomName, kTopName});
}

TEST_CASE("parser reports positions and errors") {
  try {
    parse_ontology("SubClassOf(A\n  ObjectIntersectionOf(B C)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_ontology("Declaration(Class(A))\nDeclaration(Class(A))"), ParseError);
  CHECK_THROWS_AS(parse_ontology("Declaration(Class(owl:Thing))"), ParseError);
  CHECK_THROWS_AS(parse_ontology("Declaration(Class(__N1))"), ParseError);
  // a name cannot be both a class and a role
  CHECK_THROWS_AS(parse_ontology("Declaration(Class(A))\nDeclaration(ObjectProperty(A))"),
                  ParseError);

  ParseOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(parse_ontology("SubClassOf(A B)", strict), ParseError);
  CHECK_NOTHROW(parse_ontology(
      "Declaration(Class(A))\nDeclaration(Class(B))\nSubClassOf(A B)", strict));
}

TEST_CASE("transform_abox rewrites assertions") {
  ParsedOntology parsed = parse_ontology(kFamilyExample);
  std::vector<Axiom> out = transform_abox(parsed.axioms);
  CHECK(out.size() == parsed.axioms.size());
  for (const auto& ax : out) {
    CHECK(ax.kind != Axiom::Kind::ConceptAssertion);
    CHECK(ax.kind != Axiom::Kind::RoleAssertion);
  }
  // Father(Alex) -> {Alex} <= Father
  CHECK(out[5].to_string() == "SubClassOf(ObjectOneOf(Alex) Father)");
  // hasParent(Bob, Alex) -> {Bob} <= exists hasParent.{Alex}
  CHECK(out[7].to_string() ==
        "SubClassOf(ObjectOneOf(Bob) ObjectSomeValuesFrom(hasParent ObjectOneOf(Alex)))");
  // pure TBox input is untouched
  std::vector<Axiom> tbox(out.begin(), out.begin() + 5);
  std::vector<Axiom> again = transform_abox(tbox);
  for (size_t i = 0; i < tbox.size(); ++i) CHECK(again[i].to_string() == tbox[i].to_string());
}

TEST_CASE("normalize splits right conjunctions") {
  ParsedOntology parsed = parse_ontology("SubClassOf(Father ObjectIntersectionOf(Parent Male))");
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  REQUIRE(onto.list(NfTag::NF1).size() == 2);
  CHECK(onto.list(NfTag::NF1)[0].to_tsv() == "NF1\tFather\tParent");
  CHECK(onto.list(NfTag::NF1)[1].to_tsv() == "NF1\tFather\tMale");
  CHECK(onto.size() == 2);
  CHECK(onto.stats.fresh_concepts == 0);
}

TEST_CASE("normalize keeps axioms already in normal form") {
  ParsedOntology parsed =
      parse_ontology("SubClassOf(Child ObjectSomeValuesFrom(hasParent Father))");
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  REQUIRE(onto.list(NfTag::NF3).size() == 1);
  CHECK(onto.list(NfTag::NF3)[0].to_tsv() == "NF3\tChild\thasParent\tFather");
  CHECK(onto.size() == 1);
}

TEST_CASE("normalize names complex fillers on the left") {
  // exists r.(A and B) <= D becomes a fresh name X with NF2(A,B,X) and NF4(r,X,D)
  ParsedOntology parsed = parse_ontology(
      "SubClassOf(ObjectSomeValuesFrom(r ObjectIntersectionOf(A B)) D)");
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  REQUIRE(onto.list(NfTag::NF2).size() == 1);
  REQUIRE(onto.list(NfTag::NF4).size() == 1);
  CHECK(onto.size() == 2);
  const auto& nf2 = onto.list(NfTag::NF2)[0];
  const auto& nf4 = onto.list(NfTag::NF4)[0];
  CHECK(nf2.c.name == "A");
  CHECK(nf2.d.name == "B");
  CHECK(nf2.e.name == nf4.c.name);  // one shared fresh name
  CHECK(nf4.c.name.rfind("__N", 0) == 0);
  CHECK(onto.provenance.count(nf4.c.name) == 1);
  CHECK(onto.signature.has_concept(nf4.c.name));
}

TEST_CASE("normalize handles nested right-hand sides and bottom") {
  ParsedOntology parsed = parse_ontology(
      "SubClassOf(A ObjectSomeValuesFrom(r ObjectIntersectionOf(B C)))\n"
      "SubClassOf(ObjectIntersectionOf(D E) owl:Nothing)\n"
      "SubClassOf(F owl:Nothing)\n");
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  CHECK(onto.list(NfTag::NF3).size() == 1);   // A <= exists r.X
  CHECK(onto.list(NfTag::NF1).size() == 3);   // X <= B, X <= C, F <= Bottom
  CHECK(onto.list(NfTag::NF5).size() == 1);   // D and E <= Bottom
  bool found_bottom = false;
  for (const auto& ax : onto.list(NfTag::NF1)) {
    if (ax.c.name == "F") {
      CHECK(ax.d.is_bottom());
      found_bottom = true;
    }
  }
  CHECK(found_bottom);
}

TEST_CASE("normalize drops tautologies and rejects NF6") {
  ParsedOntology parsed = parse_ontology(
      "SubClassOf(A owl:Thing)\n"
      "SubClassOf(owl:Nothing B)\n"
      "SubClassOf(ObjectSomeValuesFrom(r owl:Nothing) C)\n");
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  CHECK(onto.size() == 0);
  CHECK(onto.stats.tautologies_dropped == 3);

  ParsedOntology nf6 = parse_ontology("SubClassOf(ObjectSomeValuesFrom(r C) owl:Nothing)");
  CHECK_THROWS_AS(normalize(nf6.signature, nf6.axioms), DataError);
}

TEST_CASE("normalize simplifies Top conjuncts") {
  ParsedOntology parsed = parse_ontology("SubClassOf(ObjectIntersectionOf(A owl:Thing) B)");
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  REQUIRE(onto.list(NfTag::NF1).size() == 1);
  CHECK(onto.list(NfTag::NF1)[0].to_tsv() == "NF1\tA\tB");
}

TEST_CASE("role chains decompose left-associatively") {
  ParsedOntology parsed =
      parse_ontology("SubObjectPropertyOf(ObjectPropertyChain(r1 r2 r3) s)");
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  REQUIRE(onto.list(NfTag::RI2).size() == 2);
  const auto& first = onto.list(NfTag::RI2)[0];
  const auto& second = onto.list(NfTag::RI2)[1];
  CHECK(first.r1 == "r1");
  CHECK(first.r2 == "r2");
  CHECK(first.rsup.rfind("__R", 0) == 0);
  CHECK(second.r1 == first.rsup);
  CHECK(second.r2 == "r3");
  CHECK(second.rsup == "s");

  ParsedOntology single = parse_ontology("SubObjectPropertyOf(r s)");
  NormalizedOntology so = normalize(single.signature, single.axioms);
  CHECK(so.list(NfTag::RI1).size() == 1);
}

TEST_CASE("normalization is deterministic and duplicate-free") {
  ParsedOntology parsed = parse_ontology(kFamilyExample);
  NormalizedOntology a = normalize(parsed.signature, transform_abox(parsed.axioms));
  NormalizedOntology b = normalize(parsed.signature, transform_abox(parsed.axioms));
  std::ostringstream sa, sb;
  write_axioms_tsv(sa, a.axioms);
  write_axioms_tsv(sb, b.axioms);
  CHECK(sa.str() == sb.str());
  for (NfTag t : kAllTags) {
    auto list = a.list(t);
    std::set<NormalizedAxiom> seen(list.begin(), list.end());
    CHECK(seen.size() == list.size());
  }

  ParsedOntology dup = parse_ontology("SubClassOf(A B)\nSubClassOf(A B)");
  NormalizedOntology d = normalize(dup.signature, dup.axioms);
  CHECK(d.list(NfTag::NF1).size() == 1);
  CHECK(d.stats.duplicates_dropped == 1);
}

TEST_CASE("tsv round trip") {
  ParsedOntology parsed = parse_ontology(kFamilyExample);
  NormalizedOntology onto = normalize_ontology(parsed.signature, parsed.axioms);
  std::ostringstream os;
  write_axioms_tsv(os, onto.axioms);
  std::istringstream is(os.str());
  TaggedAxioms back = read_axioms_tsv(is);
  CHECK(back == onto.axioms);
}

TEST_CASE("saturation on the family example") {
  ParsedOntology parsed = parse_ontology(kFamilyExample);
  NormalizedOntology onto = normalize_ontology(parsed.signature, parsed.axioms);
  auto pairs = pair_names(saturate_nf1(onto));
  CHECK(pairs.count({"Child", "Child"}));
  CHECK(pairs.count({"Father", "Parent"}));
  CHECK(pairs.count({"Father", "Male"}));
  CHECK(pairs.count({"Father", "Top"}));
  // ABox: {Alex} <= Father <= Parent
  CHECK(pairs.count({"{Alex}", "Parent"}));
  CHECK_FALSE(pairs.count({"Parent", "Father"}));
}

TEST_CASE("saturation of the empty ontology is reflexivity plus Top") {
  ParsedOntology parsed = parse_ontology("Declaration(Class(A))");
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  auto pairs = pair_names(saturate_nf1(onto));
  CHECK(pairs == std::set<std::pair<std::string, std::string>>{{"A", "A"}, {"A", "Top"}});
}

TEST_CASE("saturation derives transitive closure") {
  ParsedOntology parsed = parse_ontology("SubClassOf(A B)\nSubClassOf(B C)");
  auto pairs = pair_names(saturate_nf1(normalize(parsed.signature, parsed.axioms)));
  CHECK(pairs.count({"A", "C"}));
}

TEST_CASE("saturation propagates unsatisfiability") {
  // A <= exists r.B, B <= Bottom  =>  A <= Bottom  =>  A below everything
  ParsedOntology parsed = parse_ontology(
      "SubClassOf(A ObjectSomeValuesFrom(r B))\nSubClassOf(B owl:Nothing)\nDeclaration(Class(Z))");
  auto pairs = pair_names(saturate_nf1(normalize(parsed.signature, parsed.axioms)));
  CHECK(pairs.count({"A", "Bottom"}));
  CHECK(pairs.count({"A", "Z"}));
}

TEST_CASE("saturation uses role inclusions and chains") {
  ParsedOntology parsed = parse_ontology(
      "SubClassOf(A ObjectSomeValuesFrom(r B))\n"
      "SubObjectPropertyOf(r s)\n"
      "SubClassOf(ObjectSomeValuesFrom(s B) D)\n"
      "SubClassOf(B ObjectSomeValuesFrom(r C))\n"
      "SubObjectPropertyOf(ObjectPropertyChain(r r) t)\n"
      "SubClassOf(ObjectSomeValuesFrom(t C) E)\n");
  auto pairs = pair_names(saturate_nf1(normalize(parsed.signature, parsed.axioms)));
  CHECK(pairs.count({"A", "D"}));  // via r <= s
  CHECK(pairs.count({"A", "E"}));  // via r o r <= t
}

TEST_CASE("saturation derivation cap") {
  std::ostringstream os;
  for (int i = 0; i < 60; ++i) os << "SubClassOf(C" << i << " C" << i + 1 << ")\n";
  ParsedOntology parsed = parse_ontology(os.str());
  NormalizedOntology onto = normalize(parsed.signature, parsed.axioms);
  SaturationLimits limits;
  limits.max_derivations = 10;
  CHECK_THROWS_AS(saturate_nf1(onto, limits), ResourceLimitError);
  CHECK_NOTHROW(saturate_nf1(onto));
}

TEST_CASE("saturation is monotone under added axioms") {
  Rng rng(31);
  for (int it = 0; it < 20; ++it) {
    std::ostringstream os;
    int n_names = 4 + static_cast<int>(rng.below(4));
    int n_axioms = 3 + static_cast<int>(rng.below(6));
    for (int i = 0; i < n_axioms; ++i) {
      os << "SubClassOf(C" << rng.below(n_names) << " C" << rng.below(n_names) << ")\n";
    }
    ParsedOntology base = parse_ontology(os.str());
    os << "SubClassOf(C0 C" << n_names - 1 << ")\n";
    ParsedOntology extended = parse_ontology(os.str());
    auto before = pair_names(saturate_nf1(normalize(base.signature, base.axioms)));
    auto after = pair_names(saturate_nf1(normalize(extended.signature, extended.axioms)));
    CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
  }
}

// Conservative extension: entailments over the original names are the same
// whether an equivalent ontology is stated with complex axioms (forcing
// fresh names during normalization) or pre-split by hand.
TEST_CASE("normalization preserves entailments over the input signature") {
  Rng rng(37);
  for (int it = 0; it < 30; ++it) {
    const int n_names = 5 + static_cast<int>(rng.below(10));
    const int n_roles = 1 + static_cast<int>(rng.below(2));
    auto name = [](int i) { return "C" + std::to_string(i); };
    auto role = [](int i) { return "r" + std::to_string(i); };

    std::ostringstream complex_doc, hand_doc;
    const int n_axioms = 5 + static_cast<int>(rng.below(25));
    for (int i = 0; i < n_axioms; ++i) {
      int kind = static_cast<int>(rng.below(4));
      int a = static_cast<int>(rng.below(n_names));
      int b = static_cast<int>(rng.below(n_names));
      int c = static_cast<int>(rng.below(n_names));
      int r = static_cast<int>(rng.below(n_roles));
      switch (kind) {
        case 0:
          // A <= B and C, vs the two split axioms
          complex_doc << "SubClassOf(" << name(a) << " ObjectIntersectionOf(" << name(b) << " "
                      << name(c) << "))\n";
          hand_doc << "SubClassOf(" << name(a) << " " << name(b) << ")\n";
          hand_doc << "SubClassOf(" << name(a) << " " << name(c) << ")\n";
          break;
        case 1:
          complex_doc << "SubClassOf(ObjectIntersectionOf(" << name(a) << " " << name(b) << ") "
                      << name(c) << ")\n";
          hand_doc << "SubClassOf(ObjectIntersectionOf(" << name(a) << " " << name(b) << ") "
                   << name(c) << ")\n";
          break;
        case 2:
          complex_doc << "SubClassOf(" << name(a) << " ObjectSomeValuesFrom(" << role(r) << " "
                      << name(b) << "))\n";
          hand_doc << "SubClassOf(" << name(a) << " ObjectSomeValuesFrom(" << role(r) << " "
                   << name(b) << "))\n";
          break;
        case 3:
          // exists r.(A and B) <= C, vs naming the filler by hand
          complex_doc << "SubClassOf(ObjectSomeValuesFrom(" << role(r) << " ObjectIntersectionOf("
                      << name(a) << " " << name(b) << ")) " << name(c) << ")\n";
          hand_doc << "SubClassOf(ObjectIntersectionOf(" << name(a) << " " << name(b) << ") X"
                   << i << ")\n";
          hand_doc << "SubClassOf(ObjectSomeValuesFrom(" << role(r) << " X" << i << ") "
                   << name(c) << ")\n";
          break;
      }
    }

    ParsedOntology complex_parsed = parse_ontology(complex_doc.str());
    ParsedOntology hand_parsed = parse_ontology(hand_doc.str());
    auto complex_pairs =
        pair_names(saturate_nf1(normalize(complex_parsed.signature, complex_parsed.axioms)));
    auto hand_pairs =
        pair_names(saturate_nf1(normalize(hand_parsed.signature, hand_parsed.axioms)));

    auto restrict = [&](const std::set<std::pair<std::string, std::string>>& pairs) {
      std::set<std::pair<std::string, std::string>> out;
      for (const auto& [x, y] : pairs) {
        bool x_orig = x.rfind("C", 0) == 0 || x == "Top" || x == "Bottom";
        bool y_orig = y.rfind("C", 0) == 0 || y == "Top" || y == "Bottom";
        if (x_orig && y_orig) out.insert({x, y});
      }
      return out;
    };
    CHECK(restrict(complex_pairs) == restrict(hand_pairs));
  }
}
