#pragma once

#include <memory>
#include <string>
#include <vector>

namespace box2el {

struct ConceptExpr;
using ConceptPtr = std::shared_ptr<const ConceptExpr>;

// An EL concept expression:
//   Top | Bottom | A | {a} | C and D | exists r.C
struct ConceptExpr {
  enum class Kind { Top, Bottom, Atomic, Nominal, Conjunction, Existential };

  Kind kind = Kind::Top;
  // Atomic: concept name. Nominal: individual name. Existential: role name.
  std::string name;
  ConceptPtr left;   // Conjunction left operand; Existential filler
  ConceptPtr right;  // Conjunction right operand

  static ConceptPtr top();
  static ConceptPtr bottom();
  static ConceptPtr atomic(std::string concept_name);
  static ConceptPtr nominal(std::string individual_name);
  static ConceptPtr conj(ConceptPtr l, ConceptPtr r);
  static ConceptPtr some(std::string role_name, ConceptPtr filler);

  bool is_atomic_level() const {
    return kind == Kind::Top || kind == Kind::Bottom || kind == Kind::Atomic ||
           kind == Kind::Nominal;
  }

  // Functional-syntax rendering, e.g. ObjectIntersectionOf(Parent Male).
  std::string to_string() const;
};

bool equal(const ConceptExpr& a, const ConceptExpr& b);

struct Axiom {
  enum class Kind { Subsumption, RoleInclusion, ConceptAssertion, RoleAssertion };

  Kind kind = Kind::Subsumption;

  // Subsumption: sub <= sup. ConceptAssertion: expr(individual).
  ConceptPtr sub, sup, expr;
  // RoleInclusion: chain (non-empty) <= sup_role.
  std::vector<std::string> chain;
  std::string sup_role;
  // RoleAssertion: role(subject, object); ConceptAssertion uses subject.
  std::string role, subject, object;

  static Axiom subsumption(ConceptPtr sub, ConceptPtr sup);
  static Axiom role_inclusion(std::vector<std::string> chain, std::string sup);
  static Axiom concept_assertion(ConceptPtr expr, std::string individual);
  static Axiom role_assertion(std::string role, std::string subject, std::string object);

  std::string to_string() const;
};

}  // namespace box2el
