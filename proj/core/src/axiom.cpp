#include "box2el/axiom.hpp"

#include <cassert>

namespace box2el {

ConceptPtr ConceptExpr::top() {
  static const ConceptPtr t = std::make_shared<ConceptExpr>(ConceptExpr{Kind::Top, "", nullptr, nullptr});
  return t;
}

ConceptPtr ConceptExpr::bottom() {
  static const ConceptPtr b = std::make_shared<ConceptExpr>(ConceptExpr{Kind::Bottom, "", nullptr, nullptr});
  return b;
}

ConceptPtr ConceptExpr::atomic(std::string concept_name) {
  return std::make_shared<ConceptExpr>(ConceptExpr{Kind::Atomic, std::move(concept_name), nullptr, nullptr});
}

ConceptPtr ConceptExpr::nominal(std::string individual_name) {
  return std::make_shared<ConceptExpr>(ConceptExpr{Kind::Nominal, std::move(individual_name), nullptr, nullptr});
}

ConceptPtr ConceptExpr::conj(ConceptPtr l, ConceptPtr r) {
  assert(l && r);
  return std::make_shared<ConceptExpr>(ConceptExpr{Kind::Conjunction, "", std::move(l), std::move(r)});
}

ConceptPtr ConceptExpr::some(std::string role_name, ConceptPtr filler) {
  assert(filler);
  return std::make_shared<ConceptExpr>(ConceptExpr{Kind::Existential, std::move(role_name), std::move(filler), nullptr});
}

std::string ConceptExpr::to_string() const {
  switch (kind) {
    case Kind::Top: return "owl:Thing";
    case Kind::Bottom: return "owl:Nothing";
    case Kind::Atomic: return name;
    case Kind::Nominal: return "ObjectOneOf(" + name + ")";
    case Kind::Conjunction:
      return "ObjectIntersectionOf(" + left->to_string() + " " + right->to_string() + ")";
    case Kind::Existential:
      return "ObjectSomeValuesFrom(" + name + " " + left->to_string() + ")";
  }
  return "?";
}

bool equal(const ConceptExpr& a, const ConceptExpr& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (a.left && (!b.left || !equal(*a.left, *b.left))) return false;
  if (!a.left && b.left) return false;
  if (a.right && (!b.right || !equal(*a.right, *b.right))) return false;
  if (!a.right && b.right) return false;
  return true;
}

Axiom Axiom::subsumption(ConceptPtr sub, ConceptPtr sup) {
  Axiom ax;
  ax.kind = Kind::Subsumption;
  ax.sub = std::move(sub);
  ax.sup = std::move(sup);
  return ax;
}

Axiom Axiom::role_inclusion(std::vector<std::string> chain, std::string sup) {
  assert(!chain.empty());
  Axiom ax;
  ax.kind = Kind::RoleInclusion;
  ax.chain = std::move(chain);
  ax.sup_role = std::move(sup);
  return ax;
}

Axiom Axiom::concept_assertion(ConceptPtr expr, std::string individual) {
  Axiom ax;
  ax.kind = Kind::ConceptAssertion;
  ax.expr = std::move(expr);
  ax.subject = std::move(individual);
  return ax;
}

Axiom Axiom::role_assertion(std::string role, std::string subject, std::string object) {
  Axiom ax;
  ax.kind = Kind::RoleAssertion;
  ax.role = std::move(role);
  ax.subject = std::move(subject);
  ax.object = std::move(object);
  return ax;
}

std::string Axiom::to_string() const {
  switch (kind) {
    case Kind::Subsumption:
      return "SubClassOf(" + sub->to_string() + " " + sup->to_string() + ")";
    case Kind::RoleInclusion: {
      if (chain.size() == 1) return "SubObjectPropertyOf(" + chain[0] + " " + sup_role + ")";
      std::string s = "SubObjectPropertyOf(ObjectPropertyChain(";
      for (size_t i = 0; i < chain.size(); ++i) {
        if (i) s += ' ';
        s += chain[i];
      }
      s += ") " + sup_role + ")";
      return s;
    }
    case Kind::ConceptAssertion:
      return "ClassAssertion(" + expr->to_string() + " " + subject + ")";
    case Kind::RoleAssertion:
      return "ObjectPropertyAssertion(" + role + " " + subject + " " + object + ")";
  }
  return "?";
}

}  // namespace box2el
