#include "box2el/normalize.hpp"

#include <deque>
#include <set>

#include "box2el/errors.hpp"

namespace box2el {

std::vector<Axiom> transform_abox(const std::vector<Axiom>& axioms) {
  std::vector<Axiom> out;
  out.reserve(axioms.size());
  for (const Axiom& ax : axioms) {
    switch (ax.kind) {
      case Axiom::Kind::ConceptAssertion:
        out.push_back(Axiom::subsumption(ConceptExpr::nominal(ax.subject), ax.expr));
        break;
      case Axiom::Kind::RoleAssertion:
        out.push_back(Axiom::subsumption(
            ConceptExpr::nominal(ax.subject),
            ConceptExpr::some(ax.role, ConceptExpr::nominal(ax.object))));
        break;
      default:
        out.push_back(ax);
        break;
    }
  }
  return out;
}

namespace {

// Collapse Top/Bottom inside conjunctions bottom-up.
ConceptPtr simplify(const ConceptPtr& c) {
  switch (c->kind) {
    case ConceptExpr::Kind::Conjunction: {
      ConceptPtr l = simplify(c->left);
      ConceptPtr r = simplify(c->right);
      if (l->kind == ConceptExpr::Kind::Bottom || r->kind == ConceptExpr::Kind::Bottom)
        return ConceptExpr::bottom();
      if (l->kind == ConceptExpr::Kind::Top) return r;
      if (r->kind == ConceptExpr::Kind::Top) return l;
      if (l == c->left && r == c->right) return c;
      return ConceptExpr::conj(std::move(l), std::move(r));
    }
    case ConceptExpr::Kind::Existential: {
      ConceptPtr f = simplify(c->left);
      if (f == c->left) return c;
      return ConceptExpr::some(c->name, std::move(f));
    }
    default:
      return c;
  }
}

// True for expressions with an empty extension in every interpretation:
// Bottom, conjunctions with an unsatisfiable operand, exists r.<unsat>.
bool syntactically_unsat(const ConceptExpr& c) {
  switch (c.kind) {
    case ConceptExpr::Kind::Bottom:
      return true;
    case ConceptExpr::Kind::Conjunction:
      return syntactically_unsat(*c.left) || syntactically_unsat(*c.right);
    case ConceptExpr::Kind::Existential:
      return syntactically_unsat(*c.left);
    default:
      return false;
  }
}

Atom to_atom(const ConceptExpr& c) {
  switch (c.kind) {
    case ConceptExpr::Kind::Top: return Atom::top();
    case ConceptExpr::Kind::Bottom: return Atom::bottom();
    case ConceptExpr::Kind::Atomic: return Atom::named(c.name);
    case ConceptExpr::Kind::Nominal: return Atom::nominal(c.name);
    default: throw DataError("complex expression where an atom was expected");
  }
}

class Normalizer {
 public:
  explicit Normalizer(const Signature& signature) {
    result_.signature = signature;
  }

  NormalizedOntology run(const std::vector<Axiom>& axioms) {
    for (const Axiom& ax : axioms) {
      switch (ax.kind) {
        case Axiom::Kind::Subsumption:
          pending_.push_back({simplify(ax.sub), simplify(ax.sup)});
          break;
        case Axiom::Kind::RoleInclusion:
          add_role_inclusion(ax);
          break;
        default:
          throw DataError("assertion axiom passed to normalize; run transform_abox first");
      }
      while (!pending_.empty()) {
        Pending p = std::move(pending_.front());
        pending_.pop_front();
        process(std::move(p));
      }
    }
    dedupe();
    return std::move(result_);
  }

 private:
  struct Pending {
    ConceptPtr sub, sup;
  };

  void add_role_inclusion(const Axiom& ax) {
    const auto& chain = ax.chain;
    if (chain.size() == 1) {
      emit(NormalizedAxiom::ri1(chain[0], ax.sup_role));
      return;
    }
    // Decompose longer chains left-associatively with fresh roles.
    std::string acc = chain[0];
    for (size_t i = 1; i + 1 < chain.size(); ++i) {
      std::string aux = fresh_role(acc + " o " + chain[i]);
      emit(NormalizedAxiom::ri2(acc, chain[i], aux));
      acc = std::move(aux);
    }
    emit(NormalizedAxiom::ri2(acc, chain.back(), ax.sup_role));
  }

  void process(Pending p) {
    // Tautologies carry no training signal.
    if (p.sup->kind == ConceptExpr::Kind::Top || syntactically_unsat(*p.sub)) {
      ++result_.stats.tautologies_dropped;
      return;
    }

    // Split conjunctions on the right.
    if (p.sup->kind == ConceptExpr::Kind::Conjunction) {
      pending_.push_back({p.sub, p.sup->left});
      pending_.push_back({p.sub, p.sup->right});
      return;
    }

    const ConceptExpr& sub = *p.sub;
    const ConceptExpr& sup = *p.sup;

    if (sub.is_atomic_level()) {
      if (sup.is_atomic_level()) {
        emit(NormalizedAxiom::nf1(to_atom(sub), to_atom(sup)));
        return;
      }
      // sup is an existential; name a complex filler.
      const ConceptExpr& filler = *sup.left;
      if (filler.is_atomic_level()) {
        emit(NormalizedAxiom::nf3(to_atom(sub), sup.name, to_atom(filler)));
      } else {
        ConceptPtr aux = fresh_concept(sup.left);
        pending_.push_back({p.sub, ConceptExpr::some(sup.name, aux)});
        pending_.push_back({aux, sup.left});
      }
      return;
    }

    if (sub.kind == ConceptExpr::Kind::Conjunction) {
      if (!sup.is_atomic_level()) {
        // Complex on both sides: route through a fresh name.
        ConceptPtr aux = fresh_concept(p.sub);
        pending_.push_back({p.sub, aux});
        pending_.push_back({aux, p.sup});
        return;
      }
      const ConceptExpr& l = *sub.left;
      const ConceptExpr& r = *sub.right;
      if (!l.is_atomic_level()) {
        ConceptPtr aux = fresh_concept(sub.left);
        pending_.push_back({sub.left, aux});
        pending_.push_back({ConceptExpr::conj(aux, sub.right), p.sup});
        return;
      }
      if (!r.is_atomic_level()) {
        ConceptPtr aux = fresh_concept(sub.right);
        pending_.push_back({sub.right, aux});
        pending_.push_back({ConceptExpr::conj(sub.left, aux), p.sup});
        return;
      }
      if (sup.kind == ConceptExpr::Kind::Bottom) {
        emit(NormalizedAxiom::nf5(to_atom(l), to_atom(r)));
      } else {
        emit(NormalizedAxiom::nf2(to_atom(l), to_atom(r), to_atom(sup)));
      }
      return;
    }

    // sub is an existential.
    if (!sup.is_atomic_level()) {
      ConceptPtr aux = fresh_concept(p.sub);
      pending_.push_back({p.sub, aux});
      pending_.push_back({aux, p.sup});
      return;
    }
    if (sup.kind == ConceptExpr::Kind::Bottom) {
      throw DataError("unsupported axiom form (existential subsumed by owl:Nothing): " +
                      sub.to_string() + " <= owl:Nothing");
    }
    const ConceptExpr& filler = *sub.left;
    if (filler.is_atomic_level()) {
      emit(NormalizedAxiom::nf4(sub.name, to_atom(filler), to_atom(sup)));
    } else {
      ConceptPtr aux = fresh_concept(sub.left);
      pending_.push_back({sub.left, aux});
      pending_.push_back({ConceptExpr::some(sub.name, aux), p.sup});
    }
  }

  ConceptPtr fresh_concept(const ConceptPtr& names) {
    std::string name;
    do {
      name = "__N" + std::to_string(++concept_counter_);
    } while (result_.signature.has_concept(name));
    result_.signature.add_concept(name);
    result_.provenance[name] = names->to_string();
    ++result_.stats.fresh_concepts;
    return ConceptExpr::atomic(name);
  }

  std::string fresh_role(const std::string& stands_for) {
    std::string name;
    do {
      name = "__R" + std::to_string(++role_counter_);
    } while (result_.signature.has_role(name));
    result_.signature.add_role(name);
    result_.provenance[name] = stands_for;
    ++result_.stats.fresh_roles;
    return name;
  }

  void emit(NormalizedAxiom ax) { result_.axioms[ax.tag].push_back(std::move(ax)); }

  void dedupe() {
    for (auto& [tag, list] : result_.axioms) {
      std::set<NormalizedAxiom> seen;
      std::vector<NormalizedAxiom> kept;
      kept.reserve(list.size());
      for (auto& ax : list) {
        if (seen.insert(ax).second) {
          kept.push_back(std::move(ax));
        } else {
          ++result_.stats.duplicates_dropped;
        }
      }
      list = std::move(kept);
    }
  }

  std::deque<Pending> pending_;
  NormalizedOntology result_;
  int concept_counter_ = 0;
  int role_counter_ = 0;
};

}  // namespace

NormalizedOntology normalize(const Signature& signature, const std::vector<Axiom>& axioms) {
  return Normalizer(signature).run(axioms);
}

NormalizedOntology normalize_ontology(const Signature& signature, const std::vector<Axiom>& axioms) {
  int assertions = 0;
  for (const auto& ax : axioms) {
    if (ax.kind == Axiom::Kind::ConceptAssertion || ax.kind == Axiom::Kind::RoleAssertion) ++assertions;
  }
  NormalizedOntology onto = normalize(signature, transform_abox(axioms));
  onto.stats.assertions_transformed = assertions;
  return onto;
}

}  // namespace box2el
