#pragma once

#include <vector>

#include "box2el/axiom.hpp"
#include "box2el/normal_form.hpp"
#include "box2el/signature.hpp"

namespace box2el {

// Rewrite ABox assertions into TBox subsumptions:
//   C(a)    ->  {a} <= C
//   r(a,b)  ->  {a} <= exists r.{b}
// Subsumptions and role inclusions pass through unchanged.
std::vector<Axiom> transform_abox(const std::vector<Axiom>& axioms);

// Rewrite subsumption and role-inclusion axioms into the normal forms
// NF1-NF5 / RI1-RI2, introducing fresh auxiliary names (__N<k>, __R<k>)
// for nested complex subexpressions. Tautologies (Top on the right,
// unsatisfiable left sides) are dropped and counted; axioms of the shape
// exists r.C <= Bottom are rejected. The input must contain no assertions
// (run transform_abox first).
NormalizedOntology normalize(const Signature& signature, const std::vector<Axiom>& axioms);

// Convenience: transform_abox + normalize.
NormalizedOntology normalize_ontology(const Signature& signature, const std::vector<Axiom>& axioms);

}  // namespace box2el
