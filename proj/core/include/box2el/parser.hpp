#pragma once

#include <string>
#include <vector>

#include "box2el/axiom.hpp"
#include "box2el/signature.hpp"

namespace box2el {

struct ParseOptions {
  // When true, every name used in an axiom must have been declared first.
  // When false, undeclared names are added to the signature with the kind
  // implied by their position.
  bool strict = false;
};

struct ParsedOntology {
  Signature signature;
  std::vector<Axiom> axioms;
};

// Parse the line-oriented functional-syntax subset:
//
//   Declaration(Class(N)) | Declaration(ObjectProperty(N))
//   Declaration(NamedIndividual(N))
//   SubClassOf(C C)
//   SubObjectPropertyOf(r r)
//   SubObjectPropertyOf(ObjectPropertyChain(r r ...) r)
//   ClassAssertion(C a)
//   ObjectPropertyAssertion(r a b)
//   C ::= owl:Thing | owl:Nothing | N | ObjectOneOf(a)
//       | ObjectIntersectionOf(C C) | ObjectSomeValuesFrom(r C)
//
// '#' starts a comment. Throws ParseError with a 1-based position.
ParsedOntology parse_ontology(const std::string& text, const ParseOptions& options = {});

}  // namespace box2el
