#include "box2el/parser.hpp"

#include <cctype>

#include "box2el/errors.hpp"

namespace box2el {

namespace {

struct Token {
  enum class Type { Name, LParen, RParen, End };
  Type type = Type::End;
  std::string text;
  int line = 0, col = 0;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.' || c == ':' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.type = Token::Type::End;
      return t;
    }
    char c = text_[pos_];
    if (c == '(') {
      advance();
      t.type = Token::Type::LParen;
      t.text = "(";
      return t;
    }
    if (c == ')') {
      advance();
      t.type = Token::Type::RParen;
      t.text = ")";
      return t;
    }
    if (name_char(c)) {
      t.type = Token::Type::Name;
      while (pos_ < text_.size() && name_char(text_[pos_])) {
        t.text += text_[pos_];
        advance();
      }
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& options)
      : lexer_(text), options_(options) {
    advance();
  }

  ParsedOntology run() {
    while (cur_.type != Token::Type::End) {
      parse_statement();
    }
    return std::move(result_);
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token& at) {
    throw ParseError(message, at.line, at.col);
  }

  void advance() { cur_ = lexer_.next(); }

  Token expect_name(const char* what) {
    if (cur_.type != Token::Type::Name) fail(std::string("expected ") + what, cur_);
    Token t = cur_;
    advance();
    return t;
  }

  void expect(Token::Type type, const char* what) {
    if (cur_.type != type) fail(std::string("expected ") + what, cur_);
    advance();
  }

  bool peek_keyword(const char* kw) const {
    return cur_.type == Token::Type::Name && cur_.text == kw;
  }

  void check_declarable(const Token& name) {
    if (name.text == kTopName || name.text == kBottomName ||
        name.text == "owl:Thing" || name.text == "owl:Nothing") {
      fail("'" + name.text + "' is reserved", name);
    }
    if (name.text.rfind("__", 0) == 0) {
      fail("names starting with '__' are reserved for normalization", name);
    }
  }

  std::string use_concept(const Token& name) {
    if (result_.signature.has_concept(name.text)) return name.text;
    if (options_.strict) fail("unknown concept name '" + name.text + "'", name);
    check_declarable(name);
    add(name, NameKind::Concept);
    return name.text;
  }

  std::string use_role(const Token& name) {
    if (result_.signature.has_role(name.text)) return name.text;
    if (options_.strict) fail("unknown role name '" + name.text + "'", name);
    check_declarable(name);
    add(name, NameKind::Role);
    return name.text;
  }

  std::string use_individual(const Token& name) {
    if (result_.signature.has_individual(name.text)) return name.text;
    if (options_.strict) fail("unknown individual name '" + name.text + "'", name);
    check_declarable(name);
    add(name, NameKind::Individual);
    return name.text;
  }

  void add(const Token& name, NameKind kind) {
    try {
      switch (kind) {
        case NameKind::Concept: result_.signature.add_concept(name.text); break;
        case NameKind::Role: result_.signature.add_role(name.text); break;
        case NameKind::Individual: result_.signature.add_individual(name.text); break;
      }
    } catch (const DataError& e) {
      fail(e.what(), name);
    }
  }

  void parse_statement() {
    Token head = expect_name("an axiom or declaration keyword");
    if (head.text == "Declaration") {
      parse_declaration();
    } else if (head.text == "SubClassOf") {
      expect(Token::Type::LParen, "'('");
      ConceptPtr sub = parse_concept();
      ConceptPtr sup = parse_concept();
      expect(Token::Type::RParen, "')'");
      result_.axioms.push_back(Axiom::subsumption(std::move(sub), std::move(sup)));
    } else if (head.text == "SubObjectPropertyOf") {
      parse_role_inclusion();
    } else if (head.text == "ClassAssertion") {
      expect(Token::Type::LParen, "'('");
      ConceptPtr expr = parse_concept();
      std::string ind = use_individual(expect_name("an individual name"));
      expect(Token::Type::RParen, "')'");
      result_.axioms.push_back(Axiom::concept_assertion(std::move(expr), std::move(ind)));
    } else if (head.text == "ObjectPropertyAssertion") {
      expect(Token::Type::LParen, "'('");
      std::string role = use_role(expect_name("a role name"));
      std::string subj = use_individual(expect_name("an individual name"));
      std::string obj = use_individual(expect_name("an individual name"));
      expect(Token::Type::RParen, "')'");
      result_.axioms.push_back(Axiom::role_assertion(std::move(role), std::move(subj), std::move(obj)));
    } else {
      fail("unknown statement '" + head.text + "'", head);
    }
  }

  void parse_declaration() {
    expect(Token::Type::LParen, "'('");
    Token kind = expect_name("Class, ObjectProperty, or NamedIndividual");
    expect(Token::Type::LParen, "'('");
    Token name = expect_name("a name");
    check_declarable(name);
    NameKind nk;
    if (kind.text == "Class") {
      nk = NameKind::Concept;
    } else if (kind.text == "ObjectProperty") {
      nk = NameKind::Role;
    } else if (kind.text == "NamedIndividual") {
      nk = NameKind::Individual;
    } else {
      fail("unknown declaration kind '" + kind.text + "'", kind);
    }
    bool already =
        (nk == NameKind::Concept && result_.signature.has_concept(name.text)) ||
        (nk == NameKind::Role && result_.signature.has_role(name.text)) ||
        (nk == NameKind::Individual && result_.signature.has_individual(name.text));
    if (already) fail("duplicate declaration of '" + name.text + "'", name);
    add(name, nk);
    expect(Token::Type::RParen, "')'");
    expect(Token::Type::RParen, "')'");
  }

  void parse_role_inclusion() {
    expect(Token::Type::LParen, "'('");
    std::vector<std::string> chain;
    if (peek_keyword("ObjectPropertyChain")) {
      advance();
      expect(Token::Type::LParen, "'('");
      while (cur_.type == Token::Type::Name) {
        chain.push_back(use_role(cur_));
        advance();
      }
      expect(Token::Type::RParen, "')'");
      if (chain.empty()) fail("empty property chain", cur_);
    } else {
      chain.push_back(use_role(expect_name("a role name")));
    }
    std::string sup = use_role(expect_name("a role name"));
    expect(Token::Type::RParen, "')'");
    result_.axioms.push_back(Axiom::role_inclusion(std::move(chain), std::move(sup)));
  }

  ConceptPtr parse_concept() {
    Token head = expect_name("a concept expression");
    if (head.text == "owl:Thing") return ConceptExpr::top();
    if (head.text == "owl:Nothing") return ConceptExpr::bottom();
    if (head.text == "ObjectOneOf") {
      expect(Token::Type::LParen, "'('");
      std::string ind = use_individual(expect_name("an individual name"));
      expect(Token::Type::RParen, "')'");
      return ConceptExpr::nominal(std::move(ind));
    }
    if (head.text == "ObjectIntersectionOf") {
      expect(Token::Type::LParen, "'('");
      ConceptPtr l = parse_concept();
      ConceptPtr r = parse_concept();
      expect(Token::Type::RParen, "')'");
      return ConceptExpr::conj(std::move(l), std::move(r));
    }
    if (head.text == "ObjectSomeValuesFrom") {
      expect(Token::Type::LParen, "'('");
      std::string role = use_role(expect_name("a role name"));
      ConceptPtr filler = parse_concept();
      expect(Token::Type::RParen, "')'");
      return ConceptExpr::some(std::move(role), std::move(filler));
    }
    return ConceptExpr::atomic(use_concept(head));
  }

  Lexer lexer_;
  ParseOptions options_;
  Token cur_;
  ParsedOntology result_;
};

}  // namespace

ParsedOntology parse_ontology(const std::string& text, const ParseOptions& options) {
  return Parser(text, options).run();
}

}  // namespace box2el
