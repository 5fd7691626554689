#include "dlr/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace dlr {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum class Kind { Open, Close, Symbol, End } kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    const int line = line_, column = column_;
    if (pos_ >= text_.size()) return {Token::Kind::End, {}, line, column};
    const char c = text_[pos_];
    if (c == '(' || c == ')') {
      advance();
      return {c == '(' ? Token::Kind::Open : Token::Kind::Close, std::string(1, c), line, column};
    }
    std::string sym;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) {
      sym.push_back(text_[pos_]);
      advance();
    }
    return {Token::Kind::Symbol, std::move(sym), line, column};
  }

 private:
  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  TBox tbox() {
    TBox t;
    while (tok_.kind != Token::Kind::End) t.axioms.push_back(axiom());
    return t;
  }

  Concept lone_concept() {
    Concept c = concept_expr();
    if (tok_.kind != Token::Kind::End) fail("trailing input after concept");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, tok_.line, tok_.column);
  }

  void shift() { tok_ = lexer_.next(); }

  void expect(Token::Kind kind, const char* what) {
    if (tok_.kind != kind) {
      if (tok_.kind == Token::Kind::End) fail(std::string("unexpected end of input, expected ") + what);
      fail(std::string("expected ") + what + ", found '" + tok_.text + "'");
    }
    shift();
  }

  std::string name(const char* what) {
    if (tok_.kind != Token::Kind::Symbol) {
      if (tok_.kind == Token::Kind::End) fail(std::string("unexpected end of input, expected ") + what);
      fail(std::string("expected ") + what + ", found '" + tok_.text + "'");
    }
    std::string s = tok_.text;
    shift();
    return s;
  }

  std::string concept_name() {
    if (tok_.kind == Token::Kind::Symbol && (tok_.text == "top" || tok_.text == "bottom"))
      fail("'" + tok_.text + "' cannot be defined");
    return name("concept name");
  }

  Axiom axiom() {
    expect(Token::Kind::Open, "'('");
    const Token op = tok_;
    const std::string head = name("axiom operator");
    Axiom ax;
    if (head == "define-primitive-concept" || head == "define-concept") {
      Concept lhs = Concept::atom(concept_name());
      Concept rhs = concept_expr();
      ax = head == "define-concept" ? Axiom::eq(std::move(lhs), std::move(rhs))
                                    : Axiom::sub(std::move(lhs), std::move(rhs));
    } else if (head == "implies" || head == "equal") {
      Concept lhs = concept_expr();
      Concept rhs = concept_expr();
      ax = head == "equal" ? Axiom::eq(std::move(lhs), std::move(rhs))
                           : Axiom::sub(std::move(lhs), std::move(rhs));
    } else {
      throw ParseError("unknown operator '" + head + "'", op.line, op.column);
    }
    expect(Token::Kind::Close, "')'");
    return ax;
  }

  RoleExpr role() {
    if (tok_.kind == Token::Kind::Open) {
      shift();
      const Token op = tok_;
      const std::string head = name("role operator");
      if (head != "inv") throw ParseError("unknown role operator '" + head + "'", op.line, op.column);
      std::string r = name("role name");
      expect(Token::Kind::Close, "')'");
      return RoleExpr::inverse_of(std::move(r));
    }
    return RoleExpr::named(name("role"));
  }

  Concept concept_expr() {
    if (tok_.kind == Token::Kind::Symbol) {
      std::string s = name("concept");
      if (s == "top") return Concept::top();
      if (s == "bottom") return Concept::bottom();
      return Concept::atom(std::move(s));
    }
    expect(Token::Kind::Open, "concept");
    const Token op = tok_;
    const std::string head = name("concept operator");
    Concept result;
    if (head == "not") {
      result = Concept::negation(concept_expr());
    } else if (head == "and" || head == "or") {
      std::vector<Concept> args;
      while (tok_.kind != Token::Kind::Close && tok_.kind != Token::Kind::End) args.push_back(concept_expr());
      if (args.empty()) throw ParseError("'" + head + "' needs at least one operand", op.line, op.column);
      result = head == "and" ? Concept::conjunction(std::move(args))
                             : Concept::disjunction(std::move(args));
    } else if (head == "some" || head == "all") {
      RoleExpr r = role();
      Concept f = concept_expr();
      result = head == "some" ? Concept::exists(std::move(r), std::move(f))
                              : Concept::forall(std::move(r), std::move(f));
    } else {
      throw ParseError("unknown operator '" + head + "'", op.line, op.column);
    }
    expect(Token::Kind::Close, "')'");
    return result;
  }

  Lexer lexer_;
  Token tok_;
};

}  // namespace

TBox parse_tbox(std::string_view text) { return Parser(text).tbox(); }

Concept parse_concept(std::string_view text) { return Parser(text).lone_concept(); }

}  // namespace dlr
