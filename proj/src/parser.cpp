#include <cctype>
#include <climits>

#include "casimir/errors.hpp"
#include "casimir/module_expr.hpp"

namespace casimir {

namespace {

struct Token {
  enum class Type { kVerma, kIrr, kP, kTimes, kPlus, kCaret, kLParen, kRParen, kNumber, kEnd };
  Type type;
  long value = 0;
  int line = 1;
  int column = 1;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_space();
      Token t{Token::Type::kEnd, 0, line_, column_, ""};
      if (pos_ >= text_.size()) {
        t.text = "end of input";
        tokens.push_back(t);
        return tokens;
      }
      char c = text_[pos_];
      switch (c) {
        case 'M': {
          advance();
          t.type = Token::Type::kVerma;
          t.value = read_int(true, t, "M");
          break;
        }
        case 'L': {
          advance();
          t.type = Token::Type::kIrr;
          t.value = read_int(false, t, "L");
          break;
        }
        case 'P': t.type = Token::Type::kP; t.text = "P"; advance(); break;
        case 'x': t.type = Token::Type::kTimes; t.text = "x"; advance(); break;
        case '+': t.type = Token::Type::kPlus; t.text = "+"; advance(); break;
        case '^': t.type = Token::Type::kCaret; t.text = "^"; advance(); break;
        case '(': t.type = Token::Type::kLParen; t.text = "("; advance(); break;
        case ')': t.type = Token::Type::kRParen; t.text = ")"; advance(); break;
        default:
          if (std::isdigit(static_cast<unsigned char>(c))) {
            t.type = Token::Type::kNumber;
            t.value = read_int(false, t, "");
            break;
          }
          throw ParseError(std::string("unexpected character '") + c + "'", line_, column_,
                           {"M<int>", "L<nat>", "P", "("});
      }
      tokens.push_back(t);
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
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

  long read_int(bool allow_sign, Token& t, const std::string& prefix) {
    std::string digits;
    if (allow_sign && pos_ < text_.size() && text_[pos_] == '-') {
      digits += '-';
      advance();
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_];
      advance();
    }
    if (digits.empty() || digits == "-") {
      throw ParseError("malformed atom '" + prefix + digits + "'", line_, column_,
                       {allow_sign ? "integer" : "natural number"});
    }
    if (digits.size() > 9) throw ParseError("number too large", t.line, t.column, {});
    t.text = prefix + digits;
    return std::stol(digits);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ModuleExpr parse() {
    ModuleExpr e = expr();
    if (peek().type != Token::Type::kEnd) fail({"+", "x", "^", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError("unexpected " + (t.type == Token::Type::kEnd ? t.text : "'" + t.text + "'"),
                     t.line, t.column, std::move(expected));
  }

  ModuleExpr expr() {
    std::vector<ModuleExpr> terms{term()};
    while (peek().type == Token::Type::kPlus) {
      next();
      terms.push_back(term());
    }
    return terms.size() == 1 ? terms[0] : ModuleExpr::direct_sum(std::move(terms));
  }

  ModuleExpr term() {
    std::vector<ModuleExpr> factors{factor()};
    while (peek().type == Token::Type::kTimes) {
      next();
      factors.push_back(factor());
    }
    return factors.size() == 1 ? factors[0] : ModuleExpr::tensor(std::move(factors));
  }

  ModuleExpr factor() {
    ModuleExpr base = atom();
    if (peek().type != Token::Type::kCaret) return base;
    next();
    if (peek().type != Token::Type::kNumber) fail({"natural number"});
    const Token& n = next();
    if (n.value < 1) {
      throw ParseError("multiplicity must be at least 1", n.line, n.column, {"positive integer"});
    }
    return ModuleExpr::power(base, static_cast<int>(n.value));
  }

  ModuleExpr atom() {
    switch (peek().type) {
      case Token::Type::kVerma: return ModuleExpr::verma(static_cast<int>(next().value));
      case Token::Type::kIrr: return ModuleExpr::irr(static_cast<int>(next().value));
      case Token::Type::kP: next(); return ModuleExpr::big_p();
      case Token::Type::kLParen: {
        next();
        ModuleExpr inner = expr();
        if (peek().type != Token::Type::kRParen) fail({")", "+", "x"});
        next();
        return inner;
      }
      default: fail({"M<int>", "L<nat>", "P", "("});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ModuleExpr parse_rep(const std::string& text) { return Parser(Lexer(text).run()).parse(); }

}  // namespace casimir
