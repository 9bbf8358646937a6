#include "curvx/parse.hpp"

#include <array>
#include <cctype>
#include <optional>

namespace curvx {

namespace {

constexpr std::array<std::string_view, 8> kFunctions = {"sin", "cos", "tan", "cot", "sqrt", "exp", "log", "abs"};

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>* allowed, int line, int column_offset)
      : text_(text), allowed_(allowed), line_(line), column_offset_(column_offset) {}

  Expr run() {
    skip_space();
    if (at_end()) fail("empty expression");
    Expr e = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t pos) const {
    throw ParseError(message, line_, column_offset_ + static_cast<int>(pos) + 1);
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : add(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) fail_at("division by zero", at);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t at = pos_;
      Expr ex = unary();
      if (!ex.is_constant()) fail_at("exponent must be a rational constant", at);
      if (base.is_zero() && ex.rational() < 0) fail_at("division by zero", at);
      return pow(base, ex.rational());
    }
    return base;
  }

  Expr atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
      if (!at_end() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
        fail_at("decimal literals are not supported; write an exact fraction", start);
      }
      return Expr(Rational(boost::multiprecision::cpp_int(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      skip_space();
      const bool call = !at_end() && text_[pos_] == '(';
      if (is_reserved_name(name)) {
        if (!call) fail_at("function '" + name + "' needs an argument list", start);
        ++pos_;
        Expr arg = expr();
        expect(')');
        if (name == "sqrt") return sqrt(arg);
        if (name == "sin") return sin(arg);
        if (name == "cos") return cos(arg);
        if (name == "tan") return tan(arg);
        if (name == "cot") return cot(arg);
        if (name == "exp") return exp(arg);
        if (name == "log") return log(arg);
        return abs(arg);
      }
      if (call) fail_at("unknown function '" + name + "'", start);
      if (allowed_ != nullptr && allowed_->count(name) == 0) throw UnknownSymbolError(name);
      return Expr::symbol(name);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const std::set<std::string>* allowed_;
  int line_;
  int column_offset_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_reserved_name(std::string_view s) {
  for (auto f : kFunctions) {
    if (f == s) return true;
  }
  return false;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (std::isalpha(static_cast<unsigned char>(s.front())) == 0 && s.front() != '_') return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') return false;
  }
  return true;
}

Expr parse_expr(std::string_view text, const std::set<std::string>& allowed, int line, int column_offset) {
  return Parser(text, &allowed, line, column_offset).run();
}

Expr parse_expr_any(std::string_view text) { return Parser(text, nullptr, 1, 0).run(); }

}  // namespace curvx
