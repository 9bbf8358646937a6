#include <string>

#include "curvx/expr.hpp"
#include "node.hpp"

namespace curvx {

namespace {

enum Prec { kSum = 1, kProduct = 2, kPower = 3, kAtom = 4 };

std::string rational_text(const Rational& q) {
  namespace mp = boost::multiprecision;
  if (is_integer(q)) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

bool negative_term(const Expr& t) {
  if (t.kind() == Kind::Constant) return t.rational() < 0;
  if (t.kind() == Kind::Product) {
    const Expr& first = t.args().front();
    return first.kind() == Kind::Constant && first.rational() < 0;
  }
  return false;
}

void print_product(const Expr& e, std::string& out) {
  bool first = true;
  for (const auto& f : e.args()) {
    if (!first) out += '*';
    if (f.kind() == Kind::Constant) {
      if (first && f.rational() == -1 && e.args().size() > 1) {
        out += '-';
        continue;
      }
      // A leading coefficient reads left to right as (p/q)*rest.
      out += rational_text(f.rational());
    } else {
      print_wrapped(f, f.kind() == Kind::Sum, out);
    }
    first = false;
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Kind::Constant: out += rational_text(e.rational()); return;
    case Kind::Symbol: out += e.name(); return;
    case Kind::Function:
      out += func_name(e.func());
      out += '(';
      print(e.args().front(), out);
      out += ')';
      return;
    case Kind::Power: {
      const Expr& base = e.args().front();
      const bool bare = base.kind() == Kind::Symbol || base.kind() == Kind::Function ||
                        (base.kind() == Kind::Constant && is_integer(base.rational()) && base.rational() >= 0);
      print_wrapped(base, !bare, out);
      const Rational& q = e.rational();
      if (is_integer(q) && q > 0) {
        out += '^' + rational_text(q);
      } else {
        out += "^(" + rational_text(q) + ")";
      }
      return;
    }
    case Kind::Product: print_product(e, out); return;
    case Kind::Sum: {
      bool first = true;
      for (const auto& t : e.args()) {
        if (first) {
          print(t, out);
          first = false;
        } else if (negative_term(t)) {
          out += " - ";
          print(-t, out);
        } else {
          out += " + ";
          print(t, out);
        }
      }
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace curvx
