#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "skewring/error.hpp"

namespace skewring {

// Expression language shared by the command-line front end. The grammar is
// a small noncommutative calculator syntax:
//
//   expression := '-'? term (('+' | '-') term)*
//   term       := factor (('*' | '/') factor)*
//   factor     := atom ('^' integer)?
//   atom       := literal | name | '(' expression ')'
//
// with nonnegative integer literals, names matching [A-Za-z_][A-Za-z0-9_]*,
// and an optionally negated decimal integer after '^'. Multiplication is
// never commuted or reassociated: "x*y" and "y*x" are different trees, and
// so are "a*(b*c)" and "(a*b)*c". Division always means multiplication by an
// inverse on the RIGHT, a/b = a * b^{-1}; a left quotient must be spelled
// explicitly as b^-1 * a. Fractions of integers are ordinary divisions, so
// "2/3" is the tree (2) * (3)^{-1}, which evaluates to the exact rational.

// --- abstract syntax ---------------------------------------------------------

enum class ExprKind { Literal, Name, Neg, Add, Sub, Mul, Div, Pow };

// One node of the tree. Only the payload matching `kind` is meaningful:
// `value` for Literal, `name` for Name, `exponent` for Pow; `kids` holds one
// child for Neg and Pow and two (left, right) for the binary operators.
// Equality is structural on the meaningful payloads.
struct Expr {
  ExprKind kind = ExprKind::Literal;
  mpq_class value;
  std::string name;
  long long exponent = 0;
  std::vector<Expr> kids;

  static Expr literal(const mpq_class& v);
  static Expr generator(std::string n);
  static Expr neg(Expr e);
  static Expr add(Expr l, Expr r);
  static Expr sub(Expr l, Expr r);
  static Expr mul(Expr l, Expr r);
  static Expr div(Expr l, Expr r);
  static Expr pow(Expr base, long long e);

  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }
};

// --- parsing and printing ----------------------------------------------------

// Parses one expression spanning the whole input. Syntax problems fail
// "parse" with the 1-based character position, e.g. "expected ')' at
// position 7"; name resolution is NOT performed here (unknown generators
// surface later, when a tree is evaluated against a concrete algebra).
Expr parse_expr(const std::string& text);

// Parses a brace-enclosed candidate list "{ expr, expr, ... }" spanning the
// whole input; "{}" is the empty list. Same error conventions as parse_expr.
std::vector<Expr> parse_expr_list(const std::string& text);

// Renders a tree back to source text with minimal parentheses, spaced binary
// '+'/'-' and tight '*', '/', '^'. Printing inverts parsing: for every tree
// the parser can produce, parse_expr(expr_str(t)) == t. Trees built by hand
// with payloads the grammar cannot spell (negative or non-integer literals)
// print as parenthesized equivalents that preserve value and grouping.
std::string expr_str(const Expr& e);

// --- evaluation ----------------------------------------------------------------

// Evaluates a tree in a concrete algebra described by an adapter:
//
//   struct Adapter {
//     using Value = ...;
//     Value rational(const mpq_class& q) const;
//     Value generator(const std::string& name) const;  // fail "bind" if unknown
//     Value add(const Value&, const Value&) const;
//     Value sub(const Value&, const Value&) const;
//     Value neg(const Value&) const;
//     Value mul(const Value&, const Value&) const;
//     Value pow(const Value&, long long e) const;      // e < 0 inverts or fails
//   };
//
// Division is desugared here, once, to the documented right-inverse form:
// eval(a / b) = mul(eval(a), pow(eval(b), -1)). Adapters that cannot invert
// a value are expected to fail "domain" from pow.
template <class A>
typename A::Value eval_expr(const A& alg, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Literal:
      return alg.rational(e.value);
    case ExprKind::Name:
      return alg.generator(e.name);
    case ExprKind::Neg:
      return alg.neg(eval_expr(alg, e.kids[0]));
    case ExprKind::Add:
      return alg.add(eval_expr(alg, e.kids[0]), eval_expr(alg, e.kids[1]));
    case ExprKind::Sub:
      return alg.sub(eval_expr(alg, e.kids[0]), eval_expr(alg, e.kids[1]));
    case ExprKind::Mul:
      return alg.mul(eval_expr(alg, e.kids[0]), eval_expr(alg, e.kids[1]));
    case ExprKind::Div:
      return alg.mul(eval_expr(alg, e.kids[0]),
                     alg.pow(eval_expr(alg, e.kids[1]), -1));
    case ExprKind::Pow:
      return alg.pow(eval_expr(alg, e.kids[0]), e.exponent);
  }
  fail("internal", "unhandled expression node");
}

}  // namespace skewring
