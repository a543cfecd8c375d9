#pragma once

#include <memory>
#include <string>

#include "geoshear/errors.hpp"

namespace geoshear {

// A small language for analytic functions of one complex variable z.
//
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 'z' | 'i' | 'pi'
//            | ('exp'|'log'|'sqrt') '(' expr ')'
//            | '(' expr ')'
//   number  := decimal literal, optional trailing 'i' for an imaginary part
//
// Precedence: pow > unary minus > mul/div > add/sub.  log/sqrt/pow evaluate
// on the principal branch.  Trees are immutable; construction applies
// constant folding and identity elimination (u*1, u+0, u^1, ...) and
// nothing more, so derivative trees can be large but are never wrong.

enum class ExprKind {
  Var,    // z
  Const,  // complex literal
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Exp,
  Log,
  Sqrt,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  ExprKind kind;
  Complex value{};  // Const only
  ExprPtr lhs;      // unary operand / left operand
  ExprPtr rhs;      // right operand (binary ops only)

  Expr(ExprKind k, Complex v, ExprPtr a, ExprPtr b)
      : kind(k), value(v), lhs(std::move(a)), rhs(std::move(b)) {}
};

// Smart constructors (fold constants, eliminate identities).
ExprPtr make_var();
ExprPtr make_const(Complex v);
ExprPtr make_neg(ExprPtr u);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_div(ExprPtr a, ExprPtr b);
ExprPtr make_pow(ExprPtr base, ExprPtr exponent);
ExprPtr make_call(ExprKind fn, ExprPtr u);

/// Parse source text into an expression tree.  Throws ParseError with the
/// byte offset and the expected-token set on malformed input.
ExprPtr parse(const std::string& src);

/// Exact symbolic derivative d/dz.  Total on well-formed trees.
ExprPtr differentiate(const ExprPtr& e);

/// Evaluate at z using principal branches.  Throws EvalError on poles and
/// branch points (division by zero, log of zero).
Complex eval(const ExprPtr& e, Complex z);

/// Pretty-print with minimal parentheses; parse(to_string(e)) is
/// structurally identical to e for trees built by the smart constructors.
std::string to_string(const ExprPtr& e);

/// Structural equality (kind, literal values, children).
bool equal(const ExprPtr& a, const ExprPtr& b);

/// True if the tree contains the variable z.
bool depends_on_z(const ExprPtr& e);

}  // namespace geoshear
