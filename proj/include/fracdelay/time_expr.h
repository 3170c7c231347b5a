#pragma once

/** \file time_expr.h
 * \brief A small arithmetic language over one variable `t`, used for delays,
 * forcing terms and initial functions.
 *
 * Grammar (standard precedence, `^` binds tightest and is right
 * associative, so `-2^2` is `-(2^2)` and `2^3^2` is `2^(3^2)`):
 *
 *   expr    := term  (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := '-' unary | power
 *   power   := primary ('^' unary)?
 *   primary := number | 't' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
 *   func    := sin | cos | tan | exp | log | sqrt | abs
 *
 * Numbers accept an optional fraction and exponent (`1.5e-3`, `.5`).
 * Expressions are immutable and share their tree on copy. */

#include <memory>
#include <string>
#include <string_view>

namespace fracdelay {

class TimeExpr {
 public:
  /// The constant 0.
  TimeExpr();

  /// Throws ParseError (with byte offset and expected tokens) on malformed
  /// input, unknown identifiers, or wrong function arity.
  static TimeExpr Parse(std::string_view source);

  /// A literal whose printed form round-trips to `value` exactly.
  static TimeExpr Constant(double value);

  /// Pure and bit-reproducible. Throws EvalError on division by zero,
  /// log of a non-positive value, sqrt of a negative value, or any
  /// non-finite intermediate.
  double Eval(double t) const;

  /// The text this expression was parsed from.
  const std::string& source() const { return source_; }

  /// Fully parenthesized canonical form; parsing it yields a tree that
  /// evaluates bit-identically.
  std::string ToString() const;

  /// True when the tree is a single numeric literal equal to zero. This is
  /// a syntactic test: "t - t" is not a zero literal.
  bool IsZeroLiteral() const;

  /// True when the tree does not mention `t`.
  bool IsConstant() const;

  struct Node;

 private:
  TimeExpr(std::shared_ptr<const Node> root, std::string source);

  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace fracdelay
