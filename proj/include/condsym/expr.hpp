#pragma once

#include <memory>
#include <string>
#include <vector>

#include "condsym/canonical.hpp"
#include "condsym/function.hpp"

namespace condsym {

/// Immutable expression tree. Trees are built by the parser and by the
/// arithmetic operators without simplification; canonicalize() gives the value.
class Expr {
 public:
  enum class Kind { number, kernel, call, sum, product, power };

  Expr();  // the number 0
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(long value) : Expr(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  static Expr of_kernel(KernelId k);
  static Expr call(const FunctionDef& def, Expr argument);
  static Expr sum(std::vector<Expr> operands);
  static Expr product(std::vector<Expr> operands);
  static Expr power(Expr base, int exponent);

  Kind kind() const;
  const Rational& value() const;
  KernelId kernel_id() const;
  const FunctionDef& function() const;
  const std::vector<Expr>& operands() const;
  int exponent() const;

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) { return sum({a, product({Expr(-1), b})}); }
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return product({a, power(b, -1)}); }
  friend Expr operator-(const Expr& a) { return product({Expr(-1), a}); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws MathError on division by an identically zero expression.
CanonicalForm canonicalize(const Expr& e);
Expr to_expr(const CanonicalForm& f);
/// Canonical text of e.
std::string print(const Expr& e);
bool is_zero(const Expr& e);

/// Replaces every atomic occurrence of `target` (an atom, jet variable, or a
/// function application equal to that kernel); the result is not canonicalized.
Expr substitute(const Expr& e, KernelId target, const Expr& replacement);
Expr partial_derivative(const Expr& e, KernelId variable);

}  // namespace condsym
