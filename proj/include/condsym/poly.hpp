#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "condsym/kernel.hpp"

namespace condsym {

using Rational = mpq_class;

/// Power product of kernels, sorted by kernel id.
class Monomial {
 public:
  using Power = std::pair<KernelId, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Power> sorted_powers) : powers_(std::move(sorted_powers)) {}
  static Monomial of(KernelId k, std::uint32_t exponent = 1);

  const std::vector<Power>& powers() const { return powers_; }
  bool empty() const { return powers_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t exponent(KernelId k) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// this / divisor; requires divisor.divides(*this).
  Monomial divided(const Monomial& divisor) const;
  /// Drops k and returns its exponent through `exponent`.
  Monomial without(KernelId k, std::uint32_t* exponent = nullptr) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial&) const = default;
  std::size_t hash() const;

 private:
  std::vector<Power> powers_;
};

/// Lexicographic order on exponent vectors with smaller kernel ids more
/// significant; the storage order of Poly. Returns <0, 0, >0.
int compare_internal(const Monomial& a, const Monomial& b);
/// Graded lexicographic order under the intrinsic kernel order (printing).
int compare_graded(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly of_kernel(KernelId k);
  static Poly of_term(const Rational& c, Monomial m);
  /// Sorts and merges like terms.
  static Poly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.empty()); }
  bool is_one() const;
  Rational constant_value() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  /// Leading term under compare_graded.
  const Term& graded_leading() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m) const;
  Poly pow(unsigned exponent) const;

  /// Exact quotient, or nullopt when divisor does not divide *this.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  std::uint32_t degree_in(KernelId k) const;
  /// Coefficients c_i with *this = sum c_i k^i.
  std::vector<Poly> coefficients_in(KernelId k) const;
  std::vector<KernelId> kernels() const;
  bool contains(KernelId k) const;
  /// Componentwise minimum of all monomials.
  Monomial monomial_content() const;
  Poly divided_by_monomial(const Monomial& m) const;
  /// Positive rational r such that *this / r has coprime integer coefficients.
  Rational numeric_content() const;

  bool operator==(const Poly& o) const;

 private:
  explicit Poly(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}
  std::vector<Term> terms_;
};

/// Greatest common divisor over Q, normalized to leading coefficient 1.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace condsym
