#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condsym/poly.hpp"

namespace condsym {

/// Normal form of a rational function: coprime numerator and denominator with
/// all side relations applied; the denominator is an integer-primitive polynomial
/// with positive graded-leading coefficient, free of any kernel carrying a side
/// relation. Equal values have identical representations.
inline Rational canonical_rational(Rational c) {
  c.canonicalize();
  return c;
}

class CanonicalForm {
 public:
  CanonicalForm() : den_(1) {}
  CanonicalForm(const Rational& c) : num_(canonical_rational(c)), den_(1) {}  // NOLINT(google-explicit-constructor)
  CanonicalForm(long c) : CanonicalForm(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static CanonicalForm of_kernel(KernelId k);
  static CanonicalForm of_poly(Poly p);
  /// Throws MathError when den is the zero polynomial.
  static CanonicalForm fraction(Poly num, Poly den);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }

  std::vector<KernelId> kernels() const;
  bool contains(KernelId k) const { return num_.contains(k) || den_.contains(k); }

  CanonicalForm operator-() const;
  CanonicalForm operator+(const CanonicalForm& o) const;
  CanonicalForm operator-(const CanonicalForm& o) const;
  CanonicalForm operator*(const CanonicalForm& o) const;
  CanonicalForm operator/(const CanonicalForm& o) const;
  CanonicalForm& operator+=(const CanonicalForm& o) { return *this = *this + o; }
  CanonicalForm& operator-=(const CanonicalForm& o) { return *this = *this - o; }
  CanonicalForm& operator*=(const CanonicalForm& o) { return *this = *this * o; }
  CanonicalForm pow(int exponent) const;

  bool operator==(const CanonicalForm& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  CanonicalForm(Poly num, Poly den, bool coprime);
  Poly num_;
  Poly den_;
};

/// Deterministic text in graded monomial order; parses back to an equal value.
std::string to_string(const CanonicalForm& f);
std::string to_string(const Poly& p);
std::ostream& operator<<(std::ostream& os, const CanonicalForm& f);

/// Image of a kernel under a substitution, or nullopt to keep it.
using KernelImage = std::function<std::optional<CanonicalForm>(KernelId)>;

/// Replaces kernels by their images, rebuilding function applications whose
/// arguments change.
CanonicalForm substitute(const CanonicalForm& f, const KernelImage& image);
CanonicalForm substitute(const CanonicalForm& f, KernelId target, const CanonicalForm& replacement);
CanonicalForm substitute(const CanonicalForm& f, const std::map<KernelId, CanonicalForm>& images);

/// Extends a map kernel -> derivative to a derivation on rational functions.
CanonicalForm derivation(const CanonicalForm& f,
                         const std::function<CanonicalForm(KernelId)>& kernel_derivative);

/// Derivative treating every kernel as an independent coordinate; function
/// applications follow the chain rule through their arguments, ansatz unknowns
/// differentiate with respect to x, y and u.
CanonicalForm partial_derivative(const CanonicalForm& f, KernelId variable);

}  // namespace condsym
