#include "condsym/canonical.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "condsym/error.hpp"
#include "condsym/function.hpp"

namespace condsym {
namespace {

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw MathError("internal error: inexact division during normalization");
  return *q;
}

/// Rewrites k^2 -> p/q throughout `poly`; returns P' and M with poly = P' / q^M.
std::pair<Poly, unsigned> reduce_powers(const Poly& poly, KernelId k, const CanonicalForm& value) {
  const auto coeffs = poly.coefficients_in(k);
  unsigned top = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (!coeffs[j].is_zero()) top = std::max(top, static_cast<unsigned>(j / 2));
  }
  const Poly& p = value.numerator();
  const Poly& q = value.denominator();
  Poly out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    const auto half = static_cast<unsigned>(j / 2);
    Poly term = coeffs[j] * p.pow(half) * q.pow(top - half);
    if (j % 2 == 1) term = term.times_monomial(Monomial::of(k));
    out += term;
  }
  return {std::move(out), top};
}

/// One pass of side-relation rewriting; returns true when anything changed.
bool apply_side_relations(Poly& num, Poly& den) {
  std::set<KernelId> candidates;
  for (KernelId k : num.kernels()) candidates.insert(k);
  for (KernelId k : den.kernels()) candidates.insert(k);
  bool changed = false;
  for (KernelId k : candidates) {
    const CanonicalForm* value = side_relation(k);
    if (!value) continue;
    if (num.degree_in(k) >= 2 || den.degree_in(k) >= 2) {
      auto [n, mn] = reduce_powers(num, k, *value);
      auto [d, md] = reduce_powers(den, k, *value);
      const Poly& q = value->denominator();
      num = n * q.pow(md);
      den = d * q.pow(mn);
      changed = true;
    }
    if (den.degree_in(k) == 1) {
      // Rationalize: multiply by the conjugate a - b*k of den = a + b*k.
      const auto c = den.coefficients_in(k);
      const Poly conjugate = c[0] - c[1].times_monomial(Monomial::of(k));
      num = num * conjugate;
      den = den * conjugate;
      auto [n, mn] = reduce_powers(num, k, *value);
      auto [d, md] = reduce_powers(den, k, *value);
      const Poly& q = value->denominator();
      num = n * q.pow(md);
      den = d * q.pow(mn);
      changed = true;
    }
  }
  return changed;
}

}  // namespace

CanonicalForm::CanonicalForm(Poly num, Poly den, bool coprime) {
  if (den.is_zero()) throw MathError("division by an identically zero denominator");
  for (int round = 0;; ++round) {
    if (round > 32) throw MathError("side relations do not reach a normal form");
    if (num.is_zero()) {
      num_ = Poly();
      den_ = Poly(1);
      return;
    }
    if (den.is_constant()) {
      num = num.scaled(1 / den.constant_value());
      den = Poly(1);
    } else if (!coprime || round > 0) {
      const Poly g = gcd(num, den);
      if (!g.is_constant()) {
        num = exact_quotient(num, g);
        den = exact_quotient(den, g);
      }
      if (den.is_constant()) {
        num = num.scaled(1 / den.constant_value());
        den = Poly(1);
      }
    }
    if (!apply_side_relations(num, den)) break;
  }
  if (!den.is_one()) {
    const Rational content = den.numeric_content();
    Rational factor = 1 / content;
    if (den.graded_leading().coeff < 0) factor = -factor;
    num = num.scaled(factor);
    den = den.scaled(factor);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

CanonicalForm CanonicalForm::of_kernel(KernelId k) { return of_poly(Poly::of_kernel(k)); }

CanonicalForm CanonicalForm::of_poly(Poly p) { return CanonicalForm(std::move(p), Poly(1), true); }

CanonicalForm CanonicalForm::fraction(Poly num, Poly den) {
  return CanonicalForm(std::move(num), std::move(den), false);
}

std::vector<KernelId> CanonicalForm::kernels() const {
  std::set<KernelId> ids;
  for (KernelId k : num_.kernels()) ids.insert(k);
  for (KernelId k : den_.kernels()) ids.insert(k);
  return {ids.begin(), ids.end()};
}

CanonicalForm CanonicalForm::operator-() const {
  CanonicalForm out = *this;
  out.num_ = -num_;
  return out;
}

CanonicalForm CanonicalForm::operator+(const CanonicalForm& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_ == o.den_) {
    if (den_.is_one()) return CanonicalForm(num_ + o.num_, Poly(1), true);
    return CanonicalForm(num_ + o.num_, den_, false);
  }
  if (den_.is_one()) return CanonicalForm(num_ * o.den_ + o.num_, o.den_, true);
  if (o.den_.is_one()) return CanonicalForm(num_ + o.num_ * den_, den_, true);
  const Poly g = gcd(den_, o.den_);
  const Poly a = exact_quotient(den_, g);
  const Poly b = exact_quotient(o.den_, g);
  return CanonicalForm(num_ * b + o.num_ * a, den_ * b, false);
}

CanonicalForm CanonicalForm::operator-(const CanonicalForm& o) const { return *this + (-o); }

CanonicalForm CanonicalForm::operator*(const CanonicalForm& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (den_.is_one() && o.den_.is_one()) return CanonicalForm(num_ * o.num_, Poly(1), true);
  Poly n1 = num_;
  Poly d1 = den_;
  Poly n2 = o.num_;
  Poly d2 = o.den_;
  if (!d2.is_one()) {
    const Poly g = gcd(n1, d2);
    if (!g.is_constant()) {
      n1 = exact_quotient(n1, g);
      d2 = exact_quotient(d2, g);
    }
  }
  if (!d1.is_one()) {
    const Poly g = gcd(n2, d1);
    if (!g.is_constant()) {
      n2 = exact_quotient(n2, g);
      d1 = exact_quotient(d1, g);
    }
  }
  return CanonicalForm(n1 * n2, d1 * d2, true);
}

CanonicalForm CanonicalForm::operator/(const CanonicalForm& o) const {
  if (o.is_zero()) throw MathError("division by an identically zero denominator");
  CanonicalForm inverse(o.den_, o.num_, true);
  return *this * inverse;
}

CanonicalForm CanonicalForm::pow(int exponent) const {
  if (exponent == 0) return CanonicalForm(1);
  if (exponent < 0) {
    if (is_zero()) throw MathError("division by an identically zero denominator");
    return CanonicalForm(den_.pow(-exponent), num_.pow(-exponent), true);
  }
  return CanonicalForm(num_.pow(exponent), den_.pow(exponent), true);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string rational_text(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string monomial_text(const Monomial& m) {
  auto powers = m.powers();
  std::sort(powers.begin(), powers.end(),
            [](const auto& l, const auto& r) { return kernel_precedes(l.first, r.first); });
  std::string out;
  for (const auto& [k, e] : powers) {
    if (!out.empty()) out += "*";
    out += kernel(k).text;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::vector<const Term*> graded_terms(const Poly& p) {
  std::vector<const Term*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](const Term* a, const Term* b) {
    return compare_graded(a->monomial, b->monomial) > 0;
  });
  return terms;
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term* t : graded_terms(p)) {
    const bool negative = t->coeff < 0;
    const Rational magnitude = negative ? Rational(-t->coeff) : t->coeff;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t->monomial.empty()) {
      out += rational_text(magnitude);
    } else if (magnitude == 1) {
      out += monomial_text(t->monomial);
    } else {
      out += rational_text(magnitude) + "*" + monomial_text(t->monomial);
    }
  }
  return out;
}

std::string to_string(const CanonicalForm& f) {
  const Poly& num = f.numerator();
  const Poly& den = f.denominator();
  if (den.is_one()) return to_string(num);
  std::string n = to_string(num);
  const bool bare_num = num.size() == 1 && num.leading().coeff == 1;
  if (!bare_num) n = "(" + n + ")";
  std::string d = to_string(den);
  const bool bare_den = den.size() == 1 && den.leading().coeff == 1 &&
                        den.leading().monomial.powers().size() == 1;
  if (!bare_den) d = "(" + d + ")";
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const CanonicalForm& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Substitution and derivations

namespace {

/// Evaluates `poly` with the given kernel images over a common denominator.
std::pair<Poly, Poly> evaluate(const Poly& poly, const std::map<KernelId, CanonicalForm>& images) {
  struct Slot {
    const CanonicalForm* value;
    std::uint32_t top;
    std::vector<Poly> num_pows;
    std::vector<Poly> den_pows;
  };
  std::map<KernelId, Slot> slots;
  for (const auto& [k, v] : images) {
    const std::uint32_t top = poly.degree_in(k);
    if (top == 0) continue;
    Slot s{&v, top, {Poly(1)}, {Poly(1)}};
    for (std::uint32_t i = 1; i <= top; ++i) {
      s.num_pows.push_back(s.num_pows.back() * v.numerator());
      s.den_pows.push_back(s.den_pows.back() * v.denominator());
    }
    slots.emplace(k, std::move(s));
  }
  if (slots.empty()) return {poly, Poly(1)};
  std::vector<Term> acc;
  for (const auto& t : poly.terms()) {
    Poly factor = Poly::of_term(t.coeff, Monomial());
    std::vector<Monomial::Power> kept;
    std::set<KernelId> seen;
    for (const auto& [k, e] : t.monomial.powers()) {
      auto it = slots.find(k);
      if (it == slots.end()) {
        kept.emplace_back(k, e);
        continue;
      }
      seen.insert(k);
      factor = factor * it->second.num_pows[e] * it->second.den_pows[it->second.top - e];
    }
    for (const auto& [k, s] : slots) {
      if (!seen.count(k)) factor = factor * s.den_pows[s.top];
    }
    factor = factor.times_monomial(Monomial(std::move(kept)));
    acc.insert(acc.end(), factor.terms().begin(), factor.terms().end());
  }
  Poly den(1);
  for (const auto& [k, s] : slots) den = den * s.den_pows[s.top];
  return {Poly::from_terms(std::move(acc)), den};
}

/// Sum of poly_i * form_i over the least common denominator.
CanonicalForm sum_of_products(const std::vector<std::pair<Poly, CanonicalForm>>& parts) {
  Poly common(1);
  for (const auto& [p, f] : parts) {
    if (f.denominator().is_one()) continue;
    const Poly g = gcd(common, f.denominator());
    common = common * *f.denominator().divide_exact(g);
  }
  std::vector<Term> acc;
  for (const auto& [p, f] : parts) {
    Poly scaled = p * f.numerator();
    scaled = f.denominator().is_one() ? scaled * common : scaled * *common.divide_exact(f.denominator());
    acc.insert(acc.end(), scaled.terms().begin(), scaled.terms().end());
  }
  return CanonicalForm::fraction(Poly::from_terms(std::move(acc)), common);
}

Poly partial_in_kernel(const Poly& p, KernelId k) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    std::uint32_t e = 0;
    Monomial rest = t.monomial.without(k, &e);
    if (e == 0) continue;
    out.push_back({rest * Monomial::of(k, e - 1), t.coeff * e});
  }
  return Poly::from_terms(std::move(out));
}

}  // namespace

CanonicalForm substitute(const CanonicalForm& f, const KernelImage& image) {
  std::map<KernelId, CanonicalForm> images;
  for (KernelId k : f.kernels()) {
    if (auto v = image(k)) {
      images.emplace(k, std::move(*v));
      continue;
    }
    const Kernel& kk = kernel(k);
    if (kk.kind == KernelKind::function) {
      CanonicalForm arg = substitute(*kk.argument, image);
      if (!(arg == *kk.argument)) images.emplace(k, apply_function(*kk.function, arg));
    }
  }
  if (images.empty()) return f;
  auto [nn, nd] = evaluate(f.numerator(), images);
  auto [dn, dd] = evaluate(f.denominator(), images);
  if (dn.is_zero()) throw MathError("substitution makes the denominator identically zero");
  return CanonicalForm::fraction(nn * dd, nd * dn);
}

CanonicalForm substitute(const CanonicalForm& f, KernelId target, const CanonicalForm& replacement) {
  return substitute(f, [&](KernelId k) -> std::optional<CanonicalForm> {
    if (k == target) return replacement;
    return std::nullopt;
  });
}

CanonicalForm substitute(const CanonicalForm& f, const std::map<KernelId, CanonicalForm>& images) {
  return substitute(f, [&](KernelId k) -> std::optional<CanonicalForm> {
    auto it = images.find(k);
    if (it == images.end()) return std::nullopt;
    return it->second;
  });
}

CanonicalForm derivation(const CanonicalForm& f,
                         const std::function<CanonicalForm(KernelId)>& kernel_derivative) {
  std::map<KernelId, CanonicalForm> dk;
  for (KernelId k : f.kernels()) {
    CanonicalForm d = kernel_derivative(k);
    if (!d.is_zero()) dk.emplace(k, std::move(d));
  }
  if (dk.empty()) return {};
  auto derive_poly = [&](const Poly& p) {
    std::vector<std::pair<Poly, CanonicalForm>> parts;
    for (const auto& [k, d] : dk) {
      if (!p.contains(k)) continue;
      parts.emplace_back(partial_in_kernel(p, k), d);
    }
    return sum_of_products(parts);
  };
  const CanonicalForm dnum = derive_poly(f.numerator());
  if (f.denominator().is_one()) return dnum;
  const CanonicalForm den = CanonicalForm::of_poly(f.denominator());
  const CanonicalForm dden = derive_poly(f.denominator());
  return dnum / den - f * dden / den;
}

CanonicalForm partial_derivative(const CanonicalForm& f, KernelId variable) {
  const Kernel& v = kernel(variable);
  std::function<CanonicalForm(KernelId)> dk = [&](KernelId k) -> CanonicalForm {
    if (k == variable) return CanonicalForm(1);
    const Kernel& kk = kernel(k);
    switch (kk.kind) {
      case KernelKind::function: {
        CanonicalForm inner = derivation(*kk.argument, dk);
        if (inner.is_zero()) return {};
        return argument_derivative(k) * inner;
      }
      case KernelKind::ansatz: {
        const bool coordinate = v.kind == KernelKind::independent ||
                                (v.kind == KernelKind::jet && v.index.empty());
        if (!coordinate || v.name.size() != 1) return {};
        return CanonicalForm::of_kernel(intern_ansatz(kk.name, kk.index.raised(v.name[0])));
      }
      default:
        return {};
    }
  };
  return derivation(f, dk);
}

}  // namespace condsym
