#include "condsym/poly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "condsym/error.hpp"

namespace condsym {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(KernelId k, std::uint32_t exponent) {
  if (exponent == 0) return {};
  return Monomial({{k, exponent}});
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [k, e] : powers_) d += e;
  return d;
}

std::uint32_t Monomial::exponent(KernelId k) const {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), k,
                             [](const Power& p, KernelId id) { return p.first < id; });
  return (it != powers_.end() && it->first == k) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Power> out;
  out.reserve(powers_.size() + other.powers_.size());
  auto a = powers_.begin();
  auto b = other.powers_.begin();
  while (a != powers_.end() && b != other.powers_.end()) {
    if (a->first < b->first) {
      out.push_back(*a++);
    } else if (b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, powers_.end());
  out.insert(out.end(), b, other.powers_.end());
  return Monomial(std::move(out));
}

bool Monomial::divides(const Monomial& other) const {
  auto b = other.powers_.begin();
  for (const auto& [k, e] : powers_) {
    while (b != other.powers_.end() && b->first < k) ++b;
    if (b == other.powers_.end() || b->first != k || b->second < e) return false;
  }
  return true;
}

Monomial Monomial::divided(const Monomial& divisor) const {
  std::vector<Power> out;
  out.reserve(powers_.size());
  auto d = divisor.powers_.begin();
  for (const auto& [k, e] : powers_) {
    std::uint32_t sub = 0;
    if (d != divisor.powers_.end() && d->first == k) sub = (d++)->second;
    if (e > sub) out.emplace_back(k, e - sub);
  }
  return Monomial(std::move(out));
}

Monomial Monomial::without(KernelId k, std::uint32_t* exponent) const {
  std::vector<Power> out;
  out.reserve(powers_.size());
  if (exponent) *exponent = 0;
  for (const auto& p : powers_) {
    if (p.first == k) {
      if (exponent) *exponent = p.second;
    } else {
      out.push_back(p);
    }
  }
  return Monomial(std::move(out));
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  std::vector<Power> out;
  auto j = b.powers_.begin();
  for (const auto& [k, e] : a.powers_) {
    while (j != b.powers_.end() && j->first < k) ++j;
    if (j != b.powers_.end() && j->first == k) out.emplace_back(k, std::min(e, j->second));
  }
  return Monomial(std::move(out));
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& [k, e] : powers_) {
    h ^= (static_cast<std::size_t>(k) << 8) ^ e;
    h *= 1099511628211ULL;
  }
  return h;
}

int compare_internal(const Monomial& a, const Monomial& b) {
  const auto& pa = a.powers();
  const auto& pb = b.powers();
  std::size_t i = 0;
  for (; i < pa.size() && i < pb.size(); ++i) {
    if (pa[i].first != pb[i].first) return pa[i].first < pb[i].first ? 1 : -1;
    if (pa[i].second != pb[i].second) return pa[i].second > pb[i].second ? 1 : -1;
  }
  if (pa.size() == pb.size()) return 0;
  return pa.size() > pb.size() ? 1 : -1;
}

int compare_graded(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  auto sorted = [](const Monomial& m) {
    auto p = m.powers();
    std::sort(p.begin(), p.end(),
              [](const auto& l, const auto& r) { return kernel_precedes(l.first, r.first); });
    return p;
  };
  const auto pa = sorted(a);
  const auto pb = sorted(b);
  std::size_t i = 0;
  for (; i < pa.size() && i < pb.size(); ++i) {
    if (pa[i].first != pb[i].first) return kernel_precedes(pa[i].first, pb[i].first) ? 1 : -1;
    if (pa[i].second != pb[i].second) return pa[i].second > pb[i].second ? 1 : -1;
  }
  if (pa.size() == pb.size()) return 0;
  return pa.size() > pb.size() ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Poly

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

bool descending(const Term& a, const Term& b) {
  return compare_internal(a.monomial, b.monomial) > 0;
}

}  // namespace

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Poly Poly::of_kernel(KernelId k) { return Poly({{Monomial::of(k), Rational(1)}}); }

Poly Poly::of_term(const Rational& c, Monomial m) {
  if (c == 0) return {};
  return Poly({{std::move(m), c}});
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), descending);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(std::move(t));
    }
  }
  return Poly(std::move(out));
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].monomial.empty() && terms_[0].coeff == 1;
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw MathError("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

const Term& Poly::graded_leading() const {
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (compare_graded(t.monomial, best->monomial) > 0) best = &t;
  }
  return *best;
}

Poly Poly::operator-() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = -t.coeff;
  return Poly(std::move(out));
}

Poly Poly::operator+(const Poly& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    const int c = compare_internal(a->monomial, b->monomial);
    if (c > 0) {
      out.push_back(*a++);
    } else if (c < 0) {
      out.push_back(*b++);
    } else {
      Rational s = a->coeff + b->coeff;
      if (s != 0) out.push_back({a->monomial, std::move(s)});
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, terms_.end());
  out.insert(out.end(), b, o.terms_.end());
  return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return {};
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff *= c;
  return Poly(std::move(out));
}

Poly Poly::times_monomial(const Monomial& m) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.monomial * m, t.coeff});
  return Poly(std::move(out));  // lex order is compatible with multiplication
}

Poly Poly::operator*(const Poly& o) const {
  if (terms_.empty() || o.terms_.empty()) return {};
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].monomial).scaled(o.terms_[0].coeff);
  if (terms_.size() == 1) return o.times_monomial(terms_[0].monomial).scaled(terms_[0].coeff);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      acc[a.monomial * b.monomial] += a.coeff * b.coeff;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) out.push_back({m, c});
  }
  std::sort(out.begin(), out.end(), descending);
  return Poly(std::move(out));
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw MathError("division by zero polynomial");
  if (is_zero()) return Poly();
  if (divisor.terms_.size() == 1) {
    const auto& d = divisor.terms_[0];
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!d.monomial.divides(t.monomial)) return std::nullopt;
      out.push_back({t.monomial.divided(d.monomial), t.coeff / d.coeff});
    }
    return Poly(std::move(out));
  }
  const Term& lead = divisor.terms_.front();
  Poly remainder = *this;
  std::vector<Term> quotient;
  while (!remainder.is_zero()) {
    const Term& r = remainder.terms_.front();
    if (!lead.monomial.divides(r.monomial)) return std::nullopt;
    Term q{r.monomial.divided(lead.monomial), r.coeff / lead.coeff};
    remainder = remainder - divisor.times_monomial(q.monomial).scaled(q.coeff);
    quotient.push_back(std::move(q));
  }
  return Poly(std::move(quotient));
}

std::uint32_t Poly::degree_in(KernelId k) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(k));
  return d;
}

std::vector<Poly> Poly::coefficients_in(KernelId k) const {
  std::vector<std::vector<Term>> buckets(degree_in(k) + 1);
  for (const auto& t : terms_) {
    std::uint32_t e = 0;
    Monomial rest = t.monomial.without(k, &e);
    buckets[e].push_back({std::move(rest), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

std::vector<KernelId> Poly::kernels() const {
  std::set<KernelId> ids;
  for (const auto& t : terms_) {
    for (const auto& p : t.monomial.powers()) ids.insert(p.first);
  }
  return {ids.begin(), ids.end()};
}

bool Poly::contains(KernelId k) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [k](const Term& t) { return t.monomial.exponent(k) > 0; });
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.front().monomial;
  for (const auto& t : terms_) {
    g = Monomial::gcd(g, t.monomial);
    if (g.empty()) break;
  }
  return g;
}

Poly Poly::divided_by_monomial(const Monomial& m) const {
  if (m.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.monomial.divided(m), t.coeff});
  return Poly(std::move(out));
}

Rational Poly::numeric_content() const {
  if (terms_.empty()) return Rational(1);
  mpz_class num = 0;
  mpz_class den = 1;
  for (const auto& t : terms_) {
    mpz_class n = abs(t.coeff.get_num());
    num = gcd(num, n);
    den = lcm(den, mpz_class(t.coeff.get_den()));
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].monomial == o.terms_[i].monomial)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// GCD over Q[kernels]: monomial content extraction, coefficient splitting for
// kernels present in one argument only, then recursive primitive PRS.

namespace {

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading().coeff);
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw MathError("internal error: inexact polynomial division");
  return *q;
}

Poly gcd_core(const Poly& a, const Poly& b);

/// Coefficients of p viewed as a polynomial in `vars` (all other kernels form the
/// coefficient ring).
std::vector<Poly> split_by(const Poly& p, const std::set<KernelId>& vars) {
  std::map<std::vector<Monomial::Power>, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    std::vector<Monomial::Power> key;
    std::vector<Monomial::Power> rest;
    for (const auto& pw : t.monomial.powers()) {
      (vars.count(pw.first) ? key : rest).push_back(pw);
    }
    groups[key].push_back({Monomial(std::move(rest)), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(groups.size());
  for (auto& [key, terms] : groups) {
    out.push_back(Poly::from_terms(std::move(terms)));
  }
  std::sort(out.begin(), out.end(), [](const Poly& l, const Poly& r) { return l.size() < r.size(); });
  return out;
}

Poly gcd_of_list(const std::vector<Poly>& list, Poly seed) {
  Poly g = std::move(seed);
  for (const auto& c : list) {
    g = gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Poly lc_in(const Poly& p, KernelId v) { return p.coefficients_in(v).back(); }

Poly primitive_part(const Poly& p, KernelId v) {
  auto coeffs = p.coefficients_in(v);
  std::vector<Poly> nonzero;
  for (auto& c : coeffs) {
    if (!c.is_zero()) nonzero.push_back(std::move(c));
  }
  std::sort(nonzero.begin(), nonzero.end(),
            [](const Poly& l, const Poly& r) { return l.size() < r.size(); });
  Poly content = nonzero.front();
  for (std::size_t i = 1; i < nonzero.size() && !content.is_constant(); ++i) {
    content = gcd(content, nonzero[i]);
  }
  if (content.is_constant()) return monic(p);
  return monic(exact(p, content));
}

Poly pseudo_remainder(Poly r, const Poly& b, KernelId v) {
  const std::uint32_t db = b.degree_in(v);
  const Poly lb = lc_in(b, v);
  while (!r.is_zero()) {
    const std::uint32_t dr = r.degree_in(v);
    if (dr < db) break;
    const Poly lr = lc_in(r, v);
    r = lb * r - (lr * b).times_monomial(Monomial::of(v, dr - db));
  }
  return r;
}

Poly prs_gcd(Poly a, Poly b, KernelId v) {
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  while (true) {
    if (b.is_zero()) return monic(a);
    if (b.degree_in(v) == 0) return Poly(1);
    Poly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) return monic(b);
    a = std::move(b);
    b = primitive_part(r, v);
  }
}

Poly gcd_core(const Poly& a, const Poly& b) {
  // Both nonzero, non-constant, without monomial content.
  if (a.size() == 1 || b.size() == 1) return Poly(1);
  if (monic(a) == monic(b)) return monic(a);
  const auto ka = a.kernels();
  const auto kb = b.kernels();
  std::set<KernelId> only_a;
  std::set<KernelId> only_b;
  std::set_difference(ka.begin(), ka.end(), kb.begin(), kb.end(),
                      std::inserter(only_a, only_a.end()));
  std::set_difference(kb.begin(), kb.end(), ka.begin(), ka.end(),
                      std::inserter(only_b, only_b.end()));
  if (!only_a.empty()) return gcd_of_list(split_by(a, only_a), b);
  if (!only_b.empty()) return gcd_of_list(split_by(b, only_b), a);

  KernelId v = ka.front();
  std::uint32_t best = UINT32_MAX;
  for (KernelId k : ka) {
    const std::uint32_t d = std::max(a.degree_in(k), b.degree_in(k));
    if (d < best) {
      best = d;
      v = k;
    }
  }
  auto content_of = [v](const Poly& p) {
    std::vector<Poly> coeffs;
    for (auto& c : p.coefficients_in(v)) {
      if (!c.is_zero()) coeffs.push_back(std::move(c));
    }
    std::sort(coeffs.begin(), coeffs.end(),
              [](const Poly& l, const Poly& r) { return l.size() < r.size(); });
    Poly g = coeffs.front();
    for (std::size_t i = 1; i < coeffs.size() && !g.is_constant(); ++i) g = gcd(g, coeffs[i]);
    return g.is_constant() ? Poly(1) : g;
  };
  const Poly ca = content_of(a);
  const Poly cb = content_of(b);
  const Poly c = (ca.is_one() || cb.is_one()) ? Poly(1) : gcd(ca, cb);
  const Poly pa = ca.is_one() ? a : exact(a, ca);
  const Poly pb = cb.is_one() ? b : exact(b, cb);
  return monic(c * prs_gcd(pa, pb, v));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  const Monomial ma = a.monomial_content();
  const Monomial mb = b.monomial_content();
  const Monomial g = Monomial::gcd(ma, mb);
  const Poly core = gcd_core(a.divided_by_monomial(ma), b.divided_by_monomial(mb));
  return monic(core.times_monomial(g));
}

}  // namespace condsym
