#pragma once

#include <random>
#include <string>
#include <vector>

#include "condsym/symmetry.hpp"
#include "condsym/workspace.hpp"

namespace condsym::testing {

/// Seeded generator of small random polynomials over x, y, u and jets.
class RandomForms {
 public:
  explicit RandomForms(unsigned seed) : rng_(seed) {}

  /// Sum of up to max_terms monomials of total degree <= degree in atoms.
  CanonicalForm polynomial(const std::vector<CanonicalForm>& atoms, int degree, int max_terms = 4) {
    CanonicalForm out;
    const int terms = pick(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      CanonicalForm m = CanonicalForm(long(nonzero(5)));
      const int deg = pick(0, degree);
      for (int d = 0; d < deg; ++d) m *= atoms[std::size_t(pick(0, int(atoms.size()) - 1))];
      out += m;
    }
    return out;
  }

  /// Polynomial in x, y, u and the jets of order 1..max_order.
  CanonicalForm jet_polynomial(const Workspace& ws, int degree, int max_order) {
    return polynomial(jet_atoms(ws, max_order), degree);
  }

  /// Point field with polynomial coefficients in x, y, u; not identically zero.
  VectorField point_field(const Workspace& ws, int degree) {
    const std::vector<CanonicalForm> base = point_atoms(ws);
    for (;;) {
      CanonicalForm xi = polynomial(base, degree, 3);
      CanonicalForm eta = polynomial(base, degree, 3);
      CanonicalForm phi = polynomial(base, degree, 3);
      if (xi.is_zero() && eta.is_zero() && phi.is_zero()) continue;
      return make_field(xi, eta, phi);
    }
  }

  char letter() { return pick(0, 1) == 0 ? 'x' : 'y'; }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  static std::vector<CanonicalForm> point_atoms(const Workspace& ws) {
    return {CanonicalForm::of_kernel(ws.independent('x')), CanonicalForm::of_kernel(ws.independent('y')),
            CanonicalForm::of_kernel(ws.jet(""))};
  }

  static std::vector<CanonicalForm> jet_atoms(const Workspace& ws, int max_order) {
    std::vector<CanonicalForm> atoms = point_atoms(ws);
    std::vector<std::string> level{""};
    for (int k = 1; k <= max_order; ++k) {
      std::vector<std::string> next;
      for (const auto& l : level) {
        if (l.find('y') == std::string::npos) next.push_back(l + "x");
        next.push_back(l + "y");
      }
      for (const auto& l : next) atoms.push_back(CanonicalForm::of_kernel(ws.jet(l)));
      level = std::move(next);
    }
    return atoms;
  }

 private:
  long nonzero(int bound) {
    int v = 0;
    while (v == 0) v = pick(-bound, bound);
    return v;
  }

  std::mt19937 rng_;
};

}  // namespace condsym::testing
