#pragma once

#include <string>
#include <vector>

#include "condsym/symmetry.hpp"

namespace condsym {

/// One determining equation: the coefficient of a monomial in the derivatives
/// of order >= 1 that remain after eliminating the solved variable.
struct DeterminingEquation {
  std::string key;
  CanonicalForm coefficient;
};

struct DeterminingSystem {
  /// Nonclassical variant: eta = 1 and the characteristic imposed.
  bool conditional = false;
  std::vector<DeterminingEquation> equations;
};

/// The field with unknown coefficients xi, eta, phi of (x, y, u); eta = 1 when
/// conditional.
VectorField ansatz_field(bool conditional);

DeterminingSystem determining_system(const Equation& E, bool conditional = false);

/// Substitutes X's coefficients and their partial derivatives for the unknowns.
/// For a conditional system X is first normalized to eta = 1 (false if eta = 0).
bool check_candidate(const DeterminingSystem& system, const VectorField& X);

}  // namespace condsym
