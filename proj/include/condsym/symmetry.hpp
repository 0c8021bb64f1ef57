#pragma once

#include <map>
#include <optional>

#include "condsym/canonical.hpp"
#include "condsym/jet.hpp"

namespace condsym {

/// xi d/dx + eta d/dy + phi d/du on the (x, y, u) space.
struct VectorField {
  CanonicalForm xi;
  CanonicalForm eta;
  CanonicalForm phi;
};

/// Validates a point field: coefficients free of derivatives, not all zero.
VectorField make_field(CanonicalForm xi, CanonicalForm eta, CanonicalForm phi);
VectorField scaled(const VectorField& X, const CanonicalForm& factor);
std::string to_string(const VectorField& X);

class ProlongedField {
 public:
  const VectorField& base() const { return base_; }
  int order() const { return order_; }
  /// phi^J; the empty index gives phi itself. Throws JetError beyond order().
  const CanonicalForm& coefficient(const MultiIndex& index) const;
  const std::map<MultiIndex, CanonicalForm>& coefficients() const { return coefficients_; }

 private:
  friend ProlongedField prolong(const VectorField& X, int order);
  VectorField base_;
  int order_ = 0;
  std::map<MultiIndex, CanonicalForm> coefficients_;
};

/// phi^{J+i} = D_i phi^J - u_{J+x} D_i xi - u_{J+y} D_i eta for all |J| < order.
ProlongedField prolong(const VectorField& X, int order);

/// pr X applied to f; throws JetError when f has derivatives above the order.
CanonicalForm apply(const ProlongedField& prX, const CanonicalForm& f);

/// xi u_x + eta u_y - phi.
CanonicalForm characteristic(const VectorField& X);

bool is_invariant(const VectorField& X, const CanonicalForm& f);

/// lhs = 0, solved as variable = rhs.
struct Equation {
  CanonicalForm lhs;
  KernelId variable;
  CanonicalForm rhs;
  int order() const { return jet_order(lhs); }
};

/// Solves lhs for variable (see solve_linear_for).
Equation make_equation(const CanonicalForm& lhs, KernelId variable);
/// Solves lhs for its leading variable under r.
Equation make_equation(const CanonicalForm& lhs, const JetRanking& r);

/// pr X E = 0 on E = 0, eliminating the solved variable and every derivative of it.
bool is_point_symmetry(const VectorField& X, const Equation& E);
/// The residual of the point symmetry test in normal form.
CanonicalForm point_symmetry_residual(const VectorField& X, const Equation& E);

/// f with Z = f X componentwise, if any.
std::optional<CanonicalForm> is_multiple(const VectorField& Z, const VectorField& X);

}  // namespace condsym
