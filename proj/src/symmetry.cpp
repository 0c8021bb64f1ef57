#include "condsym/symmetry.hpp"

#include "condsym/error.hpp"
#include "condsym/normal_form.hpp"

namespace condsym {
namespace {

CanonicalForm jet_form(std::string_view letters) {
  return CanonicalForm::of_kernel(intern_jet("u", MultiIndex::from_letters(letters)));
}

CanonicalForm coordinate(char c) {
  return CanonicalForm::of_kernel(intern_atom(KernelKind::independent, std::string(1, c)));
}

}  // namespace

VectorField make_field(CanonicalForm xi, CanonicalForm eta, CanonicalForm phi) {
  for (const auto* c : {&xi, &eta, &phi}) {
    if (jet_order(*c) > 0) throw Error("field coefficient depends on derivatives: " + to_string(*c));
  }
  if (xi.is_zero() && eta.is_zero() && phi.is_zero()) throw Error("zero vector field");
  return {std::move(xi), std::move(eta), std::move(phi)};
}

VectorField scaled(const VectorField& X, const CanonicalForm& factor) {
  return {X.xi * factor, X.eta * factor, X.phi * factor};
}

std::string to_string(const VectorField& X) {
  return "xi = " + to_string(X.xi) + "; eta = " + to_string(X.eta) + "; phi = " + to_string(X.phi);
}

const CanonicalForm& ProlongedField::coefficient(const MultiIndex& index) const {
  if (index.empty()) return base_.phi;
  auto it = coefficients_.find(index);
  if (it == coefficients_.end()) {
    throw JetError("prolongation of order " + std::to_string(order_) + " has no coefficient for u_" +
                   index.letters());
  }
  return it->second;
}

ProlongedField prolong(const VectorField& X, int order) {
  if (order < 0) throw Error("negative prolongation order");
  ProlongedField pr;
  pr.base_ = X;
  pr.order_ = order;
  std::map<char, CanonicalForm> dxi, deta;
  for (char i : {'x', 'y'}) {
    dxi[i] = total_derivative(X.xi, i);
    deta[i] = total_derivative(X.eta, i);
  }
  std::vector<MultiIndex> level{MultiIndex()};
  for (int k = 1; k <= order; ++k) {
    std::vector<MultiIndex> next;
    for (const auto& J : level) {
      const CanonicalForm& phiJ = J.empty() ? X.phi : pr.coefficients_.at(J);
      for (char i : {'x', 'y'}) {
        MultiIndex Ji = J.raised(i);
        // Each index is reached from the parent obtained by dropping its last letter.
        if (Ji.letters().back() != i || pr.coefficients_.count(Ji) > 0) continue;
        pr.coefficients_[Ji] = total_derivative(phiJ, i) - jet_form(J.raised('x').letters()) * dxi[i] -
                               jet_form(J.raised('y').letters()) * deta[i];
        next.push_back(Ji);
      }
    }
    level = std::move(next);
  }
  return pr;
}

CanonicalForm apply(const ProlongedField& prX, const CanonicalForm& f) {
  const int need = jet_order(f);
  if (need > prX.order()) {
    throw JetError("prolongation order " + std::to_string(prX.order()) + " is below the order " +
                   std::to_string(need) + " of " + to_string(f));
  }
  const VectorField& X = prX.base();
  CanonicalForm out;
  if (!X.xi.is_zero()) out += X.xi * partial_derivative(f, coordinate('x').kernels().front());
  if (!X.eta.is_zero()) out += X.eta * partial_derivative(f, coordinate('y').kernels().front());
  for (KernelId j : jet_variables(f)) {
    const CanonicalForm& c = prX.coefficient(kernel(j).index);
    if (!c.is_zero()) out += c * partial_derivative(f, j);
  }
  return out;
}

CanonicalForm characteristic(const VectorField& X) {
  return X.xi * jet_form("x") + X.eta * jet_form("y") - X.phi;
}

bool is_invariant(const VectorField& X, const CanonicalForm& f) {
  return apply(prolong(X, std::max(jet_order(f), 0)), f).is_zero();
}

Equation make_equation(const CanonicalForm& lhs, KernelId variable) {
  return {lhs, variable, solve_linear_for(lhs, variable)};
}

Equation make_equation(const CanonicalForm& lhs, const JetRanking& r) {
  return make_equation(lhs, leading_variable(lhs, r));
}

CanonicalForm point_symmetry_residual(const VectorField& X, const Equation& E) {
  const CanonicalForm action = apply(prolong(X, std::max(E.order(), 0)), E.lhs);
  return Reducer({{E.variable, E.rhs}}).reduce(action);
}

bool is_point_symmetry(const VectorField& X, const Equation& E) {
  return point_symmetry_residual(X, E).is_zero();
}

std::optional<CanonicalForm> is_multiple(const VectorField& Z, const VectorField& X) {
  std::optional<CanonicalForm> factor;
  const std::pair<const CanonicalForm*, const CanonicalForm*> parts[] = {
      {&Z.xi, &X.xi}, {&Z.eta, &X.eta}, {&Z.phi, &X.phi}};
  for (auto [z, x] : parts) {
    if (x->is_zero()) {
      if (!z->is_zero()) return std::nullopt;
      continue;
    }
    CanonicalForm ratio = *z / *x;
    if (factor && !(*factor == ratio)) return std::nullopt;
    factor = std::move(ratio);
  }
  if (factor && factor->is_zero()) return std::nullopt;
  return factor;
}

}  // namespace condsym
