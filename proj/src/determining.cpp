#include "condsym/determining.hpp"

#include <map>

#include "condsym/normal_form.hpp"
#include "condsym/reduction.hpp"

namespace condsym {
namespace {

bool is_derivative_kernel(KernelId k) {
  const Kernel& kk = kernel(k);
  if (kk.kind == KernelKind::jet) return kk.index.order() >= 1;
  return kk.kind == KernelKind::function && jet_order(*kk.argument) >= 1;
}

}  // namespace

VectorField ansatz_field(bool conditional) {
  auto unknown = [](const char* name) { return CanonicalForm::of_kernel(intern_ansatz(name, MultiIndex())); };
  return {unknown("xi"), conditional ? CanonicalForm(1) : unknown("eta"), unknown("phi")};
}

DeterminingSystem determining_system(const Equation& E, bool conditional) {
  const VectorField X = ansatz_field(conditional);
  const std::vector<Rule> rules =
      conditional ? conditional_rules(X, E) : std::vector<Rule>{{E.variable, E.rhs}};
  const CanonicalForm reduced =
      Reducer(rules).reduce(apply(prolong(X, std::max(E.order(), 0)), E.lhs));

  std::map<std::string, std::pair<Monomial, std::vector<Term>>> groups;
  for (const auto& t : reduced.numerator().terms()) {
    std::vector<Monomial::Power> jet_part, rest;
    for (const auto& p : t.monomial.powers()) (is_derivative_kernel(p.first) ? jet_part : rest).push_back(p);
    Monomial key(std::move(jet_part));
    const std::string text = key.empty() ? "1" : to_string(Poly::of_term(1, key));
    auto& g = groups[text];
    g.first = key;
    g.second.push_back({Monomial(std::move(rest)), t.coeff});
  }
  DeterminingSystem out;
  out.conditional = conditional;
  for (auto& [text, g] : groups) {
    out.equations.push_back({text, CanonicalForm::of_poly(Poly::from_terms(std::move(g.second)))});
  }
  return out;
}

bool check_candidate(const DeterminingSystem& system, const VectorField& X) {
  VectorField field = X;
  if (system.conditional) {
    if (X.eta.is_zero()) return false;
    field = scaled(X, CanonicalForm(1) / X.eta);
  }
  const KernelId u = intern_jet("u", MultiIndex());
  auto coordinate = [&](char c) {
    return c == 'u' ? u : intern_atom(KernelKind::independent, std::string(1, c));
  };
  std::map<KernelId, CanonicalForm> cache;
  auto image = [&](KernelId k) -> std::optional<CanonicalForm> {
    const Kernel& kk = kernel(k);
    if (kk.kind != KernelKind::ansatz) return std::nullopt;
    if (auto it = cache.find(k); it != cache.end()) return it->second;
    const CanonicalForm& base = kk.name == "xi" ? field.xi : kk.name == "eta" ? field.eta : field.phi;
    CanonicalForm value = base;
    for (char c : kk.index.letters()) value = partial_derivative(value, coordinate(c));
    cache.emplace(k, value);
    return value;
  };
  for (const auto& eq : system.equations) {
    if (!substitute(eq.coefficient, image).is_zero()) return false;
  }
  return true;
}

}  // namespace condsym
