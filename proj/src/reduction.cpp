#include "condsym/reduction.hpp"

#include <algorithm>
#include <set>

#include "condsym/error.hpp"

namespace condsym {

JetRanking ranking_for(const VectorField& X) {
  return JetRanking(X.eta.is_zero() ? RankingMode::eliminate_x : RankingMode::eliminate_y);
}

ConstraintSet consequences(const CanonicalForm& C, const std::vector<MultiIndex>& indices,
                           const JetRanking& r, const std::map<MultiIndex, KernelId>& solve_for) {
  std::set<MultiIndex> wanted(indices.begin(), indices.end());
  wanted.insert(MultiIndex());
  std::vector<MultiIndex> ordered(wanted.begin(), wanted.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const MultiIndex& a, const MultiIndex& b) { return a.order() < b.order(); });

  ConstraintSet S{C, r, {}};
  std::set<KernelId> used;
  for (const auto& J : ordered) {
    const CanonicalForm d = total_derivative(C, J);
    auto it = solve_for.find(J);
    const KernelId v = it != solve_for.end() ? it->second : leading_variable(d, r);
    if (!used.insert(v).second) {
      throw JetError("rank collision: two consequences solved for " + kernel(v).text);
    }
    S.instances.push_back({J, v, solve_linear_for(d, v)});
  }
  return S;
}

namespace {

std::vector<const ConstraintInstance*> by_rank_descending(const ConstraintSet& S) {
  std::vector<const ConstraintInstance*> out;
  for (const auto& inst : S.instances) out.push_back(&inst);
  std::stable_sort(out.begin(), out.end(), [&](const ConstraintInstance* a, const ConstraintInstance* b) {
    return S.ranking.less(b->variable, a->variable);
  });
  return out;
}

bool has_jet(KernelId k) {
  const Kernel& kk = kernel(k);
  return kk.kind == KernelKind::jet ||
         (kk.kind == KernelKind::function && !jet_variables(*kk.argument).empty());
}

/// Substitutes v -> rhs in the numerator terms whose derivative part is v^e.
CanonicalForm substitute_pure_powers(const CanonicalForm& f, KernelId v, const CanonicalForm& rhs) {
  std::vector<Term> kept;
  CanonicalForm replaced;
  for (const auto& t : f.numerator().terms()) {
    bool pure = t.monomial.exponent(v) > 0;
    for (const auto& [k, e] : t.monomial.powers()) {
      if (k != v && has_jet(k)) pure = false;
    }
    if (!pure) {
      kept.push_back(t);
      continue;
    }
    replaced += substitute(CanonicalForm::of_poly(Poly::of_term(t.coeff, t.monomial)), v, rhs);
  }
  return (CanonicalForm::of_poly(Poly::from_terms(std::move(kept))) + replaced) /
         CanonicalForm::of_poly(f.denominator());
}

}  // namespace

CanonicalForm reduce(const CanonicalForm& f, const ConstraintSet& S, ReduceMode mode) {
  const auto ordered = by_rank_descending(S);
  if (mode == ReduceMode::selective) {
    CanonicalForm out = f;
    for (const auto* inst : ordered) out = substitute_pure_powers(out, inst->variable, inst->rhs);
    return out;
  }
  CanonicalForm out = f;
  const std::size_t limit = 4 * S.instances.size() + 8;
  for (std::size_t round = 0; round < limit; ++round) {
    bool changed = false;
    for (const auto* inst : ordered) {
      const auto jets = jet_variables(out);
      if (std::find(jets.begin(), jets.end(), inst->variable) == jets.end()) continue;
      out = substitute(out, inst->variable, inst->rhs);
      changed = true;
    }
    if (!changed) return out;
  }
  throw ReductionError("reduction by the constraint set does not terminate");
}

CanonicalForm expand_combination(const CanonicalForm& combination, const InvariantSet& invariants) {
  std::map<KernelId, CanonicalForm> images;
  for (const auto& [name, value] : invariants) images[intern_atom(KernelKind::constant, name)] = value;
  return substitute(combination, images);
}

Equation construct_equation(const InvariantSet& invariants, const CanonicalForm& combination,
                            const ConstraintSet& S, KernelId solve_for, ReduceMode mode) {
  const CanonicalForm reduced = reduce(expand_combination(combination, invariants), S, mode);
  if (reduced.is_zero()) throw ReductionError("the combination vanishes on the constraint set");
  return make_equation(CanonicalForm::of_poly(reduced.numerator()), solve_for);
}

std::vector<Rule> conditional_rules(const VectorField& X, const Equation& E) {
  const JetRanking r = ranking_for(X);
  const CanonicalForm C = characteristic(X);
  const KernelId v = leading_variable(C, r);
  std::vector<Rule> rules{{v, solve_linear_for(C, v)}};
  const CanonicalForm reduced = Reducer(rules).reduce(E.lhs);
  if (reduced.is_zero()) return rules;
  const CanonicalForm lhs = CanonicalForm::of_poly(reduced.numerator());
  if (jet_variables(lhs).empty()) {
    throw ReductionError("equation reduces to " + to_string(lhs) + " on the condition");
  }
  const KernelId w = leading_variable(lhs, r);
  rules.push_back({w, solve_linear_for(lhs, w)});
  return rules;
}

CanonicalForm conditional_residual(const VectorField& X, const Equation& E) {
  const Reducer reducer(conditional_rules(X, E));
  return reducer.reduce(apply(prolong(X, std::max(E.order(), 0)), E.lhs));
}

bool is_conditional_symmetry(const VectorField& X, const Equation& E) {
  return conditional_residual(X, E).is_zero();
}

std::string to_string(Classification::Verdict v) {
  switch (v) {
    case Classification::Verdict::point: return "point";
    case Classification::Verdict::point_equivalent: return "point-equivalent";
    case Classification::Verdict::conditional_only: return "conditional-only";
    case Classification::Verdict::none: return "none";
  }
  return "none";
}

std::vector<CanonicalForm> default_factors() {
  const CanonicalForm x = CanonicalForm::of_kernel(intern_atom(KernelKind::independent, "x"));
  const CanonicalForm y = CanonicalForm::of_kernel(intern_atom(KernelKind::independent, "y"));
  std::vector<CanonicalForm> out{x, y, x * y, x.pow(-1), y.pow(-1)};
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      if (a == 0 && b == 0) continue;
      CanonicalForm f = x.pow(a) * y.pow(b);
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
  }
  out.push_back(y.pow(-5));
  out.push_back(y.pow(7));
  return out;
}

Classification classify(const VectorField& X, const Equation& E, const std::vector<CanonicalForm>& factors) {
  if (is_point_symmetry(X, E)) return {Classification::Verdict::point, std::nullopt};
  for (const auto& f : factors) {
    if (f.is_zero()) continue;
    if (is_point_symmetry(scaled(X, f), E)) return {Classification::Verdict::point_equivalent, f};
  }
  if (is_conditional_symmetry(X, E)) return {Classification::Verdict::conditional_only, std::nullopt};
  return {Classification::Verdict::none, std::nullopt};
}

}  // namespace condsym
