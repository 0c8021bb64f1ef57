#include "condsym/jet.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "condsym/error.hpp"
#include "condsym/function.hpp"

namespace condsym {

bool JetRanking::less(const MultiIndex& a, const MultiIndex& b) const {
  const char e = mode_ == RankingMode::eliminate_y ? y_ : x_;
  auto key = [&](const MultiIndex& m) {
    return std::make_tuple(m.count(e) > 0, m.order(), m.count(e), m.letters());
  };
  return key(a) < key(b);
}

namespace {

void collect_jets(const CanonicalForm& f, std::set<KernelId>& out) {
  for (KernelId k : f.kernels()) {
    const Kernel& kk = kernel(k);
    if (kk.kind == KernelKind::jet) {
      out.insert(k);
    } else if (kk.kind == KernelKind::function) {
      collect_jets(*kk.argument, out);
    }
  }
}

}  // namespace

std::vector<KernelId> jet_variables(const CanonicalForm& f) {
  std::set<KernelId> jets;
  collect_jets(f, jets);
  return {jets.begin(), jets.end()};
}

int jet_order(const CanonicalForm& f) {
  int order = -1;
  for (KernelId k : jet_variables(f)) order = std::max(order, kernel(k).index.order());
  return order;
}

CanonicalForm total_derivative(const CanonicalForm& f, char v) {
  std::function<CanonicalForm(KernelId)> dk = [&](KernelId k) -> CanonicalForm {
    const Kernel& kk = kernel(k);
    switch (kk.kind) {
      case KernelKind::independent: return kk.name.size() == 1 && kk.name[0] == v ? 1 : 0;
      case KernelKind::constant:
      case KernelKind::placeholder: return {};
      case KernelKind::jet: return CanonicalForm::of_kernel(intern_jet(kk.name, kk.index.raised(v)));
      case KernelKind::function: {
        CanonicalForm inner = derivation(*kk.argument, dk);
        if (inner.is_zero()) return {};
        return argument_derivative(k) * inner;
      }
      case KernelKind::ansatz:
        // Unknown coefficients depend on (x, y, u): D_v a = a_v + u_v a_u.
        return CanonicalForm::of_kernel(intern_ansatz(kk.name, kk.index.raised(v))) +
               CanonicalForm::of_kernel(intern_jet("u", MultiIndex::from_letters(std::string(1, v)))) *
                   CanonicalForm::of_kernel(intern_ansatz(kk.name, kk.index.raised('u')));
    }
    return {};
  };
  return derivation(f, dk);
}

CanonicalForm total_derivative(const CanonicalForm& f, const MultiIndex& index) {
  CanonicalForm out = f;
  for (char v : index.letters()) out = total_derivative(out, v);
  return out;
}

KernelId leading_variable(const CanonicalForm& f, const JetRanking& r) {
  const auto jets = jet_variables(f);
  if (jets.empty()) throw JetError("no jet variable in " + to_string(f));
  return *std::max_element(jets.begin(), jets.end(),
                           [&](KernelId a, KernelId b) { return r.less(a, b); });
}

CanonicalForm solve_linear_for(const CanonicalForm& f, KernelId v) {
  const std::string name = kernel(v).text;
  if (!f.contains(v)) {
    auto deep = jet_variables(f);
    if (std::find(deep.begin(), deep.end(), v) != deep.end()) {
      throw JetError(name + " occurs inside a function argument");
    }
    throw JetError(name + " does not occur in " + to_string(f));
  }
  if (f.denominator().contains(v)) throw JetError(name + " occurs in a denominator");
  const auto coeffs = f.numerator().coefficients_in(v);
  if (coeffs.size() > 2) throw JetError(to_string(f) + " is nonlinear in " + name);
  for (const auto& c : coeffs) {
    for (KernelId k : c.kernels()) {
      if (kernel(k).kind != KernelKind::function) continue;
      const auto inner = jet_variables(*kernel(k).argument);
      if (std::find(inner.begin(), inner.end(), v) != inner.end()) {
        throw JetError(name + " occurs inside a function argument");
      }
    }
  }
  if (coeffs[1].is_zero()) throw JetError("coefficient of " + name + " vanishes");
  return CanonicalForm::fraction(-coeffs[0], coeffs[1]);
}

}  // namespace condsym
