#include "condsym/function.hpp"

#include <map>
#include <mutex>

#include "condsym/error.hpp"

namespace condsym {
namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<FunctionDef>> defs;
};

Registry& registry() {
  static Registry r;
  return r;
}

FunctionDef make_builtin(const char* name, FunctionDef::Builtin kind) {
  FunctionDef def;
  def.name = name;
  def.builtin = kind;
  def.derivative_text = "<builtin>";
  return def;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

CanonicalForm exp_of(const CanonicalForm& argument) {
  const FunctionDef& def = builtin_exp();
  if (argument.is_zero()) return CanonicalForm(1);
  if (!argument.is_polynomial()) return CanonicalForm::of_kernel(intern_function(def, argument));
  CanonicalForm factor(1);
  std::vector<Term> rest;
  for (const auto& t : argument.numerator().terms()) {
    const auto& powers = t.monomial.powers();
    if (powers.size() == 1 && powers[0].second == 1 && is_integer(t.coeff)) {
      const Kernel& k = kernel(powers[0].first);
      if (k.kind == KernelKind::function && k.function->builtin == FunctionDef::Builtin::ln) {
        factor *= k.argument->pow(static_cast<int>(t.coeff.get_num().get_si()));
        continue;
      }
    }
    rest.push_back(t);
  }
  if (rest.empty()) return factor;
  const CanonicalForm remaining = CanonicalForm::of_poly(Poly::from_terms(std::move(rest)));
  return factor * CanonicalForm::of_kernel(intern_function(def, remaining));
}

/// Sum of e*ln(k) over a bare monomial with unit coefficient, or nullopt.
std::optional<CanonicalForm> log_of_monomial(const Poly& p, int sign) {
  if (p.size() != 1 || p.leading().coeff != 1) return std::nullopt;
  CanonicalForm out;
  for (const auto& [k, e] : p.leading().monomial.powers()) {
    const Kernel& kk = kernel(k);
    CanonicalForm log_k;
    if (kk.kind == KernelKind::function && kk.function->builtin == FunctionDef::Builtin::exp) {
      log_k = *kk.argument;
    } else {
      log_k = CanonicalForm::of_kernel(intern_function(builtin_ln(), CanonicalForm::of_kernel(k)));
    }
    out += log_k * CanonicalForm(Rational(static_cast<long>(e) * sign));
  }
  return out;
}

CanonicalForm ln_of(const CanonicalForm& argument) {
  if (argument.is_zero()) throw MathError("ln(0)");
  if (argument == CanonicalForm(1)) return {};
  if (!argument.is_constant()) {
    auto n = log_of_monomial(argument.numerator(), 1);
    auto d = argument.is_polynomial() ? std::optional<CanonicalForm>(CanonicalForm())
                                      : log_of_monomial(argument.denominator(), -1);
    if (n && d) return *n + *d;
  }
  return CanonicalForm::of_kernel(intern_function(builtin_ln(), argument));
}

}  // namespace

const FunctionDef& builtin_exp() {
  static const FunctionDef def = make_builtin("exp", FunctionDef::Builtin::exp);
  return def;
}

const FunctionDef& builtin_ln() {
  static const FunctionDef def = make_builtin("ln", FunctionDef::Builtin::ln);
  return def;
}

KernelId placeholder_kernel() {
  static const KernelId id = intern_atom(KernelKind::placeholder, "s");
  return id;
}

const FunctionDef* find_function(const std::string& fingerprint) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  auto it = r.defs.find(fingerprint);
  return it == r.defs.end() ? nullptr : it->second.get();
}

const FunctionDef& publish_function(std::unique_ptr<FunctionDef> def) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  const std::string key = def->fingerprint();
  auto it = r.defs.find(key);
  if (it != r.defs.end()) return *it->second;
  return *r.defs.emplace(key, std::move(def)).first->second;
}

CanonicalForm apply_function(const FunctionDef& def, const CanonicalForm& argument) {
  switch (def.builtin) {
    case FunctionDef::Builtin::exp: return exp_of(argument);
    case FunctionDef::Builtin::ln: return ln_of(argument);
    case FunctionDef::Builtin::none: break;
  }
  return CanonicalForm::of_kernel(intern_function(def, argument));
}

const CanonicalForm& argument_derivative(KernelId function_kernel) {
  const Kernel& k = kernel(function_kernel);
  if (k.kind != KernelKind::function) throw Error("argument_derivative: not a function kernel");
  std::call_once(k.derivative_once, [&] {
    CanonicalForm d;
    switch (k.function->builtin) {
      case FunctionDef::Builtin::exp: d = CanonicalForm::of_kernel(function_kernel); break;
      case FunctionDef::Builtin::ln: d = CanonicalForm(1) / *k.argument; break;
      case FunctionDef::Builtin::none:
        d = substitute(k.function->derivative, placeholder_kernel(), *k.argument);
        break;
    }
    k.derivative_cache = std::make_shared<const CanonicalForm>(std::move(d));
  });
  return *k.derivative_cache;
}

const CanonicalForm* side_relation(KernelId id) {
  const Kernel& k = kernel(id);
  if (k.kind != KernelKind::function || !k.function->relation) return nullptr;
  std::call_once(k.relation_once, [&] {
    k.relation_cache = std::make_shared<const CanonicalForm>(
        substitute(*k.function->relation, placeholder_kernel(), *k.argument));
  });
  return k.relation_cache.get();
}

}  // namespace condsym
