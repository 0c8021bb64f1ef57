#pragma once

#include <memory>
#include <optional>
#include <string>

#include "condsym/canonical.hpp"

namespace condsym {

/// An opaque function of one argument. The derivative template and the optional
/// side relation are expressed in the placeholder variable `s`; the relation
/// gives the value of f(s)^2 and must not contain f(s) itself.
struct FunctionDef {
  enum class Builtin { none, exp, ln };

  std::string name;
  Builtin builtin = Builtin::none;
  std::string derivative_text;
  std::string relation_text;
  CanonicalForm derivative;
  std::optional<CanonicalForm> relation;

  std::string fingerprint() const { return name + "|" + derivative_text + "|" + relation_text; }
};

const FunctionDef& builtin_exp();
const FunctionDef& builtin_ln();

/// The bound variable of derivative templates.
KernelId placeholder_kernel();

/// Returns the registered definition with the same fingerprint, if any.
const FunctionDef* find_function(const std::string& fingerprint);
/// Takes ownership; definitions are immortal. Returns the canonical instance.
const FunctionDef& publish_function(std::unique_ptr<FunctionDef> def);

/// f(argument) in normal form: exp splits off integer multiples of logarithms
/// (exp(2*ln(x) + u) = x^2*exp(u)), ln expands monomial arguments.
CanonicalForm apply_function(const FunctionDef& def, const CanonicalForm& argument);

/// d f(a) / d a for a function kernel f(a).
const CanonicalForm& argument_derivative(KernelId function_kernel);
/// Value of k^2 when k carries a side relation, else nullptr.
const CanonicalForm* side_relation(KernelId k);

}  // namespace condsym
