#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "condsym/multi_index.hpp"

namespace condsym {

class CanonicalForm;
struct FunctionDef;

/// Index of an interned kernel. Kernels are the indeterminates of the polynomial
/// ring: atoms, jet variables, opaque function applications and ansatz unknowns.
using KernelId = std::uint32_t;

enum class KernelKind : std::uint8_t {
  independent,  // x, y
  constant,     // declared constants and named placeholders such as I0
  placeholder,  // the bound variable of a function derivative template
  jet,          // u_J
  function,     // f(argument)
  ansatz,       // xi_J, eta_J, phi_J: derivatives of unknown coefficients in (x, y, u)
};

struct Kernel {
  KernelKind kind{};
  std::string name;
  MultiIndex index;
  const FunctionDef* function = nullptr;
  std::shared_ptr<const CanonicalForm> argument;
  std::string text;
  std::string order_key;

  // Lazily instantiated function data; see function.cpp.
  mutable std::once_flag derivative_once;
  mutable std::shared_ptr<const CanonicalForm> derivative_cache;
  mutable std::once_flag relation_once;
  mutable std::shared_ptr<const CanonicalForm> relation_cache;

  bool is_jet() const { return kind == KernelKind::jet; }
};

/// Interned kernels are immortal and never move; the reference stays valid.
const Kernel& kernel(KernelId id);

KernelId intern_atom(KernelKind kind, std::string_view name);
KernelId intern_jet(std::string_view dependent, const MultiIndex& index);
KernelId intern_ansatz(std::string_view name, const MultiIndex& index);
/// Raw interning of f(argument); callers normally go through apply_function.
KernelId intern_function(const FunctionDef& def, const CanonicalForm& argument);

/// Intrinsic variable order used for printing and normalization; true when a is
/// the more significant variable. Independent of interning order.
bool kernel_precedes(KernelId a, KernelId b);

}  // namespace condsym
