#include "condsym/kernel.hpp"

#include <cstdio>
#include <deque>
#include <shared_mutex>
#include <unordered_map>

#include "condsym/canonical.hpp"
#include "condsym/error.hpp"
#include "condsym/function.hpp"

namespace condsym {
namespace {

class KernelTable {
 public:
  static KernelTable& instance() {
    static KernelTable table;
    return table;
  }

  const Kernel& get(KernelId id) {
    std::shared_lock lock(mutex_);
    return kernels_.at(id);
  }

  template <typename Fill>
  KernelId intern(const std::string& identity, Fill&& fill) {
    {
      std::shared_lock lock(mutex_);
      auto it = ids_.find(identity);
      if (it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto it = ids_.find(identity);
    if (it != ids_.end()) return it->second;
    Kernel& k = kernels_.emplace_back();
    fill(k);
    const auto id = static_cast<KernelId>(kernels_.size() - 1);
    ids_.emplace(identity, id);
    return id;
  }

 private:
  std::shared_mutex mutex_;
  std::deque<Kernel> kernels_;
  std::unordered_map<std::string, KernelId> ids_;
};

char kind_tag(KernelKind kind) {
  switch (kind) {
    case KernelKind::independent: return '0';
    case KernelKind::placeholder: return '1';
    case KernelKind::constant: return '2';
    case KernelKind::jet: return '3';
    case KernelKind::function: return '4';
    case KernelKind::ansatz: return '5';
  }
  return '9';
}

std::string two_digits(int n) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d", n);
  return buf;
}

}  // namespace

const Kernel& kernel(KernelId id) { return KernelTable::instance().get(id); }

KernelId intern_atom(KernelKind kind, std::string_view name) {
  if (kind == KernelKind::jet || kind == KernelKind::function || kind == KernelKind::ansatz) {
    throw Error("intern_atom: not an atom kind");
  }
  std::string identity = std::string(1, kind_tag(kind)) + std::string(name);
  return KernelTable::instance().intern(identity, [&](Kernel& k) {
    k.kind = kind;
    k.name = std::string(name);
    k.text = k.name;
    k.order_key = identity;
  });
}

KernelId intern_jet(std::string_view dependent, const MultiIndex& index) {
  std::string identity =
      "3" + std::string(dependent) + "|" + two_digits(index.order()) + index.letters();
  return KernelTable::instance().intern(identity, [&](Kernel& k) {
    k.kind = KernelKind::jet;
    k.name = std::string(dependent);
    k.index = index;
    k.text = index.empty() ? k.name : k.name + "_" + index.letters();
    k.order_key = identity;
  });
}

KernelId intern_ansatz(std::string_view name, const MultiIndex& index) {
  std::string identity = "5" + std::string(name) + "|" + index.letters();
  return KernelTable::instance().intern(identity, [&](Kernel& k) {
    k.kind = KernelKind::ansatz;
    k.name = std::string(name);
    k.index = index;
    k.text = index.empty() ? k.name : k.name + "_" + index.letters();
    k.order_key = identity;
  });
}

KernelId intern_function(const FunctionDef& def, const CanonicalForm& argument) {
  const std::string arg_text = to_string(argument);
  std::string identity = "4" + def.name + "(" + arg_text + ")#" + def.fingerprint();
  return KernelTable::instance().intern(identity, [&](Kernel& k) {
    k.kind = KernelKind::function;
    k.name = def.name;
    k.function = &def;
    k.argument = std::make_shared<const CanonicalForm>(argument);
    k.text = def.name + "(" + arg_text + ")";
    k.order_key = "4" + def.name + "(" + arg_text + ")";
  });
}

bool kernel_precedes(KernelId a, KernelId b) {
  if (a == b) return false;
  const Kernel& ka = kernel(a);
  const Kernel& kb = kernel(b);
  if (ka.order_key != kb.order_key) return ka.order_key < kb.order_key;
  return a < b;
}

}  // namespace condsym
