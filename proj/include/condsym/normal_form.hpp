#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "condsym/canonical.hpp"

namespace condsym {

/// v = rhs, where v is a jet variable and rhs contains only lower-ranked jets.
struct Rule {
  KernelId variable;
  CanonicalForm rhs;
};

/// Normal form modulo rules and all their differential consequences: a jet w is
/// rewritten by the first rule whose variable v divides w, with the reduced
/// image of D_{w-v} rhs. Memoizes images, so an instance must not be shared
/// between threads.
class Reducer {
 public:
  explicit Reducer(std::vector<Rule> rules, int depth_limit = 200);

  /// Throws ReductionError when rewriting does not terminate.
  CanonicalForm reduce(const CanonicalForm& f) const;
  /// Reduced image of a jet variable, or nullopt when no rule applies.
  std::optional<CanonicalForm> image(KernelId jet) const;
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
  int depth_limit_;
  mutable std::map<KernelId, std::optional<CanonicalForm>> cache_;
  mutable std::set<KernelId> in_progress_;
  mutable int depth_ = 0;
};

}  // namespace condsym
