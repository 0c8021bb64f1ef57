#pragma once

#include <vector>

#include "condsym/canonical.hpp"
#include "condsym/kernel.hpp"

namespace condsym {

/// Which derivatives are eliminated first. eliminate_y ranks every jet variable
/// with a y derivative above all pure x derivatives; eliminate_x is the mirror.
enum class RankingMode { eliminate_y, eliminate_x };

/// Strict total order on jet variables; ties are broken by total order, then by
/// the count of the eliminated variable, then lexicographically.
class JetRanking {
 public:
  explicit JetRanking(RankingMode mode = RankingMode::eliminate_y, char x = 'x', char y = 'y')
      : mode_(mode), x_(x), y_(y) {}

  RankingMode mode() const { return mode_; }
  /// True when a ranks strictly below b.
  bool less(const MultiIndex& a, const MultiIndex& b) const;
  bool less(KernelId a, KernelId b) const { return less(kernel(a).index, kernel(b).index); }

 private:
  RankingMode mode_;
  char x_;
  char y_;
};

/// Jet variables occurring anywhere in f, including inside function arguments.
std::vector<KernelId> jet_variables(const CanonicalForm& f);
/// Highest derivative order present, or -1 when f has no jet variable.
int jet_order(const CanonicalForm& f);

/// D_v: raises every jet index by v and applies the chain rule through
/// function arguments and ansatz unknowns.
CanonicalForm total_derivative(const CanonicalForm& f, char v);
CanonicalForm total_derivative(const CanonicalForm& f, const MultiIndex& index);

/// Maximal jet variable of f under r; throws JetError when there is none.
KernelId leading_variable(const CanonicalForm& f, const JetRanking& r);

/// s with f = 0 <=> v = s. Throws JetError when v is absent, occurs nonlinearly
/// (including in a denominator or function argument) or has a zero coefficient.
CanonicalForm solve_linear_for(const CanonicalForm& f, KernelId v);

}  // namespace condsym
