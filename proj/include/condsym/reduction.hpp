#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condsym/normal_form.hpp"
#include "condsym/symmetry.hpp"

namespace condsym {

/// One differential consequence D_J C solved for its variable.
struct ConstraintInstance {
  MultiIndex index;
  KernelId variable;
  CanonicalForm rhs;
};

/// The characteristic C of a field plus selected consequences, each solved for
/// a distinct jet variable.
struct ConstraintSet {
  CanonicalForm base;
  JetRanking ranking;
  std::vector<ConstraintInstance> instances;
};

/// Ranking appropriate for X: eliminate_y when eta != 0, else eliminate_x.
JetRanking ranking_for(const VectorField& X);

/// Builds solved instances for the empty index and every requested index.
/// `solve_for` overrides the solved variable of individual instances. Throws
/// JetError on nonlinearity and rank collisions.
ConstraintSet consequences(const CanonicalForm& C, const std::vector<MultiIndex>& indices,
                           const JetRanking& r,
                           const std::map<MultiIndex, KernelId>& solve_for = {});

enum class ReduceMode {
  /// Substitute every solved variable, highest rank first, to a fixpoint.
  full,
  /// Substitute a solved variable only in terms whose derivative part is a
  /// pure power of it; mixed products keep their form.
  selective,
};

CanonicalForm reduce(const CanonicalForm& f, const ConstraintSet& S, ReduceMode mode = ReduceMode::full);

/// Named invariants in declaration order.
using InvariantSet = std::vector<std::pair<std::string, CanonicalForm>>;

/// Substitutes the invariants (kernels named like the entries) into the combination.
CanonicalForm expand_combination(const CanonicalForm& combination, const InvariantSet& invariants);

/// Expands the combination, reduces it by S (selective mode), clears the
/// denominator and solves for `solve_for`. Throws ReductionError when the
/// result vanishes identically.
Equation construct_equation(const InvariantSet& invariants, const CanonicalForm& combination,
                            const ConstraintSet& S, KernelId solve_for,
                            ReduceMode mode = ReduceMode::selective);

/// pr X E = 0 on the joint solution set of E, C = 0 and all consequences.
bool is_conditional_symmetry(const VectorField& X, const Equation& E);
CanonicalForm conditional_residual(const VectorField& X, const Equation& E);

/// Rules used by the conditional test: C solved under ranking_for(X), and E
/// reduced modulo C and solved for its leading variable (omitted when E
/// reduces to zero).
std::vector<Rule> conditional_rules(const VectorField& X, const Equation& E);

struct Classification {
  enum class Verdict { point, point_equivalent, conditional_only, none };
  Verdict verdict = Verdict::none;
  std::optional<CanonicalForm> factor;
};

std::string to_string(Classification::Verdict v);

/// Candidate scalar factors x^a y^b, |a|, |b| <= 2, plus y^-5 and y^7.
std::vector<CanonicalForm> default_factors();

Classification classify(const VectorField& X, const Equation& E, const std::vector<CanonicalForm>& factors);

}  // namespace condsym
