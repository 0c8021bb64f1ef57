#include "condsym/error.hpp"
#include "condsym/normal_form.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace condsym;
using namespace condsym::testing;

namespace {

const ConstraintInstance& instance(const ConstraintSet& S, const Workspace& ws, const char* letters) {
  const MultiIndex index = ws.parse_index(letters);
  for (const auto& i : S.instances) {
    if (i.index == index) return i;
  }
  FAIL("missing instance");
  throw 0;
}

InvariantSet x1_invariants(const Workspace& ws) {
  return {{"I0", F(ws, "-2*x + y^2")},
          {"I1", F(ws, "2*x + u")},
          {"I2", F(ws, "u_x")},
          {"I3", F(ws, "2*y + y*u_x + u_y")},
          {"I4", F(ws, "u_xx")},
          {"I6", F(ws, "u_yy + 2*y*u_xy + 2*(y^2 - x)*u_xx")},
          {"I7", F(ws, "u_xxx")},
          {"I11", F(ws, "u_xxxx")}};
}

Workspace x1_workspace() {
  Workspace ws;
  for (const char* name : {"I0", "I1", "I2", "I3", "I4", "I6", "I7", "I11"}) ws.declare_constant(name);
  return ws;
}

}  // namespace

TEST_CASE("rankings per field") {
  Workspace ws;
  CHECK(ranking_for(X1(ws)).mode() == RankingMode::eliminate_y);
  CHECK(ranking_for(X6(ws)).mode() == RankingMode::eliminate_x);
}

TEST_CASE("differential consequences") {
  Workspace ws;
  const auto x = std::vector<MultiIndex>{ws.parse_index("x")};
  ConstraintSet S = consequences(characteristic(X1(ws)), x, ranking_for(X1(ws)));
  CHECK(S.instances.size() == 2);
  CHECK(instance(S, ws, "").variable == J(ws, "y"));
  CHECK(instance(S, ws, "").rhs == F(ws, "-2*y - y*u_x"));
  CHECK(instance(S, ws, "x").variable == J(ws, "xy"));
  CHECK(instance(S, ws, "x").rhs == F(ws, "-y*u_xx"));

  S = consequences(characteristic(field(ws, "1", "0", "0")), {}, ranking_for(field(ws, "1", "0", "0")));
  CHECK(S.instances.size() == 1);
  CHECK(instance(S, ws, "").rhs.is_zero());

  S = consequences(characteristic(X6(ws)), x, ranking_for(X6(ws)));
  CHECK(instance(S, ws, "").rhs == F(ws, "2*u/x + 48/x^3"));
  CHECK(reduce(instance(S, ws, "x").rhs, S) ==
        reduce(F(ws, "2*u_x/x - 2*u/x^2 - 144/x^4"), S));

  S = consequences(characteristic(X1(ws)), x, ranking_for(X1(ws)), {{MultiIndex(), J(ws, "x")}});
  CHECK(instance(S, ws, "").variable == J(ws, "x"));
  CHECK(instance(S, ws, "").rhs == F(ws, "-2 - u_y/y"));
}

TEST_CASE("reduction by instance sets") {
  Workspace ws = x1_workspace();
  const auto inv = x1_invariants(ws);
  const ConstraintSet S =
      consequences(characteristic(X1(ws)), {ws.parse_index("x")}, ranking_for(X1(ws)));
  CHECK(reduce(expand_combination(F(ws, "I1*I4 + I6 + I11 + I2^2"), inv), S) == F(ws, kBoussinesq));
  CHECK(reduce(expand_combination(F(ws, "I6 + I1*I4"), inv), S) == F(ws, "u*u_xx + u_yy"));
  CHECK(reduce(F(ws, "u_xxx*u + x"), S) == F(ws, "u_xxx*u + x"));
  const CanonicalForm once = reduce(F(ws, "u_y*u_xy + u_yy"), S);
  CHECK(reduce(once, S) == once);
}

TEST_CASE("selective reduction keeps mixed terms") {
  Workspace ws;
  const ConstraintSet S = consequences(characteristic(X1(ws)), {}, ranking_for(X1(ws)), {{MultiIndex(), J(ws, "x")}});
  // u_x^2 is a pure power of the solved variable; u*u_x is not.
  CHECK(reduce(F(ws, "u_x^2"), S, ReduceMode::selective) == F(ws, "(2 + u_y/y)^2"));
  CHECK(reduce(F(ws, "u*u_x"), S, ReduceMode::selective) == F(ws, "u*u_x"));
  CHECK(reduce(F(ws, "u*u_x"), S, ReduceMode::full) == F(ws, "-u*(2 + u_y/y)"));
}

TEST_CASE("constructing equations") {
  Workspace ws = x1_workspace();
  const auto inv = x1_invariants(ws);
  const ConstraintSet S = consequences(characteristic(X1(ws)), {}, ranking_for(X1(ws)), {{MultiIndex(), J(ws, "x")}});
  const Equation E = construct_equation(inv, F(ws, "I7 + (I1 + I0)*I2"), S, J(ws, "y"));
  CHECK(E.variable == J(ws, "y"));
  CHECK(E.rhs == F(ws, "(u_xxx + u*u_x)/y - 2*y"));
  CHECK_THROWS(construct_equation(inv, F(ws, "I3 - I3"), S, J(ws, "y")));
  CHECK_THROWS(construct_equation(inv, F(ws, "I4"), S, J(ws, "y")));
}

TEST_CASE("conditional symmetries") {
  Workspace ws;
  CHECK(is_conditional_symmetry(X1(ws), boussinesq(ws)));
  CHECK(is_conditional_symmetry(X2(ws), boussinesq(ws)));
  CHECK(is_conditional_symmetry(X3(ws), boussinesq(ws)));
  CHECK(is_conditional_symmetry(X6(ws), boussinesq(ws)));
  CHECK(is_conditional_symmetry(field(ws, "0", "1", "0"), boussinesq(ws)));
  CHECK_FALSE(is_conditional_symmetry(field(ws, "u", "1", "0"), boussinesq(ws)));
  const Equation fk = make_equation(F(ws, "u_y - 1/x*(x*u_xx + u_x) - exp(u)"), J(ws, "y"));
  CHECK(is_conditional_symmetry(Y(ws), fk));
  CHECK(conditional_residual(X1(ws), boussinesq(ws)).is_zero());
}

TEST_CASE("classification") {
  Workspace ws;
  const Equation kdv = make_equation(F(ws, "u_y - 1/y*(u_xxx + u*u_x) + 2*y"), J(ws, "y"));
  Classification c = classify(X1(ws), kdv, {F(ws, "y")});
  CHECK(c.verdict == Classification::Verdict::point_equivalent);
  REQUIRE(c.factor);
  CHECK(*c.factor == F(ws, "y"));
  c = classify(X1(ws), kdv, {});
  CHECK(c.verdict == Classification::Verdict::conditional_only);
  c = classify(field(ws, "1", "0", "0"), kdv, {});
  CHECK(c.verdict == Classification::Verdict::point);
  const Equation e345 = make_equation(
      F(ws, "u_y + u_xxx - 4*u*u_x/x^3 + 8*u^2/x^4 + 192*u/x^6 - 288/x^5"), J(ws, "y"));
  CHECK(classify(X6(ws), e345, default_factors()).verdict == Classification::Verdict::conditional_only);
  CHECK(to_string(Classification::Verdict::point_equivalent) == "point-equivalent");
  CHECK(to_string(Classification::Verdict::conditional_only) == "conditional-only");
}

TEST_CASE("normal forms") {
  Workspace ws;
  const Reducer r({{J(ws, "xy"), F(ws, "-y*u_xx")}});
  CHECK(r.reduce(F(ws, "u_xxy")) == F(ws, "-y*u_xxx"));
  CHECK(r.reduce(F(ws, "u_xyy")) == F(ws, "y^2*u_xxx - u_xx"));
  CHECK_FALSE(r.image(J(ws, "yy")));
  const Reducer cycle({{J(ws, "x"), F(ws, "u_y")}, {J(ws, "y"), F(ws, "u_x")}});
  CHECK_THROWS_AS(cycle.reduce(F(ws, "u_x")), ReductionError);
}
