#include "condsym/error.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "random_forms.hpp"

using namespace condsym;
using namespace condsym::testing;

TEST_CASE("prolongation") {
  Workspace ws;
  const ProlongedField tx = prolong(field(ws, "1", "0", "0"), 2);
  for (const auto& [index, c] : tx.coefficients()) CHECK(c.is_zero());
  CHECK(tx.coefficients().size() == 5);

  const ProlongedField p1 = prolong(X1(ws), 1);
  CHECK(p1.coefficient(MultiIndex()) == F(ws, "-2*y"));
  CHECK(p1.coefficient(ws.parse_index("x")).is_zero());
  CHECK(p1.coefficient(ws.parse_index("y")) == F(ws, "-2 - u_x"));
  CHECK_THROWS_AS(p1.coefficient(ws.parse_index("xx")), JetError);

  const ProlongedField scale = prolong(field(ws, "0", "0", "u"), 1);
  CHECK(scale.coefficient(ws.parse_index("x")) == F(ws, "u_x"));
  CHECK(scale.coefficient(ws.parse_index("y")) == F(ws, "u_y"));
}

TEST_CASE("applying prolonged fields") {
  Workspace ws;
  CHECK(apply(prolong(X1(ws), 0), F(ws, "-2*x + y^2")).is_zero());
  CHECK(apply(prolong(field(ws, "1", "0", "0"), 0), F(ws, "x")) == CanonicalForm(1));
  CHECK(apply(prolong(X2(ws), 0), F(ws, "x*y")).is_zero());
  CHECK_THROWS_AS(apply(prolong(X1(ws), 1), F(ws, "u_xx")), JetError);
}

TEST_CASE("characteristics and invariants") {
  Workspace ws;
  CHECK(characteristic(X1(ws)) == F(ws, "y*u_x + u_y + 2*y"));
  CHECK(characteristic(field(ws, "1", "0", "0")) == F(ws, "u_x"));
  CHECK(characteristic(X6(ws)) == F(ws, "u_x - 2*u/x - 48/x^3"));
  CHECK(is_invariant(X1(ws), F(ws, "u_yy + 2*y*u_xy + 2*(y^2 - x)*u_xx")));
  CHECK_FALSE(is_invariant(field(ws, "1", "0", "0"), F(ws, "x")));
  CHECK(is_invariant(Y(ws), F(ws, "2*ln(x) + u")));
  CHECK(is_invariant(X2(ws), F(ws, "x^2*u + x^4/y^2")));
}

TEST_CASE("field validation and scaling") {
  Workspace ws;
  CHECK_THROWS_AS(field(ws, "0", "0", "0"), Error);
  CHECK_THROWS_AS(field(ws, "u_x", "1", "0"), Error);
  const VectorField Z = scaled(X1(ws), F(ws, "y"));
  CHECK(Z.xi == F(ws, "y^2"));
  CHECK(Z.phi == F(ws, "-2*y^2"));
  // Scaling the field scales the characteristic.
  CHECK(characteristic(Z) == F(ws, "y") * characteristic(X1(ws)));
}

TEST_CASE("point symmetries") {
  Workspace ws;
  CHECK(is_point_symmetry(field(ws, "1", "0", "0"), boussinesq(ws)));
  CHECK(is_point_symmetry(field(ws, "0", "1", "0"), boussinesq(ws)));
  CHECK(is_point_symmetry(field(ws, "x", "2*y", "-2*u"), boussinesq(ws)));
  CHECK_FALSE(is_point_symmetry(X1(ws), boussinesq(ws)));
  const Equation laplace = make_equation(F(ws, "u*u_xx + u_yy"), J(ws, "yy"));
  CHECK(is_point_symmetry(field(ws, "x", "y", "0"), laplace));
  const Equation kdv = make_equation(F(ws, "u_y - x*u_xxx - exp(u)"), J(ws, "y"));
  CHECK(is_point_symmetry(field(ws, "1/2*x", "y", "-1"), kdv));
  CHECK_FALSE(is_point_symmetry(Y(ws), kdv));
}

TEST_CASE("scalar multiples") {
  Workspace ws;
  auto f = is_multiple(field(ws, "y^2", "y", "-2*y^2"), X1(ws));
  REQUIRE(f);
  CHECK(*f == F(ws, "y"));
  CHECK_FALSE(is_multiple(field(ws, "1", "0", "0"), field(ws, "0", "1", "0")));
  f = is_multiple(field(ws, "-x/y^6", "1/y^5", "1/y^5*(2/y*u + 6/y^3*x^2)"), X2(ws));
  REQUIRE(f);
  CHECK(*f == F(ws, "1/y^5"));
}

TEST_CASE("equations") {
  Workspace ws;
  const Equation E = boussinesq(ws);
  CHECK(E.order() == 4);
  CHECK(E.rhs == F(ws, "-u_yy - u*u_xx - u_x^2"));
  CHECK(make_equation(F(ws, kBoussinesq), JetRanking(RankingMode::eliminate_x)).variable == J(ws, "xxxx"));
  CHECK_THROWS_AS(make_equation(F(ws, "u_x^2 + u"), J(ws, "x")), JetError);
}

TEST_CASE("characteristic self-invariance on random fields") {
  Workspace ws;
  RandomForms gen(7);
  const KernelId u = ws.jet("");
  for (int i = 0; i < 25; ++i) {
    const VectorField X = gen.point_field(ws, 2);
    const CanonicalForm C = characteristic(X);
    const CanonicalForm factor = partial_derivative(X.xi, u) * F(ws, "u_x") + partial_derivative(X.eta, u) * F(ws, "u_y") -
                                 partial_derivative(X.phi, u);
    CHECK((apply(prolong(X, 1), C) + factor * C).is_zero());
  }
}
