#pragma once

#include "condsym/reduction.hpp"
#include "condsym/workspace.hpp"

namespace condsym::testing {

inline CanonicalForm F(const Workspace& ws, const char* text) { return ws.parse_form(text); }

inline KernelId J(const Workspace& ws, const char* letters) { return ws.jet(letters); }

inline VectorField field(const Workspace& ws, const char* xi, const char* eta, const char* phi) {
  return make_field(ws.parse_form(xi), ws.parse_form(eta), ws.parse_form(phi));
}

inline VectorField X1(const Workspace& ws) { return field(ws, "y", "1", "-2*y"); }
inline VectorField X2(const Workspace& ws) { return field(ws, "-x/y", "1", "2/y*u + 6/y^3*x^2"); }
inline VectorField X3(const Workspace& ws) {
  return field(ws, "-x/y + y^4", "1", "2/y*u + 6/y^3*x^2 - 2*y^2*x - 4*y^7");
}
inline VectorField X6(const Workspace& ws) { return field(ws, "1", "0", "2/x*u + 48/x^3"); }
inline VectorField Y(const Workspace& ws) { return field(ws, "x/(2*y)", "1", "-1/y"); }

inline constexpr const char* kBoussinesq = "u_yy + u*u_xx + u_x^2 + u_xxxx";

inline Equation boussinesq(const Workspace& ws) { return make_equation(F(ws, kBoussinesq), J(ws, "xxxx")); }

}  // namespace condsym::testing
