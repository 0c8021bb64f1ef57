#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "condsym/corpus.hpp"
#include "condsym/error.hpp"

namespace py = pybind11;
using namespace condsym;

namespace {

std::map<std::string, CanonicalForm> prolong_dict(const VectorField& X, int order) {
  std::map<std::string, CanonicalForm> out;
  const ProlongedField pr = prolong(X, order);
  for (const auto& [J, c] : pr.coefficients()) out[J.letters()] = c;
  out[""] = X.phi;
  return out;
}

KernelId jet_of(const Workspace& ws, const std::string& text) {
  const CanonicalForm f = ws.parse_form(text);
  const auto ks = f.kernels();
  if (ks.size() != 1 || kernel(ks[0]).kind != KernelKind::jet || !(f == CanonicalForm::of_kernel(ks[0]))) {
    throw Error("'" + text + "' is not a jet variable");
  }
  return ks[0];
}

ConstraintSet constraint_set(const Workspace& ws, const VectorField& X, const std::vector<std::string>& instances,
                             const std::optional<std::string>& solve_base) {
  std::vector<MultiIndex> idx;
  for (const auto& w : instances) idx.push_back(ws.parse_index(w));
  std::map<MultiIndex, KernelId> solve_for;
  if (solve_base) solve_for[MultiIndex()] = jet_of(ws, *solve_base);
  return consequences(characteristic(X), idx, ranking_for(X), solve_for);
}

ReduceMode mode_of(const std::string& mode) {
  if (mode == "full") return ReduceMode::full;
  if (mode == "selective") return ReduceMode::selective;
  throw Error("mode must be 'full' or 'selective'");
}

py::dict result_dict(const AssertionResult& r) {
  py::dict d;
  d["entry"] = r.entry;
  d["assertion"] = r.assertion;
  d["status"] = r.status;
  d["residual"] = r.residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Jet calculus and conditional symmetries of PDEs in (x, y, u)";

  // Translators run newest first, so the derived ParseError is registered last.
  auto& base = py::register_exception<Error>(m, "CondsymError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<CanonicalForm>(m, "Form")
      .def("__str__", [](const CanonicalForm& f) { return to_string(f); })
      .def("__repr__", [](const CanonicalForm& f) { return "Form(" + to_string(f) + ")"; })
      .def("__eq__", [](const CanonicalForm& a, const CanonicalForm& b) { return a == b; })
      .def("__hash__", [](const CanonicalForm& f) { return py::hash(py::str(to_string(f))); })
      .def("__add__", [](const CanonicalForm& a, const CanonicalForm& b) { return a + b; })
      .def("__sub__", [](const CanonicalForm& a, const CanonicalForm& b) { return a - b; })
      .def("__mul__", [](const CanonicalForm& a, const CanonicalForm& b) { return a * b; })
      .def("__truediv__", [](const CanonicalForm& a, const CanonicalForm& b) { return a / b; })
      .def("__neg__", [](const CanonicalForm& a) { return -a; })
      .def("__pow__", [](const CanonicalForm& a, int n) { return a.pow(n); })
      .def("is_zero", &CanonicalForm::is_zero)
      .def("jet_order", [](const CanonicalForm& f) { return jet_order(f); });

  py::class_<Workspace>(m, "Workspace")
      .def(py::init([](const std::vector<std::string>& constants,
                       const std::vector<std::tuple<std::string, std::string, std::string>>& functions) {
             Workspace ws;
             for (const auto& c : constants) ws.declare_constant(c);
             std::vector<FunctionSpec> specs;
             for (const auto& [name, derivative, relation] : functions) specs.push_back({name, derivative, relation});
             if (!specs.empty()) ws.declare_functions(specs);
             return ws;
           }),
           py::arg("constants") = std::vector<std::string>{},
           py::arg("functions") = std::vector<std::tuple<std::string, std::string, std::string>>{},
           "Functions are (name, derivative in s, value of name(s)^2 or '').")
      .def("parse", [](const Workspace& ws, const std::string& text) { return ws.parse_form(text); })
      .def("field",
           [](const Workspace& ws, const std::string& xi, const std::string& eta, const std::string& phi) {
             return make_field(ws.parse_form(xi), ws.parse_form(eta), ws.parse_form(phi));
           })
      .def("equation",
           [](const Workspace& ws, const std::string& lhs, std::optional<std::string> solve) {
             const CanonicalForm f = ws.parse_form(lhs);
             if (solve) return make_equation(f, jet_of(ws, *solve));
             return make_equation(f, JetRanking(RankingMode::eliminate_x));
           },
           py::arg("lhs"), py::arg("solve") = py::none())
      .def("total_derivative",
           [](const Workspace& ws, const CanonicalForm& f, const std::string& letters) {
             return total_derivative(f, ws.parse_index(letters));
           })
      .def("field_from_file", [](Workspace& ws, const std::filesystem::path& path) {
        return realize_field(load_field_spec(path), ws);
      });

  py::class_<VectorField>(m, "VectorField")
      .def_readonly("xi", &VectorField::xi)
      .def_readonly("eta", &VectorField::eta)
      .def_readonly("phi", &VectorField::phi)
      .def("__str__", [](const VectorField& X) { return to_string(X); })
      .def("scaled", [](const VectorField& X, const CanonicalForm& f) { return scaled(X, f); })
      .def("characteristic", [](const VectorField& X) { return characteristic(X); })
      .def("prolong", &prolong_dict, py::arg("order"), "Coefficients keyed by derivative letters; '' is phi.")
      .def("apply",
           [](const VectorField& X, const CanonicalForm& f) { return apply(prolong(X, std::max(jet_order(f), 0)), f); })
      .def("is_invariant", [](const VectorField& X, const CanonicalForm& f) { return is_invariant(X, f); });

  py::class_<Equation>(m, "Equation")
      .def_readonly("lhs", &Equation::lhs)
      .def_readonly("rhs", &Equation::rhs)
      .def_property_readonly("variable", [](const Equation& E) { return kernel(E.variable).text; })
      .def_property_readonly("order", &Equation::order);

  m.def("is_point_symmetry", &is_point_symmetry);
  m.def("point_symmetry_residual", &point_symmetry_residual);
  m.def("is_conditional_symmetry", &is_conditional_symmetry);
  m.def("conditional_residual", &conditional_residual);
  m.def("is_multiple", &is_multiple);
  m.def(
      "classify",
      [](const VectorField& X, const Equation& E, std::optional<std::vector<CanonicalForm>> factors) {
        const Classification c = classify(X, E, factors ? *factors : default_factors());
        return std::make_pair(to_string(c.verdict), c.factor);
      },
      py::arg("field"), py::arg("equation"), py::arg("factors") = py::none(),
      "Returns (verdict, factor or None).");
  m.def(
      "reduce",
      [](const Workspace& ws, const CanonicalForm& f, const VectorField& X, const std::vector<std::string>& instances,
         std::optional<std::string> solve_base, const std::string& mode) {
        return reduce(f, constraint_set(ws, X, instances, solve_base), mode_of(mode));
      },
      py::arg("workspace"), py::arg("expr"), py::arg("field"), py::arg("instances") = std::vector<std::string>{},
      py::arg("solve_base") = py::none(), py::arg("mode") = "full");
  m.def(
      "construct_equation",
      [](const Workspace& ws, const std::vector<std::pair<std::string, CanonicalForm>>& invariants,
         const CanonicalForm& combination, const VectorField& X, const std::string& solve_for,
         const std::vector<std::string>& instances, std::optional<std::string> solve_base, const std::string& mode) {
        return construct_equation(invariants, combination, constraint_set(ws, X, instances, solve_base),
                                  jet_of(ws, solve_for), mode_of(mode));
      },
      py::arg("workspace"), py::arg("invariants"), py::arg("combination"), py::arg("field"), py::arg("solve_for"),
      py::arg("instances") = std::vector<std::string>{}, py::arg("solve_base") = py::none(),
      py::arg("mode") = "selective",
      "Invariant names must be declared as constants of the workspace.");

  py::class_<DeterminingSystem>(m, "DeterminingSystem")
      .def_readonly("conditional", &DeterminingSystem::conditional)
      .def_property_readonly("equations",
                             [](const DeterminingSystem& s) {
                               std::vector<std::pair<std::string, CanonicalForm>> out;
                               for (const auto& e : s.equations) out.emplace_back(e.key, e.coefficient);
                               return out;
                             })
      .def("check", [](const DeterminingSystem& s, const VectorField& X) { return check_candidate(s, X); });
  m.def("determining_system", &determining_system, py::arg("equation"), py::arg("conditional") = false);

  m.def("default_corpus_root", &default_corpus_root);
  m.def(
      "verify_problem",
      [](const std::filesystem::path& path, std::optional<std::filesystem::path> root) {
        const std::filesystem::path r = root ? *root : default_corpus_root();
        py::list out;
        for (const auto& res : verify(load_problem(path, r))) out.append(result_dict(res));
        return out;
      },
      py::arg("path"), py::arg("root") = py::none());
  m.def(
      "run_corpus",
      [](std::optional<std::filesystem::path> root, std::optional<std::string> tier) {
        const std::filesystem::path r = root ? *root : default_corpus_root();
        py::list out;
        for (const auto& path : list_problems(r)) {
          const Problem p = load_problem(path, r);
          if (tier && p.tier != *tier) continue;
          std::vector<AssertionResult> results;
          {
            py::gil_scoped_release release;
            results = verify(p);
          }
          for (const auto& res : results) out.append(result_dict(res));
        }
        return out;
      },
      py::arg("root") = py::none(), py::arg("tier") = py::none());
}
