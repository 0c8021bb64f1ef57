// One line per acceptance criterion; failing sub-checks are listed beneath it.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "condsym/corpus.hpp"
#include "random_forms.hpp"

using namespace condsym;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<Outcome> outcomes;
};

struct Selection {
  std::string entry;
  std::function<bool(const std::string&)> assertion;
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::function<bool(const std::string&)> exactly(const std::string& a) {
  return [a](const std::string& s) { return s == a; };
}

std::function<bool(const std::string&)> prefixed(std::vector<std::string> prefixes) {
  return [prefixes](const std::string& s) {
    for (const auto& p : prefixes) {
      if (starts_with(s, p)) return true;
    }
    return false;
  };
}

class Corpus {
 public:
  explicit Corpus(const fs::path& root) {
    for (const auto& path : list_problems(root)) {
      problems_.push_back(load_problem(path, root));
      for (auto& r : verify(problems_.back())) results_[r.entry].push_back(std::move(r));
    }
  }

  const std::vector<Problem>& problems() const { return problems_; }

  std::vector<Outcome> select(const std::vector<Selection>& picks) const {
    std::vector<Outcome> out;
    for (const auto& pick : picks) {
      auto it = results_.find(pick.entry);
      if (it == results_.end()) {
        out.push_back({pick.entry, false, "entry missing"});
        continue;
      }
      bool any = false;
      for (const auto& r : it->second) {
        if (!pick.assertion(r.assertion)) continue;
        any = true;
        out.push_back({r.entry + " " + r.assertion, r.status == "pass", r.residual});
      }
      if (!any) out.push_back({pick.entry, false, "no matching assertion"});
    }
    return out;
  }

 private:
  std::vector<Problem> problems_;
  std::map<std::string, std::vector<AssertionResult>> results_;
};

Outcome property(const std::string& name, int trials, const std::function<std::optional<std::string>(int)>& trial) {
  for (int i = 0; i < trials; ++i) {
    try {
      if (auto failure = trial(i)) return {name, false, "instance " + std::to_string(i) + ": " + *failure};
    } catch (const std::exception& e) {
      return {name, false, "instance " + std::to_string(i) + ": " + e.what()};
    }
  }
  return {name + " (" + std::to_string(trials) + " instances)", true, ""};
}

std::optional<std::string> nonzero(const CanonicalForm& f) {
  if (f.is_zero()) return std::nullopt;
  return to_string(f);
}

std::vector<Outcome> property_suites(const Corpus& corpus) {
  std::vector<Outcome> out;
  Workspace ws;
  testing::RandomForms gen(20240611);

  out.push_back(property("total derivative Leibniz rule", 200, [&](int) {
    const CanonicalForm f = gen.jet_polynomial(ws, 3, 2);
    const CanonicalForm g = gen.jet_polynomial(ws, 3, 2);
    const char v = gen.letter();
    return nonzero(total_derivative(f * g, v) - total_derivative(f, v) * g - f * total_derivative(g, v));
  }));

  out.push_back(property("total derivatives commute", 200, [&](int) {
    const CanonicalForm f = gen.jet_polynomial(ws, 3, 2);
    return nonzero(total_derivative(total_derivative(f, 'x'), 'y') -
                   total_derivative(total_derivative(f, 'y'), 'x'));
  }));

  // phi^J = D_J Q + xi u_{J+x} + eta u_{J+y} with Q = phi - xi u_x - eta u_y.
  out.push_back(property("prolongation recursion recomputed from the characteristic", 50, [&](int) {
    const VectorField X = gen.point_field(ws, 2);
    const ProlongedField pr = prolong(X, 3);
    const CanonicalForm Q = -characteristic(X);
    for (const auto& [J, coefficient] : pr.coefficients()) {
      const CanonicalForm direct = total_derivative(Q, J) + X.xi * CanonicalForm::of_kernel(ws.jet(J.raised('x'))) +
                                   X.eta * CanonicalForm::of_kernel(ws.jet(J.raised('y')));
      if (!(direct == coefficient)) return std::optional<std::string>("phi[" + J.letters() + "]");
    }
    return std::optional<std::string>();
  }));

  out.push_back(property("characteristic self-invariance", 100, [&](int) {
    const VectorField X = gen.point_field(ws, 3);
    const CanonicalForm C = characteristic(X);
    const KernelId u = ws.jet("");
    const CanonicalForm ux = CanonicalForm::of_kernel(ws.jet("x"));
    const CanonicalForm uy = CanonicalForm::of_kernel(ws.jet("y"));
    const CanonicalForm factor = partial_derivative(X.xi, u) * ux + partial_derivative(X.eta, u) * uy -
                                 partial_derivative(X.phi, u);
    return nonzero(apply(prolong(X, 1), C) + factor * C);
  }));

  // Constraint sets exactly as the corpus entries use them.
  std::vector<std::pair<std::string, ConstraintSet>> sets;
  for (const auto& p : corpus.problems()) {
    if (!p.field) continue;
    try {
      sets.emplace_back(p.id, consequences(characteristic(*p.field), p.instances, ranking_for(*p.field), p.solve_for));
    } catch (const std::exception&) {
    }
  }
  out.push_back(property("reduce is idempotent on corpus constraints", int(sets.size()) * 5, [&](int i) {
    const auto& [id, S] = sets[std::size_t(i) / 5];
    const CanonicalForm f = gen.jet_polynomial(ws, 3, 2);
    const CanonicalForm once = reduce(f, S);
    if (auto bad = nonzero(reduce(once, S) - once)) return std::optional<std::string>(id + ": " + *bad);
    return std::optional<std::string>();
  }));
  out.push_back(property("reduce is a ring homomorphism on corpus constraints", int(sets.size()) * 5, [&](int i) {
    const auto& [id, S] = sets[std::size_t(i) / 5];
    const CanonicalForm f = gen.jet_polynomial(ws, 2, 2);
    const CanonicalForm g = gen.jet_polynomial(ws, 2, 2);
    if (auto bad = nonzero(reduce(f + g, S) - reduce(f, S) - reduce(g, S))) return std::optional<std::string>(id + " sum: " + *bad);
    if (auto bad = nonzero(reduce(f * g, S) - reduce(f, S) * reduce(g, S))) return std::optional<std::string>(id + " product: " + *bad);
    return std::optional<std::string>();
  }));

  // Every (field, equation) pair named by the corpus.
  struct Pair {
    std::string label;
    const VectorField* X;
    const Equation* E;
  };
  std::vector<Pair> pairs;
  for (const auto& p : corpus.problems()) {
    if (!p.equation) continue;
    if (p.field) pairs.push_back({p.id + " " + p.field_name, &*p.field, &*p.equation});
    for (const auto& [name, Z] : p.symmetries) pairs.push_back({p.id + " " + name, &Z, &*p.equation});
  }
  std::map<const Equation*, DeterminingSystem> systems;
  out.push_back(property("determining system agrees with the direct point test", int(pairs.size()), [&](int i) {
    const Pair& pair = pairs[std::size_t(i)];
    auto it = systems.find(pair.E);
    if (it == systems.end()) it = systems.emplace(pair.E, determining_system(*pair.E)).first;
    const bool via_system = check_candidate(it->second, *pair.X);
    const bool direct = is_point_symmetry(*pair.X, *pair.E);
    if (via_system == direct) return std::optional<std::string>();
    return std::optional<std::string>(pair.label + ": determining " + (via_system ? "true" : "false") + ", direct " +
                                      (direct ? "true" : "false"));
  }));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path root = argc > 1 ? fs::path(argv[1]) : default_corpus_root();
  const Corpus corpus(root);
  const auto inv = prefixed({"invariant["});
  const auto sym = prefixed({"point[", "determining["});

  std::vector<Criterion> criteria;
  criteria.push_back({1, "invariant suites",
                      corpus.select({{"bsq-X1", inv},
                                     {"bsq-X2", inv},
                                     {"bsq-X3", inv},
                                     {"bsq-X6", inv},
                                     {"fk-Y", inv},
                                     {"kdv-3.1.7-Z1", inv},
                                     {"kdv-3.2.4-Z", inv},
                                     {"kdv-3.5.2-Z2", inv}})});
  criteria.push_back({2, "reconstructions",
                      corpus.select({{"bsq-X1", exactly("reconstruction")},
                                     {"bsq-X2", exactly("reconstruction")},
                                     {"bsq-X3", exactly("reconstruction")},
                                     {"bsq-X6", exactly("reconstruction")}})});
  criteria.push_back({3, "constructions",
                      corpus.select({{"laplace-3.1.4", exactly("construction")},
                                     {"kdv-3.1.7", exactly("construction")},
                                     {"kdv-3.2.4", exactly("construction")},
                                     {"kdv-3.3.4", exactly("construction")},
                                     {"kdv-3.4.5", exactly("construction")},
                                     {"kdv-3.5.2", exactly("construction")}})});
  criteria.push_back({4, "conditional checks",
                      corpus.select({{"bsq-X1", exactly("conditional")},
                                     {"bsq-X2", exactly("conditional")},
                                     {"bsq-X3", exactly("conditional")},
                                     {"bsq-X6", exactly("conditional")},
                                     {"kdv-3.3.4", exactly("conditional")},
                                     {"kdv-3.4.5", exactly("conditional")},
                                     {"fk-Y", exactly("conditional")}})});
  criteria.push_back({5, "classifications",
                      corpus.select({{"kdv-3.1.7", exactly("verdict")},
                                     {"kdv-3.2.4", exactly("verdict")},
                                     {"kdv-3.5.2", exactly("verdict")},
                                     {"kdv-3.3.4-no-point", exactly("verdict")},
                                     {"kdv-3.4.5", exactly("verdict")}})});
  criteria.push_back({6, "point-symmetry lists",
                      corpus.select({{"laplace-3.1.4", sym},
                                     {"kdv-3.2.4", sym},
                                     {"kdv-3.4.5", sym},
                                     {"kdv-3.5.2", sym},
                                     {"kdv-3.1.7-symmetries", sym}})});
  criteria.push_back({7, "property suites", property_suites(corpus)});
  criteria.push_back({8, "degeneration guard", corpus.select({{"bsq-X1", exactly("degeneration")}})});

  int failed = 0;
  for (const auto& c : criteria) {
    std::size_t ok = 0;
    for (const auto& o : c.outcomes) ok += o.ok;
    const bool pass = ok == c.outcomes.size();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.title << " (" << ok << "/"
              << c.outcomes.size() << ")\n";
    for (const auto& o : c.outcomes) {
      if (!o.ok) std::cout << "        failed: " << o.name << (o.detail.empty() ? "" : ": " + o.detail) << "\n";
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << criteria.size() - std::size_t(failed) << "/" << criteria.size() << " criteria pass (" << seconds
            << " s)\n";
  return failed == 0 ? 0 : 1;
}
