#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "condsym/corpus.hpp"
#include "condsym/error.hpp"

namespace fs = std::filesystem;
using namespace condsym;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

struct Common {
  std::string root;
  std::string field;
  std::string field_inline;
  std::string constants;

  fs::path corpus_root() const { return root.empty() ? default_corpus_root() : fs::path(root); }

  /// Expression text, reading "@path" from disk (as given, else below the corpus root).
  std::string text(const std::string& arg) const {
    if (arg.empty() || arg[0] != '@') return arg;
    const std::string ref = arg.substr(1);
    fs::path path = ref;
    if (!fs::is_regular_file(path)) path = corpus_root() / ref;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + ref + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return trim(buf.str());
  }

  void declare(Workspace& ws) const {
    std::istringstream in(constants);
    std::string c;
    while (in >> c) {
      if (!ws.is_declared(c)) ws.declare_constant(c);
    }
  }

  VectorField load_field(Workspace& ws, const std::string& ref, const std::string& inline_text) const {
    declare(ws);
    if (!inline_text.empty()) {
      const auto parts = split(text(inline_text), ';');
      if (parts.size() != 3) throw UsageError("field must be 'xi ; eta ; phi'");
      return make_field(ws.parse_form(parts[0]), ws.parse_form(parts[1]), ws.parse_form(parts[2]));
    }
    if (ref.empty()) throw UsageError("a field is required (--field or --field-inline)");
    return realize_field(load_field_spec(resolve_path(ref, corpus_root())), ws);
  }

  VectorField load_field(Workspace& ws) const { return load_field(ws, field, field_inline); }
};

KernelId parse_jet(const Workspace& ws, const std::string& text) {
  const CanonicalForm f = ws.parse_form(text);
  const auto ks = f.kernels();
  if (ks.size() != 1 || kernel(ks[0]).kind != KernelKind::jet || !(f == CanonicalForm::of_kernel(ks[0]))) {
    throw UsageError("'" + text + "' is not a jet variable");
  }
  return ks[0];
}

/// Without an explicit variable the highest-order jet is solved for, x-derivatives first.
Equation load_equation(const Workspace& ws, const std::string& lhs, const std::string& solve) {
  const CanonicalForm f = ws.parse_form(lhs);
  if (!solve.empty()) return make_equation(f, parse_jet(ws, solve));
  return make_equation(f, JetRanking(RankingMode::eliminate_x));
}

int verdict_line(bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << "  " << detail;
  std::cout << "\n";
  return ok ? kPass : kFail;
}

struct CorpusOptions {
  std::string tier;
  std::vector<std::string> entries;
  bool json = false;
  int jobs = 0;
};

struct EntryReport {
  std::string id;
  std::string tier;
  std::vector<AssertionResult> results;
};

EntryReport verify_file(const fs::path& path, const fs::path& root) {
  EntryReport r;
  r.id = path.stem().string();
  try {
    const Problem p = load_problem(path, root);
    r.id = p.id;
    r.tier = p.tier;
    r.results = verify(p);
  } catch (const std::exception& e) {
    r.results.push_back({r.id, "load", "error", e.what()});
  }
  return r;
}

int corpus_run(const Common& common, const CorpusOptions& opt) {
  const fs::path root = common.corpus_root();
  std::vector<fs::path> files = list_problems(root);
  if (!opt.entries.empty()) {
    std::vector<fs::path> chosen;
    for (const auto& id : opt.entries) {
      auto it = std::find_if(files.begin(), files.end(), [&](const fs::path& f) { return f.stem() == id; });
      if (it == files.end()) throw UsageError("unknown entry '" + id + "'");
      chosen.push_back(*it);
    }
    files = std::move(chosen);
    std::sort(files.begin(), files.end());
  }

  // Verification is parallel; the report is assembled in file order.
  std::vector<EntryReport> reports(files.size());
  const unsigned jobs = opt.jobs > 0 ? unsigned(opt.jobs) : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<size_t>(jobs, files.size()); ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < files.size(); i = next++) reports[i] = verify_file(files[i], root);
    });
  }
  for (auto& t : pool) t.join();

  if (!opt.tier.empty()) {
    std::erase_if(reports, [&](const EntryReport& r) { return !r.tier.empty() && r.tier != opt.tier; });
  }
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  size_t pass = 0, fail = 0, error = 0;
  for (const auto& r : reports) {
    for (const auto& a : r.results) {
      (a.status == "pass" ? pass : a.status == "fail" ? fail : error)++;
    }
  }

  if (opt.json) {
    nlohmann::ordered_json doc;
    doc["results"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      for (const auto& a : r.results) {
        doc["results"].push_back({{"entry", a.entry},
                                  {"tier", r.tier},
                                  {"assertion", a.assertion},
                                  {"status", a.status},
                                  {"residual", a.residual}});
      }
    }
    doc["summary"] = {{"entries", reports.size()}, {"pass", pass}, {"fail", fail}, {"error", error}};
    std::cout << doc.dump(2) << "\n";
  } else {
    size_t width = 5;
    for (const auto& r : reports) width = std::max(width, r.id.size());
    for (const auto& r : reports) {
      size_t ok = 0;
      for (const auto& a : r.results) ok += a.status == "pass";
      std::cout << r.id << std::string(width - r.id.size() + 2, ' ') << r.tier
                << std::string(10 - std::min<size_t>(r.tier.size(), 9), ' ') << ok << "/" << r.results.size()
                << (ok == r.results.size() ? "  ok" : "  FAILED") << "\n";
      for (const auto& a : r.results) {
        if (a.status == "pass") continue;
        std::cout << "  " << a.status << " " << a.assertion << ": " << a.residual << "\n";
      }
    }
    std::cout << "entries " << reports.size() << ", assertions " << pass + fail + error << ", pass " << pass
              << ", fail " << fail << ", error " << error << "\n";
  }
  return fail + error == 0 ? kPass : kFail;
}

int corpus_list(const Common& common, const CorpusOptions& opt) {
  const fs::path root = common.corpus_root();
  for (const auto& path : list_problems(root)) {
    const Problem p = load_problem(path, root);
    if (!opt.tier.empty() && p.tier != opt.tier) continue;
    std::cout << p.id << "  " << p.tier << "  " << p.note << "\n";
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional symmetries of PDEs in two independent variables"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--root", common.root, "Corpus root (default $CONDSYM_CORPUS or the bundled corpus)");

  auto field_options = [&](CLI::App* cmd) {
    cmd->add_option("--field", common.field, "Field file, e.g. fields/X1");
    cmd->add_option("--field-inline", common.field_inline, "Field as 'xi ; eta ; phi'");
    cmd->add_option("--constants", common.constants, "Extra constants, space separated");
  };

  std::string expr, equation, solve, mode = "full", instances, solve_base, problem, factors;
  int order = 2;
  bool conditional = false;
  std::vector<std::string> candidates;
  CorpusOptions copt;

  auto* prolong_cmd = app.add_subcommand("prolong", "Print the prolonged coefficients of a field");
  field_options(prolong_cmd);
  prolong_cmd->add_option("--order", order, "Prolongation order")->check(CLI::Range(0, 12));

  auto* inv_cmd = app.add_subcommand("check-invariant", "Check that pr X annihilates an expression");
  field_options(inv_cmd);
  inv_cmd->add_option("--expr", expr, "Expression or @file")->required();

  auto* point_cmd = app.add_subcommand("check-point", "Check a Lie point symmetry of an equation");
  auto* cond_cmd = app.add_subcommand("check-conditional", "Check a conditional symmetry of an equation");
  auto* class_cmd = app.add_subcommand("classify", "Classify a conditional symmetry against a factor family");
  for (auto* cmd : {point_cmd, cond_cmd, class_cmd}) {
    field_options(cmd);
    cmd->add_option("--equation", equation, "Equation lhs (= 0) or @file")->required();
    cmd->add_option("--solve", solve, "Solved jet variable (default: highest order, x-derivatives first)");
  }
  class_cmd->add_option("--factors", factors, "Candidate factors separated by ';'");

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce an expression modulo a condition and its consequences");
  reduce_cmd->add_option("--expr", expr, "Expression or @file")->required();
  reduce_cmd->add_option("--condition-of", common.field, "Field whose characteristic is the condition")->required();
  reduce_cmd->add_option("--constants", common.constants, "Extra constants, space separated");
  reduce_cmd->add_option("--instances", instances, "Derivative instances, e.g. 'x xx'");
  reduce_cmd->add_option("--solve-base", solve_base, "Jet the condition itself is solved for");
  reduce_cmd->add_option("--mode", mode, "full or selective")->check(CLI::IsMember({"full", "selective"}));

  auto* construct_cmd = app.add_subcommand("construct", "Build the equation of a problem from its invariants");
  construct_cmd->add_option("--problem", problem, "Problem file, e.g. problems/kdv-3.1.7")->required();
  construct_cmd->add_option("--mode", mode, "full or selective")->check(CLI::IsMember({"full", "selective"}));

  auto* det_cmd = app.add_subcommand("determining", "Print a determining system or test candidates against it");
  det_cmd->add_option("--equation", equation, "Equation lhs (= 0) or @file")->required();
  det_cmd->add_option("--solve", solve, "Solved jet variable");
  det_cmd->add_option("--constants", common.constants, "Extra constants, space separated");
  det_cmd->add_flag("--conditional", conditional, "Nonclassical system (eta = 1)");
  det_cmd->add_option("--candidate", candidates, "Candidate field file or 'xi ; eta ; phi'");

  auto* corpus_cmd = app.add_subcommand("corpus", "Corpus commands");
  corpus_cmd->require_subcommand(1);
  auto* run_cmd = corpus_cmd->add_subcommand("run", "Verify corpus entries");
  auto* list_cmd = corpus_cmd->add_subcommand("list", "List corpus entries");
  for (auto* cmd : {run_cmd, list_cmd}) {
    cmd->add_option("--tier", copt.tier, "core, extended or partial")
        ->check(CLI::IsMember({"core", "extended", "partial"}));
  }
  run_cmd->add_option("--entry", copt.entries, "Entry id (repeatable)");
  run_cmd->add_flag("--json", copt.json, "Machine-readable report");
  run_cmd->add_option("--jobs", copt.jobs, "Worker threads (default: hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }
  if (construct_cmd->parsed() && construct_cmd->count("--mode") == 0) mode = "selective";
  if (reduce_cmd->parsed() && reduce_cmd->count("--mode") == 0) mode = "full";

  try {
    Workspace ws;
    if (prolong_cmd->parsed()) {
      const VectorField X = common.load_field(ws);
      const ProlongedField pr = prolong(X, order);
      std::cout << "xi = " << X.xi << "\neta = " << X.eta << "\nphi = " << X.phi << "\n";
      for (const auto& [J, c] : pr.coefficients()) {
        std::cout << "phi[" << (J.empty() ? "" : J.letters()) << "] = " << c << "\n";
      }
      return kPass;
    }
    if (inv_cmd->parsed()) {
      const VectorField X = common.load_field(ws);
      const CanonicalForm f = ws.parse_form(common.text(expr));
      const CanonicalForm r = apply(prolong(X, std::max(jet_order(f), 0)), f);
      return verdict_line(r.is_zero(), r.is_zero() ? "" : "residual " + to_string(r));
    }
    if (point_cmd->parsed() || cond_cmd->parsed() || class_cmd->parsed()) {
      const VectorField X = common.load_field(ws);
      const Equation E = load_equation(ws, common.text(equation), solve);
      if (point_cmd->parsed()) {
        const CanonicalForm r = point_symmetry_residual(X, E);
        return verdict_line(r.is_zero(), r.is_zero() ? "" : "residual " + to_string(r));
      }
      if (cond_cmd->parsed()) {
        const CanonicalForm r = conditional_residual(X, E);
        return verdict_line(r.is_zero(), r.is_zero() ? "" : "residual " + to_string(r));
      }
      std::vector<CanonicalForm> family = default_factors();
      if (!factors.empty()) {
        family.clear();
        for (const auto& f : split(common.text(factors), ';')) family.push_back(ws.parse_form(f));
      }
      const Classification c = classify(X, E, family);
      std::cout << to_string(c.verdict);
      if (c.factor) std::cout << "  factor " << *c.factor;
      std::cout << "\n";
      return kPass;
    }
    if (reduce_cmd->parsed()) {
      const VectorField X = common.load_field(ws);
      std::vector<MultiIndex> idx;
      std::istringstream in(instances);
      for (std::string w; in >> w;) idx.push_back(ws.parse_index(w));
      std::map<MultiIndex, KernelId> solve_for;
      if (!solve_base.empty()) solve_for[MultiIndex()] = parse_jet(ws, solve_base);
      const CanonicalForm f = ws.parse_form(common.text(expr));
      const ConstraintSet S = consequences(characteristic(X), idx, ranking_for(X), solve_for);
      std::cout << reduce(f, S, mode == "full" ? ReduceMode::full : ReduceMode::selective) << "\n";
      return kPass;
    }
    if (construct_cmd->parsed()) {
      const fs::path root = common.corpus_root();
      const Problem p = load_problem(resolve_path(problem, root), root);
      if (!p.field || !p.combination) throw UsageError("problem needs a field and a combination");
      KernelId v = p.workspace.jet("y");
      if (p.equation) v = p.equation->variable;
      const ConstraintSet S = consequences(characteristic(*p.field), p.instances, ranking_for(*p.field), p.solve_for);
      const Equation E = construct_equation(p.invariants, *p.combination, S, v,
                                            mode == "full" ? ReduceMode::full : ReduceMode::selective);
      std::cout << kernel(E.variable).text << " = " << E.rhs << "\n";
      if (!p.equation) return kPass;
      const CanonicalForm diff = E.rhs - p.equation->rhs;
      return verdict_line(diff.is_zero(), diff.is_zero() ? "matches the stated equation"
                                                         : "differs from the stated equation by " + to_string(diff));
    }
    if (det_cmd->parsed()) {
      common.declare(ws);
      const Equation E = load_equation(ws, common.text(equation), solve);
      const DeterminingSystem sys = determining_system(E, conditional);
      if (candidates.empty()) {
        for (const auto& eq : sys.equations) std::cout << "[" << eq.key << "] " << eq.coefficient << " = 0\n";
        std::cout << sys.equations.size() << " equations\n";
        return kPass;
      }
      bool all = true;
      for (const auto& c : candidates) {
        const bool is_inline = c.find(';') != std::string::npos;
        const VectorField X = common.load_field(ws, is_inline ? "" : c, is_inline ? c : "");
        const bool ok = check_candidate(sys, X);
        all = all && ok;
        std::cout << (ok ? "PASS  " : "FAIL  ") << c << "\n";
      }
      return all ? kPass : kFail;
    }
    if (run_cmd->parsed()) return corpus_run(common, copt);
    if (list_cmd->parsed()) return corpus_list(common, copt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
