#include "condsym/corpus.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <sstream>

#include "condsym/error.hpp"

#ifndef CONDSYM_CORPUS_DIR
#define CONDSYM_CORPUS_DIR "corpus"
#endif

namespace condsym {
namespace fs = std::filesystem;
using boost::property_tree::ptree;

namespace {

ptree read_ini_file(const fs::path& path) {
  ptree tree;
  try {
    boost::property_tree::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(e.what());
  }
  return tree;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

/// Children of a section in file order; empty when the section is absent.
std::vector<std::pair<std::string, std::string>> section(const ptree& tree, const std::string& name) {
  std::vector<std::pair<std::string, std::string>> out;
  auto it = tree.find(name);
  if (it == tree.not_found()) return out;
  for (const auto& [k, v] : it->second) out.emplace_back(k, trim(v.data()));
  return out;
}

std::optional<std::string> value(const ptree& tree, const std::string& sec, const std::string& key) {
  for (const auto& [k, v] : section(tree, sec)) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string context(const fs::path& path, const std::string& what) {
  return path.filename().string() + ": " + what;
}

CanonicalForm parse_in(const Workspace& ws, const std::string& text, const fs::path& path,
                       const std::string& what) {
  try {
    return ws.parse_form(text);
  } catch (const ParseError& e) {
    throw ParseError(context(path, what) + ": " + e.what(), e.position());
  }
}

VectorField parse_triple(const Workspace& ws, const std::string& text, const fs::path& path,
                         const std::string& what) {
  const auto parts = split(text, ';');
  if (parts.size() != 3) throw Error(context(path, what) + ": expected 'xi ; eta ; phi'");
  return make_field(parse_in(ws, parts[0], path, what), parse_in(ws, parts[1], path, what),
                    parse_in(ws, parts[2], path, what));
}

KernelId parse_jet(const Workspace& ws, const std::string& text, const fs::path& path, const std::string& what) {
  const CanonicalForm f = parse_in(ws, text, path, what);
  const auto ks = f.kernels();
  if (ks.size() != 1 || kernel(ks[0]).kind != KernelKind::jet || !(f == CanonicalForm::of_kernel(ks[0]))) {
    throw Error(context(path, what) + ": '" + text + "' is not a jet variable");
  }
  return ks[0];
}

void read_declarations(const ptree& tree, std::vector<std::string>& constants, std::vector<FunctionSpec>& functions) {
  if (auto c = value(tree, "workspace", "constants")) {
    for (auto& w : words(*c)) constants.push_back(w);
  }
  for (const auto& [name, text] : section(tree, "functions")) {
    const auto parts = split(text, '|');
    if (parts.empty() || parts.size() > 2 || parts[0].empty()) {
      throw Error("function '" + name + "': expected 'derivative [| square]'");
    }
    functions.push_back({name, parts[0], parts.size() == 2 ? parts[1] : ""});
  }
}

void declare(Workspace& ws, const std::vector<std::string>& constants, const std::vector<FunctionSpec>& functions) {
  for (const auto& c : constants) {
    if (!ws.is_declared(c)) ws.declare_constant(c);
  }
  std::vector<FunctionSpec> fresh;
  for (const auto& f : functions) {
    if (ws.function(f.name) == nullptr) fresh.push_back(f);
  }
  if (!fresh.empty()) ws.declare_functions(fresh);
}

}  // namespace

fs::path resolve_path(const std::string& ref, const fs::path& root) {
  for (const fs::path& base : {fs::path(), root}) {
    for (const std::string suffix : {"", ".ini"}) {
      fs::path candidate = base.empty() ? fs::path(ref + suffix) : base / (ref + suffix);
      if (fs::is_regular_file(candidate)) return candidate;
    }
  }
  throw Error("cannot find '" + ref + "' (corpus root " + root.string() + ")");
}

FieldSpec load_field_spec(const fs::path& path) {
  const ptree tree = read_ini_file(path);
  FieldSpec spec;
  spec.name = value(tree, "field", "name").value_or(path.stem().string());
  read_declarations(tree, spec.constants, spec.functions);
  auto get = [&](const char* key) {
    auto v = value(tree, "field", key);
    if (!v) throw Error(context(path, std::string("[field] lacks ") + key));
    return *v;
  };
  spec.xi = get("xi");
  spec.eta = get("eta");
  spec.phi = get("phi");
  return spec;
}

VectorField realize_field(const FieldSpec& spec, Workspace& ws) {
  declare(ws, spec.constants, spec.functions);
  return make_field(ws.parse_form(spec.xi), ws.parse_form(spec.eta), ws.parse_form(spec.phi));
}

Problem load_problem(const fs::path& path, const fs::path& root) {
  const ptree tree = read_ini_file(path);
  Problem p;
  p.path = path;
  p.id = value(tree, "entry", "id").value_or(path.stem().string());
  p.tier = value(tree, "entry", "tier").value_or("core");
  p.note = value(tree, "entry", "note").value_or("");
  if (p.tier != "core" && p.tier != "extended" && p.tier != "partial") {
    throw Error(context(path, "unknown tier '" + p.tier + "'"));
  }

  std::vector<std::string> constants;
  std::vector<FunctionSpec> functions;
  std::optional<FieldSpec> field_spec;
  if (auto ref = value(tree, "entry", "field")) {
    field_spec = load_field_spec(resolve_path(*ref, root));
    p.field_name = field_spec->name;
    constants = field_spec->constants;
    functions = field_spec->functions;
  }
  read_declarations(tree, constants, functions);
  for (const auto& [name, text] : section(tree, "invariants")) constants.push_back(name);
  declare(p.workspace, constants, functions);
  Workspace& ws = p.workspace;

  if (field_spec) p.field = realize_field(*field_spec, ws);
  if (auto inline_field = value(tree, "entry", "field_inline")) {
    p.field = parse_triple(ws, *inline_field, path, "field_inline");
    p.field_name = "inline";
  }
  if (p.field) {
    p.invariant_field = p.field;
    if (auto scale = value(tree, "entry", "invariant_scale")) {
      p.invariant_field = scaled(*p.field, parse_in(ws, *scale, path, "invariant_scale"));
    }
  }

  for (const auto& [name, text] : section(tree, "invariants")) {
    p.invariants.emplace_back(name, parse_in(ws, text, path, "invariant " + name));
  }

  for (const auto& [key, text] : section(tree, "condition")) {
    if (key == "instances") {
      for (const auto& w : words(text)) p.instances.push_back(ws.parse_index(w));
    } else if (key == "solve") {
      p.solve_for[MultiIndex()] = parse_jet(ws, text, path, "solve");
    } else if (key.rfind("solve.", 0) == 0) {
      p.solve_for[ws.parse_index(key.substr(6))] = parse_jet(ws, text, path, key);
    } else {
      throw Error(context(path, "unknown key [condition] " + key));
    }
  }

  if (auto e = value(tree, "combination", "expr")) p.combination = parse_in(ws, *e, path, "combination");
  if (auto t = value(tree, "combination", "target")) p.target = parse_in(ws, *t, path, "target");
  if (auto m = value(tree, "combination", "mode")) {
    if (*m != "instances" && *m != "normal-form") throw Error(context(path, "unknown mode '" + *m + "'"));
    p.reconstruction_mode = *m;
  }

  if (auto lhs = value(tree, "equation", "lhs")) {
    auto solved = value(tree, "equation", "solved");
    if (!solved) throw Error(context(path, "[equation] lacks solved"));
    p.equation = make_equation(parse_in(ws, *lhs, path, "equation"), parse_jet(ws, *solved, path, "solved"));
  }
  if (auto id = value(tree, "equation", "identity")) p.identity = parse_in(ws, *id, path, "identity");

  for (const auto& [name, text] : section(tree, "symmetries")) {
    p.symmetries.emplace_back(name, parse_triple(ws, text, path, "symmetry " + name));
  }
  for (const auto& [name, text] : section(tree, "multiples")) {
    if (p.symmetries.end() == std::find_if(p.symmetries.begin(), p.symmetries.end(),
                                           [&](const auto& s) { return s.first == name; })) {
      throw Error(context(path, "[multiples] names unknown symmetry " + name));
    }
    p.multiples.emplace_back(name, parse_in(ws, text, path, "multiple " + name));
  }
  for (const auto& [key, text] : section(tree, "expect")) {
    if (key == "factors") {
      if (text == "default") continue;
      std::vector<CanonicalForm> fs;
      if (text != "none") {
        for (const auto& f : split(text, ';')) fs.push_back(parse_in(ws, f, path, "factors"));
      }
      p.factors = std::move(fs);
      continue;
    }
    p.expect[key] = text;
  }
  return p;
}

namespace {

class Recorder {
 public:
  explicit Recorder(const Problem& p) : p_(p) {}

  template <typename Check>
  void run(const std::string& assertion, Check&& check) {
    AssertionResult r{p_.id, assertion, "pass", ""};
    try {
      std::optional<std::string> residual = check();
      if (residual) {
        r.status = "fail";
        r.residual = *residual;
      }
    } catch (const std::exception& e) {
      r.status = "error";
      r.residual = e.what();
    }
    results.push_back(std::move(r));
  }

  std::vector<AssertionResult> results;

 private:
  const Problem& p_;
};

std::optional<std::string> zero_or(const CanonicalForm& f) {
  if (f.is_zero()) return std::nullopt;
  return to_string(f);
}

std::optional<std::string> expect_bool(bool got, const std::string& want) {
  const bool expected = want == "true";
  if (got == expected) return std::nullopt;
  return std::string("got ") + (got ? "true" : "false") + ", expected " + want;
}

const VectorField& require_field(const Problem& p) {
  if (!p.field) throw Error("entry has no field");
  return *p.field;
}

const Equation& require_equation(const Problem& p) {
  if (!p.equation) throw Error("entry has no equation");
  return *p.equation;
}

ConstraintSet constraint_set(const Problem& p) {
  const VectorField& X = require_field(p);
  return consequences(characteristic(X), p.instances, ranking_for(X), p.solve_for);
}

}  // namespace

std::vector<AssertionResult> verify(const Problem& p) {
  Recorder rec(p);
  auto flag = [&](const std::string& key) {
    auto it = p.expect.find(key);
    return it == p.expect.end() ? std::optional<std::string>() : std::optional<std::string>(it->second);
  };

  if (p.invariant_field && flag("invariants").value_or("true") == "true") {
    for (const auto& [name, value] : p.invariants) {
      rec.run("invariant[" + name + "]", [&] {
        return zero_or(apply(prolong(*p.invariant_field, std::max(jet_order(value), 0)), value));
      });
    }
  }

  if (p.combination && p.target) {
    rec.run("reconstruction", [&]() -> std::optional<std::string> {
      const CanonicalForm expanded = expand_combination(*p.combination, p.invariants);
      if (p.reconstruction_mode == "normal-form") {
        const VectorField& X = require_field(p);
        const CanonicalForm C = characteristic(X);
        const KernelId v = leading_variable(C, ranking_for(X));
        return zero_or(Reducer({{v, solve_linear_for(C, v)}}).reduce(expanded - *p.target));
      }
      return zero_or(reduce(expanded, constraint_set(p)) - *p.target);
    });
  }

  if (p.combination && p.equation && flag("construction").value_or("false") == "true") {
    rec.run("construction", [&] {
      const Equation built =
          construct_equation(p.invariants, *p.combination, constraint_set(p), p.equation->variable);
      return zero_or(built.rhs - p.equation->rhs);
    });
  }

  if (p.identity) {
    rec.run("identity", [&] {
      const Equation& E = require_equation(p);
      const CanonicalForm expanded = expand_combination(*p.identity, p.invariants);
      return zero_or(solve_linear_for(expanded, E.variable) - E.rhs);
    });
  }

  if (auto want = flag("point")) {
    rec.run("point", [&] { return expect_bool(is_point_symmetry(require_field(p), require_equation(p)), *want); });
  }

  if (auto want = flag("conditional")) {
    rec.run("conditional", [&]() -> std::optional<std::string> {
      const CanonicalForm residual = conditional_residual(require_field(p), require_equation(p));
      auto mismatch = expect_bool(residual.is_zero(), *want);
      if (mismatch && !residual.is_zero()) return *mismatch + "; residual " + to_string(residual);
      return mismatch;
    });
  }

  if (auto want = flag("verdict")) {
    rec.run("verdict", [&]() -> std::optional<std::string> {
      const auto c = classify(require_field(p), require_equation(p), p.factors.value_or(default_factors()));
      std::string got = to_string(c.verdict);
      if (c.factor) got += " (" + to_string(*c.factor) + ")";
      if (to_string(c.verdict) != *want) return "got " + got + ", expected " + *want;
      if (auto f = flag("factor")) {
        if (!c.factor || !(*c.factor == p.workspace.parse_form(*f))) return "got " + got + ", expected factor " + *f;
      }
      return std::nullopt;
    });
  }

  if (!p.symmetries.empty() && p.equation) {
    std::optional<DeterminingSystem> system;
    for (const auto& [name, Z] : p.symmetries) {
      rec.run("point[" + name + "]", [&] { return zero_or(point_symmetry_residual(Z, *p.equation)); });
      rec.run("determining[" + name + "]", [&]() -> std::optional<std::string> {
        if (!system) system = determining_system(*p.equation);
        if (check_candidate(*system, Z)) return std::nullopt;
        return "candidate violates the determining system";
      });
    }
  }

  for (const auto& [name, factor] : p.multiples) {
    rec.run("multiple[" + name + "]", [&]() -> std::optional<std::string> {
      const auto& Z = std::find_if(p.symmetries.begin(), p.symmetries.end(),
                                   [&](const auto& s) { return s.first == name; })->second;
      const auto f = is_multiple(Z, require_field(p));
      if (!f) return "not a multiple of the field";
      if (!(*f == factor)) return "factor " + to_string(*f) + ", expected " + to_string(factor);
      return std::nullopt;
    });
  }

  if (auto order = flag("degenerate_order")) {
    rec.run("degeneration", [&]() -> std::optional<std::string> {
      const VectorField& X = require_field(p);
      const int n = std::stoi(*order);
      std::vector<MultiIndex> all;
      std::vector<MultiIndex> level{MultiIndex()};
      for (int k = 1; k <= n; ++k) {
        std::vector<MultiIndex> next;
        for (const auto& J : level) {
          for (char c : {'x', 'y'}) {
            MultiIndex Jc = J.raised(c);
            if (std::find(next.begin(), next.end(), Jc) == next.end()) next.push_back(Jc);
          }
        }
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
      }
      const CanonicalForm reduced =
          reduce(require_equation(p).lhs, consequences(characteristic(X), all, ranking_for(X)));
      for (KernelId j : jet_variables(reduced)) {
        if (kernel(j).index.count('y') > 0) return "y-derivative " + kernel(j).text + " survives in " + to_string(reduced);
      }
      return std::nullopt;
    });
  }
  return rec.results;
}

fs::path default_corpus_root() {
  if (const char* env = std::getenv("CONDSYM_CORPUS"); env != nullptr && *env != '\0') return env;
  return CONDSYM_CORPUS_DIR;
}

std::vector<fs::path> list_problems(const fs::path& root) {
  std::vector<fs::path> out;
  const fs::path dir = root / "problems";
  if (!fs::is_directory(dir)) throw Error("no problems directory under " + root.string());
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".ini") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace condsym
