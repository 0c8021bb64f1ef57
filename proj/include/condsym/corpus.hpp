#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condsym/determining.hpp"
#include "condsym/reduction.hpp"
#include "condsym/workspace.hpp"

namespace condsym {

/// A field file: workspace declarations plus xi, eta, phi.
struct FieldSpec {
  std::string name;
  std::vector<std::string> constants;
  std::vector<FunctionSpec> functions;
  std::string xi, eta, phi;
};

/// One corpus document. Expressions stay textual until a workspace parses them.
struct Problem {
  std::string id;
  std::string tier = "core";
  std::string note;
  std::filesystem::path path;

  Workspace workspace;
  std::optional<VectorField> field;
  std::string field_name;
  /// Field whose invariants are listed: the entry field times invariant_scale.
  std::optional<VectorField> invariant_field;

  InvariantSet invariants;
  std::vector<MultiIndex> instances;
  std::map<MultiIndex, KernelId> solve_for;

  std::optional<CanonicalForm> combination;
  std::optional<CanonicalForm> target;
  /// "instances": full reduction by the listed instances; "normal-form": normal
  /// form modulo C and all its consequences.
  std::string reconstruction_mode = "instances";

  std::optional<Equation> equation;
  std::optional<CanonicalForm> identity;
  std::vector<std::pair<std::string, VectorField>> symmetries;
  std::vector<std::pair<std::string, CanonicalForm>> multiples;
  std::optional<std::vector<CanonicalForm>> factors;
  std::map<std::string, std::string> expect;
};

/// Reads a field file (INI). Throws Error on malformed input.
FieldSpec load_field_spec(const std::filesystem::path& path);
/// Declares the field's constants and functions in ws and parses the field.
VectorField realize_field(const FieldSpec& spec, Workspace& ws);

/// Resolves a reference such as "fields/X1": as given, with ".ini", then below root.
std::filesystem::path resolve_path(const std::string& ref, const std::filesystem::path& root);

/// Throws Error (ParseError for bad expressions) on malformed input.
Problem load_problem(const std::filesystem::path& path, const std::filesystem::path& root);

struct AssertionResult {
  std::string entry;
  std::string assertion;
  std::string status;  // pass | fail | error
  std::string residual;
};

/// Runs every expectation of the problem; independent of execution order.
std::vector<AssertionResult> verify(const Problem& problem);

/// Default corpus root: $CONDSYM_CORPUS, else the compiled-in corpus directory.
std::filesystem::path default_corpus_root();

/// All problem files under root/problems, sorted by file name.
std::vector<std::filesystem::path> list_problems(const std::filesystem::path& root);

}  // namespace condsym
