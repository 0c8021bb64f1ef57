#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "condsym/expr.hpp"

namespace condsym {

/// A user function: name(s) with derivative template d/ds name(s) and an optional
/// value for name(s)^2, both written in the placeholder s.
struct FunctionSpec {
  std::string name;
  std::string derivative;
  std::string relation;
};

/// Declarations that give identifiers their meaning: independent variables
/// (single letters, default x and y), the dependent variable (default u),
/// constants and functions. exp and ln are always available.
class Workspace {
 public:
  Workspace();
  Workspace(std::vector<char> independents, std::string dependent);

  void declare_constant(const std::string& name);
  /// Declares a group of functions whose templates may refer to each other.
  void declare_functions(const std::vector<FunctionSpec>& specs);

  const std::vector<char>& independents() const { return independents_; }
  const std::string& dependent() const { return dependent_; }
  KernelId independent(char letter) const;
  KernelId jet(const MultiIndex& index) const;
  KernelId jet(std::string_view letters) const { return jet(MultiIndex::from_letters(letters)); }
  /// Throws Error for an unknown constant.
  KernelId constant(const std::string& name) const;
  const FunctionDef* function(const std::string& name) const;
  bool is_declared(const std::string& name) const;

  /// Throws ParseError on syntax errors, undeclared identifiers and malformed
  /// derivative subscripts.
  Expr parse(std::string_view text) const;
  CanonicalForm parse_form(std::string_view text) const { return canonicalize(parse(text)); }
  /// Validates letters against the independent variables.
  MultiIndex parse_index(std::string_view letters) const;

 private:
  friend class Parser;
  Expr parse_impl(std::string_view text, bool allow_placeholder) const;
  void check_fresh(const std::string& name) const;

  std::vector<char> independents_;
  std::string dependent_;
  std::map<std::string, KernelId> constants_;
  std::map<std::string, const FunctionDef*> functions_;
};

}  // namespace condsym
