#include "condsym/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>

#include "condsym/error.hpp"

namespace condsym {

// Pratt parser over the grammar
//   expr := term (('+'|'-') term)*      term := factor (('*'|'/') factor)*
//   factor := ['-'] base ('^' integer)?  base := number | identifier | u_J | f '(' expr ')' | '(' expr ')'
class Parser {
 public:
  Parser(const Workspace& ws, std::string_view text, bool allow_placeholder)
      : ws_(ws), text_(text), allow_placeholder_(allow_placeholder) {}

  Expr parse_all() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_expr(0);
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  static int infix_power(char c) {
    switch (c) {
      case '+':
      case '-': return 10;
      case '*':
      case '/': return 20;
      case '^': return 40;
      default: return -1;
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  Expr parse_expr(int min_power) {
    Expr lhs = parse_prefix();
    for (;;) {
      const char op = peek();
      const int power = infix_power(op);
      if (power < 0 || power <= min_power) break;
      const std::size_t op_pos = pos_;
      ++pos_;
      if (op == '^') {
        lhs = Expr::power(std::move(lhs), parse_exponent(op_pos));
        continue;
      }
      Expr rhs = parse_expr(power);
      switch (op) {
        case '+': lhs = lhs + rhs; break;
        case '-': lhs = lhs - rhs; break;
        case '*': lhs = lhs * rhs; break;
        default: lhs = lhs / rhs; break;
      }
    }
    return lhs;
  }

  int parse_exponent(std::size_t op_pos) {
    bool parenthesized = false;
    if (peek() == '(') {
      parenthesized = true;
      ++pos_;
    }
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("integer exponent expected after '^'", op_pos);
    if (pos_ - start > 6) throw ParseError("exponent too large", start);
    int value = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (parenthesized) expect(')');
    if (value == 0) throw ParseError("zero exponent", start);
    return negative ? -value : value;
  }

  Expr parse_prefix() {
    const char c = peek();
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    if (c == '-' || c == '+') {
      ++pos_;
      // Unary sign binds looser than '^' and tighter than '*': -x^2 = -(x^2).
      Expr operand = parse_expr(30);
      return c == '-' ? -operand : operand;
    }
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr(0);
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      throw ParseError("malformed number", start);
    }
    return Expr(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));

    if (peek() == '(') {
      const FunctionDef* def = ws_.function(name);
      if (def == nullptr) throw ParseError("undeclared function '" + name + "'", start);
      ++pos_;
      Expr argument = parse_expr(0);
      expect(')');
      return Expr::call(*def, std::move(argument));
    }

    if (name.size() == 1 && std::find(ws_.independents_.begin(), ws_.independents_.end(),
                                      name[0]) != ws_.independents_.end()) {
      return Expr::of_kernel(ws_.independent(name[0]));
    }
    if (name == ws_.dependent_) return Expr::of_kernel(ws_.jet(MultiIndex()));
    const std::string prefix = ws_.dependent_ + "_";
    if (name.rfind(prefix, 0) == 0) {
      const std::string letters = name.substr(prefix.size());
      if (letters.empty()) throw ParseError("malformed derivative subscript in '" + name + "'", start);
      for (char l : letters) {
        if (std::find(ws_.independents_.begin(), ws_.independents_.end(), l) == ws_.independents_.end()) {
          throw ParseError("malformed derivative subscript in '" + name + "'", start);
        }
      }
      return Expr::of_kernel(ws_.jet(MultiIndex::from_letters(letters)));
    }
    if (allow_placeholder_ && name == "s") return Expr::of_kernel(placeholder_kernel());
    auto it = ws_.constants_.find(name);
    if (it != ws_.constants_.end()) return Expr::of_kernel(it->second);
    if (ws_.function(name) != nullptr) throw ParseError("function '" + name + "' needs an argument", start);
    throw ParseError("undeclared identifier '" + name + "'", start);
  }

  const Workspace& ws_;
  std::string_view text_;
  bool allow_placeholder_;
  std::size_t pos_ = 0;
};

Workspace::Workspace() : Workspace({'x', 'y'}, "u") {}

Workspace::Workspace(std::vector<char> independents, std::string dependent)
    : independents_(std::move(independents)), dependent_(std::move(dependent)) {
  if (independents_.empty()) throw Error("at least one independent variable is required");
  for (char c : independents_) {
    if (!std::islower(static_cast<unsigned char>(c))) {
      throw Error(std::string("independent variable must be a lowercase letter: ") + c);
    }
  }
  auto sorted = independents_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("duplicate independent variable");
  }
  if (dependent_.empty() || !std::isalpha(static_cast<unsigned char>(dependent_[0])) ||
      dependent_.find('_') != std::string::npos ||
      (dependent_.size() == 1 &&
       std::find(independents_.begin(), independents_.end(), dependent_[0]) != independents_.end())) {
    throw Error("invalid dependent variable name '" + dependent_ + "'");
  }
  functions_["exp"] = &builtin_exp();
  functions_["ln"] = &builtin_ln();
}

void Workspace::check_fresh(const std::string& name) const {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) ||
      !std::all_of(name.begin(), name.end(),
                   [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })) {
    throw Error("invalid identifier '" + name + "'");
  }
  if (is_declared(name) || name == "s" || name.rfind(dependent_ + "_", 0) == 0) {
    throw Error("identifier '" + name + "' is already declared or reserved");
  }
}

void Workspace::declare_constant(const std::string& name) {
  check_fresh(name);
  constants_[name] = intern_atom(KernelKind::constant, name);
}

void Workspace::declare_functions(const std::vector<FunctionSpec>& specs) {
  for (const auto& spec : specs) {
    check_fresh(spec.name);
    for (const auto& other : specs) {
      if (&other != &spec && other.name == spec.name) throw Error("duplicate function '" + spec.name + "'");
    }
  }
  // Phase 1: publish every definition so templates can refer to one another.
  std::vector<std::pair<const FunctionSpec*, FunctionDef*>> fresh;
  for (const auto& spec : specs) {
    auto def = std::make_unique<FunctionDef>();
    def->name = spec.name;
    def->derivative_text = spec.derivative;
    def->relation_text = spec.relation;
    FunctionDef* raw = def.get();
    const FunctionDef& published = publish_function(std::move(def));
    functions_[spec.name] = &published;
    if (&published == raw) fresh.emplace_back(&spec, raw);
  }
  // Phase 2: fill in templates of definitions not seen before.
  try {
    for (auto [spec, def] : fresh) {
      def->derivative = canonicalize(parse_impl(spec->derivative, true));
      if (!spec->relation.empty()) {
        CanonicalForm rel = canonicalize(parse_impl(spec->relation, true));
        const CanonicalForm self =
            CanonicalForm::of_kernel(intern_function(*def, CanonicalForm::of_kernel(placeholder_kernel())));
        for (KernelId k : rel.kernels()) {
          if (k == self.kernels().front()) {
            throw Error("relation of '" + spec->name + "' must not contain " + spec->name + "(s)");
          }
        }
        def->relation = std::move(rel);
      }
    }
  } catch (...) {
    for (const auto& spec : specs) functions_.erase(spec.name);
    throw;
  }
}

KernelId Workspace::independent(char letter) const {
  if (std::find(independents_.begin(), independents_.end(), letter) == independents_.end()) {
    throw Error(std::string("not an independent variable: ") + letter);
  }
  return intern_atom(KernelKind::independent, std::string(1, letter));
}

KernelId Workspace::jet(const MultiIndex& index) const {
  for (char l : index.letters()) (void)independent(l);
  return intern_jet(dependent_, index);
}

KernelId Workspace::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) throw Error("undeclared constant '" + name + "'");
  return it->second;
}

const FunctionDef* Workspace::function(const std::string& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : it->second;
}

bool Workspace::is_declared(const std::string& name) const {
  if (name.size() == 1 && std::find(independents_.begin(), independents_.end(), name[0]) != independents_.end()) {
    return true;
  }
  return name == dependent_ || constants_.count(name) > 0 || functions_.count(name) > 0;
}

Expr Workspace::parse(std::string_view text) const { return parse_impl(text, false); }

Expr Workspace::parse_impl(std::string_view text, bool allow_placeholder) const {
  return Parser(*this, text, allow_placeholder).parse_all();
}

MultiIndex Workspace::parse_index(std::string_view letters) const {
  for (char l : letters) {
    if (std::find(independents_.begin(), independents_.end(), l) == independents_.end()) {
      throw ParseError(std::string("malformed multi-index letter '") + l + "'", 0);
    }
  }
  return MultiIndex::from_letters(letters);
}

}  // namespace condsym
