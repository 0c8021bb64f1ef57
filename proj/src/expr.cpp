#include "condsym/expr.hpp"

#include "condsym/error.hpp"

namespace condsym {

struct Expr::Node {
  Kind kind = Kind::number;
  Rational value;
  KernelId kernel = 0;
  const FunctionDef* function = nullptr;
  std::vector<Expr> operands;
  int exponent = 0;
};

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(const Rational& value) {
  auto n = std::make_shared<Node>();
  n->value = value;
  n->value.canonicalize();
  node_ = std::move(n);
}

Expr Expr::of_kernel(KernelId k) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kernel;
  n->kernel = k;
  return Expr(std::move(n));
}

Expr Expr::call(const FunctionDef& def, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->function = &def;
  n->operands.push_back(std::move(argument));
  return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> operands) {
  if (operands.size() == 1) return operands.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  for (auto& op : operands) {
    if (op.kind() == Kind::sum) {
      n->operands.insert(n->operands.end(), op.operands().begin(), op.operands().end());
    } else {
      n->operands.push_back(std::move(op));
    }
  }
  return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> operands) {
  if (operands.size() == 1) return operands.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  for (auto& op : operands) {
    if (op.kind() == Kind::product) {
      n->operands.insert(n->operands.end(), op.operands().begin(), op.operands().end());
    } else {
      n->operands.push_back(std::move(op));
    }
  }
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent == 1) return base;
  auto n = std::make_shared<Node>();
  n->kind = Kind::power;
  n->operands.push_back(std::move(base));
  n->exponent = exponent;
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
KernelId Expr::kernel_id() const { return node_->kernel; }
const FunctionDef& Expr::function() const { return *node_->function; }
const std::vector<Expr>& Expr::operands() const { return node_->operands; }
int Expr::exponent() const { return node_->exponent; }

CanonicalForm canonicalize(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::number: return CanonicalForm(e.value());
    case Expr::Kind::kernel: return CanonicalForm::of_kernel(e.kernel_id());
    case Expr::Kind::call: return apply_function(e.function(), canonicalize(e.operands()[0]));
    case Expr::Kind::sum: {
      CanonicalForm acc;
      for (const auto& op : e.operands()) acc += canonicalize(op);
      return acc;
    }
    case Expr::Kind::product: {
      CanonicalForm acc(1);
      for (const auto& op : e.operands()) {
        acc *= canonicalize(op);
        if (acc.is_zero()) {
          // Keep evaluating so that zero divisors further right still raise.
          for (const auto& rest : e.operands()) (void)canonicalize(rest);
          return acc;
        }
      }
      return acc;
    }
    case Expr::Kind::power: return canonicalize(e.operands()[0]).pow(e.exponent());
  }
  return {};
}

namespace {

Expr poly_to_expr(const Poly& p) {
  if (p.is_zero()) return Expr();
  std::vector<Expr> terms;
  for (const auto& t : p.terms()) {
    std::vector<Expr> factors;
    if (t.coeff != 1 || t.monomial.empty()) factors.emplace_back(t.coeff);
    for (const auto& [k, e] : t.monomial.powers()) {
      const Kernel& kk = kernel(k);
      Expr base = kk.kind == KernelKind::function ? Expr::call(*kk.function, to_expr(*kk.argument))
                                                  : Expr::of_kernel(k);
      factors.push_back(Expr::power(std::move(base), static_cast<int>(e)));
    }
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

}  // namespace

Expr to_expr(const CanonicalForm& f) {
  Expr num = poly_to_expr(f.numerator());
  if (f.is_polynomial()) return num;
  return Expr::product({num, Expr::power(poly_to_expr(f.denominator()), -1)});
}

std::string print(const Expr& e) { return to_string(canonicalize(e)); }

bool is_zero(const Expr& e) { return canonicalize(e).is_zero(); }

Expr substitute(const Expr& e, KernelId target, const Expr& replacement) {
  switch (e.kind()) {
    case Expr::Kind::number: return e;
    case Expr::Kind::kernel: return e.kernel_id() == target ? replacement : e;
    case Expr::Kind::call: {
      if (kernel(target).kind == KernelKind::function &&
          canonicalize(e) == CanonicalForm::of_kernel(target)) {
        return replacement;
      }
      return Expr::call(e.function(), substitute(e.operands()[0], target, replacement));
    }
    case Expr::Kind::sum:
    case Expr::Kind::product: {
      std::vector<Expr> ops;
      ops.reserve(e.operands().size());
      for (const auto& op : e.operands()) ops.push_back(substitute(op, target, replacement));
      return e.kind() == Expr::Kind::sum ? Expr::sum(std::move(ops)) : Expr::product(std::move(ops));
    }
    case Expr::Kind::power:
      return Expr::power(substitute(e.operands()[0], target, replacement), e.exponent());
  }
  return e;
}

Expr partial_derivative(const Expr& e, KernelId variable) {
  return to_expr(partial_derivative(canonicalize(e), variable));
}

}  // namespace condsym
