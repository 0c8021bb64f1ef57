#include "condsym/normal_form.hpp"

#include "condsym/error.hpp"
#include "condsym/jet.hpp"

namespace condsym {

Reducer::Reducer(std::vector<Rule> rules, int depth_limit)
    : rules_(std::move(rules)), depth_limit_(depth_limit) {
  for (const auto& r : rules_) {
    if (kernel(r.variable).kind != KernelKind::jet) throw ReductionError("rule variable is not a jet variable");
  }
}

CanonicalForm Reducer::reduce(const CanonicalForm& f) const {
  return substitute(f, [this](KernelId k) -> std::optional<CanonicalForm> {
    if (kernel(k).kind != KernelKind::jet) return std::nullopt;
    return image(k);
  });
}

std::optional<CanonicalForm> Reducer::image(KernelId jet) const {
  if (auto it = cache_.find(jet); it != cache_.end()) return it->second;
  const Kernel& w = kernel(jet);
  const Rule* rule = nullptr;
  for (const auto& r : rules_) {
    const Kernel& v = kernel(r.variable);
    if (v.name == w.name && v.index.divides(w.index)) {
      rule = &r;
      break;
    }
  }
  if (rule == nullptr) {
    cache_.emplace(jet, std::nullopt);
    return std::nullopt;
  }
  if (in_progress_.count(jet) > 0) {
    throw ReductionError("rank cycle while eliminating " + w.text);
  }
  if (depth_ >= depth_limit_) throw ReductionError("reduction depth limit reached at " + w.text);
  in_progress_.insert(jet);
  ++depth_;
  struct Guard {
    const Reducer* self;
    KernelId jet;
    ~Guard() {
      --self->depth_;
      self->in_progress_.erase(jet);
    }
  } guard{this, jet};

  CanonicalForm out;
  const MultiIndex rest = w.index.minus(kernel(rule->variable).index);
  if (rest.empty()) {
    out = reduce(rule->rhs);
  } else {
    // Differentiate the reduced image of a parent jet; equal modulo the rules.
    const char last = rest.letters().back();
    const KernelId parent = intern_jet(w.name, MultiIndex::from_letters(w.index.letters()).minus(
                                                   MultiIndex::from_letters(std::string(1, last))));
    out = reduce(total_derivative(*image(parent), last));
  }
  cache_.emplace(jet, out);
  return out;
}

}  // namespace condsym
