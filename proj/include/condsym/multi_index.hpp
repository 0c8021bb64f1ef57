#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace condsym {

/// Derivative counts per variable, stored as a sorted letter string ("xxy" is
/// (x:2, y:1)). Mixed partials commute, so letter order in the input is irrelevant.
class MultiIndex {
 public:
  MultiIndex() = default;

  static MultiIndex from_letters(std::string_view letters);

  int order() const { return static_cast<int>(letters_.size()); }
  int count(char variable) const;
  bool empty() const { return letters_.empty(); }

  MultiIndex raised(char variable, int by = 1) const;
  /// True when every count of *this is <= the corresponding count of other.
  bool divides(const MultiIndex& other) const;
  /// Componentwise difference; requires divides(other) on the subtrahend.
  MultiIndex minus(const MultiIndex& subtrahend) const;

  const std::string& letters() const { return letters_; }

  auto operator<=>(const MultiIndex&) const = default;

 private:
  explicit MultiIndex(std::string sorted) : letters_(std::move(sorted)) {}
  std::string letters_;
};

}  // namespace condsym
