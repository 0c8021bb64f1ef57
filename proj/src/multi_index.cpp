#include "condsym/multi_index.hpp"

#include <algorithm>

#include "condsym/error.hpp"

namespace condsym {

MultiIndex MultiIndex::from_letters(std::string_view letters) {
  std::string sorted(letters);
  std::sort(sorted.begin(), sorted.end());
  return MultiIndex(std::move(sorted));
}

int MultiIndex::count(char variable) const {
  return static_cast<int>(std::count(letters_.begin(), letters_.end(), variable));
}

MultiIndex MultiIndex::raised(char variable, int by) const {
  std::string sorted = letters_;
  sorted.append(static_cast<std::size_t>(by), variable);
  std::sort(sorted.begin(), sorted.end());
  return MultiIndex(std::move(sorted));
}

bool MultiIndex::divides(const MultiIndex& other) const {
  return std::includes(other.letters_.begin(), other.letters_.end(), letters_.begin(),
                       letters_.end());
}

MultiIndex MultiIndex::minus(const MultiIndex& subtrahend) const {
  if (!subtrahend.divides(*this)) {
    throw Error("multi-index " + subtrahend.letters_ + " does not divide " + letters_);
  }
  std::string out;
  std::set_difference(letters_.begin(), letters_.end(), subtrahend.letters_.begin(),
                      subtrahend.letters_.end(), std::back_inserter(out));
  return MultiIndex(std::move(out));
}

}  // namespace condsym
