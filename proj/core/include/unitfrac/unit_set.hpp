#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace unitfrac {

/// A finite set of distinct positive integers, stored strictly increasing.
class UnitSet {
 public:
  using value_type = std::uint64_t;
  using const_iterator = std::vector<value_type>::const_iterator;

  UnitSet() = default;
  /// Sorts the input; throws ValidationError on zero or duplicate elements.
  explicit UnitSet(std::vector<value_type> elements);
  UnitSet(std::initializer_list<value_type> elements)
      : UnitSet(std::vector<value_type>(elements)) {}

  /// [lo, hi] inclusive; empty when lo > hi. lo must be >= 1.
  static UnitSet range(value_type lo, value_type hi);

  /// Parses comma-separated integers and inclusive ranges, e.g. "1..6,8,10..12".
  /// Overlapping pieces are an error; whitespace is ignored; "" is the empty set.
  static UnitSet parse(std::string_view text);

  std::span<const value_type> elements() const { return elements_; }
  const std::vector<value_type>& vector() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  value_type min() const { return elements_.front(); }
  value_type max() const { return elements_.back(); }
  bool contains(value_type n) const;

  const_iterator begin() const { return elements_.begin(); }
  const_iterator end() const { return elements_.end(); }

  /// Sorted comma-separated list, e.g. "2,3,6"; the empty set is "".
  std::string str() const;

  friend bool operator==(const UnitSet&, const UnitSet&) = default;
  /// Lexicographic on the sorted element lists.
  friend auto operator<=>(const UnitSet& a, const UnitSet& b) { return a.elements_ <=> b.elements_; }

 private:
  std::vector<value_type> elements_;
};

}  // namespace unitfrac
