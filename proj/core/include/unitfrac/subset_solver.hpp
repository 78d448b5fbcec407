#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "unitfrac/rational.hpp"
#include "unitfrac/unit_set.hpp"

namespace unitfrac {

struct SolverLimits {
  /// Largest accepted ground set.
  std::size_t element_cap = 64;
  /// Largest meet-in-the-middle half, in elements (2^bits enumerated states). 2^25 states
  /// per half is roughly 1.6 GB of working memory for the two halves.
  unsigned half_bits_cap = 25;
};

struct SubsetSearch {
  std::optional<UnitSet> witness;
  std::uint64_t nodes_explored = 0;
  /// Elements dropped before the search because no solution can use them.
  std::size_t pruned_elements = 0;
};

struct SubsetCount {
  BigInt count{0};
  std::uint64_t nodes_explored = 0;
  std::size_t pruned_elements = 0;
};

struct SubsetEnumeration {
  /// Sorted lexicographically by element list.
  std::vector<UnitSet> subsets;
  std::uint64_t nodes_explored = 0;
  std::size_t pruned_elements = 0;
};

/// Some B subset of ground with reciprocal_sum(B) == target, or none. The search is
/// complete; among all solutions the lexicographically smallest sorted element list wins.
/// Throws CapacityError when the ground set exceeds the cap, ValidationError for target < 0.
SubsetSearch find_subset(const UnitSet& ground, const BigRational& target,
                         const SolverLimits& limits = {});

/// Exact number of subsets of ground with reciprocal sum == target.
SubsetCount count_subsets(const UnitSet& ground, const BigRational& target,
                          const SolverLimits& limits = {});

/// Exact number of subsets of ground with reciprocal sum <= target.
SubsetCount count_subsets_at_most(const UnitSet& ground, const BigRational& target,
                                  const SolverLimits& limits = {});

/// Every subset of ground with reciprocal sum == target.
SubsetEnumeration enumerate_subsets(const UnitSet& ground, const BigRational& target,
                                    const SolverLimits& limits = {});

/// Drops elements that cannot occur in any subset summing to target.
///
/// For a prime p that does not divide the target's denominator and divides every one of its
/// multiples in the set exactly once, the multiples p*m used by a solution must satisfy
/// sum 1/m == 0 (mod p). Multiples that belong to no such nonempty combination are removed,
/// and the filter is repeated until nothing changes.
UnitSet prune_unreachable(const UnitSet& ground, const BigRational& target);

enum class QueryMode { decide, find_one, count, count_at_most, enumerate };

std::optional<QueryMode> parse_query_mode(std::string_view name);
std::string_view to_string(QueryMode mode);

struct SubsetQuery {
  UnitSet ground_set;
  BigRational target;
  QueryMode mode = QueryMode::find_one;
  std::optional<std::size_t> element_cap;
};

struct SubsetAnswer {
  QueryMode mode = QueryMode::find_one;
  bool found = false;
  std::optional<UnitSet> witness;
  BigInt count{0};
  std::vector<UnitSet> subsets;
  std::uint64_t nodes_explored = 0;
  std::size_t pruned_elements = 0;
};

/// Runs a query; decide and find_one reject an empty ground set unless the target is zero.
SubsetAnswer run_query(const SubsetQuery& query);

}  // namespace unitfrac
