#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "unitfrac/rational.hpp"
#include "unitfrac/unit_set.hpp"

namespace unitfrac {

struct ExtremalResult {
  std::uint64_t N = 0;
  /// Reciprocal sum for lambda_N, cardinality for largest_avoiding_set.
  BigRational value;
  /// Lexicographically smallest optimal set.
  UnitSet witness;
  bool certified = false;
  std::uint64_t nodes_explored = 0;
  /// Number of subsets of [1, N] with reciprocal sum 1, each of which the witness must break.
  std::size_t constraint_count = 0;
};

inline constexpr std::uint64_t kExtremalCap = 28;
inline constexpr std::uint64_t kTOfNCap = 48;

/// All subsets of [1, N] with reciprocal sum exactly 1, in lexicographic order.
std::vector<UnitSet> unit_representations(std::uint64_t N);

/// Largest R(A) over A in [1, N] with no subset summing to 1.
ExtremalResult lambda_N(std::uint64_t N, std::uint64_t cap = kExtremalCap);

/// Largest |A| over A in [1, N] with no subset summing to 1.
ExtremalResult largest_avoiding_set(std::uint64_t N, std::uint64_t cap = kExtremalCap);

struct TOfNResult {
  std::uint64_t N = 0;
  /// Least t with no expansion 1 = 1/t + sum 1/n_j, t < n_j <= N.
  std::uint64_t t = 0;
  /// expansions[i] is an expansion of 1 starting at i + 1, for every start below t.
  std::vector<UnitSet> expansions;
  bool certified = false;
  std::uint64_t nodes_explored = 0;
};

/// t = 1 is served by the singleton {1}, so t_of_N(N) >= 2 for every N >= 1.
TOfNResult t_of_N(std::uint64_t N, std::uint64_t cap = kTOfNCap);

struct FiberPruning {
  UnitSet kept;
  /// Prime powers whose multiples were removed, in removal order.
  std::vector<std::uint64_t> removed;
  /// sum over prime powers q <= max(A) of threshold / q.
  BigRational loss_bound;
};

/// Repeatedly removes every multiple of the smallest prime power q in the support with
/// q * R(multiples of q) < threshold, until no such q remains.
FiberPruning prune_small_fibers(const UnitSet& set, const BigRational& threshold);

struct DenseWindow {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  UnitSet restricted;
  BigRational sum;
  std::size_t window_count = 0;
};

/// Splits [1, max A] at N_1 = max A, log N_{i+1} = log N_i - (log N_i)^{1-alpha} (until the log
/// reaches 1) into windows (N_{i+1}, N_i] plus [1, N_last], and returns the window with the
/// largest restricted reciprocal sum (the topmost on ties). Requires 0 < alpha < 3/4 and A
/// nonempty.
DenseWindow dense_window(const UnitSet& set, double alpha);

}  // namespace unitfrac
