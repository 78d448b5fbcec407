#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitfrac/rational.hpp"
#include "unitfrac/unit_set.hpp"

namespace unitfrac {

/// a/b (in lowest terms) written as the sum of 1/n over strictly increasing denominators.
struct Expansion {
  BigInt a{0};
  BigInt b{1};
  std::vector<BigInt> denominators;
  BigInt max_denominator{0};
  std::string strategy;
};

/// True iff the denominators are positive, strictly increasing, end at max_denominator and
/// sum exactly to a/b.
bool is_valid(const Expansion& expansion);

/// Fibonacci-Sylvester greedy expansion of a/b with 0 < a/b <= 1: repeatedly subtract
/// 1/ceil(b/a). Throws CapacityError if a denominator exceeds cap, ValidationError on bad input.
Expansion greedy_expand(const BigInt& a, const BigInt& b,
                        const std::optional<BigInt>& cap = std::nullopt);

struct SmoothOptions {
  /// Smoothness bound; by default the least S with lcm(1..S) > 10 b.
  std::optional<std::uint64_t> S;
  /// Top of the solver window [window_top / 16, window_top].
  std::uint64_t window_top = 64;
  /// Admissible x values tried, in increasing order.
  std::size_t max_x_attempts = 12;
  /// Multipliers y tried per x before moving on.
  std::size_t max_y_attempts = 16;
};

struct SmoothTrace {
  std::uint64_t S = 0;
  BigInt Q{0};
  BigInt x{0};
  BigInt y{0};
  std::uint64_t window_lower = 0;
  std::uint64_t window_upper = 0;
  /// S-smooth integers in the window, the ground set of both exact solves.
  UnitSet ground;
  /// R(A) = (aQ - xb)/Q; the expansion uses b * A.
  UnitSet first_part;
  /// R(B) = yx/Q; the expansion uses y * B.
  UnitSet second_part;
  /// "separated" (max y*B < min b*A), "prime_multiplier" (prime y not dividing b, no
  /// collisions) or "checked" (some other y whose sets happen to be disjoint).
  std::string disjointness_case;
  std::size_t x_attempts = 0;
  std::size_t y_attempts = 0;
  /// b * window_top.
  BigInt budget{0};
  bool fell_back_to_greedy = false;
  std::string fallback_reason;
};

struct SmoothExpansion {
  Expansion expansion;
  SmoothTrace trace;
};

/// Clears the denominator of a/b against Q = lcm(1..S), solves the two resulting smooth
/// reciprocal-sum targets exactly on the window, and scales them by b and by y. Falls back to
/// greedy_expand (and records why) when no exact disjoint solution is found. Requires
/// 1 <= a < b after reduction.
SmoothExpansion smooth_expand(const BigInt& a, const BigInt& b, const SmoothOptions& options = {});

struct ExpansionSearch {
  std::optional<Expansion> expansion;
  /// True when absence is proven: the search covered every subset of (t, N].
  bool certified = false;
  bool heuristic = false;
};

/// An expansion 1 = 1/t + sum 1/n_j with t < n_j <= N. Complete for N <= cap; beyond that a
/// CapacityError is raised unless heuristic is set, in which case the search runs on the
/// reachable elements. When more than 40 remain, only the 40 smallest are searched and
/// absence is no longer certified.
ExpansionSearch expansion_from(std::uint64_t t, std::uint64_t N, std::uint64_t cap = 48,
                               bool heuristic = false);

struct ObstructionCertificate {
  std::uint64_t t = 0;
  std::uint64_t N = 0;
  /// floor(N / t).
  std::uint64_t multiples_bound = 0;
  /// lcm(1, ..., multiples_bound).
  BigInt lcm_bound{1};
  /// Every nonempty D in {2..m_max} was enumerated (m_max <= 24).
  bool enumerated = false;
  /// Largest a + b over the reduced a/b = sum_{m in D} 1/m (or the size bound when not
  /// enumerated).
  BigInt max_a_plus_b{0};
  /// a + b < t for every D, so 1 + a/b is never 0 mod t.
  bool conclusion = false;
  /// t never divides a + b: the exact modular condition, implied by conclusion.
  bool modular_conclusion = false;
};

/// Requires t prime and t <= N.
ObstructionCertificate obstruction_certificate(std::uint64_t t, std::uint64_t N);

struct BudgetRow {
  BigInt a{0};
  BigInt b{0};
  std::string strategy;
  BigInt max_denominator{0};
  std::size_t terms = 0;
  /// max_denominator / b and max_denominator / (b log b); infinite when out of range.
  long double ratio_b = 0;
  long double ratio_b_log_b = 0;
  long double log10_ratio_b = 0;
  bool valid = false;
  bool fell_back = false;
};

/// For `samples` random reduced a/b (b uniform in [2, b_max], a uniform among the residues
/// coprime to b), runs each strategy ("greedy", "smooth") and tabulates the budget ratios.
/// Rows are sorted by (b, a, strategy). Requires 2 <= b_max <= 10^5.
std::vector<BudgetRow> budget_benchmark(std::uint64_t b_max, std::uint64_t samples,
                                        const std::vector<std::string>& strategies,
                                        std::uint64_t seed);

}  // namespace unitfrac
