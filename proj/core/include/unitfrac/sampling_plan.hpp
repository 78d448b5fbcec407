#pragma once

#include <cstdint>
#include <vector>

#include "unitfrac/rational.hpp"
#include "unitfrac/unit_set.hpp"

namespace unitfrac {

/// Independent inclusion probabilities over a support, with the target x/Q for R(B).
/// target_x == modulus_Q encodes the target sum 1.
struct SamplingPlan {
  UnitSet support;
  /// probabilities[i] belongs to the i-th smallest support element.
  std::vector<long double> probabilities;
  BigInt target_x{0};
  BigInt modulus_Q{1};

  long double probability(std::uint64_t n) const;
};

/// Builds a plan with modulus_Q = lcm of the prime-power support, then validates it.
SamplingPlan make_plan(UnitSet support, std::vector<long double> probabilities,
                       const BigInt& target_x);

/// Throws ValidationError unless probabilities match the support, lie in (0, 1),
/// modulus_Q is the lcm of the prime-power support and 0 <= target_x <= modulus_Q.
void validate(const SamplingPlan& plan);

struct SamplingSummary {
  std::uint64_t trials = 0;
  /// Trials with R(B) == target_x / modulus_Q exactly.
  std::uint64_t hits = 0;
  long double hit_rate = 0;
  long double mean_sum = 0;
  /// Expected R(B) = sum p_n / n.
  long double expected_sum = 0;
};

/// Draws B by independent coin flips per support element and checks R(B) against the
/// target in exact integer arithmetic. Deterministic for a fixed seed.
SamplingSummary simulate_plan(const SamplingPlan& plan, std::uint64_t trials, std::uint64_t seed);

}  // namespace unitfrac
