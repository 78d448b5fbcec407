#include "unitfrac/sampling_plan.hpp"

#include <algorithm>
#include <random>

#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"

namespace unitfrac {

long double SamplingPlan::probability(std::uint64_t n) const {
  const auto& elems = support.vector();
  const auto it = std::lower_bound(elems.begin(), elems.end(), n);
  if (it == elems.end() || *it != n) throw ValidationError(std::to_string(n) + " is not in the support");
  return probabilities[static_cast<std::size_t>(it - elems.begin())];
}

SamplingPlan make_plan(UnitSet support, std::vector<long double> probabilities,
                       const BigInt& target_x) {
  SamplingPlan plan;
  plan.modulus_Q = prime_power_support(support).lcm;
  plan.support = std::move(support);
  plan.probabilities = std::move(probabilities);
  plan.target_x = target_x;
  validate(plan);
  return plan;
}

void validate(const SamplingPlan& plan) {
  if (plan.probabilities.size() != plan.support.size()) {
    throw ValidationError("plan has " + std::to_string(plan.probabilities.size()) +
                          " probabilities for " + std::to_string(plan.support.size()) +
                          " support elements");
  }
  for (auto p : plan.probabilities) {
    if (!(p > 0.0L && p < 1.0L)) throw ValidationError("probabilities must lie in (0, 1)");
  }
  if (plan.modulus_Q != prime_power_support(plan.support).lcm) {
    throw ValidationError("modulus_Q must be the lcm of the prime-power support");
  }
  if (plan.target_x < 0 || plan.target_x > plan.modulus_Q) {
    throw ValidationError("target_x must lie in [0, modulus_Q]");
  }
}

SamplingSummary simulate_plan(const SamplingPlan& plan, std::uint64_t trials, std::uint64_t seed) {
  validate(plan);
  if (trials == 0) throw ValidationError("trials must be >= 1");
  const auto& elems = plan.support.vector();
  std::vector<BigInt> weight;
  weight.reserve(elems.size());
  for (auto n : elems) weight.push_back(plan.modulus_Q / from_u64(n));

  SamplingSummary out;
  out.trials = trials;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out.expected_sum += plan.probabilities[i] / static_cast<long double>(elems[i]);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  long double total = 0;
  BigInt sum;
  for (std::uint64_t k = 0; k < trials; ++k) {
    sum = 0;
    long double real_sum = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (coin(rng) < static_cast<double>(plan.probabilities[i])) {
        sum += weight[i];
        real_sum += 1.0L / static_cast<long double>(elems[i]);
      }
    }
    if (sum == plan.target_x) ++out.hits;
    total += real_sum;
  }
  out.hit_rate = static_cast<long double>(out.hits) / static_cast<long double>(trials);
  out.mean_sum = total / static_cast<long double>(trials);
  return out;
}

}  // namespace unitfrac
