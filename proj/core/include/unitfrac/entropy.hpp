#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "unitfrac/rational.hpp"
#include "unitfrac/sampling_plan.hpp"

namespace unitfrac {

struct QuadratureResult {
  long double value = 0;
  /// Sum of the per-interval Kronrod-Gauss differences plus the truncated tail bound.
  long double error_estimate = 0;
  std::size_t intervals = 0;
};

inline constexpr long double kDefaultQuadratureTol = 1e-13L;

/// int_0^1 e^{-lambda/x} / ((1 + e^{-lambda/x}) x) dx. Throws ValidationError for lambda <= 0.
QuadratureResult defining_integral(long double lambda, long double abs_tol = kDefaultQuadratureTol);

/// int_0^1 log(1 + e^{-lambda/x}) dx. Throws ValidationError for lambda <= 0.
QuadratureResult entropy_integral(long double lambda, long double abs_tol = kDefaultQuadratureTol);

struct EntropyConstants {
  long double lambda_star = 0;
  long double gamma_star = 0;
  long double exp_gamma_star = 0;
  /// defining_integral(lambda_star) - 1.
  long double residual = 0;
  long double quadrature_error_estimate = 0;
  long double tolerance = 0;
  unsigned iterations = 0;
};

/// Root of defining_integral(lambda) = 1 on [1e-3, 10] to within tol, and
/// gamma_star = lambda_star + entropy_integral(lambda_star). Requires 0 < tol <= 1e-4.
EntropyConstants solve_lambda_star(long double tol);

/// lambda N + sum_{i <= N} log(1 + e^{-lambda N / i}), an upper bound on
/// log #{S in [1, N] : R(S) <= 1}.
long double finite_upper_bound(std::uint64_t N, long double lambda);

struct GrowthRow {
  std::uint64_t N = 0;
  /// Number of subsets of [1, N] with reciprocal sum 1.
  BigInt count{0};
  long double log_count_over_N = 0;
  long double upper_bound_log_over_N = 0;
};

inline constexpr std::uint64_t kGrowthCap = 44;

/// One row per N in [1, N_max], with the bound evaluated at lambda_star.
std::vector<GrowthRow> growth_table(std::uint64_t N_max, std::uint64_t cap = kGrowthCap);

struct EntropySamplingPlan {
  SamplingPlan plan;
  std::uint64_t N = 0;
  std::uint64_t S = 0;
  /// Lower end of the support window [M, N].
  std::uint64_t M = 0;
  long double lambda = 0;
  /// Probabilities before the uniform rescale, aligned with plan.support.
  std::vector<long double> raw_probabilities;
  long double raw_sum = 0;
  long double scale = 0;
  /// sum p_n / n after the rescale.
  long double rescaled_sum = 0;
  /// Every p_n lies in [1 / log log N, 1/2].
  bool within_proof_bounds = false;
};

/// p_n = e^{-lambda* N/n} / (1 + e^{-lambda* N/n}) on the S-smooth n in [M, N] with
/// max exponent <= 5 log log N and Omega(n) <= 10 log log N, where
/// M = ceil(N min((log log log N)^{-1/2}, 1/16)), uniformly rescaled so sum p_n / n = 1.
/// The target is x = Q, i.e. R(B) = 1. Throws ValidationError for N < 16, an empty support,
/// or a rescale pushing some p_n above 1/2.
EntropySamplingPlan entropy_sampling_plan(std::uint64_t N, std::uint64_t S);

}  // namespace unitfrac
