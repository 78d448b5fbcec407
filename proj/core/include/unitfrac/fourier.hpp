#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "unitfrac/sampling_plan.hpp"
#include "unitfrac/unit_set.hpp"

namespace unitfrac {

struct FourierLimits {
  std::uint64_t modulus_cap = 1'000'000'000;
  std::size_t support_cap = 24;
};

struct IdentityEvaluation {
  std::uint64_t Q = 0;
  /// (1/Q) sum over h in (-Q/2, Q/2] of e(-hx/Q) prod_n (1 - p_n + p_n e(h/n)), real part.
  long double probability = 0;
  /// Imaginary part of the same sum; zero up to rounding because the h and -h terms conjugate.
  long double imaginary_residue = 0;
  /// The h = 0 term, exactly 1/Q.
  long double h0_term = 0;
  std::uint64_t terms = 0;
};

/// P[Q R(B) == x (mod Q)] for B drawn from the plan, via the full exponential sum.
/// Throws CapacityError when Q or the support exceeds the limits.
IdentityEvaluation exact_integrality_probability(const SamplingPlan& plan,
                                                 const FourierLimits& limits = {});

/// The same probability by summing over all 2^|support| subsets in integer residues mod Q.
long double brute_force_integrality_probability(const SamplingPlan& plan,
                                                const FourierLimits& limits = {});

struct MajorArcSum {
  std::uint64_t M = 0;
  /// Real part of (1/Q) sum over h in (-M/2, M/2].
  long double value = 0;
  long double imaginary = 0;
  long double h0_term = 0;
  /// 3/(4Q), reported next to the value rather than asserted.
  long double lemma_lower_bound = 0;
  /// M <= min(support).
  bool in_lemma_regime = false;
};

/// The h in (-M/2, M/2] part of the exponential sum; M = Q gives the full sum.
/// Requires 1 <= M <= Q.
MajorArcSum major_arc_partial_sum(const SamplingPlan& plan, std::uint64_t M,
                                  const FourierLimits& limits = {});

struct ResidueProfile {
  std::int64_t h = 0;
  std::uint64_t K = 0;
  std::uint64_t t = 0;
  /// (n, h_n) with h_n == h (mod n) and -n/2 < h_n <= n/2, ascending in n.
  std::vector<std::pair<std::uint64_t, std::int64_t>> residues;
  /// Prime powers q in the support with #{n in A : q | n, |h_n| >= K/2} < t.
  std::vector<std::uint64_t> poor_set;
  long double window_lower = 0;
  long double window_upper = 0;
};

/// Requires K >= 1 and t >= 1.
ResidueProfile residue_profile(const UnitSet& set, std::int64_t h, std::uint64_t K,
                               std::uint64_t t);

/// The representative of h modulo n in (-n/2, n/2].
std::int64_t centered_residue(std::int64_t h, std::uint64_t n);

struct TaylorSweep {
  std::uint64_t grid_size = 0;
  /// Points per axis; the refined pass uses 2 * points_per_axis.
  std::uint64_t points_per_axis = 0;
  std::uint64_t points = 0;
  /// Points where |(1-q) + q e(x)| > 1 - 8 q (1-q) x^2 beyond rounding slack, both passes.
  std::uint64_t violations = 0;
  /// max |(1-q) + q e(x) - e(qx)(1 - 2 pi^2 q (1-q) x^2)| / |x|^3 over x != 0.
  long double cubic_ratio = 0;
  long double cubic_ratio_refined = 0;
  bool cubic_ratio_stable = false;
  /// The same maximum with 2 pi in place of 2 pi^2; grows like 1/|x| under refinement.
  long double linear_pi_ratio = 0;
  long double linear_pi_ratio_refined = 0;
};

/// Requires grid_size >= 1000.
TaylorSweep taylor_fact_sweep(std::uint64_t grid_size);

struct AzumaReport {
  std::uint64_t trials = 0;
  std::uint64_t exceedances = 0;
  double empirical = 0;
  double bound = 0;
  double sum_c_squared = 0;
  /// Binomial standard error at the bound (clamped to [0, 1]).
  double sigma = 0;
  bool passes = false;
};

/// Monte Carlo of X_n - X_0 = sum eps_k c_k with independent fair signs eps_k, counting
/// |X_n - X_0| >= t against 2 exp(-t^2 / (2 sum c_k^2)). Passes when the empirical rate is
/// within 3 sigma of the bound. Requires trials >= 10^4 and t >= 0.
AzumaReport azuma_bound_check(std::span<const double> c, double t, std::uint64_t trials,
                              std::uint64_t seed);

}  // namespace unitfrac
