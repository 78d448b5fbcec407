#include "unitfrac/fourier.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"
#include "wide.hpp"

namespace unitfrac {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

struct Cx {
  long double re = 0;
  long double im = 0;
};

inline Cx mul(Cx a, Cx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

// e(r / n) with the argument taken from the centered residue, so it stays in [-1/2, 1/2].
Cx unit_root(std::uint64_t r, std::uint64_t n) {
  const std::int64_t centered = centered_residue(static_cast<std::int64_t>(r), n);
  const long double angle = kTwoPi * static_cast<long double>(centered) / static_cast<long double>(n);
  return {std::cos(angle), std::sin(angle)};
}

std::uint64_t floor_mod(std::int64_t h, std::uint64_t n) {
  const auto m = static_cast<std::int64_t>(n);
  std::int64_t r = h % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

constexpr std::uint64_t kTableLimit = 1 << 16;
constexpr std::uint64_t kAnchorEvery = 1024;

// The factor 1 - p + p e(h/n) as h walks upward, by table lookup for small n.
struct Factor {
  std::uint64_t n;
  long double p;
  std::uint64_t r;
  std::vector<Cx> table;

  Cx value() const {
    if (!table.empty()) return table[r];
    const Cx e = unit_root(r, n);
    return {1.0L - p + p * e.re, p * e.im};
  }
  void advance() {
    if (++r == n) r = 0;
  }
};

struct Prepared {
  std::uint64_t Q = 0;
  std::uint64_t x = 0;
  std::vector<Factor> factors;
};

Prepared prepare(const SamplingPlan& plan, const FourierLimits& limits) {
  validate(plan);
  if (plan.support.size() > limits.support_cap) {
    throw CapacityError("support of " + std::to_string(plan.support.size()) +
                        " elements exceeds the cap of " + std::to_string(limits.support_cap));
  }
  if (!fits_u64(plan.modulus_Q) || to_u64(plan.modulus_Q) > limits.modulus_cap) {
    throw CapacityError("Q = " + to_string(plan.modulus_Q) + " exceeds the cap of " +
                        std::to_string(limits.modulus_cap));
  }
  Prepared out;
  out.Q = to_u64(plan.modulus_Q);
  out.x = to_u64(BigInt(plan.target_x % plan.modulus_Q));
  for (std::size_t i = 0; i < plan.support.size(); ++i) {
    Factor f{plan.support.vector()[i], plan.probabilities[i], 0, {}};
    if (f.n <= kTableLimit) {
      f.table.resize(f.n);
      for (std::uint64_t r = 0; r < f.n; ++r) {
        const Cx e = unit_root(r, f.n);
        f.table[r] = {1.0L - f.p + f.p * e.re, f.p * e.im};
      }
    }
    out.factors.push_back(std::move(f));
  }
  return out;
}

Cx pairwise_sum(std::vector<Cx>& parts) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::size_t k = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      parts[k++] = {parts[i].re + parts[i + 1].re, parts[i].im + parts[i + 1].im};
    }
    if (parts.size() % 2 == 1) parts[k++] = parts.back();
    parts.resize(k);
  }
  return parts.front();
}

// (1/Q) sum_{h = lo}^{hi} e(-hx/Q) prod_n (1 - p_n + p_n e(h/n)).
Cx h_sum(Prepared& prep, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t Q = prep.Q;
  for (auto& f : prep.factors) f.r = floor_mod(lo, f.n);
  // s tracks h x mod Q exactly; the phase is re-anchored from it every kAnchorEvery steps.
  std::uint64_t s = static_cast<std::uint64_t>(
      (static_cast<detail::u128>(floor_mod(lo, Q)) * prep.x) % Q);
  const Cx step = unit_root((Q - prep.x) % Q, Q);
  std::vector<Cx> blocks;
  Cx block;
  Cx phase;
  std::uint64_t in_block = 0;
  for (std::int64_t h = lo; h <= hi; ++h) {
    if (in_block == 0) phase = unit_root((Q - s) % Q, Q);
    Cx term = phase;
    for (const auto& f : prep.factors) term = mul(term, f.value());
    block.re += term.re;
    block.im += term.im;
    for (auto& f : prep.factors) f.advance();
    s += prep.x;
    if (s >= Q) s -= Q;
    phase = mul(phase, step);
    if (++in_block == kAnchorEvery) {
      blocks.push_back(block);
      block = {};
      in_block = 0;
    }
  }
  if (in_block != 0) blocks.push_back(block);
  Cx total = pairwise_sum(blocks);
  const long double q = static_cast<long double>(Q);
  return {total.re / q, total.im / q};
}

}  // namespace

std::int64_t centered_residue(std::int64_t h, std::uint64_t n) {
  if (n == 0) throw ValidationError("modulus must be >= 1");
  auto r = static_cast<std::int64_t>(floor_mod(h, n));
  if (2 * static_cast<std::uint64_t>(r) > n) r -= static_cast<std::int64_t>(n);
  return r;
}

IdentityEvaluation exact_integrality_probability(const SamplingPlan& plan,
                                                 const FourierLimits& limits) {
  Prepared prep = prepare(plan, limits);
  const std::uint64_t Q = prep.Q;
  const auto lo = -static_cast<std::int64_t>((Q - 1) / 2);
  const auto hi = static_cast<std::int64_t>(Q / 2);
  const Cx total = h_sum(prep, lo, hi);
  IdentityEvaluation out;
  out.Q = Q;
  out.probability = total.re;
  out.imaginary_residue = total.im;
  out.h0_term = 1.0L / static_cast<long double>(Q);
  out.terms = Q;
  return out;
}

long double brute_force_integrality_probability(const SamplingPlan& plan,
                                                const FourierLimits& limits) {
  const Prepared prep = prepare(plan, limits);
  const std::uint64_t Q = prep.Q;
  const std::size_t k = prep.factors.size();
  std::vector<std::uint64_t> weight(k);
  for (std::size_t i = 0; i < k; ++i) weight[i] = (Q / prep.factors[i].n) % Q;
  long double total = 0;
  // Depth-first over include/exclude decisions, carrying the residue and the probability.
  struct Frame {
    std::size_t depth;
    std::uint64_t residue;
    long double mass;
  };
  std::vector<Frame> stack{{0, 0, 1.0L}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.depth == k) {
      if (f.residue == prep.x) total += f.mass;
      continue;
    }
    const long double p = prep.factors[f.depth].p;
    std::uint64_t with = f.residue + weight[f.depth];
    if (with >= Q) with -= Q;
    stack.push_back({f.depth + 1, f.residue, f.mass * (1.0L - p)});
    stack.push_back({f.depth + 1, with, f.mass * p});
  }
  return total;
}

MajorArcSum major_arc_partial_sum(const SamplingPlan& plan, std::uint64_t M,
                                  const FourierLimits& limits) {
  Prepared prep = prepare(plan, limits);
  if (M < 1 || M > prep.Q) throw ValidationError("M must lie in [1, Q]");
  const auto lo = -static_cast<std::int64_t>((M - 1) / 2);
  const auto hi = static_cast<std::int64_t>(M / 2);
  const Cx total = h_sum(prep, lo, hi);
  MajorArcSum out;
  out.M = M;
  out.value = total.re;
  out.imaginary = total.im;
  out.h0_term = 1.0L / static_cast<long double>(prep.Q);
  out.lemma_lower_bound = 3.0L / (4.0L * static_cast<long double>(prep.Q));
  out.in_lemma_regime = plan.support.empty() || M <= plan.support.min();
  return out;
}

ResidueProfile residue_profile(const UnitSet& set, std::int64_t h, std::uint64_t K,
                               std::uint64_t t) {
  if (K < 1) throw ValidationError("K must be >= 1");
  if (t < 1) throw ValidationError("t must be >= 1");
  ResidueProfile out;
  out.h = h;
  out.K = K;
  out.t = t;
  out.window_lower = static_cast<long double>(h) - static_cast<long double>(K) / 2.0L;
  out.window_upper = static_cast<long double>(h) + static_cast<long double>(K) / 2.0L;
  for (auto n : set) out.residues.emplace_back(n, centered_residue(h, n));
  for (auto q : prime_power_support(set).members) {
    std::uint64_t large = 0;
    for (const auto& [n, r] : out.residues) {
      // |h_n| >= K/2  <=>  2|h_n| >= K.
      if (n % q == 0 && 2 * static_cast<std::uint64_t>(std::llabs(r)) >= K) ++large;
    }
    if (large < t) out.poor_set.push_back(q);
  }
  return out;
}

namespace {

struct SweepPass {
  std::uint64_t violations = 0;
  long double cubic = 0;
  long double linear_pi = 0;
};

SweepPass sweep(std::uint64_t m) {
  SweepPass out;
  const long double span = static_cast<long double>(m - 1);
  const long double slack = 16.0L * LDBL_EPSILON;
  const long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
  for (std::uint64_t i = 0; i < m; ++i) {
    const long double x =
        (2.0L * static_cast<long double>(i) - span) / (2.0L * span);  // [-1/2, 1/2]
    const long double c = std::cos(kTwoPi * x);
    const long double s = std::sin(kTwoPi * x);
    const long double ax3 = std::fabs(x * x * x);
    for (std::uint64_t j = 0; j < m; ++j) {
      const long double q = static_cast<long double>(j) / span;
      const long double re = (1.0L - q) + q * c;
      const long double im = q * s;
      const long double w = q * (1.0L - q) * x * x;
      if (std::hypot(re, im) > 1.0L - 8.0L * w + slack) ++out.violations;
      if (ax3 == 0.0L) continue;
      const long double cq = std::cos(kTwoPi * q * x);
      const long double sq = std::sin(kTwoPi * q * x);
      const long double fix = 1.0L - 2.0L * pi2 * w;
      out.cubic = std::max(out.cubic, std::hypot(re - cq * fix, im - sq * fix) / ax3);
      const long double lin = 1.0L - kTwoPi * w;
      out.linear_pi = std::max(out.linear_pi, std::hypot(re - cq * lin, im - sq * lin) / ax3);
    }
  }
  return out;
}

}  // namespace

TaylorSweep taylor_fact_sweep(std::uint64_t grid_size) {
  if (grid_size < 1000) throw ValidationError("grid_size must be >= 1000");
  if (grid_size > 100'000'000) throw CapacityError("grid_size is capped at 10^8");
  TaylorSweep out;
  out.grid_size = grid_size;
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<long double>(grid_size))));
  out.points_per_axis = m;
  out.points = m * m;
  const SweepPass base = sweep(m);
  const SweepPass fine = sweep(2 * m);
  out.violations = base.violations + fine.violations;
  out.cubic_ratio = base.cubic;
  out.cubic_ratio_refined = fine.cubic;
  out.cubic_ratio_stable = std::isfinite(fine.cubic) &&
                           std::fabs(fine.cubic - base.cubic) <= 0.05L * std::max(base.cubic, fine.cubic);
  out.linear_pi_ratio = base.linear_pi;
  out.linear_pi_ratio_refined = fine.linear_pi;
  return out;
}

AzumaReport azuma_bound_check(std::span<const double> c, double t, std::uint64_t trials,
                              std::uint64_t seed) {
  if (trials < 10'000) throw ValidationError("trials must be >= 10^4");
  if (!(t >= 0.0)) throw ValidationError("t must be >= 0");
  AzumaReport out;
  out.trials = trials;
  for (double ck : c) {
    if (!std::isfinite(ck)) throw ValidationError("increments must be finite");
    out.sum_c_squared += ck * ck;
  }
  if (out.sum_c_squared == 0.0) {
    out.bound = t > 0.0 ? 0.0 : 2.0;
  } else {
    out.bound = 2.0 * std::exp(-t * t / (2.0 * out.sum_c_squared));
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t k = 0; k < trials; ++k) {
    double sum = 0;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i % 64 == 0) bits = rng();
      sum += (bits & 1U) ? c[i] : -c[i];
      bits >>= 1;
    }
    if (std::fabs(sum) >= t) ++out.exceedances;
  }
  out.empirical = static_cast<double>(out.exceedances) / static_cast<double>(trials);
  const double b = std::clamp(out.bound, 0.0, 1.0);
  out.sigma = std::sqrt(b * (1.0 - b) / static_cast<double>(trials));
  out.passes = out.empirical <= out.bound + 3.0 * out.sigma;
  return out;
}

}  // namespace unitfrac
