#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/fourier.hpp"
#include "unitfrac/sampling_plan.hpp"

using namespace unitfrac;

namespace {

SamplingPlan uniform_plan(const UnitSet& support, long double p, long x) {
  return make_plan(support, std::vector<long double>(support.size(), p), BigInt(x));
}

// (1/Q) sum_{h in H} e(-hx/Q) prod (1 - p + p e(h/n)) in plain complex<long double>.
std::complex<long double> direct_terms(const SamplingPlan& plan, long lo, long hi) {
  const long double Q = plan.modulus_Q.get_d();
  const long double x = plan.target_x.get_d();
  const long double tau = 2 * std::numbers::pi_v<long double>;
  std::complex<long double> total = 0;
  for (long h = lo; h <= hi; ++h) {
    std::complex<long double> term = std::polar<long double>(1, -tau * std::fmod(h * x, Q) / Q);
    for (std::size_t i = 0; i < plan.support.size(); ++i) {
      const auto n = static_cast<long>(plan.support.vector()[i]);
      const long double p = plan.probabilities[i];
      term *= (1 - p) + p * std::polar<long double>(1, tau * static_cast<long double>(((h % n) + n) % n) / n);
    }
    total += term;
  }
  return total / Q;
}

}  // namespace

TEST(Identity, ToyPlans) {
  const auto plan = uniform_plan(UnitSet{3, 4, 5, 6}, 0.5L, 57);
  EXPECT_EQ(plan.modulus_Q, 60);
  const auto e = exact_integrality_probability(plan);
  EXPECT_NEAR(static_cast<double>(e.probability), 0.0625, 1e-12);
  EXPECT_NEAR(static_cast<double>(e.probability),
              static_cast<double>(oracle::integrality_probability(plan.support, plan.probabilities, 57, 60)), 1e-10);
  EXPECT_LT(std::fabs(static_cast<double>(e.imaginary_residue)), 1e-12);
  EXPECT_NEAR(static_cast<double>(e.h0_term), 1.0 / 60, 1e-15);

  const auto two = uniform_plan(UnitSet{2}, 0.5L, 1);
  EXPECT_NEAR(static_cast<double>(exact_integrality_probability(two).probability), 0.5, 1e-15);
}

TEST(Identity, ZeroTargetContainsEmptyEvent) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pd(0.05, 0.95);
  for (const auto& support : {UnitSet{2, 3, 6}, UnitSet{4, 5, 6, 10, 12}, UnitSet::range(7, 16)}) {
    std::vector<long double> p;
    long double empty = 1;
    for (std::size_t i = 0; i < support.size(); ++i) {
      p.push_back(pd(rng));
      empty *= 1 - p.back();
    }
    const auto plan = make_plan(support, p, BigInt(0));
    EXPECT_GE(exact_integrality_probability(plan).probability, empty - 1e-15L);
  }
}

TEST(Identity, RandomPlansMatchRationalOracle) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> elem(2, 40);
  std::uniform_real_distribution<double> pd(0.05, 0.95);
  int checked = 0;
  while (checked < 40) {
    std::vector<std::uint64_t> v;
    while (v.size() < 9) {
      const auto n = elem(rng);
      if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
    }
    const UnitSet support(v);
    const BigInt Q = prime_power_support(support).lcm;
    if (Q > 2'000'000) continue;
    std::vector<long double> p;
    for (std::size_t i = 0; i < support.size(); ++i) p.push_back(pd(rng));
    const BigInt x = BigInt(static_cast<unsigned long>(rng() % Q.get_ui()));
    const auto plan = make_plan(support, p, x);
    const auto e = exact_integrality_probability(plan);
    const long double truth = oracle::integrality_probability(support, p, x, Q);
    EXPECT_NEAR(static_cast<double>(e.probability), static_cast<double>(truth), 1e-10) << support.str();
    EXPECT_NEAR(static_cast<double>(brute_force_integrality_probability(plan)), static_cast<double>(truth), 1e-14);
    EXPECT_LT(std::fabs(static_cast<double>(e.imaginary_residue)), 1e-12);
    ++checked;
  }
}

TEST(Identity, ValidationAndCaps) {
  EXPECT_THROW(make_plan(UnitSet{2, 3}, {0.5L}, BigInt(0)), ValidationError);
  EXPECT_THROW(make_plan(UnitSet{2, 3}, {0.5L, 1.0L}, BigInt(0)), ValidationError);
  EXPECT_THROW(make_plan(UnitSet{2, 3}, {0.5L, 0.5L}, BigInt(7)), ValidationError);
  const auto big = uniform_plan(UnitSet::parse("997,991,983,977"), 0.5L, 0);
  FourierLimits tight;
  tight.modulus_cap = 1000;
  EXPECT_THROW(exact_integrality_probability(big, tight), CapacityError);
}

TEST(MajorArc, Examples) {
  const auto plan = uniform_plan(UnitSet{3, 4, 5, 6}, 0.5L, 57);
  const auto one = major_arc_partial_sum(plan, 1);
  EXPECT_NEAR(static_cast<double>(one.value), 1.0 / 60, 1e-15);
  const auto three = major_arc_partial_sum(plan, 3);
  const auto direct = direct_terms(plan, -1, 1);
  EXPECT_NEAR(static_cast<double>(three.value), static_cast<double>(direct.real()), 1e-15);
  EXPECT_NEAR(static_cast<double>(three.lemma_lower_bound), 3.0 / (4 * 60), 1e-15);
  const auto full = major_arc_partial_sum(plan, 60);
  EXPECT_NEAR(static_cast<double>(full.value), 0.0625, 1e-12);
  EXPECT_THROW(major_arc_partial_sum(plan, 0), ValidationError);
  EXPECT_THROW(major_arc_partial_sum(plan, 61), ValidationError);
}

TEST(MajorArc, EvenWidthWindow) {
  const auto plan = uniform_plan(UnitSet{5, 7, 8, 9}, 0.3L, 100);
  for (std::uint64_t M : {2ULL, 4ULL, 10ULL}) {
    const long half = static_cast<long>(M / 2);
    const auto direct = direct_terms(plan, -half + 1, half);
    EXPECT_NEAR(static_cast<double>(major_arc_partial_sum(plan, M).value), static_cast<double>(direct.real()), 1e-14)
        << M;
  }
}

TEST(Residues, Examples) {
  const auto a = residue_profile(UnitSet{2, 3, 6}, 6, 2, 1);
  for (const auto& [n, hn] : a.residues) EXPECT_EQ(hn, 0) << n;
  const auto b = residue_profile(UnitSet{4, 6}, 5, 2, 1);
  ASSERT_EQ(b.residues.size(), 2u);
  EXPECT_EQ(b.residues[0], std::make_pair(std::uint64_t{4}, std::int64_t{1}));
  EXPECT_EQ(b.residues[1], std::make_pair(std::uint64_t{6}, std::int64_t{-1}));
  EXPECT_EQ(centered_residue(-7, 4), 1);
  EXPECT_EQ(centered_residue(2, 4), 2);
  EXPECT_EQ(centered_residue(-2, 4), 2);
  EXPECT_THROW(residue_profile(UnitSet{4}, 1, 0, 1), ValidationError);
}

TEST(Residues, PoorSetRecount) {
  const UnitSet a = UnitSet::range(10, 30);
  const auto prof = residue_profile(a, 101, 6, 2);
  EXPECT_NEAR(static_cast<double>(prof.window_lower), 98, 1e-12);
  EXPECT_NEAR(static_cast<double>(prof.window_upper), 104, 1e-12);
  std::vector<std::uint64_t> expected;
  for (auto q : prime_power_support(a).members) {
    std::uint64_t far = 0;
    for (auto n : a) {
      if (n % q) continue;
      long r = 101 % static_cast<long>(n);
      if (2 * r > static_cast<long>(n)) r -= static_cast<long>(n);
      far += 2 * std::labs(r) >= 6;
    }
    if (far < 2) expected.push_back(q);
  }
  EXPECT_EQ(prof.poor_set, expected);
}

TEST(Taylor, DegenerateCases) {
  // Direct evaluation of both sides at edge points.
  const double tau = 2 * std::numbers::pi;
  for (double q : {0.0, 1.0})
    for (double x : {0.1, 0.4}) {
      const double lhs = std::abs(std::complex<double>(1 - q) + q * std::polar(1.0, tau * x));
      EXPECT_NEAR(lhs, 1.0, 1e-15);
    }
  for (double q : {0.2, 0.5}) {
    const double lhs = std::abs(std::complex<double>(1 - q) + q * std::polar(1.0, 0.0));
    EXPECT_NEAR(lhs, 1.0, 1e-15);
  }
}

TEST(Taylor, SweepHasNoViolations) {
  const auto s = taylor_fact_sweep(40000);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_EQ(s.points, 40000u);
  EXPECT_GT(s.cubic_ratio, 0);
  EXPECT_TRUE(s.cubic_ratio_stable);
  EXPECT_LT(s.cubic_ratio, 10);
  EXPECT_THROW(taylor_fact_sweep(10), ValidationError);
}

TEST(Azuma, Examples) {
  const std::vector<double> zeros(10, 0.0);
  const auto z = azuma_bound_check(zeros, 1, 10000, 1);
  EXPECT_EQ(z.exceedances, 0u);
  EXPECT_TRUE(z.passes);
  const std::vector<double> single{1.0};
  const auto s = azuma_bound_check(single, 2, 10000, 1);
  EXPECT_EQ(s.exceedances, 0u);
  EXPECT_TRUE(s.passes);
  const std::vector<double> ones(100, 1.0);
  const auto o = azuma_bound_check(ones, 25, 20000, 3);
  EXPECT_NEAR(o.bound, 2 * std::exp(-625.0 / 200), 1e-12);
  EXPECT_LE(o.empirical, o.bound);
  EXPECT_TRUE(o.passes);
  EXPECT_THROW(azuma_bound_check(ones, 25, 100, 3), ValidationError);
}

TEST(Azuma, Deterministic) {
  const std::vector<double> c{0.5, 1, 2, 0.25, 3};
  const auto a = azuma_bound_check(c, 3, 10000, 9);
  const auto b = azuma_bound_check(c, 3, 10000, 9);
  EXPECT_EQ(a.exceedances, b.exceedances);
}
