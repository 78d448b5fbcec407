#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/extremal.hpp"
#include "unitfrac/subset_solver.hpp"

using namespace unitfrac;

namespace {

bool avoids_one(const UnitSet& s) { return oracle::count_equal(s, 1) == 0; }

}  // namespace

TEST(UnitRepresentations, MatchOracle) {
  for (std::uint64_t N = 1; N <= 18; ++N) EXPECT_EQ(unit_representations(N), oracle::all_equal(UnitSet::range(1, N), 1));
}

TEST(LambdaN, Examples) {
  const auto five = lambda_N(5);
  EXPECT_EQ(five.value.str(), "77/60");
  EXPECT_EQ(five.witness, (UnitSet{2, 3, 4, 5}));
  EXPECT_TRUE(five.certified);
  const auto one = lambda_N(1);
  EXPECT_TRUE(one.value.is_zero());
  EXPECT_TRUE(one.witness.empty());
  // N = 6 must break {2,3,6}; dropping 6 is best.
  const auto six = lambda_N(6);
  EXPECT_EQ(six.value.str(), "77/60");
  EXPECT_FALSE(six.witness.contains(1));
}

TEST(LargestAvoiding, Examples) {
  const auto six = largest_avoiding_set(6);
  EXPECT_EQ(six.value, 4);
  EXPECT_EQ(six.witness, (UnitSet{2, 3, 4, 5}));
  EXPECT_EQ(largest_avoiding_set(1).value, 0);
  EXPECT_EQ(largest_avoiding_set(12).value, 10);
  EXPECT_THROW(largest_avoiding_set(29), CapacityError);
}

TEST(Extremal, MatchesExhaustiveSearch) {
  for (std::uint64_t N = 1; N <= 16; ++N) {
    const auto truth = oracle::exhaustive_avoiding(N);
    const auto lam = lambda_N(N);
    const auto big = largest_avoiding_set(N);
    EXPECT_EQ(lam.value, truth.best_sum) << N;
    EXPECT_EQ(big.value, static_cast<long>(truth.best_size)) << N;
    EXPECT_TRUE(lam.certified);
    EXPECT_TRUE(big.certified);
  }
}

TEST(Extremal, WitnessesAreValid) {
  for (std::uint64_t N = 2; N <= 24; N += 2) {
    const auto lam = lambda_N(N);
    EXPECT_EQ(reciprocal_sum(lam.witness), lam.value);
    EXPECT_TRUE(avoids_one(lam.witness)) << N;
    const auto big = largest_avoiding_set(N);
    EXPECT_EQ(big.value, static_cast<long>(big.witness.size()));
    EXPECT_TRUE(avoids_one(big.witness)) << N;
    EXPECT_EQ(big.constraint_count, unit_representations(N).size());
  }
}

TEST(Extremal, MonotoneInN) {
  BigRational prev_lambda;
  long prev_size = 0;
  for (std::uint64_t N = 1; N <= 24; ++N) {
    const auto lam = lambda_N(N);
    const auto size = largest_avoiding_set(N).value.numerator().get_si();
    EXPECT_GE(lam.value, prev_lambda) << N;
    EXPECT_GE(size, prev_size) << N;
    EXPECT_LE(size, prev_size + 1) << N;
    prev_lambda = lam.value;
    prev_size = size;
  }
}

TEST(TOfN, Examples) {
  EXPECT_EQ(t_of_N(1).t, 2u);
  EXPECT_EQ(t_of_N(6).t, 3u);
  const auto r = t_of_N(24);
  EXPECT_EQ(r.t, 6u);
  ASSERT_EQ(r.expansions.size(), 5u);
  for (std::size_t i = 0; i < r.expansions.size(); ++i) {
    EXPECT_EQ(r.expansions[i].min(), i + 1);
    EXPECT_EQ(reciprocal_sum(r.expansions[i]), 1);
  }
  EXPECT_EQ(t_of_N(40).t, 9u);
  EXPECT_EQ(t_of_N(48).t, 10u);
  EXPECT_THROW(t_of_N(49), CapacityError);
}

TEST(TOfN, MatchesExhaustiveSearch) {
  for (std::uint64_t N = 1; N <= 22; ++N) EXPECT_EQ(t_of_N(N).t, oracle::exhaustive_t(N)) << N;
}

TEST(FiberPruning, Examples) {
  EXPECT_TRUE(prune_small_fibers(UnitSet{}, 1).kept.empty());
  const auto four = prune_small_fibers(UnitSet{4}, BigRational(BigInt(1), BigInt(4)));
  EXPECT_EQ(four.kept, UnitSet{4});
  EXPECT_TRUE(four.removed.empty());
}

TEST(FiberPruning, OutputSatisfiesFiberBound) {
  for (const auto& [set, threshold] : std::vector<std::pair<UnitSet, BigRational>>{
           {UnitSet{2, 3, 6}, 2},
           {UnitSet::range(1, 60), BigRational(BigInt(1), BigInt(2))},
           {UnitSet::range(10, 200), BigRational(BigInt(1), BigInt(10))},
           {UnitSet::parse("6,10,14,15,21,35,49,77"), BigRational(BigInt(1), BigInt(3))}}) {
    const auto r = prune_small_fibers(set, threshold);
    for (auto q : prime_power_support(r.kept).members) {
      BigRational fiber;
      for (auto n : r.kept)
        if (n % q == 0) fiber += BigRational::unit(BigInt(static_cast<unsigned long>(n / q)));
      EXPECT_GE(fiber, threshold) << set.str() << " q=" << q;
    }
    // Every dropped element is a multiple of a removed prime power, and the loss is bounded.
    BigRational lost;
    for (auto n : set) {
      if (r.kept.contains(n)) continue;
      EXPECT_TRUE(std::any_of(r.removed.begin(), r.removed.end(), [n](auto q) { return n % q == 0; })) << n;
      lost += BigRational::unit(BigInt(static_cast<unsigned long>(n)));
    }
    EXPECT_LE(lost, r.loss_bound);
  }
}

TEST(DenseWindow, Examples) {
  const auto single = dense_window(UnitSet{5}, 0.5);
  EXPECT_EQ(single.restricted, UnitSet{5});
  EXPECT_LE(single.lower, 5u);
  EXPECT_GE(single.upper, 5u);
  EXPECT_THROW(dense_window(UnitSet{}, 0.5), ValidationError);
  EXPECT_THROW(dense_window(UnitSet{3}, 0.75), ValidationError);
}

TEST(DenseWindow, PigeonholeAndMaximality) {
  for (std::uint64_t N : {10ULL, 100ULL, 5000ULL}) {
    const UnitSet a = UnitSet::range(1, N);
    const auto w = dense_window(a, 0.5);
    EXPECT_GE(w.sum * BigRational(static_cast<long>(w.window_count)), reciprocal_sum(a)) << N;
    std::vector<std::uint64_t> inside;
    for (auto n : a)
      if (n >= w.lower && n <= w.upper) inside.push_back(n);
    EXPECT_EQ(w.restricted, UnitSet(inside));
    EXPECT_EQ(reciprocal_sum(w.restricted), w.sum);
  }
}
