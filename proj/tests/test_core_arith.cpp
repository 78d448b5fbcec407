#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/rational.hpp"
#include "unitfrac/unit_set.hpp"

using namespace unitfrac;

TEST(BigRational, CanonicalForm) {
  EXPECT_EQ(BigRational(BigInt(6), BigInt(-4)).str(), "-3/2");
  EXPECT_EQ(BigRational().str(), "0/1");
  EXPECT_EQ(BigRational(BigInt(0), BigInt(-7)).str(), "0/1");
  EXPECT_EQ(BigRational::parse("10/4"), BigRational(BigInt(5), BigInt(2)));
  EXPECT_EQ(BigRational::parse("-3").str(), "-3/1");
  EXPECT_THROW(BigRational(BigInt(1), BigInt(0)), ValidationError);
  EXPECT_THROW(BigRational::parse("1/0"), ValidationError);
  EXPECT_THROW(BigRational::parse("1/x"), ValidationError);
}

TEST(BigRational, RandomArithmeticStaysReduced) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 2000; ++i) {
    long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (b == 0) b = 1;
    if (e == 0) e = 1;
    const BigRational x{BigInt(a), BigInt(b)}, y{BigInt(c), BigInt(e)};
    for (const BigRational& r : {x + y, x - y, x * y}) {
      EXPECT_GT(r.denominator(), 0);
      EXPECT_EQ(gcd(r.numerator(), r.denominator()), 1);
    }
    // Cross-multiplication identity checked in plain integers.
    const BigRational s = x + y;
    EXPECT_EQ(s.numerator() * BigInt(b * e), BigInt(a * e + c * b) * s.denominator());
    EXPECT_EQ(BigRational::parse(s.str()), s);
  }
}

TEST(UnitSet, ParseAndPrint) {
  EXPECT_EQ(UnitSet::parse("1..4,7,9..10").str(), "1,2,3,4,7,9,10");
  EXPECT_EQ(UnitSet::parse(" 6, 2 ,3").str(), "2,3,6");
  EXPECT_TRUE(UnitSet::parse("").empty());
  EXPECT_TRUE(UnitSet::range(5, 4).empty());
  EXPECT_THROW(UnitSet::parse("0..3"), ValidationError);
  EXPECT_THROW(UnitSet::parse("1..3,2"), ValidationError);
  EXPECT_THROW(UnitSet({3, 3}), ValidationError);
  EXPECT_LT(UnitSet({2, 3, 6}), UnitSet({2, 4}));
}

TEST(ReciprocalSum, Examples) {
  EXPECT_EQ(reciprocal_sum(UnitSet{2, 3, 6}).str(), "1/1");
  EXPECT_EQ(reciprocal_sum(UnitSet{}).str(), "0/1");
  EXPECT_EQ(reciprocal_sum(UnitSet{2, 4, 6, 12}).str(), "1/1");
}

TEST(ReciprocalSum, MatchesTermByTermSum) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> d(1, 5000);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::uint64_t> v;
    for (int k = 0; k < 12; ++k) v.push_back(d(rng));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    const UnitSet s(v);
    EXPECT_EQ(reciprocal_sum(s), oracle::exact_sum(s));
  }
}

TEST(MultiplicativeProfile, Examples) {
  EXPECT_EQ(multiplicative_profile(12), (MultiplicativeProfile{2, 3, 2}));
  EXPECT_EQ(multiplicative_profile(1), (MultiplicativeProfile{0, 0, 0}));
  EXPECT_EQ(multiplicative_profile(360), (MultiplicativeProfile{3, 6, 3}));
  EXPECT_THROW(multiplicative_profile(0), ValidationError);
  EXPECT_THROW(multiplicative_profile(-5), ValidationError);
}

TEST(MultiplicativeProfile, BigOmegaMatchesTrialDivision) {
  for (std::int64_t n = 1; n <= 20000; ++n)
    ASSERT_EQ(multiplicative_profile(n).big_omega, oracle::big_omega(static_cast<std::uint64_t>(n))) << n;
}

TEST(MultiplicativeProfile, LargeSemiprime) {
  // 1000003 * 1000033, both prime: cofactor beyond the default table squared.
  const auto p = multiplicative_profile(1000036000099LL);
  EXPECT_EQ(p, (MultiplicativeProfile{2, 2, 1}));
}

TEST(Smoothness, Examples) {
  EXPECT_TRUE(is_smooth(12, 4));
  EXPECT_FALSE(is_smooth(8, 4));
  EXPECT_TRUE(is_smooth(1, 2));
}

TEST(Smoothness, MatchesLargestPrimePowerDivisor) {
  for (std::uint64_t n = 1; n <= 3000; ++n)
    for (std::uint64_t S : {2u, 5u, 16u, 50u})
      ASSERT_EQ(is_smooth(n, S), oracle::largest_prime_power_divisor(n) <= S) << n << " " << S;
}

TEST(PrimePowerSupport, Examples) {
  auto a = prime_power_support(UnitSet{2, 3, 6});
  EXPECT_EQ(a.members, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(a.lcm, 6);
  auto b = prime_power_support(UnitSet{4, 9});
  EXPECT_EQ(b.members, (std::vector<std::uint64_t>{4, 9}));
  EXPECT_EQ(b.lcm, 36);
  auto c = prime_power_support(UnitSet{4, 9}, 5);
  EXPECT_EQ(c.members, (std::vector<std::uint64_t>{4}));
  EXPECT_EQ(c.lcm, 4);
}

TEST(PrimePowerSupport, LcmEqualsLcmOfElements) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> d(1, 400);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint64_t> v;
    for (int k = 0; k < 8; ++k) v.push_back(d(rng));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    const UnitSet s(v);
    const auto support = prime_power_support(s);
    EXPECT_EQ(support.lcm, lcm_of(s));
    for (auto q : support.members) EXPECT_TRUE(is_prime_power(q)) << q;
    // Every sum over the set is an integer multiple of 1 / lcm.
    EXPECT_EQ(support.lcm % reciprocal_sum(s).denominator(), 0);
  }
}

TEST(Lcm, UpTo) {
  BigInt l = 1;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    l = lcm(l, BigInt(static_cast<unsigned long>(n)));
    ASSERT_EQ(lcm_up_to(n), l) << n;
  }
  EXPECT_EQ(lcm_up_to(0), 1);
}

TEST(PrimeTable, FactorizeRoundTrip) {
  const auto& table = default_prime_table();
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> d(1, std::uint64_t{1} << 50);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = d(rng);
    std::uint64_t back = 1;
    for (const auto& f : table.factorize(n)) {
      EXPECT_TRUE(oracle::is_prime(f.prime) || f.prime > 1'000'000);
      back *= f.power();
    }
    EXPECT_EQ(back, n);
  }
}
