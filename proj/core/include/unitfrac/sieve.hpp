#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unitfrac/rational.hpp"

namespace unitfrac {

/// All primes <= n in ascending order; empty for n < 2.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Smallest prime factor of every k <= n (entries 0 and 1 are 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t n);

/// Omega(k) (prime factors with multiplicity) for every k <= n, from the smallest-prime-factor
/// sieve. Entry 0 is 0.
std::vector<std::uint8_t> big_omega_table(std::uint32_t n);

/// Sum of 1/p over primes p <= n, accumulated smallest term first in extended precision.
long double mertens_sum(std::uint64_t n);

/// mertens_sum(n) - log log n.
long double mertens_residual(std::uint64_t n);

/// #{k <= n : Omega(k) > threshold}.
std::uint64_t omega_tail_count(std::uint32_t n, double threshold);

struct LargePrimePowerCount {
  std::uint64_t count = 0;
  /// 2 n log t / log n.
  long double lemma_bound = 0;
  /// 2 <= t <= n^{1/4}; outside it the count is still exact but the bound is not promised.
  bool in_lemma_regime = false;
};

/// #{k <= n : some prime power q > n/t divides k}.
LargePrimePowerCount large_prime_power_count(std::uint64_t n, std::uint64_t t);

struct SieveReport {
  std::uint64_t interval_start = 0;
  std::uint64_t interval_length = 0;
  std::uint64_t survivor_count = 0;
  /// length * prod (1 - 1/p).
  long double predicted_count = 0;
  long double ratio = 0;
};

/// Counts k in [start, start + length) divisible by none of the given primes.
/// Throws ValidationError on length 0, a non-prime, or a repeated prime.
SieveReport sieve_survivors(std::uint64_t start, std::uint64_t length,
                            std::span<const std::uint64_t> primes);

/// Exact checks of the primorial and prime-power-product growth against 2^n and 3^n.
struct PrimeProductCheck {
  std::uint64_t n = 0;
  bool primorial_at_least_two_pow_n = false;
  /// log(prod_{p<=n} p) - n log 2, exact product then logged.
  long double log_primorial_over_two_pow_n = 0;
  /// log(prod_{q<=n} q) - n log 3 over all prime powers q <= n.
  long double log_prime_power_product_over_three_pow_n = 0;
};

PrimeProductCheck prime_product_check(std::uint64_t n);

}  // namespace unitfrac
