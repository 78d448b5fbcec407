#include "unitfrac/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"

namespace unitfrac {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  // Odd-only sieve: index i stands for 2i + 1.
  const std::uint64_t half = (n - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  out.push_back(2);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::uint64_t m = p * p; m <= n; m += 2 * p) composite[m / 2] = true;
  }
  return out;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (spf[p]) continue;
    for (std::uint64_t m = p; m <= n; m += p) {
      if (!spf[m]) spf[m] = static_cast<std::uint32_t>(p);
    }
  }
  return spf;
}

std::vector<std::uint8_t> big_omega_table(std::uint32_t n) {
  const auto spf = smallest_prime_factors(n);
  std::vector<std::uint8_t> omega(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t k = 2; k <= n; ++k) omega[k] = omega[k / spf[k]] + 1;
  return omega;
}

long double mertens_sum(std::uint64_t n) {
  const auto primes = primes_up_to(n);
  long double sum = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    sum += 1.0L / static_cast<long double>(*it);
  }
  return sum;
}

long double mertens_residual(std::uint64_t n) {
  if (n < 2) throw ValidationError("mertens_residual requires n >= 2");
  return mertens_sum(n) - std::log(std::log(static_cast<long double>(n)));
}

std::uint64_t omega_tail_count(std::uint32_t n, double threshold) {
  const auto omega = big_omega_table(n);
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (omega[k] > threshold) ++count;
  }
  return count;
}

LargePrimePowerCount large_prime_power_count(std::uint64_t n, std::uint64_t t) {
  if (n < 1 || t < 1) throw ValidationError("large_prime_power_count requires n, t >= 1");
  LargePrimePowerCount out;
  const long double log_n = std::log(static_cast<long double>(n));
  out.in_lemma_regime =
      t >= 2 && static_cast<long double>(t) <= std::pow(static_cast<long double>(n), 0.25L);
  out.lemma_bound = n > 1 ? 2.0L * n * std::log(static_cast<long double>(t)) / log_n : 0;

  // For integers, q > n/t exactly when q > floor(n/t).
  std::vector<bool> marked(n + 1, false);
  for (auto p : primes_up_to(n)) {
    for (std::uint64_t q = p;; q *= p) {
      if (q > n / t) {
        for (std::uint64_t m = q; m <= n; m += q) marked[m] = true;
      }
      if (q > n / p) break;
    }
  }
  out.count = static_cast<std::uint64_t>(std::count(marked.begin(), marked.end(), true));
  return out;
}

SieveReport sieve_survivors(std::uint64_t start, std::uint64_t length,
                            std::span<const std::uint64_t> primes) {
  if (length == 0) throw ValidationError("sieve interval must have length >= 1");
  std::set<std::uint64_t> seen;
  for (auto p : primes) {
    if (!default_prime_table().is_prime(p)) {
      throw ValidationError("sieve set contains non-prime " + std::to_string(p));
    }
    if (!seen.insert(p).second) {
      throw ValidationError("sieve set repeats prime " + std::to_string(p));
    }
  }
  std::vector<bool> struck(length, false);
  long double density = 1;
  for (auto p : primes) {
    density *= 1.0L - 1.0L / static_cast<long double>(p);
    const std::uint64_t first = (start + p - 1) / p * p;
    for (std::uint64_t m = first; m - start < length; m += p) struck[m - start] = true;
  }
  SieveReport report;
  report.interval_start = start;
  report.interval_length = length;
  report.survivor_count =
      static_cast<std::uint64_t>(std::count(struck.begin(), struck.end(), false));
  report.predicted_count = static_cast<long double>(length) * density;
  report.ratio = static_cast<long double>(report.survivor_count) / report.predicted_count;
  return report;
}

PrimeProductCheck prime_product_check(std::uint64_t n) {
  PrimeProductCheck out;
  out.n = n;
  BigInt primorial = 1;
  BigInt prime_powers = 1;
  for (auto p : primes_up_to(n)) {
    primorial *= from_u64(p);
    for (std::uint64_t q = p;; q *= p) {
      prime_powers *= from_u64(q);
      if (q > n / p) break;
    }
  }
  BigInt two_pow = 1;
  mpz_mul_2exp(two_pow.get_mpz_t(), two_pow.get_mpz_t(), n);
  BigInt three_pow;
  mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, n);
  out.primorial_at_least_two_pow_n = primorial >= two_pow;
  out.log_primorial_over_two_pow_n = log_big(primorial) - log_big(two_pow);
  out.log_prime_power_product_over_three_pow_n = log_big(prime_powers) - log_big(three_pow);
  return out;
}

}  // namespace unitfrac
