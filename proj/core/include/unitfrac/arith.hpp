#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "unitfrac/rational.hpp"
#include "unitfrac/unit_set.hpp"

namespace unitfrac {

struct PrimeFactor {
  std::uint64_t prime;
  unsigned exponent;

  std::uint64_t power() const;
  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// Primes up to a fixed bound, used for trial-division factorization.
class PrimeTable {
 public:
  static constexpr std::uint64_t kDefaultBound = 1'000'000;

  explicit PrimeTable(std::uint64_t bound = kDefaultBound);

  std::uint64_t bound() const { return bound_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  bool is_prime(std::uint64_t n) const;

  /// Ascending prime factorization; n = 1 gives an empty list. Cofactors past
  /// bound^2 fall back to odd trial division, which is slow but exact.
  std::vector<PrimeFactor> factorize(std::uint64_t n) const;

 private:
  std::uint64_t bound_;
  std::vector<std::uint64_t> primes_;
};

/// Shared table with the default bound, built on first use.
const PrimeTable& default_prime_table();

/// omega: distinct primes, big_omega: with multiplicity, max_exponent: largest exponent.
struct MultiplicativeProfile {
  unsigned omega = 0;
  unsigned big_omega = 0;
  unsigned max_exponent = 0;

  friend bool operator==(const MultiplicativeProfile&, const MultiplicativeProfile&) = default;
};

/// Sorted distinct prime powers together with their least common multiple.
struct PrimePowerSet {
  std::vector<std::uint64_t> members;
  BigInt lcm{1};
};

/// Sum of 1/n over A in lowest terms.
BigRational reciprocal_sum(const UnitSet& set);

/// Throws ValidationError for n <= 0.
MultiplicativeProfile multiplicative_profile(std::int64_t n);

/// True iff p^{v_p(n)} <= S for every prime p dividing n (prime-power smoothness).
bool is_smooth(std::uint64_t n, std::uint64_t smoothness);

/// The maximal prime powers p^{v_p(n)} over n in A, optionally only those <= cap.
PrimePowerSet prime_power_support(const UnitSet& set,
                                  std::optional<std::uint64_t> cap = std::nullopt);

/// lcm of all elements; 1 for the empty set.
BigInt lcm_of(const UnitSet& set);

/// lcm(1, ..., n) as a big integer.
BigInt lcm_up_to(std::uint64_t n);

/// True iff n = p^k for a prime p and k >= 1.
bool is_prime_power(std::uint64_t n);

}  // namespace unitfrac
