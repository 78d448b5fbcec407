#include "unitfrac/arith.hpp"

#include <algorithm>
#include <map>

#include "unitfrac/errors.hpp"

namespace unitfrac {

std::uint64_t PrimeFactor::power() const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < exponent; ++i) q *= prime;
  return q;
}

PrimeTable::PrimeTable(std::uint64_t bound) : bound_(std::max<std::uint64_t>(bound, 2)) {
  std::vector<bool> composite(bound_ + 1, false);
  for (std::uint64_t p = 2; p <= bound_; ++p) {
    if (composite[p]) continue;
    primes_.push_back(p);
    for (std::uint64_t m = p * p; m <= bound_; m += p) composite[m] = true;
  }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n < 2) return false;
  if (n <= bound_) return std::binary_search(primes_.begin(), primes_.end(), n);
  const auto f = factorize(n);
  return f.size() == 1 && f.front().exponent == 1;
}

std::vector<PrimeFactor> PrimeTable::factorize(std::uint64_t n) const {
  std::vector<PrimeFactor> out;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  };
  for (std::uint64_t p : primes_) {
    if (p > n / p) break;
    strip(p);
  }
  if (n > 1) {
    const std::uint64_t last = primes_.back();
    if (last < n / last) {
      // Cofactor may still be composite past bound^2.
      for (std::uint64_t d = (last + 1) | 1; d <= n / d; d += 2) strip(d);
    }
    if (n > 1) out.push_back({n, 1});
  }
  return out;
}

const PrimeTable& default_prime_table() {
  static const PrimeTable table;
  return table;
}

BigRational reciprocal_sum(const UnitSet& set) {
  if (set.empty()) return {};
  const BigInt common = lcm_of(set);
  BigInt numerator = 0;
  for (auto n : set) numerator += common / from_u64(n);
  return {numerator, common};
}

MultiplicativeProfile multiplicative_profile(std::int64_t n) {
  if (n <= 0) throw ValidationError("multiplicative_profile requires n >= 1");
  MultiplicativeProfile profile;
  for (const auto& f : default_prime_table().factorize(static_cast<std::uint64_t>(n))) {
    ++profile.omega;
    profile.big_omega += f.exponent;
    profile.max_exponent = std::max(profile.max_exponent, f.exponent);
  }
  return profile;
}

bool is_smooth(std::uint64_t n, std::uint64_t smoothness) {
  for (const auto& f : default_prime_table().factorize(n)) {
    if (f.power() > smoothness) return false;
  }
  return true;
}

PrimePowerSet prime_power_support(const UnitSet& set, std::optional<std::uint64_t> cap) {
  std::vector<std::uint64_t> members;
  std::map<std::uint64_t, std::uint64_t> top_power;
  for (auto n : set) {
    for (const auto& f : default_prime_table().factorize(n)) {
      const auto q = f.power();
      if (cap && q > *cap) continue;
      members.push_back(q);
      auto& top = top_power[f.prime];
      top = std::max(top, q);
    }
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  PrimePowerSet out{std::move(members), BigInt(1)};
  for (const auto& [p, q] : top_power) out.lcm *= from_u64(q);
  return out;
}

BigInt lcm_of(const UnitSet& set) {
  BigInt out = 1;
  for (auto n : set) out = lcm(out, from_u64(n));
  return out;
}

BigInt lcm_up_to(std::uint64_t n) {
  BigInt out = 1;
  for (std::uint64_t k = 2; k <= n; ++k) out = lcm(out, from_u64(k));
  return out;
}

bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  return default_prime_table().factorize(n).size() == 1;
}

}  // namespace unitfrac
