#pragma once

#include <cstdint>

#include "unitfrac/rational.hpp"

namespace unitfrac::detail {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

// Caller guarantees 0 <= v < 2^128.
inline u128 to_u128(const BigInt& v) {
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  return (static_cast<u128>(limbs[1]) << 64) | limbs[0];
}

inline BigInt from_u128(u128 v) {
  BigInt out = from_u64(static_cast<std::uint64_t>(v >> 64));
  out <<= 64;
  out += from_u64(static_cast<std::uint64_t>(v));
  return out;
}

}  // namespace unitfrac::detail
