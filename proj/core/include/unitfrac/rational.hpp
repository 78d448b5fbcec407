#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace unitfrac {

using BigInt = mpz_class;

/// Parses a decimal integer, optionally signed. Throws ValidationError.
BigInt parse_big_int(std::string_view text);

/// Exact rational in lowest terms with a positive denominator; zero is 0/1.
///
/// Every constructor and arithmetic result is canonicalized, so two values are
/// equal iff their numerators and denominators are equal.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit BigRational(const BigInt& integer) : value_(integer) {}
  BigRational(const BigInt& numerator, const BigInt& denominator);

  /// Accepts "a", "a/b" with optional sign on the numerator.
  static BigRational parse(std::string_view text);
  static BigRational unit(const BigInt& n) { return {BigInt(1), n}; }

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// "num/den", always with the slash, e.g. "1/1" and "0/1".
  std::string str() const;
  double to_double() const { return value_.get_d(); }
  long double to_long_double() const;

  BigRational& operator+=(const BigRational& rhs) { value_ += rhs.value_; return *this; }
  BigRational& operator-=(const BigRational& rhs) { value_ -= rhs.value_; return *this; }
  BigRational& operator*=(const BigRational& rhs) { value_ *= rhs.value_; return *this; }
  BigRational& operator/=(const BigRational& rhs);

  friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
  friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
  friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
  friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }
  BigRational operator-() const { BigRational r; r.value_ = -value_; return r; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit BigRational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
  mpq_class value_;
};

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Decimal string of a BigInt.
std::string to_string(const BigInt& value);

/// Natural log of a positive BigInt, accurate for values far beyond double range.
long double log_big(const BigInt& value);

/// True when value fits in std::uint64_t.
bool fits_u64(const BigInt& value);
std::uint64_t to_u64(const BigInt& value);
BigInt from_u64(std::uint64_t value);

}  // namespace unitfrac

template <>
struct std::hash<unitfrac::BigRational> {
  std::size_t operator()(const unitfrac::BigRational& r) const noexcept;
};
