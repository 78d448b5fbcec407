#include "unitfrac/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "unitfrac/errors.hpp"

namespace unitfrac {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

BigInt parse_big_int(std::string_view text) {
  text = trim(text);
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ValidationError("expected an integer, got '" + std::string(text) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ValidationError("expected an integer, got '" + std::string(text) + "'");
    }
  }
  std::string buf(text);
  if (buf.front() == '+') buf.erase(0, 1);
  return BigInt(buf, 10);
}

BigRational::BigRational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw ValidationError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_big_int(text));
  return {parse_big_int(text.substr(0, slash)), parse_big_int(text.substr(slash + 1))};
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.is_zero()) throw ValidationError("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

std::string BigRational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

long double BigRational::to_long_double() const {
  return std::exp(log_big(abs(value_.get_num())) - log_big(value_.get_den())) * sign();
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string to_string(const BigInt& value) { return value.get_str(); }

long double log_big(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<long double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(static_cast<long double>(mantissa)) +
         static_cast<long double>(exponent) * std::log(2.0L);
}

bool fits_u64(const BigInt& value) {
  return value >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& value) {
  if (!fits_u64(value)) throw ValidationError("integer does not fit in 64 bits: " + value.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

BigInt from_u64(std::uint64_t value) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
  return out;
}

}  // namespace unitfrac

std::size_t std::hash<unitfrac::BigRational>::operator()(
    const unitfrac::BigRational& r) const noexcept {
  const auto& q = r.raw();
  const std::size_t hn = mpz_size(q.get_num_mpz_t()) ? mpz_getlimbn(q.get_num_mpz_t(), 0) : 0;
  const std::size_t hd = mpz_getlimbn(q.get_den_mpz_t(), 0);
  return hn ^ (hd * 0x9e3779b97f4a7c15ULL) ^ static_cast<std::size_t>(sgn(q));
}
