#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ivt {

using BigInt = mpz_class;

// Exact signed rational, always stored in lowest terms with a positive
// denominator. Arithmetic is closed and exact; division by zero throws
// DivisionByZero.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : value_(v) {}                      // NOLINT
  Rational(long v) : value_(v) {}                     // NOLINT
  Rational(long long v) : value_(BigInt(std::to_string(v))) {}  // NOLINT
  explicit Rational(const BigInt& v) : value_(v) {}

  // Lowest-terms representative of num/den.
  static Rational from_parts(const BigInt& num, const BigInt& den);

  // Accepts "n", "n/d" and decimal "[-]i.f" (converted exactly). Throws
  // std::invalid_argument on malformed text and DivisionByZero on "n/0".
  static Rational parse(std::string_view text);

  // Exact value of a finite binary float.
  static Rational from_double(double v);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  Rational abs() const;
  Rational pow(unsigned exponent) const;
  // this * 2^k, exact.
  Rational scaled_pow2(long k) const;

  // Nearest double (ties to even).
  double to_double() const;
  float to_float() const;

  // "num/den", e.g. "-13/14", "0/1".
  std::string str() const;

  // Bits in numerator plus denominator; a size diagnostic.
  std::size_t bit_size() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational l, const Rational& r) { return l += r; }
  friend Rational operator-(Rational l, const Rational& r) { return l -= r; }
  friend Rational operator*(Rational l, const Rational& r) { return l *= r; }
  friend Rational operator/(Rational l, const Rational& r) { return l /= r; }

  friend bool operator==(const Rational& l, const Rational& r) {
    return l.value_ == r.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& l,
                                          const Rational& r) {
    const int c = cmp(l.value_, r.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}

  mpq_class value_;
};

// Lowest-terms rational num/den; throws DivisionByZero when den == 0.
Rational rat_normalize(const BigInt& num, const BigInt& den);

}  // namespace ivt
