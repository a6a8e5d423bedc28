#include "ivt/rational.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "ivt/errors.hpp"

namespace ivt {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

template <typename F>
bool mantissa_even(F v) {
  if constexpr (sizeof(F) == 8) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return (bits & 1U) == 0;
  } else {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return (bits & 1U) == 0;
  }
}

// Round-to-nearest-even conversion. mpq_get_d truncates, so start there and
// walk to the closest representable neighbour using exact comparisons.
template <typename F>
F nearest(const mpq_class& q) {
  F guess = static_cast<F>(mpq_get_d(q.get_mpq_t()));
  if (!std::isfinite(guess)) return guess;
  auto distance = [&](F v) {
    mpq_class diff = q - mpq_class(static_cast<double>(v));
    return mpq_class(abs(diff));
  };
  for (;;) {
    const F up = std::nextafter(guess, std::numeric_limits<F>::infinity());
    const F down = std::nextafter(guess, -std::numeric_limits<F>::infinity());
    const mpq_class here = distance(guess);
    if (std::isfinite(up) && distance(up) < here) {
      guess = up;
      continue;
    }
    if (std::isfinite(down) && distance(down) < here) {
      guess = down;
      continue;
    }
    if (std::isfinite(up) && distance(up) == here && !mantissa_even(guess)) {
      return up;
    }
    if (std::isfinite(down) && distance(down) == here &&
        !mantissa_even(guess)) {
      return down;
    }
    return guess;
  }
}

}  // namespace

Rational rat_normalize(const BigInt& num, const BigInt& den) {
  return Rational::from_parts(num, den);
}

Rational Rational::from_parts(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero();
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) +
                                  "'");
    }
    result = from_parts(BigInt(std::string(num), 10), BigInt(std::string(den), 10));
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) +
                                  "'");
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const BigInt digits(std::string(whole.empty() ? "0" : whole) +
                        std::string(frac), 10);
    result = from_parts(digits, scale);
  } else {
    if (!all_digits(body)) {
      throw std::invalid_argument("malformed integer '" + std::string(text) +
                                  "'");
    }
    result = Rational(BigInt(std::string(body), 10));
  }
  return negative ? -result : result;
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("non-finite double has no rational value");
  }
  return Rational(mpq_class(v));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::pow(unsigned exponent) const {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  // Powers of a lowest-terms fraction stay in lowest terms.
  mpq_class q;
  mpz_swap(q.get_num_mpz_t(), num.get_mpz_t());
  mpz_swap(q.get_den_mpz_t(), den.get_mpz_t());
  return Rational(std::move(q));
}

Rational Rational::scaled_pow2(long k) const {
  mpq_class q;
  if (k >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), value_.get_mpq_t(),
                 static_cast<mp_bitcnt_t>(k));
  } else {
    mpq_div_2exp(q.get_mpq_t(), value_.get_mpq_t(),
                 static_cast<mp_bitcnt_t>(-k));
  }
  return Rational(std::move(q));
}

double Rational::to_double() const { return nearest<double>(value_); }

float Rational::to_float() const { return nearest<float>(value_); }

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(value_.get_num_mpz_t(), 2) +
         mpz_sizeinbase(value_.get_den_mpz_t(), 2);
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  value_ /= o.value_;
  return *this;
}

}  // namespace ivt
