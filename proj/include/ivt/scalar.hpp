#pragma once

#include <charconv>
#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include "ivt/rational.hpp"

namespace ivt {

enum class BackendKind { Exact, Float };

struct ScalarBackend {
  BackendKind kind = BackendKind::Exact;
  // Float kind only; 32 or 64.
  int float_bits = 64;
};

// Per-scalar operations the algorithm needs beyond + - * / and comparison.
// Float scalars use the raw rounded values everywhere, including in
// comparisons against epsilon.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr BackendKind kind = BackendKind::Exact;
  static constexpr int float_bits = 0;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational abs(const Rational& v) { return v.abs(); }
  static Rational scaled_pow2(const Rational& v, long k) {
    return v.scaled_pow2(k);
  }
  static double to_double(const Rational& v) { return v.to_double(); }
  static std::string to_string(const Rational& v) { return v.str(); }
  static Rational parse(std::string_view text) { return Rational::parse(text); }
};

namespace detail {

template <typename F>
std::string shortest_decimal(F v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename F>
F parse_float(std::string_view text) {
  F v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed float '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace detail

template <std::floating_point F>
struct FloatTraits {
  static constexpr BackendKind kind = BackendKind::Float;
  static constexpr int float_bits = sizeof(F) * 8;
  static F from_rational(const Rational& q) {
    if constexpr (sizeof(F) == 8) {
      return q.to_double();
    } else {
      return q.to_float();
    }
  }
  static F abs(F v) { return std::fabs(v); }
  static F scaled_pow2(F v, long k) {
    return std::ldexp(v, static_cast<int>(k));
  }
  static double to_double(F v) { return static_cast<double>(v); }
  static std::string to_string(F v) { return detail::shortest_decimal(v); }
  static F parse(std::string_view text) { return detail::parse_float<F>(text); }
};

template <>
struct ScalarTraits<double> : FloatTraits<double> {};
template <>
struct ScalarTraits<float> : FloatTraits<float> {};

template <typename T>
concept Scalar = requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { a < b } -> std::convertible_to<bool>;
  { ScalarTraits<T>::to_string(a) } -> std::convertible_to<std::string>;
};

template <Scalar T>
T from_rational(const Rational& q) {
  return ScalarTraits<T>::from_rational(q);
}

template <Scalar T>
std::string to_string(const T& v) {
  return ScalarTraits<T>::to_string(v);
}

template <Scalar T>
T abs_value(const T& v) {
  return ScalarTraits<T>::abs(v);
}

// max(0, min(x, 1))
template <Scalar T>
T clamp_unit(const T& x) {
  const T zero(0);
  const T one(1);
  if (x < zero) return zero;
  if (one < x) return one;
  return x;
}

}  // namespace ivt
