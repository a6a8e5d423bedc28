#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ivt/errors.hpp"
#include "ivt/expr.hpp"
#include "ivt/scalar.hpp"

namespace ivt {

enum class WeightMode { Interpolated, Classical };

const char* mode_name(WeightMode mode);

template <Scalar T>
struct ProblemConfig {
  T a;
  T b;
  T epsilon;
  int max_steps = 40;
  WeightMode mode = WeightMode::Interpolated;
  bool stop_early = false;
  // When set, interior interpolated weights are rounded to the nearest
  // multiple of 2^-weight_bits. Weights of exactly 0 or 1 are unaffected, so
  // halving, nesting and the straddle-or-witness property still hold exactly.
  // Unset means the weight is used as computed.
  std::optional<unsigned> weight_bits;
};

template <Scalar T>
struct IterationState {
  int n = 1;
  T a_n;
  T b_n;
};

template <Scalar T>
struct StepRecord {
  int n = 0;
  T a_n;
  T b_n;
  T c_n;
  T f_c_n;
  T d_n;
};

template <Scalar T>
struct Trace {
  ProblemConfig<T> config;
  std::vector<StepRecord<T>> steps;
  T limit_estimate;     // c_N
  T limit_error_bound;  // (b - a) / 2^(N-1)
  std::optional<int> stopped_early_at;
};

using ExactTrace = Trace<Rational>;
using AnyTrace = std::variant<Trace<Rational>, Trace<double>, Trace<float>>;

template <Scalar T>
void validate(const ProblemConfig<T>& config) {
  if (!(config.a < config.b)) {
    throw InvalidConfig("interval requires a < b, got a = " +
                        to_string(config.a) + ", b = " + to_string(config.b));
  }
  if (!(T(0) < config.epsilon)) throw InvalidTolerance(to_string(config.epsilon));
  if (config.max_steps < 1) {
    throw InvalidConfig("max_steps must be at least 1");
  }
}

template <Scalar T>
T midpoint(const IterationState<T>& state) {
  return (state.a_n + state.b_n) / T(2);
}

// clamp_unit(1/2 + f_c / epsilon)
template <Scalar T>
T interpolation_weight(const T& f_c, const T& epsilon) {
  if (!(T(0) < epsilon)) throw InvalidTolerance(to_string(epsilon));
  return clamp_unit(T(1) / T(2) + f_c / epsilon);
}

template <Scalar T>
T classical_weight(const T& f_c) {
  return f_c < T(0) ? T(0) : T(1);
}

// Nearest multiple of 2^-bits (ties up); 0 and 1 map to themselves.
Rational quantize_weight(const Rational& d, unsigned bits);

template <Scalar T>
T quantize(const T& d, unsigned bits) {
  if constexpr (std::is_same_v<T, Rational>) {
    return quantize_weight(d, bits);
  } else {
    const T scale = ScalarTraits<T>::scaled_pow2(T(1), bits);
    return std::floor(d * scale + T(0.5)) / scale;
  }
}

// (b - a) / 2^(m-1)
template <Scalar T>
T cauchy_bound(int m, const T& original_width) {
  return ScalarTraits<T>::scaled_pow2(original_width, -(m - 1));
}

// Next interval [c_n - d*w/2^n, b_n - d*w/2^n]. d = 1 keeps the left half,
// d = 0 the right half.
template <Scalar T>
IterationState<T> step(const IterationState<T>& state, const T& d,
                       const T& original_width) {
  if (d < T(0) || T(1) < d) throw InvalidWeight(to_string(d));
  const T shift = d * ScalarTraits<T>::scaled_pow2(original_width, -state.n);
  const T c = midpoint(state);
  return IterationState<T>{state.n + 1, c - shift, state.b_n - shift};
}

template <Scalar T>
T weight_for(const ProblemConfig<T>& config, const T& f_c) {
  if (config.mode == WeightMode::Classical) return classical_weight(f_c);
  T d = interpolation_weight(f_c, config.epsilon);
  if (config.weight_bits) d = quantize(d, *config.weight_bits);
  return d;
}

// Runs the recurrence for max_steps steps, or until the first |f(c_n)| < eps
// when stop_early is set.
template <Scalar T>
Trace<T> run(const ProblemConfig<T>& config, const FunctionExpr& f) {
  validate(config);
  const T f_a = evaluate(f, config.a);
  const T f_b = evaluate(f, config.b);
  if (!(f_a < T(0)) || !(T(0) < f_b)) {
    throw SignPreconditionViolated(to_string(f_a), to_string(f_b));
  }

  const T width = config.b - config.a;
  Trace<T> trace{config, {}, T(0), T(0), std::nullopt};
  trace.steps.reserve(static_cast<std::size_t>(config.max_steps));
  IterationState<T> state{1, config.a, config.b};
  for (;;) {
    const T c = midpoint(state);
    const T f_c = evaluate(f, c);
    const T d = weight_for(config, f_c);
    trace.steps.push_back(StepRecord<T>{state.n, state.a_n, state.b_n, c, f_c, d});
    if (config.stop_early && abs_value(f_c) < config.epsilon) {
      trace.stopped_early_at = state.n;
      break;
    }
    if (state.n == config.max_steps) break;
    state = step(state, d, width);
  }
  const auto& last = trace.steps.back();
  trace.limit_estimate = last.c_n;
  trace.limit_error_bound = cauchy_bound(last.n, width);
  return trace;
}

// Runtime-selected backend.
AnyTrace run_backend(const ScalarBackend& backend,
                     const ProblemConfig<Rational>& exact_config,
                     const FunctionExpr& f);

template <Scalar T>
ProblemConfig<T> convert_config(const ProblemConfig<Rational>& c) {
  return ProblemConfig<T>{from_rational<T>(c.a),       from_rational<T>(c.b),
                          from_rational<T>(c.epsilon), c.max_steps,
                          c.mode,                      c.stop_early,
                          c.weight_bits};
}

ScalarBackend backend_of(const AnyTrace& trace);

}  // namespace ivt
