#include "ivt/kernels.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ivt {

namespace {

void check_grid(const Rational& a, const Rational& b, std::int64_t grid_n) {
  if (grid_n < 1) throw InvalidConfig("grid_n must be at least 1");
  if (!(a < b)) throw InvalidConfig("grid oracle requires a < b");
  if (grid_n > std::numeric_limits<int>::max()) {
    throw InvalidConfig("grid_n too large");
  }
}

Rational grid_point(const Rational& a, const Rational& spacing,
                    std::int64_t k) {
  return a + spacing * Rational(static_cast<long>(k));
}

WitnessCertificate grid_certificate(const Rational& x, Rational f_x,
                                    std::int64_t k) {
  return WitnessCertificate{x, std::move(f_x), WitnessKind::GridPoint,
                            static_cast<int>(k)};
}

void check_samples(double x_min, double x_max, int count) {
  if (count < 2) throw InvalidConfig("sample count must be at least 2");
  if (!(x_min < x_max)) throw InvalidConfig("sample range requires x_min < x_max");
}

CurvePoint sample_at(const FunctionExpr& f, double x_min, double x_max,
                     int count, int i) {
  const double x =
      x_min + (x_max - x_min) * static_cast<double>(i) / (count - 1);
  try {
    return CurvePoint{x, evaluate(f, x), true};
  } catch (const EvalError&) {
    return CurvePoint{x, std::numeric_limits<double>::quiet_NaN(), false};
  }
}

BatchResult run_one(const BatchItem& item) {
  try {
    return BatchResult{run(item.config, item.f), {}};
  } catch (const std::exception& e) {
    return BatchResult{std::nullopt, e.what()};
  }
}

void atomic_min(std::atomic<std::int64_t>& target, std::int64_t value) {
  std::int64_t current = target.load(std::memory_order_relaxed);
  while (value < current &&
         !target.compare_exchange_weak(current, value,
                                       std::memory_order_relaxed)) {
  }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::optional<WitnessCertificate> grid_oracle(const FunctionExpr& f,
                                              const Rational& a,
                                              const Rational& b,
                                              const Rational& epsilon,
                                              std::int64_t grid_n) {
  check_grid(a, b, grid_n);
  const Rational spacing = (b - a) / Rational(static_cast<long>(grid_n));
  const std::int64_t none = grid_n + 1;
  std::atomic<std::int64_t> first_hit{none};
  std::atomic<std::int64_t> first_error{none};

  // Any index past the earliest hit or error found so far cannot change the
  // answer, so it is skipped.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k <= grid_n; ++k) {
    if (k > first_hit.load(std::memory_order_relaxed) ||
        k > first_error.load(std::memory_order_relaxed)) {
      continue;
    }
    try {
      if (eval_exact(f, grid_point(a, spacing, k)).abs() < epsilon) {
        atomic_min(first_hit, k);
      }
    } catch (const EvalError&) {
      atomic_min(first_error, k);
    }
  }

  const std::int64_t hit = first_hit.load();
  const std::int64_t err = first_error.load();
  if (err < hit) {
    // Re-raise from the serial path so the error text is the same.
    eval_exact(f, grid_point(a, spacing, err));
  }
  if (hit == none) return std::nullopt;
  const Rational x = grid_point(a, spacing, hit);
  return grid_certificate(x, eval_exact(f, x), hit);
}

std::vector<CurvePoint> sample_curve(const FunctionExpr& f, double x_min,
                                     double x_max, int count) {
  check_samples(x_min, x_max, count);
  std::vector<CurvePoint> points(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) {
    points[static_cast<std::size_t>(i)] = sample_at(f, x_min, x_max, count, i);
  }
  return points;
}

std::vector<BatchResult> run_batch(std::span<const BatchItem> items) {
  std::vector<BatchResult> results(items.size());
  const auto n = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    results[static_cast<std::size_t>(i)] =
        run_one(items[static_cast<std::size_t>(i)]);
  }
  return results;
}

namespace reference {

std::optional<WitnessCertificate> grid_oracle_serial(const FunctionExpr& f,
                                                     const Rational& a,
                                                     const Rational& b,
                                                     const Rational& epsilon,
                                                     std::int64_t grid_n) {
  check_grid(a, b, grid_n);
  const Rational spacing = (b - a) / Rational(static_cast<long>(grid_n));
  for (std::int64_t k = 0; k <= grid_n; ++k) {
    const Rational x = grid_point(a, spacing, k);
    Rational v = eval_exact(f, x);
    if (v.abs() < epsilon) return grid_certificate(x, std::move(v), k);
  }
  return std::nullopt;
}

std::vector<CurvePoint> sample_curve_serial(const FunctionExpr& f,
                                            double x_min, double x_max,
                                            int count) {
  check_samples(x_min, x_max, count);
  std::vector<CurvePoint> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    points.push_back(sample_at(f, x_min, x_max, count, i));
  }
  return points;
}

std::vector<BatchResult> run_batch_serial(std::span<const BatchItem> items) {
  std::vector<BatchResult> results;
  results.reserve(items.size());
  for (const auto& item : items) results.push_back(run_one(item));
  return results;
}

}  // namespace reference

}  // namespace ivt
