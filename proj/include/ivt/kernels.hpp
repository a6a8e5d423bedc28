#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivt/core.hpp"
#include "ivt/verifier.hpp"

// Data-parallel kernels (OpenMP) used by plotting, the grid oracle and corpus
// verification. Each has a serial twin in ivt::reference that the tests and
// benchmarks compare against; results are identical by construction, the
// parallel versions only split the index range.
namespace ivt {

// First grid point x_k = a + k(b-a)/grid_n, k = 0..grid_n, with |f(x_k)| < eps,
// evaluated exactly. An EvalError at an earlier index than the first hit is
// rethrown.
std::optional<WitnessCertificate> grid_oracle(const FunctionExpr& f,
                                              const Rational& a,
                                              const Rational& b,
                                              const Rational& epsilon,
                                              std::int64_t grid_n);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  bool defined = true;  // false where f has a vanishing divisor
};

// count >= 2 equally spaced samples on [x_min, x_max], double arithmetic.
std::vector<CurvePoint> sample_curve(const FunctionExpr& f, double x_min,
                                     double x_max, int count);

struct BatchItem {
  ProblemConfig<Rational> config;
  FunctionExpr f;
};

struct BatchResult {
  std::optional<ExactTrace> trace;
  std::string error;  // set when run threw
};

std::vector<BatchResult> run_batch(std::span<const BatchItem> items);

namespace reference {

std::optional<WitnessCertificate> grid_oracle_serial(const FunctionExpr& f,
                                                     const Rational& a,
                                                     const Rational& b,
                                                     const Rational& epsilon,
                                                     std::int64_t grid_n);

std::vector<CurvePoint> sample_curve_serial(const FunctionExpr& f,
                                            double x_min, double x_max,
                                            int count);

std::vector<BatchResult> run_batch_serial(std::span<const BatchItem> items);

}  // namespace reference

int max_threads();

}  // namespace ivt
