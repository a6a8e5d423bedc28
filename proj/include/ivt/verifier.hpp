#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ivt/core.hpp"

namespace ivt {

struct WitnessFound {
  int j = 0;
  Rational value;  // f(c_j), |value| < epsilon
};

struct SignsStraddle {
  Rational f_a_m;  // < 0
  Rational f_b_m;  // > 0
};

struct Violation {
  std::string detail;
};

// Outcome of the witness-or-straddle disjunction at step m.
struct ClaimOutcome {
  int m = 0;
  std::variant<WitnessFound, SignsStraddle, Violation> result;

  bool is_violation() const {
    return std::holds_alternative<Violation>(result);
  }
};

struct ContinuityBudget {
  Rational delta;
  int m = 0;
  Rational half_delta;
  Rational limit_term;  // (b-a)/2^(m-1), certified bound on |c - c_m|
  Rational width_term;  // (b-a)/2^m
  // {limit_term < delta/2, width_term < delta/2}
  std::pair<bool, bool> half_delta_checks{false, false};

  bool passed() const { return half_delta_checks.first && half_delta_checks.second; }
};

// GridPoint certificates come from the brute-force grid oracle, with j the
// grid index k of x = a + k(b-a)/grid_n.
enum class WitnessKind { MidpointWitness, LimitCandidate, GridPoint };

const char* witness_kind_name(WitnessKind kind);

struct WitnessCertificate {
  Rational x;
  Rational f_x;
  WitnessKind kind = WitnessKind::LimitCandidate;
  std::optional<int> j;  // MidpointWitness step or GridPoint index
};

// For each step m: the earliest j <= m with |f(c_j)| < eps, otherwise the
// signs of f at the endpoints of step m, otherwise a Violation. f is
// re-evaluated; a recorded f(c_n) that disagrees is itself a Violation.
std::vector<ClaimOutcome> check_claim(const ExactTrace& trace,
                                      const FunctionExpr& f);
// Throws BackendNotExact for float traces.
std::vector<ClaimOutcome> check_claim(const AnyTrace& trace,
                                      const FunctionExpr& f);

// Recurrence consistency of a (possibly hand-edited) trace: consecutive
// indices, exact midpoints, exact halving, nesting, weights in [0, 1] and
// equal to the mode's weight at the recorded f(c_n), the Cauchy modulus and
// the limit fields. Returns one message per problem found.
std::vector<std::string> check_structure(const ExactTrace& trace,
                                         const FunctionExpr& f);

WitnessCertificate extract_witness(const ExactTrace& trace,
                                   const FunctionExpr& f);
WitnessCertificate extract_witness(const AnyTrace& trace,
                                   const FunctionExpr& f);

// |c - c_m| is not computable, so the first check uses the bound
// (b-a)/2^(m-1) >= |c - c_m| instead; the check can only under-approve.
ContinuityBudget continuity_budget_check(const ExactTrace& trace,
                                         const Rational& delta, int m);

}  // namespace ivt
