#include "ivt/verifier.hpp"

#include <optional>

namespace ivt {

namespace {

std::optional<Rational> try_eval(const FunctionExpr& f, const Rational& x,
                                 std::string& error) {
  try {
    return eval_exact(f, x);
  } catch (const EvalError& e) {
    error = e.what();
    return std::nullopt;
  }
}

const ExactTrace& require_exact(const AnyTrace& trace) {
  const auto* exact = std::get_if<ExactTrace>(&trace);
  if (exact == nullptr) throw BackendNotExact();
  return *exact;
}

}  // namespace

const char* witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::MidpointWitness: return "midpoint";
    case WitnessKind::LimitCandidate: return "limit_candidate";
    case WitnessKind::GridPoint: return "grid_point";
  }
  return "?";
}

std::vector<ClaimOutcome> check_claim(const ExactTrace& trace,
                                      const FunctionExpr& f) {
  const Rational& eps = trace.config.epsilon;
  std::vector<ClaimOutcome> outcomes;
  outcomes.reserve(trace.steps.size());
  std::optional<WitnessFound> earliest;
  for (const auto& s : trace.steps) {
    ClaimOutcome out{s.n, Violation{}};
    std::string error;
    const auto f_c = try_eval(f, s.c_n, error);
    if (!f_c) {
      out.result = Violation{"f undefined at c_" + std::to_string(s.n) + ": " + error};
      outcomes.push_back(std::move(out));
      continue;
    }
    if (*f_c != s.f_c_n) {
      out.result = Violation{"recorded f(c_" + std::to_string(s.n) + ") = " +
                             s.f_c_n.str() + " but f evaluates to " +
                             f_c->str()};
      outcomes.push_back(std::move(out));
      continue;
    }
    if (!earliest && f_c->abs() < eps) earliest = WitnessFound{s.n, *f_c};
    if (earliest) {
      out.result = *earliest;
    } else {
      const auto f_a = try_eval(f, s.a_n, error);
      const auto f_b = f_a ? try_eval(f, s.b_n, error) : std::nullopt;
      if (!f_a || !f_b) {
        out.result = Violation{"f undefined at an endpoint of step " +
                               std::to_string(s.n) + ": " + error};
      } else if (f_a->sign() < 0 && f_b->sign() > 0) {
        out.result = SignsStraddle{*f_a, *f_b};
      } else {
        out.result = Violation{
            "step " + std::to_string(s.n) + ": no earlier witness and f(a_m) = " +
            f_a->str() + ", f(b_m) = " + f_b->str() + " do not straddle zero"};
      }
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

std::vector<ClaimOutcome> check_claim(const AnyTrace& trace,
                                      const FunctionExpr& f) {
  return check_claim(require_exact(trace), f);
}

std::vector<std::string> check_structure(const ExactTrace& trace,
                                         const FunctionExpr& f) {
  std::vector<std::string> problems;
  auto report = [&](int n, const std::string& what) {
    problems.push_back("step " + std::to_string(n) + ": " + what);
  };
  const auto& cfg = trace.config;
  if (!(cfg.a < cfg.b)) problems.push_back("config: a >= b");
  if (cfg.epsilon.sign() <= 0) problems.push_back("config: epsilon <= 0");
  if (trace.steps.empty()) {
    problems.push_back("trace has no steps");
    return problems;
  }
  if (static_cast<int>(trace.steps.size()) > cfg.max_steps) {
    problems.push_back("more steps than max_steps");
  }
  const Rational width = cfg.b - cfg.a;
  const Rational zero(0);
  const Rational one(1);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const int expected_n = static_cast<int>(i) + 1;
    if (s.n != expected_n) {
      report(s.n, "index out of sequence, expected " + std::to_string(expected_n));
      continue;
    }
    if (i == 0 && (s.a_n != cfg.a || s.b_n != cfg.b)) {
      report(s.n, "first interval is not [a, b]");
    }
    if (s.c_n != (s.a_n + s.b_n) / Rational(2)) report(s.n, "c_n is not the midpoint");
    if (s.b_n - s.a_n != cauchy_bound(s.n, width)) {
      report(s.n, "width is not (b-a)/2^(n-1)");
    }
    if (s.d_n < zero || one < s.d_n) report(s.n, "d_n outside [0, 1]");
    try {
      if (eval_exact(f, s.c_n) != s.f_c_n) report(s.n, "f(c_n) does not match f");
    } catch (const EvalError& e) {
      report(s.n, e.what());
    }
    try {
      if (weight_for(cfg, s.f_c_n) != s.d_n) {
        report(s.n, std::string("d_n is not the ") + mode_name(cfg.mode) +
                        " weight of f(c_n)");
      }
    } catch (const Error& e) {
      report(s.n, e.what());
    }
    if (i + 1 < trace.steps.size()) {
      const auto& next = trace.steps[i + 1];
      const Rational shift = s.d_n * width.scaled_pow2(-s.n);
      if (next.a_n != s.c_n - shift || next.b_n != s.b_n - shift) {
        report(next.n, "interval does not follow the recurrence");
      }
      if (!(s.a_n <= next.a_n && next.a_n < next.b_n && next.b_n <= s.b_n)) {
        report(next.n, "interval not nested in its predecessor");
      }
    }
  }
  for (std::size_t m = 0; m < trace.steps.size(); ++m) {
    const Rational bound = cauchy_bound(trace.steps[m].n, width);
    for (std::size_t n = m + 1; n < trace.steps.size(); ++n) {
      if (bound < (trace.steps[m].c_n - trace.steps[n].c_n).abs()) {
        report(trace.steps[n].n, "|c_m - c_n| exceeds (b-a)/2^(m-1) for m = " +
                                     std::to_string(trace.steps[m].n));
      }
    }
  }
  const auto& last = trace.steps.back();
  if (trace.limit_estimate != last.c_n) {
    problems.push_back("limit_estimate is not the last midpoint");
  }
  if (trace.limit_error_bound != cauchy_bound(last.n, width)) {
    problems.push_back("limit_error_bound is not (b-a)/2^(N-1)");
  }
  if (trace.stopped_early_at) {
    if (*trace.stopped_early_at != last.n || !(last.f_c_n.abs() < cfg.epsilon)) {
      problems.push_back("stopped_early_at does not mark a final witness step");
    }
  }
  return problems;
}

WitnessCertificate extract_witness(const ExactTrace& trace,
                                   const FunctionExpr& f) {
  for (const auto& s : trace.steps) {
    const Rational v = eval_exact(f, s.c_n);
    if (v.abs() < trace.config.epsilon) {
      return WitnessCertificate{s.c_n, v, WitnessKind::MidpointWitness, s.n};
    }
  }
  return WitnessCertificate{trace.limit_estimate,
                            eval_exact(f, trace.limit_estimate),
                            WitnessKind::LimitCandidate, std::nullopt};
}

WitnessCertificate extract_witness(const AnyTrace& trace,
                                   const FunctionExpr& f) {
  return extract_witness(require_exact(trace), f);
}

ContinuityBudget continuity_budget_check(const ExactTrace& trace,
                                         const Rational& delta, int m) {
  if (delta.sign() <= 0) throw InvalidConfig("delta must be positive");
  if (m < 1 || m > static_cast<int>(trace.steps.size())) {
    throw InvalidConfig("m = " + std::to_string(m) + " is outside the trace (1.." +
                        std::to_string(trace.steps.size()) + ")");
  }
  const Rational width = trace.config.b - trace.config.a;
  ContinuityBudget budget;
  budget.delta = delta;
  budget.m = m;
  budget.half_delta = delta / Rational(2);
  budget.limit_term = cauchy_bound(m, width);
  budget.width_term = width.scaled_pow2(-m);
  budget.half_delta_checks = {budget.limit_term < budget.half_delta,
                              budget.width_term < budget.half_delta};
  return budget;
}

}  // namespace ivt
