#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "ivt/core.hpp"

using ivt::FunctionExpr;
using ivt::IterationState;
using ivt::ProblemConfig;
using ivt::Rational;
using ivt::WeightMode;

namespace {

Rational q(long n, long d) { return Rational::from_parts(ivt::BigInt(n), ivt::BigInt(d)); }

const FunctionExpr kExampleF = ivt::parse("min((1+6x^2)/7, 8+9x)");

ProblemConfig<Rational> example_config(const Rational& eps, int steps) {
  return ProblemConfig<Rational>{Rational(-1), Rational(1), eps, steps,
                                 WeightMode::Interpolated, false, std::nullopt};
}

}  // namespace

TEST_CASE("midpoint") {
  CHECK(ivt::midpoint(IterationState<Rational>{1, Rational(-1), Rational(1)}) == Rational(0));
  CHECK(ivt::midpoint(IterationState<Rational>{2, q(-13, 14), q(1, 14)}) == q(-3, 7));
  CHECK(ivt::midpoint(IterationState<Rational>{1, Rational(0), Rational(1)}) == q(1, 2));
}

TEST_CASE("interpolation_weight") {
  CHECK(ivt::interpolation_weight(q(1, 7), q(1, 3)) == q(13, 14));
  CHECK(ivt::interpolation_weight(q(1, 7), q(1, 2)) == q(11, 14));
  CHECK(ivt::interpolation_weight(Rational(0), q(2, 5)) == q(1, 2));
  CHECK(ivt::interpolation_weight(q(2, 5), q(2, 5)) == Rational(1));
  // Exactly 1 from f >= eps/2 and exactly 0 from f <= -eps/2.
  CHECK(ivt::interpolation_weight(q(1, 6), q(1, 3)) == Rational(1));
  CHECK(ivt::interpolation_weight(q(-1, 6), q(1, 3)) == Rational(0));
  CHECK(ivt::interpolation_weight(Rational(-5), q(1, 3)) == Rational(0));
  CHECK_THROWS_AS(ivt::interpolation_weight(Rational(1), Rational(0)), ivt::InvalidTolerance);
  CHECK_THROWS_AS(ivt::interpolation_weight(Rational(1), q(-1, 2)), ivt::InvalidTolerance);
}

TEST_CASE("classical_weight") {
  CHECK(ivt::classical_weight(q(-3, 10)) == Rational(0));
  CHECK(ivt::classical_weight(Rational(0)) == Rational(1));
  CHECK(ivt::classical_weight(q(1, 7)) == Rational(1));
  CHECK(ivt::classical_weight(-0.0) == 1.0);
}

TEST_CASE("step") {
  const IterationState<Rational> s{1, Rational(-1), Rational(1)};
  const auto next = ivt::step(s, q(11, 14), Rational(2));
  CHECK(next.n == 2);
  CHECK(next.a_n == q(-11, 14));
  CHECK(next.b_n == q(3, 14));
  CHECK(ivt::midpoint(next) == q(-2, 7));

  const auto left = ivt::step(s, Rational(1), Rational(2));
  CHECK(left.a_n == Rational(-1));
  CHECK(left.b_n == Rational(0));
  const auto right = ivt::step(s, Rational(0), Rational(2));
  CHECK(right.a_n == Rational(0));
  CHECK(right.b_n == Rational(1));

  CHECK_THROWS_AS(ivt::step(s, q(3, 2), Rational(2)), ivt::InvalidWeight);
  CHECK_THROWS_AS(ivt::step(s, q(-1, 100), Rational(2)), ivt::InvalidWeight);
}

TEST_CASE("cauchy_bound") {
  CHECK(ivt::cauchy_bound(1, Rational(2)) == Rational(2));
  CHECK(ivt::cauchy_bound(6, Rational(2)) == q(1, 16));
  CHECK(ivt::cauchy_bound(2, Rational(2)) == Rational(1));
  CHECK(ivt::cauchy_bound(3, 2.0) == 0.5);
}

TEST_CASE("run reproduces the first worked example") {
  const auto trace = ivt::run(example_config(q(1, 3), 40), kExampleF);
  REQUIRE(trace.steps.size() == 40);
  CHECK(trace.steps[0].c_n == Rational(0));
  CHECK(trace.steps[0].f_c_n == q(1, 7));
  CHECK(trace.steps[0].d_n == q(13, 14));
  CHECK(trace.steps[1].c_n == q(-3, 7));
  CHECK(std::fabs(trace.limit_estimate.to_double() + 0.8894) <= 5e-4);
  CHECK(ivt::eval_exact(kExampleF, trace.limit_estimate).abs() < q(1, 3));
  CHECK(trace.limit_error_bound == Rational(2).scaled_pow2(-39));
  CHECK_FALSE(trace.stopped_early_at.has_value());
}

TEST_CASE("run reproduces the second worked example") {
  const auto trace = ivt::run(example_config(q(1, 2), 40), kExampleF);
  REQUIRE(trace.steps.size() == 40);
  CHECK(trace.steps[0].d_n == q(11, 14));
  CHECK(trace.steps[1].c_n == q(-2, 7));
  CHECK(trace.steps[1].f_c_n == q(73, 343));
  CHECK(std::fabs(trace.limit_estimate.to_double() + 0.7485) <= 5e-4);
  CHECK(ivt::eval_exact(kExampleF, trace.limit_estimate) > q(1, 2));
}

TEST_CASE("run agrees with an independent transcription of the recurrence") {
  for (const Rational& eps : {q(1, 3), q(1, 2), q(1, 10)}) {
    const auto trace = ivt::run(example_config(eps, 25), kExampleF);
    const auto oracle = ivt::testing::direct_recurrence(kExampleF, Rational(-1), Rational(1), eps, 25);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      CHECK(trace.steps[i].a_n == oracle[i].lo);
      CHECK(trace.steps[i].b_n == oracle[i].hi);
    }
  }
}

TEST_CASE("classical run of f = x keeps 0 in every interval") {
  ProblemConfig<Rational> cfg{Rational(-1), Rational(1), q(1, 5), 10, WeightMode::Classical,
                              false, std::nullopt};
  const auto trace = ivt::run(cfg, FunctionExpr::var());
  REQUIRE(trace.steps.size() == 10);
  for (const auto& s : trace.steps) {
    CHECK(s.a_n <= Rational(0));
    CHECK(Rational(0) <= s.b_n);
  }
  CHECK(trace.limit_error_bound == q(2, 512));
}

TEST_CASE("stop_early halts at the first witness") {
  auto cfg = example_config(q(1, 3), 40);
  cfg.stop_early = true;
  const auto trace = ivt::run(cfg, kExampleF);
  CHECK(trace.steps.size() == 1);
  REQUIRE(trace.stopped_early_at.has_value());
  CHECK(*trace.stopped_early_at == 1);
  CHECK(trace.limit_estimate == Rational(0));
  CHECK(trace.limit_error_bound == Rational(2));

  cfg.epsilon = q(1, 100);
  const auto later = ivt::run(cfg, kExampleF);
  REQUIRE(later.stopped_early_at.has_value());
  CHECK(later.steps.back().f_c_n.abs() < q(1, 100));
  for (std::size_t i = 0; i + 1 < later.steps.size(); ++i) {
    CHECK(later.steps[i].f_c_n.abs() >= q(1, 100));
  }
}

TEST_CASE("run errors") {
  SUBCASE("sign precondition") {
    try {
      ivt::run(example_config(q(1, 2), 5), ivt::parse("x + 10"));
      FAIL("expected SignPreconditionViolated");
    } catch (const ivt::SignPreconditionViolated& e) {
      CHECK(e.f_a() == "9/1");
      CHECK(e.f_b() == "11/1");
    }
    // Strict: f(a) = 0 is rejected.
    ProblemConfig<Rational> cfg{Rational(0), Rational(1), q(1, 2), 5, WeightMode::Interpolated,
                                false, std::nullopt};
    CHECK_THROWS_AS(ivt::run(cfg, FunctionExpr::var()), ivt::SignPreconditionViolated);
  }
  SUBCASE("evaluation error reports x") {
    try {
      ivt::run(example_config(q(1, 2), 5), ivt::parse("x + 1/x - 1/x"));
      FAIL("expected EvalError");
    } catch (const ivt::EvalError& e) {
      CHECK(e.x() == "0/1");
    }
  }
  SUBCASE("invalid configs") {
    auto cfg = example_config(q(1, 2), 5);
    cfg.a = Rational(1);
    cfg.b = Rational(-1);
    CHECK_THROWS_AS(ivt::run(cfg, FunctionExpr::var()), ivt::InvalidConfig);
    cfg = example_config(Rational(0), 5);
    CHECK_THROWS_AS(ivt::run(cfg, FunctionExpr::var()), ivt::InvalidTolerance);
    cfg = example_config(q(1, 2), 0);
    CHECK_THROWS_AS(ivt::run(cfg, FunctionExpr::var()), ivt::InvalidConfig);
  }
}

TEST_CASE("quantize_weight") {
  CHECK(ivt::quantize_weight(q(1, 3), 4) == q(5, 16));
  CHECK(ivt::quantize_weight(Rational(0), 4) == Rational(0));
  CHECK(ivt::quantize_weight(Rational(1), 4) == Rational(1));
  CHECK(ivt::quantize_weight(q(1, 64), 4) == Rational(0));
  ivt::testing::Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const Rational d = ivt::clamp_unit(ivt::testing::random_rational(rng, 1000, 999));
    const Rational r = ivt::quantize_weight(d, 20);
    CHECK((r - d).abs() <= Rational(1).scaled_pow2(-21));
    CHECK(r.denominator() <= ivt::BigInt(1 << 20));
  }
}

TEST_CASE("structural invariants hold on random runs") {
  const auto corpus = ivt::testing::make_corpus(20, 77);
  for (const auto mode : {WeightMode::Interpolated, WeightMode::Classical}) {
    for (const auto& entry : corpus) {
      ProblemConfig<Rational> cfg{entry.a, entry.b, q(1, 3), 30, mode, false, 64U};
      const auto t = ivt::run(cfg, entry.f);
      const Rational w = entry.b - entry.a;
      REQUIRE(t.steps.size() == 30);
      for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        CHECK(s.n == static_cast<int>(i) + 1);
        CHECK(s.b_n - s.a_n == ivt::cauchy_bound(s.n, w));
        CHECK(s.c_n == (s.a_n + s.b_n) / Rational(2));
        CHECK(Rational(0) <= s.d_n);
        CHECK(s.d_n <= Rational(1));
        CHECK(entry.a <= s.a_n);
        CHECK(s.b_n <= entry.b);
        if (i + 1 < t.steps.size()) {
          const auto& nx = t.steps[i + 1];
          CHECK(s.a_n <= nx.a_n);
          CHECK(nx.a_n < nx.b_n);
          CHECK(nx.b_n <= s.b_n);
        }
        for (std::size_t j = i + 1; j < t.steps.size(); ++j) {
          CHECK((s.c_n - t.steps[j].c_n).abs() <= ivt::cauchy_bound(s.n, w));
        }
      }
    }
  }
}

TEST_CASE("next interval moves Lipschitz-continuously with f(c_n)") {
  ivt::testing::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const Rational w = ivt::testing::random_rational(rng, 20, 7).abs() + q(1, 3);
    const int n = std::uniform_int_distribution<int>(1, 30)(rng);
    const Rational a_n = ivt::testing::random_rational(rng, 50, 13);
    const IterationState<Rational> s{n, a_n, a_n + ivt::cauchy_bound(n, w)};
    const Rational eps = ivt::testing::random_rational(rng, 10, 11).abs() + q(1, 1000);
    const Rational f1 = ivt::testing::random_rational(rng, 10, 9);
    const Rational f2 = ivt::testing::random_rational(rng, 10, 9);
    const auto s1 = ivt::step(s, ivt::interpolation_weight(f1, eps), w);
    const auto s2 = ivt::step(s, ivt::interpolation_weight(f2, eps), w);
    const Rational bound = (f1 - f2).abs() / eps * w.scaled_pow2(-n);
    CHECK((s1.a_n - s2.a_n).abs() <= bound);
    CHECK((s1.b_n - s2.b_n).abs() <= bound);
  }
}

TEST_CASE("classical mode matches textbook bisection") {
  const auto corpus = ivt::testing::make_corpus(20, 1234);
  for (const auto& entry : corpus) {
    ProblemConfig<Rational> cfg{entry.a, entry.b, q(1, 3), 30, WeightMode::Classical, false,
                                std::nullopt};
    const auto t = ivt::run(cfg, entry.f);
    const auto oracle = ivt::testing::textbook_bisection(entry.f, entry.a, entry.b, 30);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      CHECK(t.steps[i].a_n == oracle[i].lo);
      CHECK(t.steps[i].b_n == oracle[i].hi);
    }
  }
}

TEST_CASE("weights agree outside the interpolation band") {
  ivt::testing::Rng rng(41);
  for (int i = 0; i < 2000; ++i) {
    const Rational eps = ivt::testing::random_rational(rng, 10, 7).abs() + q(1, 100);
    const Rational f = ivt::testing::random_rational(rng, 40, 9);
    if (f.abs() >= eps / Rational(2)) {
      CHECK(ivt::interpolation_weight(f, eps) == ivt::classical_weight(f));
    }
  }
  // Along the first worked example: identical steps until f(c_n) enters the band.
  auto cfg = example_config(q(1, 20), 30);
  const auto ti = ivt::run(cfg, kExampleF);
  cfg.mode = WeightMode::Classical;
  const auto tc = ivt::run(cfg, kExampleF);
  for (std::size_t i = 0; i < ti.steps.size(); ++i) {
    CHECK(ti.steps[i].a_n == tc.steps[i].a_n);
    if (ti.steps[i].f_c_n.abs() < q(1, 40)) break;
    CHECK(ti.steps[i].d_n == tc.steps[i].d_n);
  }
}

TEST_CASE("float backend follows the exact run") {
  const auto exact = ivt::run(example_config(q(1, 3), 40), kExampleF);
  const auto fl = ivt::run(ivt::convert_config<double>(example_config(q(1, 3), 40)), kExampleF);
  REQUIRE(fl.steps.size() == 40);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(std::fabs(fl.steps[i].c_n - exact.steps[i].c_n.to_double()) < 1e-9);
  }
  const auto any = ivt::run_backend(ivt::ScalarBackend{ivt::BackendKind::Float, 32},
                                    example_config(q(1, 3), 20), kExampleF);
  CHECK(std::holds_alternative<ivt::Trace<float>>(any));
  CHECK(ivt::backend_of(any).float_bits == 32);
  CHECK_THROWS_AS(ivt::run_backend(ivt::ScalarBackend{ivt::BackendKind::Float, 16},
                                   example_config(q(1, 3), 20), kExampleF),
                  ivt::InvalidConfig);
}
