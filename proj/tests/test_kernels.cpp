#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "ivt/kernels.hpp"

using ivt::FunctionExpr;
using ivt::Rational;

namespace {

Rational q(long n, long d) { return Rational::from_parts(ivt::BigInt(n), ivt::BigInt(d)); }

const FunctionExpr kExampleF = ivt::parse("min((1+6x^2)/7, 8+9x)");

}  // namespace

TEST_CASE("grid_oracle finds the first grid witness") {
  const auto w = ivt::grid_oracle(kExampleF, Rational(-1), Rational(1), q(1, 3), 1000);
  REQUIRE(w.has_value());
  CHECK(w->kind == ivt::WitnessKind::GridPoint);
  // Points -1 + k/500; |8 + 9x| < 1/3 first holds at k = 38.
  CHECK(w->j == 38);
  CHECK(w->x == q(-231, 250));
  CHECK(w->f_x == q(-79, 250));
  CHECK((w->x + q(8, 9)).abs() < q(1, 27));
  // k = 37 just misses.
  CHECK(ivt::eval_exact(kExampleF, q(-463, 500)).abs() >= q(1, 3));
}

TEST_CASE("grid_oracle small cases") {
  const auto mid = ivt::grid_oracle(FunctionExpr::var(), Rational(-1), Rational(1), q(1, 2), 2);
  REQUIRE(mid.has_value());
  CHECK(mid->x == Rational(0));
  CHECK(mid->j == 1);
  CHECK_FALSE(ivt::grid_oracle(ivt::parse("x + 10"), Rational(-1), Rational(1), q(1, 2), 1000)
                  .has_value());
  CHECK_THROWS_AS(ivt::grid_oracle(FunctionExpr::var(), Rational(-1), Rational(1), q(1, 2), 0),
                  ivt::InvalidConfig);
}

TEST_CASE("grid_oracle propagates evaluation errors before the first hit") {
  // 1/x is undefined at the grid midpoint 0, before any |f| < eps.
  const FunctionExpr f = ivt::parse("1/x + 100");
  CHECK_THROWS_AS(ivt::grid_oracle(f, Rational(-1), Rational(1), q(1, 2), 10), ivt::EvalError);
  CHECK_THROWS_AS(ivt::reference::grid_oracle_serial(f, Rational(-1), Rational(1), q(1, 2), 10),
                  ivt::EvalError);
  // A hit before the singular point wins.
  const FunctionExpr g = ivt::parse("1/x + 1");
  const auto w = ivt::grid_oracle(g, Rational(-1), Rational(1), q(1, 2), 10);
  REQUIRE(w.has_value());
  CHECK(w->x == Rational(-1));
}

TEST_CASE("parallel and serial grid oracles agree") {
  const auto corpus = ivt::testing::make_corpus(30, 606);
  for (const auto& e : corpus) {
    for (const Rational& eps : {q(1, 3), q(1, 10), q(1, 1000)}) {
      const auto par = ivt::grid_oracle(e.f, e.a, e.b, eps, 2000);
      const auto ser = ivt::reference::grid_oracle_serial(e.f, e.a, e.b, eps, 2000);
      REQUIRE(par.has_value() == ser.has_value());
      if (par) {
        CHECK(par->x == ser->x);
        CHECK(par->j == ser->j);
        CHECK(par->f_x == ser->f_x);
      }
    }
  }
}

TEST_CASE("parallel and serial curve sampling agree") {
  const auto par = ivt::sample_curve(kExampleF, -1.0, 1.0, 512);
  const auto ser = ivt::reference::sample_curve_serial(kExampleF, -1.0, 1.0, 512);
  REQUIRE(par.size() == 512);
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].x == ser[i].x);
    CHECK(par[i].y == ser[i].y);
  }
  CHECK(par.front().x == -1.0);
  CHECK(par.back().x == 1.0);
  CHECK(par.front().y == -1.0);

  const auto holes = ivt::sample_curve(ivt::parse("1/x"), -1.0, 1.0, 3);
  CHECK_FALSE(holes[1].defined);
  CHECK(holes[0].defined);
  CHECK_THROWS_AS(ivt::sample_curve(kExampleF, 1.0, 1.0, 10), ivt::InvalidConfig);
}

TEST_CASE("parallel and serial batch runs agree") {
  const auto corpus = ivt::testing::make_corpus(12, 909);
  std::vector<ivt::BatchItem> items;
  for (const auto& e : corpus) {
    items.push_back({ivt::ProblemConfig<Rational>{e.a, e.b, q(1, 3), 20,
                                                  ivt::WeightMode::Interpolated, false, 64U},
                     e.f});
  }
  // One failing item stays isolated.
  items.push_back({ivt::ProblemConfig<Rational>{Rational(-1), Rational(1), q(1, 3), 5,
                                                ivt::WeightMode::Interpolated, false,
                                                std::nullopt},
                   ivt::parse("x + 10")});
  const auto par = ivt::run_batch(items);
  const auto ser = ivt::reference::run_batch_serial(items);
  REQUIRE(par.size() == items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    REQUIRE(par[i].trace.has_value() == ser[i].trace.has_value());
    if (par[i].trace) {
      CHECK(par[i].trace->limit_estimate == ser[i].trace->limit_estimate);
      CHECK(par[i].trace->steps.size() == ser[i].trace->steps.size());
    }
  }
  CHECK_FALSE(par.back().trace.has_value());
  CHECK(par.back().error.find("sign precondition") != std::string::npos);
  CHECK(ivt::max_threads() >= 1);
}
