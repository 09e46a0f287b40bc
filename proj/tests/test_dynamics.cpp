#include <cmath>
#include <vector>

#include "doctest.h"
#include "memeflow/dynamics.hpp"
#include "memeflow/errors.hpp"

using namespace memeflow;

TEST_CASE("logistic rhs roots and midpoint value") {
  const LogisticParams p{2.0, 4.0, 0.1};
  CHECK(logistic_rhs(0.0, p) == 0.0);
  CHECK(logistic_rhs(4.0, p) == 0.0);
  CHECK(logistic_rhs(2.0, p) == 2.0);  // (2/4) * 2 * 2
}

TEST_CASE("closed form boundary behaviour") {
  const LogisticParams p{1.0, 1.0, 0.01};
  CHECK(logistic_closed_form(0.0, p) == doctest::Approx(0.01).epsilon(1e-15));

  const LogisticParams still{0.0, 1.0, 0.25};
  for (double t : {0.0, 1.0, 10.0, 500.0})
    CHECK(logistic_closed_form(t, still) == doctest::Approx(0.25).epsilon(1e-15));

  // symmetric sigmoid: starts at the midpoint, curvature flips sign there
  const LogisticParams mid{1.0, 1.0, 0.5};
  CHECK(logistic_closed_form(0.0, mid) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(logistic_curvature(logistic_closed_form(-0.1, mid), mid) > 0.0);
  CHECK(logistic_curvature(logistic_closed_form(0.0, mid), mid) == doctest::Approx(0.0));
  CHECK(logistic_curvature(logistic_closed_form(0.1, mid), mid) < 0.0);
}

TEST_CASE("curvature roots, direct value and sign pattern") {
  const LogisticParams p{1.0, 1.0, 0.01};
  CHECK(logistic_curvature(0.0, p) == 0.0);
  CHECK(logistic_curvature(0.5, p) == 0.0);
  CHECK(logistic_curvature(1.0, p) == 0.0);
  CHECK(logistic_curvature(0.25, p) == doctest::Approx(0.09375).epsilon(1e-15));

  for (double y = 0.05; y < 0.5; y += 0.05) CHECK(logistic_curvature(y, p) > 0.0);
  for (double y = 0.55; y < 1.0; y += 0.05) CHECK(logistic_curvature(y, p) < 0.0);
}

TEST_CASE("exponential solution") {
  CHECK(exponential_solution(0.0, 2.0, 0.5) == 0.5);
  CHECK(exponential_solution(7.0, 0.0, 0.5) == 0.5);
  CHECK(exponential_solution(3.0, std::log(2.0), 1.0) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK_THROWS_AS(exponential_solution(1.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("closed form satisfies the growth equation") {
  const double h = 1e-5;
  for (const auto& p : {LogisticParams{1.0, 1.0, 0.01}, LogisticParams{0.8, 5.0, 0.05},
                        LogisticParams{2.5, 0.3, 0.02}}) {
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double dy =
          (logistic_closed_form(t + h, p) - logistic_closed_form(t - h, p)) / (2.0 * h);
      const double rhs = logistic_rhs(logistic_closed_form(t, p), p);
      CHECK(dy == doctest::Approx(rhs).epsilon(1e-7));
    }
  }
}

TEST_CASE("integrate matches the closed form") {
  const LogisticParams p{1.0, 1.0, 0.01};
  const TimeSeries series = integrate(p, 20.0, 0.01);
  REQUIRE(series.size() == 2001);

  double max_err = 0.0;
  for (const auto& s : series.samples)
    max_err = std::max(max_err, std::abs(s.y - logistic_closed_form(s.t, p)));
  CHECK(max_err < 1e-8);

  const TimeSeries longer = integrate(p, 40.0, 0.01);
  CHECK(std::abs(longer.samples.back().y - 1.0) < 1e-6);
}

TEST_CASE("integrate keeps the trajectory inside (0, deltaE) and monotone") {
  const LogisticParams p{2.0, 3.0, 0.03};
  const TimeSeries series = integrate(p, 15.0, 0.005);
  series.validate();
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(series.samples[i].y > 0.0);
    CHECK(series.samples[i].y < 3.0);
    if (i > 0) CHECK(series.samples[i].y >= series.samples[i - 1].y);
  }
}

TEST_CASE("integrate edge cases and guards") {
  const LogisticParams still{0.0, 1.0, 0.25};
  const TimeSeries flat = integrate(still, 5.0, 0.5);
  for (const auto& s : flat.samples) CHECK(s.y == 0.25);

  CHECK_THROWS_AS(integrate({1.0, 1.0, 0.01}, 1.0, 2.0), ValidationError);
  CHECK_THROWS_AS(integrate({10.0, 10.0, 0.1}, 5.0, 0.05), StepUnstable);  // guard: 5 >= 1
  CHECK_THROWS_AS(integrate({1.0, -1.0, 0.01}, 1.0, 0.01), ValidationError);
  CHECK_THROWS_AS(integrate({1.0, 1.0, 1.5}, 1.0, 0.01), ValidationError);
}

TEST_CASE("inflection shows up once, near half amplitude") {
  const LogisticParams p{1.0, 1.0, 0.01};
  const TimeSeries series = integrate(p, 20.0, 0.01);

  int sign_changes = 0;
  std::size_t flip_at = 0;
  for (std::size_t i = 1; i + 1 < series.size() - 1; ++i) {
    const auto d2 = [&](std::size_t k) {
      return series.samples[k + 1].y - 2.0 * series.samples[k].y + series.samples[k - 1].y;
    };
    if (d2(i) > 0.0 && d2(i + 1) < 0.0) {
      ++sign_changes;
      flip_at = i;
    }
  }
  CHECK(sign_changes == 1);
  CHECK(std::abs(series.samples[flip_at].y - 0.5) < 0.01);
}

TEST_CASE("time to 0.9 deltaE strictly decreases with affinity") {
  double previous = 1e300;
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    const TimeSeries series = integrate({a, 1.0, 0.01}, 40.0, 0.01);
    double reach = -1.0;
    for (const auto& s : series.samples)
      if (s.y >= 0.9) {
        reach = s.t;
        break;
      }
    REQUIRE(reach >= 0.0);
    CHECK(reach < previous);
    previous = reach;
  }
}

TEST_CASE("single stage equals the truncated integration plus the crossing") {
  const LogisticParams p{1.0, 1.0, 0.01};
  const std::vector<StageSpec> stages{{p, 0.5}};
  const TimeSeries staged = run_stages(stages, 0.01);
  staged.validate();

  const TimeSeries full = integrate(p, 20.0, 0.01);
  REQUIRE(staged.size() >= 2);
  for (std::size_t i = 0; i + 1 < staged.size(); ++i) {
    CHECK(staged.samples[i].t == full.samples[i].t);
    CHECK(staged.samples[i].y == full.samples[i].y);
    CHECK(staged.samples[i].y < 0.5);
  }
  CHECK(staged.samples.back().y == 0.5);  // interpolated exactly at the completion level
}

TEST_CASE("two identical stages stack to the frozen composite value") {
  const LogisticParams p{1.0, 1.0, 0.01};
  const std::vector<StageSpec> stages{{p, 0.99}, {p, 0.99}};
  const TimeSeries series = run_stages(stages, 0.01);
  series.validate();
  CHECK(std::abs(series.samples.back().y - 1.99) < 1e-6);
}

TEST_CASE("a more aggressive second stage completes faster") {
  const std::vector<StageSpec> stages{{{1.0, 1.0, 0.01}, 0.9}, {{2.0, 1.0, 0.01}, 0.9}};
  const TimeSeries series = run_stages(stages, 0.001);

  // the first crossing is the only sample at exactly 0.9
  double t_first = -1.0;
  for (const auto& s : series.samples)
    if (s.y == 0.9) {
      t_first = s.t;
      break;
    }
  REQUIRE(t_first > 0.0);
  const double t_second = series.samples.back().t - t_first;
  CHECK(t_second < t_first);
}

TEST_CASE("stages that cannot complete are rejected") {
  CHECK_THROWS_AS(run_stages({{{0.0, 1.0, 0.01}, 0.9}}, 0.01), ValidationError);
  CHECK_THROWS_AS(run_stages({{{-0.5, 1.0, 0.01}, 0.9}}, 0.01), ValidationError);
  CHECK_THROWS_AS(run_stages({}, 0.01), ValidationError);
  CHECK_THROWS_AS(run_stages({{{1.0, 1.0, 0.01}, 1.5}}, 0.01), ValidationError);
}

TEST_CASE("context checks are closed-interval") {
  const LogisticParams p{1.0, 1.0, 0.01};
  CHECK(check_context(p, {2.0, 2.0, 8.0}) == ContextValidity::InRange);
  CHECK(check_context(p, {9.0, 2.0, 8.0}) == ContextValidity::OutOfRange);
  CHECK(check_context(p, {2.0, 0.0, 10.0}) == ContextValidity::InRange);  // 2*deltaE in [0, 10*deltaE]
  CHECK_THROWS_AS(check_context(p, {1.0, 5.0, 2.0}), ValidationError);
}

TEST_CASE("params helpers") {
  const LogisticParams p = LogisticParams::from_epsilon(1.0, 4.0);
  CHECK(p.y0 == doctest::Approx(0.04).epsilon(1e-15));
  CHECK_THROWS_AS(LogisticParams::from_epsilon(1.0, 4.0, 1.5), ValidationError);
  const LogisticParams bad_params{1.0, 0.0, 0.1};
  CHECK_THROWS_AS(bad_params.validate(), ValidationError);

  TimeSeries bad;
  bad.samples = {{0.0, 1.0}, {0.0, 2.0}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
