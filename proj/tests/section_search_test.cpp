#include <cmath>
#include <random>

#include "doctest.h"
#include "ratiosec/benchsuite.hpp"
#include "ratiosec/section_search.hpp"

using namespace ratiosec;

namespace {

double f12(double x) { return 0.2 + std::pow(x - 1.5, 2); }

}  // namespace

TEST_CASE("ratio must lie strictly inside (0, 1)") {
  CHECK_THROWS_AS(RatioConfig(0.0), ConfigError);
  CHECK_THROWS_AS(RatioConfig(1.0), ConfigError);
  CHECK_THROWS_AS(RatioConfig(-0.3), ConfigError);
  CHECK_THROWS_AS(RatioConfig(std::nan("")), ConfigError);
  CHECK(RatioConfig(0.2).c() == 0.2);
}

TEST_CASE("bisection on the shifted parabola" * doctest::may_fail()) {
  CountingObjective obj(f12);
  const auto out = minimize_bisection(obj, Interval(0.3, 3.2), Tolerance{});
  CHECK(out.evaluations == 36);
}

TEST_CASE("golden search on the shifted parabola" * doctest::may_fail()) {
  CountingObjective obj(f12);
  const auto out = minimize_golden(obj, Interval(0.3, 3.2), Tolerance{});
  CHECK(out.evaluations == 28);
}

TEST_CASE("bisection finds a symmetric minimum") {
  const Tolerance tol;
  CountingObjective obj([](double x) { return (x - 1) * (x - 1); });
  const auto out = minimize_bisection(obj, Interval(0, 2), tol);
  CHECK(std::abs(out.x_min - 1) <= 2 * e0(tol, 1));
  CHECK(out.status == Status::converged);
  CHECK(out.evaluations == obj.count());
}

TEST_CASE("constant target takes three evaluations for any ratio") {
  for (double c : {0.05, 0.2, 0.5, 0.9}) {
    CountingObjective obj([](double) { return 1.0; });
    const auto out = minimize_ratio_p(obj, Interval(0.5, 1.5), Tolerance{}, RatioConfig(c));
    CHECK(out.evaluations == 3);
    CHECK(out.classification == FunctionClass::flat_bottom);
  }
}

TEST_CASE("increasing exponential stops at the left end") {
  CountingObjective obj([](double x) { return 1.5 + std::exp(x); });
  const auto out = minimize_ratio_p(obj, Interval(1.2, 3.7), Tolerance{}, RatioConfig(0.5));
  CHECK(out.evaluations == 6);
  CHECK(out.classification == FunctionClass::monotone_increasing);
  CHECK(out.x_min == 1.2);
}

TEST_CASE("ratio 0.2 on the shifted parabola") {
  const Tolerance tol;
  CountingObjective obj(f12);
  const auto out = minimize_ratio_p(obj, Interval(0.3, 3.2), tol, RatioConfig(0.2));
  CHECK(out.evaluations == 20);
  CHECK(std::abs(out.x_min - 1.5) <= 2 * e0(tol, 1.5));
  CHECK(out.classification == FunctionClass::strict_interior);
}

TEST_CASE("brackets keep the minimizer of random quadratics") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> centre(-5, 5);
  std::uniform_real_distribution<double> side(0.1, 6);
  std::uniform_real_distribution<double> curve(0.1, 10);
  const Tolerance tol;
  for (int i = 0; i < 200; ++i) {
    const double v = centre(rng);
    const double a = curve(rng);
    const Interval interval(v - side(rng), v + side(rng));
    auto target = [=](double x) { return a * (x - v) * (x - v); };
    bool kept = true;
    auto watch = [&](const IterationRecord& r) { kept = kept && r.lo <= v && v <= r.hi; };
    CountingObjective g(target);
    minimize_golden(g, interval, tol, watch);
    CountingObjective b(target);
    minimize_bisection(b, interval, tol, watch);
    CountingObjective p(target);
    const auto out = minimize_ratio_p(p, interval, tol, RatioConfig(0.2), watch);
    CHECK(kept);
    CHECK(std::abs(out.x_min - v) <= 2 * e0(tol, v));
  }
}

TEST_CASE("golden widths shrink by the golden ratio") {
  const Tolerance tol{1e-9, 1e-12, 1000};
  std::vector<double> widths;
  CountingObjective obj(f12);
  minimize_golden(obj, Interval(0.3, 3.2), tol,
                  [&](const IterationRecord& r) { widths.push_back(r.width); });
  REQUIRE(widths.size() > 10);
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (std::size_t i = 1; i < 10; ++i) CHECK(widths[i] / widths[i - 1] == doctest::Approx(phi));
}

TEST_CASE("count does not fall as the tolerance tightens") {
  for (int id : {8, 11, 12, 15}) {
    const auto& fn = table3(id);
    std::size_t last = 0;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
      CountingObjective obj(fn.evaluator);
      const auto out = minimize_golden(obj, fn.interval, Tolerance{eps, 1e-10, 1000});
      CHECK(out.evaluations >= last);
      last = out.evaluations;
    }
  }
}

TEST_CASE("small budget reports exhaustion") {
  CountingObjective obj(f12);
  const auto out = minimize_ratio_p(obj, Interval(0.3, 3.2), Tolerance{1e-5, 1e-10, 5},
                                    RatioConfig(0.2));
  CHECK(out.status == Status::budget_exhausted);
  CHECK(out.evaluations == 5);
}
