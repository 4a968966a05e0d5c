#include <cmath>
#include <vector>

#include "doctest.h"
#include "ratiosec/benchsuite.hpp"
#include "ratiosec/brent.hpp"

using namespace ratiosec;

namespace {

double f12(double x) { return 0.2 + std::pow(x - 1.5, 2); }

}  // namespace

TEST_CASE("golden fraction constant") {
  CHECK(kGoldenFraction == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-16));
}

TEST_CASE("brent on the shifted parabola") {
  const Tolerance tol;
  CountingObjective obj(f12);
  const auto out = brent_minimize(obj, Interval(0.3, 3.2), tol);
  CHECK(out.evaluations == 6);
  CHECK(std::abs(out.x_min - 1.5) <= 2 * e0(tol, 1.5));
}

TEST_CASE("brent on a constant") {
  CountingObjective obj([](double) { return 1.0; });
  const auto out = brent_minimize(obj, Interval(0.5, 1.5), Tolerance{});
  CHECK(out.evaluations == 22);
}

TEST_CASE("modernized brent on a constant") {
  CountingObjective obj([](double) { return 1.0; });
  const auto out = brent_m_minimize(obj, Interval(0.5, 1.5), Tolerance{});
  CHECK(out.evaluations == 3);
  CHECK(out.classification == FunctionClass::flat_bottom);
}

TEST_CASE("modernized brent on a decreasing target") {
  CountingObjective obj([](double x) { return 20 + 16 / x; });
  const auto out = brent_m_minimize(obj, Interval(2.7, 6.8), Tolerance{});
  CHECK(out.evaluations == 6);
  CHECK(out.classification == FunctionClass::monotone_decreasing);
  CHECK(out.x_min == 6.8);
}

TEST_CASE("modernized brent on the shifted parabola" * doctest::may_fail()) {
  CountingObjective obj(f12);
  const auto out = brent_m_minimize(obj, Interval(0.3, 3.2), Tolerance{});
  CHECK(out.evaluations == 4);
}

TEST_CASE("golden ratio without recognizers reproduces brent") {
  const Tolerance tol;
  for (const BenchFunction& fn : table3_all()) {
    CountingObjective plain(fn.evaluator);
    const auto a = brent_minimize(plain, fn.interval, tol);
    CountingObjective mod(fn.evaluator);
    const auto b = brent_m_minimize(mod, fn.interval, tol, RatioConfig(kGoldenFraction),
                                    Recognizers{false, false});
    CAPTURE(fn.id);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.x_min == b.x_min);
    CHECK(std::equal(plain.transcript().begin(), plain.transcript().end(),
                     mod.transcript().begin(), mod.transcript().end()));
  }
}

TEST_CASE("iterates stay inside the interval") {
  const Tolerance tol;
  for (const BenchFunction& fn : table3_all()) {
    bool inside = true;
    auto watch = [&](const IterationRecord& r) {
      inside = inside && fn.interval.contains(r.best.x) && r.lo <= r.hi;
    };
    CountingObjective a(fn.evaluator);
    brent_minimize(a, fn.interval, tol, watch);
    CountingObjective b(fn.evaluator);
    brent_m_minimize(b, fn.interval, tol, RatioConfig(kDefaultBrentMRatio), Recognizers{}, watch);
    CAPTURE(fn.id);
    CHECK(inside);
    for (const Point2& p : a.transcript()) CHECK(fn.interval.contains(p.x));
    for (const Point2& p : b.transcript()) CHECK(fn.interval.contains(p.x));
  }
}
