#include "ratiosec/brent.hpp"

#include <cmath>
#include <optional>

#include "ratiosec/classify.hpp"

namespace ratiosec {

namespace {

// Follows Brent's localmin procedure; variable names are his.
MinimizeOutcome brent_core(CountingObjective& obj, const Interval& interval, const Tolerance& tol,
                           double fallback, Recognizers rec, const IterationObserver& observer) {
  tol.validate();
  const std::size_t start = obj.count();
  auto spent = [&] { return obj.count() - start; };
  auto done = [&](const Point2& p, FunctionClass cls, Status status) {
    return MinimizeOutcome{p.x, p.y, spent(), cls, status};
  };

  double a = interval.lo();
  double b = interval.hi();
  Point2 x{a + kGoldenFraction * (b - a), 0.0};
  Point2 w;
  Point2 v;
  bool monotone_checked = false;

  // Runs the enabled recognizers after each evaluation.
  auto recognize = [&]() -> std::optional<MinimizeOutcome> {
    if (rec.monotone && !monotone_checked && spent() >= 4) {
      monotone_checked = true;
      const auto check = detect_monotone(obj.transcript_since(start), interval, obj, tol, start);
      if (check.verdict) {
        return done(check.verdict->minimizer,
                    rec.flat_bottom ? verdict_class(*check.verdict, obj.transcript_since(start))
                                    : verdict_class(*check.verdict, {}),
                    Status::converged);
      }
    }
    if (rec.flat_bottom) {
      if (const auto flat = detect_flat_bottom(obj.transcript_since(start))) {
        return done(*flat, FunctionClass::flat_bottom, Status::converged);
      }
    }
    return std::nullopt;
  };

  try {
    x = eval_within_budget(obj, x.x, tol, start);
    w = v = x;
    if (auto out = recognize()) return *out;
    if (observer) observer({a, b, b - a, x, StepKind::initial});

    double d = 0.0;
    double e = 0.0;
    while (true) {
      const double xm = 0.5 * (a + b);
      const double tol1 = e0(tol, x.x);
      const double t2 = 2.0 * tol1;
      if (std::abs(x.x - xm) <= t2 - 0.5 * (b - a)) break;

      StepKind kind = StepKind::golden;
      if (std::abs(e) > tol1) {
        double r = (x.x - w.x) * (x.y - v.y);
        double q = (x.x - v.x) * (x.y - w.y);
        double p = (x.x - v.x) * q - (x.x - w.x) * r;
        q = 2.0 * (q - r);
        if (q > 0.0) {
          p = -p;
        } else {
          q = -q;
        }
        r = e;
        e = d;
        if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x.x) && p < q * (b - x.x)) {
          d = p / q;
          kind = StepKind::parabolic;
          const double u = x.x + d;
          if (u - a < t2 || b - u < t2) {
            d = x.x < xm ? tol1 : -tol1;
            kind = StepKind::minimum_step;
          }
        }
      }
      if (kind == StepKind::golden) {
        e = x.x < xm ? b - x.x : a - x.x;
        d = fallback * e;
      }

      double step = d;
      if (std::abs(d) < tol1) {
        step = d >= 0.0 ? tol1 : -tol1;
        kind = StepKind::minimum_step;
      }
      const Point2 u = eval_within_budget(obj, x.x + step, tol, start);

      if (u.y <= x.y) {
        (u.x < x.x ? b : a) = x.x;
        v = w;
        w = x;
        x = u;
      } else {
        (u.x < x.x ? a : b) = u.x;
        if (u.y <= w.y || w.x == x.x) {
          v = w;
          w = u;
        } else if (u.y <= v.y || v.x == x.x || v.x == w.x) {
          v = u;
        }
      }
      if (auto out = recognize()) return *out;
      if (observer) {
        if (fallback != kGoldenFraction && kind == StepKind::golden) kind = StepKind::ratio_fallback;
        observer({a, b, b - a, x, kind});
      }
    }
  } catch (const BudgetExhausted&) {
    return done(x, FunctionClass::strict_interior, Status::budget_exhausted);
  }
  return done(x, FunctionClass::strict_interior, Status::converged);
}

}  // namespace

MinimizeOutcome brent_minimize(CountingObjective& obj, const Interval& interval,
                               const Tolerance& tol, const IterationObserver& observer) {
  return brent_core(obj, interval, tol, kGoldenFraction, Recognizers{false, false}, observer);
}

MinimizeOutcome brent_m_minimize(CountingObjective& obj, const Interval& interval,
                                 const Tolerance& tol, RatioConfig cfg, Recognizers recognizers,
                                 const IterationObserver& observer) {
  return brent_core(obj, interval, tol, cfg.c(), recognizers, observer);
}

}  // namespace ratiosec
