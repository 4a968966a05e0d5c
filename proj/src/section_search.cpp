#include "ratiosec/section_search.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "ratiosec/classify.hpp"
#include "ratio_stepper.hpp"

namespace ratiosec {

RatioConfig::RatioConfig(double c) : c_(c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw ConfigError(fmt::format("section ratio must lie in (0, 1), got {}", c));
  }
}

namespace {

void notify(const IterationObserver& observer, const IterationRecord& rec) {
  if (observer) observer(rec);
}

MinimizeOutcome outcome_at(const Point2& p, std::size_t evaluations, FunctionClass cls,
                           Status status) {
  return {p.x, p.y, evaluations, cls, status};
}

}  // namespace

namespace detail {

RatioStepper::RatioStepper(CountingObjective& obj, const Interval& interval, const Tolerance& tol,
                           double c, std::size_t run_start)
    : obj_(obj),
      interval_(interval),
      tol_(tol),
      c_(c),
      start_(run_start),
      a_(interval.lo()),
      b_(interval.hi()),
      m_(eval_within_budget(obj, interval.midpoint(), tol, run_start)) {}

MinimizeOutcome RatioStepper::finish(Point2 p, FunctionClass cls) const {
  return outcome_at(p, obj_.count() - start_, cls, Status::converged);
}

MinimizeOutcome RatioStepper::partial(Status status) const {
  return outcome_at(m_, obj_.count() - start_, FunctionClass::strict_interior, status);
}

std::optional<MinimizeOutcome> RatioStepper::step() {
  const double left = m_.x - a_;
  const double right = b_ - m_.x;
  if (stop_test(a_, b_, m_.x, tol_) || std::max(left, right) <= e0(tol_, m_.x)) {
    return finish(m_, FunctionClass::strict_interior);
  }

  // equal halves go right
  const double end = left > right ? a_ : b_;
  const Point2 p = eval_within_budget(obj_, c_ * end + (1.0 - c_) * m_.x, tol_, start_);

  if (!monotone_checked_ && obj_.count() - start_ >= 4) {
    monotone_checked_ = true;
    const auto check = detect_monotone(obj_.transcript_since(start_), interval_, obj_, tol_, start_);
    if (check.verdict) {
      return finish(check.verdict->minimizer,
                    verdict_class(*check.verdict, obj_.transcript_since(start_)));
    }
  }

  if (const auto flat = detect_flat_bottom(obj_.transcript_since(start_))) {
    return finish(*flat, FunctionClass::flat_bottom);
  }

  if (p.y < m_.y) {
    (p.x < m_.x ? b_ : a_) = m_.x;
    m_ = p;
  } else {
    (p.x < m_.x ? a_ : b_) = p.x;
  }
  return std::nullopt;
}

}  // namespace detail

MinimizeOutcome minimize_bisection(CountingObjective& obj, const Interval& interval,
                                   const Tolerance& tol, const IterationObserver& observer) {
  tol.validate();
  const std::size_t start = obj.count();
  double a = interval.lo();
  double b = interval.hi();
  std::optional<Point2> best;
  auto consider = [&](const Point2& p) {
    if (!best || p.y < best->y) best = p;
  };

  try {
    while (true) {
      const double mid = 0.5 * (a + b);
      if (stop_test(a, b, mid, tol)) break;
      const double delta = 0.5 * e0(tol, mid);
      const Point2 p1 = eval_within_budget(obj, mid - delta, tol, start);
      const Point2 p2 = eval_within_budget(obj, mid + delta, tol, start);
      consider(p1);
      consider(p2);
      if (p1.y <= p2.y) {
        b = p2.x;
      } else {
        a = p1.x;
      }
      notify(observer, {a, b, b - a, *best, StepKind::dichotomy});
    }
    if (!best) best = eval_within_budget(obj, 0.5 * (a + b), tol, start);
  } catch (const BudgetExhausted&) {
    const Point2 p = best.value_or(Point2{0.5 * (a + b), 0.0});
    return outcome_at(p, obj.count() - start, FunctionClass::strict_interior,
                      Status::budget_exhausted);
  }
  return outcome_at(*best, obj.count() - start, FunctionClass::strict_interior,
                    Status::converged);
}

MinimizeOutcome minimize_golden(CountingObjective& obj, const Interval& interval,
                                const Tolerance& tol, const IterationObserver& observer) {
  tol.validate();
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  const double rho = 1.0 - phi;
  const std::size_t start = obj.count();

  // The bracket is [a, a + len]; len is contracted by exactly phi per step.
  double a = interval.lo();
  double len = interval.length();
  std::optional<Point2> inner_lo;
  std::optional<Point2> inner_hi;
  auto best = [&] {
    if (!inner_lo) return inner_hi.value_or(Point2{interval.midpoint(), 0.0});
    if (!inner_hi) return *inner_lo;
    return inner_lo->y <= inner_hi->y ? *inner_lo : *inner_hi;
  };

  try {
    inner_lo = eval_within_budget(obj, a + rho * len, tol, start);
    inner_hi = eval_within_budget(obj, a + phi * len, tol, start);
    notify(observer, {a, a + len, len, best(), StepKind::initial});

    while (!stop_test(a, a + len, best().x, tol)) {
      const double next = phi * len;
      if (inner_lo->y <= inner_hi->y) {
        len = next;
        inner_hi = inner_lo;
        inner_lo.reset();
        inner_lo = eval_within_budget(obj, a + rho * len, tol, start);
      } else {
        a += len - next;
        len = next;
        inner_lo = inner_hi;
        inner_hi.reset();
        inner_hi = eval_within_budget(obj, a + phi * len, tol, start);
      }
      notify(observer, {a, a + len, len, best(), StepKind::golden});
    }
  } catch (const BudgetExhausted&) {
    return outcome_at(best(), obj.count() - start, FunctionClass::strict_interior,
                      Status::budget_exhausted);
  }
  return outcome_at(best(), obj.count() - start, FunctionClass::strict_interior,
                    Status::converged);
}

MinimizeOutcome minimize_ratio_p(CountingObjective& obj, const Interval& interval,
                                 const Tolerance& tol, RatioConfig cfg,
                                 const IterationObserver& observer) {
  tol.validate();
  const std::size_t start = obj.count();
  std::optional<detail::RatioStepper> stepper;
  try {
    stepper.emplace(obj, interval, tol, cfg.c(), start);
    notify(observer, stepper->record(StepKind::initial));
    while (true) {
      if (auto done = stepper->step()) return *done;
      notify(observer, stepper->record(StepKind::ratio_section));
    }
  } catch (const BudgetExhausted&) {
    if (stepper) return stepper->partial(Status::budget_exhausted);
    return outcome_at({interval.midpoint(), 0.0}, obj.count() - start,
                      FunctionClass::strict_interior, Status::budget_exhausted);
  }
}

}  // namespace ratiosec
