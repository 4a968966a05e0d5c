#pragma once

#include <cstddef>
#include <optional>

#include "ratiosec/core.hpp"

namespace ratiosec::detail {

/// One run of the passive ratio-section loop, advanced a step at a time so
/// the active search can use it as its bootstrap.
class RatioStepper {
 public:
  /// Evaluates the interval midpoint. May throw BudgetExhausted.
  RatioStepper(CountingObjective& obj, const Interval& interval, const Tolerance& tol, double c,
               std::size_t run_start);

  /// Places and evaluates one probe, then applies the monotone check (at the
  /// fourth point), the flat-bottom rule and the bracket update. Returns the
  /// final outcome once the run terminates.
  std::optional<MinimizeOutcome> step();

  double lo() const noexcept { return a_; }
  double hi() const noexcept { return b_; }
  const Point2& best() const noexcept { return m_; }

  IterationRecord record(StepKind kind) const noexcept { return {a_, b_, b_ - a_, m_, kind}; }

  /// Outcome carrying the current best point, for interrupted runs.
  MinimizeOutcome partial(Status status) const;

 private:
  MinimizeOutcome finish(Point2 p, FunctionClass cls) const;

  CountingObjective& obj_;
  Interval interval_;
  const Tolerance& tol_;
  double c_;
  std::size_t start_;
  bool monotone_checked_ = false;
  double a_;
  double b_;
  Point2 m_;
};

}  // namespace ratiosec::detail
