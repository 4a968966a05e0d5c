#pragma once

#include "ratiosec/core.hpp"

namespace ratiosec {

/// Section ratio c in (0, 1): a new probe is placed at c*end + (1-c)*m.x.
class RatioConfig {
 public:
  /// Throws ConfigError unless 0 < c < 1.
  explicit RatioConfig(double c);

  double c() const noexcept { return c_; }

 private:
  double c_;
};

/// Dichotomous search: two probes straddling the midpoint at distance
/// e0(mid)/2 per iteration. Does not classify.
MinimizeOutcome minimize_bisection(CountingObjective& obj, const Interval& interval,
                                   const Tolerance& tol, const IterationObserver& observer = {});

/// Classical golden section search, one evaluation per iteration after the
/// first two. Does not classify.
MinimizeOutcome minimize_golden(CountingObjective& obj, const Interval& interval,
                                const Tolerance& tol, const IterationObserver& observer = {});

/// Passive ratio-section search.
///
/// Starts from the midpoint and places each probe on the longer side of the
/// current best point at ratio c. Recognizes monotone targets once four points
/// exist and flat bottoms whenever three equal ordinates appear.
MinimizeOutcome minimize_ratio_p(CountingObjective& obj, const Interval& interval,
                                 const Tolerance& tol, RatioConfig cfg,
                                 const IterationObserver& observer = {});

}  // namespace ratiosec
