#pragma once

#include "ratiosec/core.hpp"
#include "ratiosec/section_search.hpp"

namespace ratiosec {

/// (3 - sqrt(5)) / 2, the golden step fraction of Brent's method.
inline constexpr double kGoldenFraction = 0.38196601125010515;

inline constexpr double kDefaultBrentMRatio = 0.2;

/// Which fast recognizers the modernized method runs.
struct Recognizers {
  bool flat_bottom = true;
  bool monotone = true;
};

/// Brent's local minimizer: parabolic steps through the three best points,
/// with golden-section steps when the parabola is rejected. Does not classify.
MinimizeOutcome brent_minimize(CountingObjective& obj, const Interval& interval,
                               const Tolerance& tol, const IterationObserver& observer = {});

/// Brent's method with the golden fallback replaced by the ratio step d = c*e
/// and with the flat-bottom and monotone recognizers grafted in.
///
/// With c = kGoldenFraction and both recognizers disabled this reproduces
/// brent_minimize() exactly.
MinimizeOutcome brent_m_minimize(CountingObjective& obj, const Interval& interval,
                                 const Tolerance& tol,
                                 RatioConfig cfg = RatioConfig(kDefaultBrentMRatio),
                                 Recognizers recognizers = {},
                                 const IterationObserver& observer = {});

}  // namespace ratiosec
