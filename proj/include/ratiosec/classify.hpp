#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "ratiosec/core.hpp"

namespace ratiosec {

enum class Direction { increasing, decreasing };

struct MonotoneVerdict {
  Direction direction = Direction::increasing;
  Point2 minimizer;
  int extra_evaluations = 0;
};

struct MonotoneCheck {
  std::optional<MonotoneVerdict> verdict;
  /// Probes spent, 0 to 2, whether or not the hypothesis survived.
  int extra_evaluations = 0;
};

/// Monotonicity recognizer.
///
/// Sorts a copy of `w` by abscissa. If the ordinates form a non-strictly
/// monotone sequence, probes the endpoint the hypothesis names as minimizer
/// (lo for increasing, hi for decreasing) and then a point e0 inside it. The
/// hypothesis is confirmed when the endpoint is no higher than every sampled
/// ordinate and no higher than the inner probe.
///
/// Requires at least 4 points with pairwise-distinct abscissas, all inside
/// `interval`; throws PreconditionError otherwise. May throw BudgetExhausted
/// when `run_start` is the transcript offset of the calling run.
MonotoneCheck detect_monotone(std::span<const Point2> w, const Interval& interval,
                              CountingObjective& obj, const Tolerance& tol,
                              std::size_t run_start = 0);

/// Flat-bottom rule: returns the earliest point belonging to any group of at
/// least three points with pairwise-distinct abscissas and bit-identical
/// ordinates.
std::optional<Point2> detect_flat_bottom(std::span<const Point2> w);

/// Classification reported for a confirmed monotone verdict. The target is
/// reported as flat_bottom when `run` holds a flat-bottom triple or another
/// point level with the minimizer.
FunctionClass verdict_class(const MonotoneVerdict& verdict, std::span<const Point2> run);

}  // namespace ratiosec
