#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "ratiosec/core.hpp"
#include "ratiosec/section_search.hpp"

namespace ratiosec {

/// Three points bracketing a minimum: left.x < mid.x < right.x and mid lower
/// than both neighbours.
struct BracketTriple {
  Point2 left;
  Point2 mid;
  Point2 right;

  bool valid() const noexcept {
    return left.x < mid.x && mid.x < right.x && mid.y < left.y && mid.y < right.y;
  }
};

/// The interpolating parabola has no vertex (collinear points).
class NoVertexError : public std::domain_error {
 public:
  NoVertexError() : std::domain_error("points are collinear; parabola has no vertex") {}
};

/// Abscissa of the vertex of the parabola through the three points.
/// Throws NoVertexError when the denominator vanishes.
double parabola_vertex(const Point2& left, const Point2& mid, const Point2& right);
inline double parabola_vertex(const BracketTriple& t) {
  return parabola_vertex(t.left, t.mid, t.right);
}

/// Scans the points for neighbours (in abscissa order) that bracket a lower
/// middle point; returns the bracket whose middle ordinate is smallest.
std::optional<BracketTriple> find_bracket_triple(std::span<const Point2> points);

inline constexpr double kDefaultActiveRatio = 1e-3;

/// Active ratio-section search.
///
/// Bootstraps with the passive search at c = 0.5 until a bracketing triple
/// exists, then steps to parabola vertices. A vertex that is undefined, falls
/// outside the bracket or lands within e0 of the middle point is replaced by a
/// ratio-section probe c*s + (1-c)*mid toward the farther bracket end s.
MinimizeOutcome minimize_ratio_a(CountingObjective& obj, const Interval& interval,
                                 const Tolerance& tol,
                                 RatioConfig cfg = RatioConfig(kDefaultActiveRatio),
                                 const IterationObserver& observer = {});

}  // namespace ratiosec
