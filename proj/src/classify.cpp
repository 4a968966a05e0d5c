#include "ratiosec/classify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace ratiosec {

namespace {

bool non_decreasing(std::span<const Point2> sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end(), [](const Point2& l, const Point2& r) {
           return r.y < l.y;
         }) == sorted.end();
}

bool non_increasing(std::span<const Point2> sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end(), [](const Point2& l, const Point2& r) {
           return r.y > l.y;
         }) == sorted.end();
}

}  // namespace

MonotoneCheck detect_monotone(std::span<const Point2> w, const Interval& interval,
                              CountingObjective& obj, const Tolerance& tol,
                              std::size_t run_start) {
  if (w.size() < 4) throw PreconditionError("monotone check needs at least 4 points");

  std::vector<Point2> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Point2& l, const Point2& r) { return l.x < r.x; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!interval.contains(sorted[i].x)) {
      throw PreconditionError("monotone check point lies outside the interval");
    }
    if (i > 0 && sorted[i].x == sorted[i - 1].x) {
      throw PreconditionError("monotone check needs pairwise-distinct abscissas");
    }
  }

  Direction direction;
  if (non_decreasing(sorted)) {
    direction = Direction::increasing;
  } else if (non_increasing(sorted)) {
    direction = Direction::decreasing;
  } else {
    return {};
  }

  const bool inc = direction == Direction::increasing;
  const double lowest = inc ? sorted.front().y : sorted.back().y;
  const double end = inc ? interval.lo() : interval.hi();

  MonotoneCheck check;
  const Point2 u = eval_within_budget(obj, end, tol, run_start);
  check.extra_evaluations = 1;
  if (!(u.y <= lowest)) return check;

  const double inner = inc ? end + e0(tol, end) : end - e0(tol, end);
  const Point2 v = eval_within_budget(obj, inner, tol, run_start);
  check.extra_evaluations = 2;
  if (!(u.y <= v.y)) return check;

  check.verdict = MonotoneVerdict{direction, u, 2};
  return check;
}

std::optional<Point2> detect_flat_bottom(std::span<const Point2> w) {
  // ordinate bits -> distinct abscissas seen so far (at most 3 kept)
  std::unordered_map<std::uint64_t, std::vector<double>> groups;
  std::vector<std::uint64_t> hits;
  for (const Point2& p : w) {
    auto& xs = groups[std::bit_cast<std::uint64_t>(p.y)];
    if (xs.size() < 3 && std::find(xs.begin(), xs.end(), p.x) == xs.end()) {
      xs.push_back(p.x);
      if (xs.size() == 3) hits.push_back(std::bit_cast<std::uint64_t>(p.y));
    }
  }
  if (hits.empty()) return std::nullopt;

  for (const Point2& p : w) {
    if (std::find(hits.begin(), hits.end(), std::bit_cast<std::uint64_t>(p.y)) != hits.end()) {
      return p;
    }
  }
  return std::nullopt;
}

FunctionClass verdict_class(const MonotoneVerdict& verdict, std::span<const Point2> run) {
  if (detect_flat_bottom(run)) return FunctionClass::flat_bottom;
  const Point2& u = verdict.minimizer;
  for (const Point2& p : run) {
    if (p.x != u.x && p.y == u.y) return FunctionClass::flat_bottom;
  }
  return verdict.direction == Direction::increasing ? FunctionClass::monotone_increasing
                                                    : FunctionClass::monotone_decreasing;
}

}  // namespace ratiosec
