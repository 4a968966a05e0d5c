#include "ratiosec/active_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ratio_stepper.hpp"

namespace ratiosec {

double parabola_vertex(const Point2& left, const Point2& mid, const Point2& right) {
  // Centered form of the three-point vertex formula.
  const double dl = mid.x - left.x;
  const double dr = mid.x - right.x;
  const double gl = mid.y - left.y;
  const double gr = mid.y - right.y;
  const double den = dl * gr - dr * gl;
  // collinear up to rounding of the two products
  const double scale = std::abs(dl * gr) + std::abs(dr * gl);
  if (!(std::abs(den) > 64.0 * std::numeric_limits<double>::epsilon() * scale)) {
    throw NoVertexError();
  }
  const double num = dl * dl * gr - dr * dr * gl;
  const double r = mid.x - 0.5 * num / den;
  if (!std::isfinite(r)) throw NoVertexError();
  return r;
}

std::optional<BracketTriple> find_bracket_triple(std::span<const Point2> points) {
  std::vector<Point2> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Point2& l, const Point2& r) { return l.x < r.x; });
  std::optional<BracketTriple> best;
  for (std::size_t i = 1; i + 1 < sorted.size(); ++i) {
    const BracketTriple t{sorted[i - 1], sorted[i], sorted[i + 1]};
    if (t.valid() && (!best || t.mid.y < best->mid.y)) best = t;
  }
  return best;
}

namespace {

void notify(const IterationObserver& observer, const IterationRecord& rec) {
  if (observer) observer(rec);
}

// Standard three-point bracket update with a new probe p.
void absorb(BracketTriple& t, const Point2& p) {
  if (p.y < t.mid.y) {
    if (p.x < t.mid.x) {
      t.right = t.mid;
    } else {
      t.left = t.mid;
    }
    t.mid = p;
  } else if (p.x < t.mid.x) {
    t.left = p;
  } else {
    t.right = p;
  }
}

}  // namespace

MinimizeOutcome minimize_ratio_a(CountingObjective& obj, const Interval& interval,
                                 const Tolerance& tol, RatioConfig cfg,
                                 const IterationObserver& observer) {
  tol.validate();
  const std::size_t start = obj.count();
  const double c = cfg.c();
  std::optional<detail::RatioStepper> boot;
  std::optional<BracketTriple> triple;

  auto done = [&](const Point2& p, FunctionClass cls, Status status) {
    return MinimizeOutcome{p.x, p.y, obj.count() - start, cls, status};
  };

  try {
    boot.emplace(obj, interval, tol, 0.5, start);
    notify(observer, boot->record(StepKind::initial));
    while (!(triple = find_bracket_triple(obj.transcript_since(start)))) {
      if (auto out = boot->step()) return *out;
      notify(observer, boot->record(StepKind::ratio_section));
    }

    BracketTriple& t = *triple;
    // widths before the last two iterations
    double width_1 = HUGE_VAL;
    double width_2 = HUGE_VAL;
    while (true) {
      const double tol_mid = e0(tol, t.mid.x);
      const double width = t.right.x - t.left.x;
      if (width <= 2.0 * tol_mid) {
        return done(t.mid, FunctionClass::strict_interior, Status::converged);
      }

      StepKind kind = StepKind::parabolic;
      double r = 0.0;
      bool accepted = false;
      const bool stalled = width > 0.5 * width_2;
      width_2 = width_1;
      width_1 = width;
      if (stalled) {
        // halve the longer side when the bracket stopped shrinking
        kind = StepKind::ratio_section;
        const bool go_left = t.mid.x - t.left.x > t.right.x - t.mid.x;
        r = 0.5 * ((go_left ? t.left.x : t.right.x) + t.mid.x);
        width_1 = width_2 = HUGE_VAL;
        accepted = std::abs(r - t.mid.x) >= tol_mid;
      } else {
        try {
          r = parabola_vertex(t);
          accepted = t.left.x < r && r < t.right.x && std::abs(r - t.mid.x) >= tol_mid;
        } catch (const NoVertexError&) {
        }
      }
      if (!accepted) {
        kind = StepKind::ratio_fallback;
        const bool go_left = t.mid.x - t.left.x > t.right.x - t.mid.x;
        const double far = go_left ? t.left.x : t.right.x;
        r = c * far + (1.0 - c) * t.mid.x;
        if (r == t.mid.x) r = std::nextafter(t.mid.x, far);
        if (r == far) return done(t.mid, FunctionClass::strict_interior, Status::converged);
      }

      absorb(t, eval_within_budget(obj, r, tol, start));
      if (t.left.y == t.mid.y || t.mid.y == t.right.y) {
        return done(t.mid, FunctionClass::flat_bottom, Status::converged);
      }
      notify(observer, {t.left.x, t.right.x, t.right.x - t.left.x, t.mid, kind});
    }
  } catch (const BudgetExhausted&) {
    if (triple) return done(triple->mid, FunctionClass::strict_interior, Status::budget_exhausted);
    if (boot) return boot->partial(Status::budget_exhausted);
    return done({interval.midpoint(), 0.0}, FunctionClass::strict_interior,
                Status::budget_exhausted);
  }
}

}  // namespace ratiosec
