#include "ratiosec/core.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace ratiosec {

EvaluationError::EvaluationError(double x, double y)
    : std::runtime_error(fmt::format("objective returned {} at x = {}", y, x)), x_(x) {}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw PreconditionError("interval endpoints must be finite");
  }
  if (!(lo < hi)) {
    throw PreconditionError(fmt::format("empty interval [{}, {}]", lo, hi));
  }
}

void Tolerance::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError(fmt::format("epsilon must lie in (0, 1), got {}", epsilon));
  }
  if (!(floor > 0.0) || !std::isfinite(floor)) {
    throw ConfigError(fmt::format("tolerance floor must be positive, got {}", floor));
  }
  if (max_evaluations == 0) {
    throw ConfigError("max_evaluations must be positive");
  }
}

std::string_view to_string(FunctionClass c) noexcept {
  switch (c) {
    case FunctionClass::constant: return "constant";
    case FunctionClass::monotone_increasing: return "monotone_increasing";
    case FunctionClass::monotone_decreasing: return "monotone_decreasing";
    case FunctionClass::flat_bottom: return "flat_bottom";
    case FunctionClass::strict_interior: return "strict_interior";
  }
  return "unknown";
}

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::converged: return "converged";
    case Status::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

std::string_view to_string(StepKind k) noexcept {
  switch (k) {
    case StepKind::initial: return "initial";
    case StepKind::dichotomy: return "dichotomy";
    case StepKind::golden: return "golden";
    case StepKind::ratio_section: return "ratio_section";
    case StepKind::parabolic: return "parabolic";
    case StepKind::minimum_step: return "minimum_step";
    case StepKind::ratio_fallback: return "ratio_fallback";
  }
  return "unknown";
}

CountingObjective::CountingObjective(Target target) : target_(std::move(target)) {
  if (!target_) throw PreconditionError("objective target is empty");
}

Point2 CountingObjective::eval(double x) {
  if (!std::isfinite(x)) throw PreconditionError("evaluation abscissa must be finite");
  const double y = target_(x);
  if (!std::isfinite(y)) throw EvaluationError(x, y);
  transcript_.push_back({x, y});
  return transcript_.back();
}

std::span<const Point2> CountingObjective::transcript_since(std::size_t start) const noexcept {
  if (start >= transcript_.size()) return {};
  return std::span<const Point2>(transcript_).subspan(start);
}

double e0(const Tolerance& tol, double x) noexcept {
  return tol.epsilon * std::abs(x) + tol.floor;
}

bool stop_test(double a, double b, double m_x, const Tolerance& tol) noexcept {
  return std::abs(m_x - 0.5 * (a + b)) + 0.5 * (b - a) <= 2.0 * e0(tol, m_x);
}

Point2 eval_within_budget(CountingObjective& obj, double x, const Tolerance& tol,
                          std::size_t start) {
  if (obj.count() - start >= tol.max_evaluations) throw BudgetExhausted();
  return obj.eval(x);
}

}  // namespace ratiosec
