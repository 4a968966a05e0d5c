#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratiosec {

/// An evaluated point: abscissa and objective value.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the target returns a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(double x, double y);
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Raised by eval_within_budget() once a run has spent its evaluation budget.
/// Solvers catch it and report Status::budget_exhausted.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

/// Closed interval [lo, hi] with lo < hi, both finite.
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

/// Relative tolerance, absolute floor and evaluation budget.
struct Tolerance {
  double epsilon = 1e-5;
  double floor = 1e-10;
  std::size_t max_evaluations = 1000;

  /// Throws ConfigError unless 0 < epsilon < 1, floor > 0, max_evaluations > 0.
  void validate() const;
};

enum class FunctionClass {
  constant,
  monotone_increasing,
  monotone_decreasing,
  flat_bottom,
  strict_interior,
};

enum class Status { converged, budget_exhausted };

std::string_view to_string(FunctionClass c) noexcept;
std::string_view to_string(Status s) noexcept;

struct MinimizeOutcome {
  double x_min = 0.0;
  double f_min = 0.0;
  std::size_t evaluations = 0;
  FunctionClass classification = FunctionClass::strict_interior;
  Status status = Status::converged;
};

/// Wraps a scalar target, counting every call and recording the transcript.
/// There is no caching: repeated abscissas are evaluated and counted again.
///
/// An instance holds the state of one run and must not be shared between
/// concurrent minimizations.
class CountingObjective {
 public:
  using Target = std::function<double(double)>;

  explicit CountingObjective(Target target);

  /// Evaluates the target at x. Throws EvaluationError on a non-finite result,
  /// which leaves count and transcript untouched, and PreconditionError if x
  /// itself is not finite.
  Point2 eval(double x);

  std::size_t count() const noexcept { return transcript_.size(); }
  std::span<const Point2> transcript() const noexcept { return transcript_; }

  /// Points evaluated since the transcript had `start` entries.
  std::span<const Point2> transcript_since(std::size_t start) const noexcept;

  /// Calls the raw target without counting. Used for replay checks.
  double peek(double x) const { return target_(x); }

 private:
  Target target_;
  std::vector<Point2> transcript_;
};

/// Position-dependent tolerance: epsilon * |x| + floor.
double e0(const Tolerance& tol, double x) noexcept;

/// Brent-style termination: true iff |m_x - (a+b)/2| + (b-a)/2 <= 2 e0(m_x),
/// i.e. the whole of [a, b] lies within 2 e0 of m_x.
bool stop_test(double a, double b, double m_x, const Tolerance& tol) noexcept;

/// Evaluates x unless the run that started at transcript length `start` has
/// already spent tol.max_evaluations calls, in which case BudgetExhausted is
/// thrown before the target is touched.
Point2 eval_within_budget(CountingObjective& obj, double x, const Tolerance& tol,
                          std::size_t start);

/// Kind of step a solver just took, reported to an IterationObserver.
enum class StepKind {
  initial,
  dichotomy,
  golden,
  ratio_section,
  parabolic,
  minimum_step,
  ratio_fallback,
};

std::string_view to_string(StepKind k) noexcept;

/// Snapshot of a solver's uncertainty bracket after one iteration.
/// `width` is the solver's own bracket length; for most solvers it equals
/// hi - lo, the golden search reports its tracked length.
struct IterationRecord {
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  Point2 best;
  StepKind step = StepKind::initial;
};

using IterationObserver = std::function<void(const IterationRecord&)>;

}  // namespace ratiosec
