#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratiosec/core.hpp"
#include "ratiosec/polyfit.hpp"

namespace ratiosec {

enum class Method { bisection, golden, ratio_p, ratio_a, brent, brent_m };

/// A solver plus its section ratio, for the methods that take one.
struct MethodSpec {
  Method method = Method::bisection;
  std::optional<double> c;

  /// Applies the method's default ratio when none is given and validates it.
  /// Throws ConfigError when a ratio is given to a method without one.
  static MethodSpec make(Method method, std::optional<double> c = std::nullopt);

  /// Parses "bisect", "golden", "ratio-p", "ratio-a", "brent", "brent-m",
  /// optionally suffixed with ":<c>" (e.g. "ratio-p:0.5").
  static MethodSpec parse(std::string_view text);

  /// Canonical text form, e.g. "ratio-p:0.2"; parse(label()) round-trips.
  std::string label() const;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

std::string_view method_name(Method m) noexcept;
bool method_takes_ratio(Method m) noexcept;

/// Runs one solver on a fresh objective.
MinimizeOutcome run_method(const MethodSpec& spec, CountingObjective& obj, const Interval& interval,
                           const Tolerance& tol, const IterationObserver& observer = {});

/// Published count columns of the benchmark tables.
enum class PaperColumn { bisec, gold, ratio_p_05, ratio_p_02, ratio_a, brent, brent_m };
inline constexpr std::size_t kPaperColumns = 7;

std::string_view column_name(PaperColumn col) noexcept;

/// The reference column matching a method configuration, if one was published.
std::optional<PaperColumn> paper_column(const MethodSpec& spec) noexcept;

struct BenchFunction {
  int id = 0;
  std::string_view expression;  // CLI syntax, evaluates bit-identically to `evaluator`
  double (*evaluator)(double) = nullptr;
  Interval interval{0.0, 1.0};
  FunctionClass class_label = FunctionClass::strict_interior;
  std::array<int, kPaperColumns> reference{};

  int reference_count(PaperColumn col) const noexcept {
    return reference[static_cast<std::size_t>(col)];
  }
};

inline constexpr int kSuiteSize = 20;

/// Benchmark problem 1..20. Throws PreconditionError for other ids.
const BenchFunction& table3(int id);
std::span<const BenchFunction> table3_all() noexcept;

/// True when `returned` is an acceptable verdict for a problem labelled
/// `label` (constants are reported as flat bottoms).
bool classification_matches(FunctionClass label, FunctionClass returned) noexcept;

enum class CellStatus { converged, budget_exhausted, failed };
std::string_view to_string(CellStatus s) noexcept;

struct BenchRow {
  MethodSpec method;
  int function_id = 0;
  std::size_t evaluations = 0;
  double x_min = 0.0;
  double f_min = 0.0;
  FunctionClass classification = FunctionClass::strict_interior;
  CellStatus status = CellStatus::converged;
  std::string error;
};

struct MethodRatio {
  std::string numerator;
  std::string denominator;
  double ratio = 0.0;
};

struct BenchReport {
  std::vector<MethodSpec> methods;
  std::vector<int> ids;
  std::vector<BenchRow> rows;                           // (method, id) order
  std::vector<std::pair<std::string, long>> totals;    // per method, in method order
  std::vector<MethodRatio> ratios;                      // every ordered pair of methods

  long total(const MethodSpec& m) const;
  const BenchRow* find(const MethodSpec& m, int id) const;
};

/// One fresh CountingObjective per (method, id) cell. A cell that throws is
/// recorded as failed and the run continues.
BenchReport run_benchmark(std::span<const MethodSpec> methods, std::span<const int> ids,
                          const Tolerance& tol);

struct SweepSample {
  double c = 0.0;
  std::optional<double> mean_evaluations;
};

struct SweepCResult {
  std::vector<SweepSample> samples;
  std::optional<Polynomial> smoothing;
  double raw_argmin = 0.0;
  double smoothed_argmin = 0.0;
};

/// Mean passive-search evaluation count over `ids` for each c on the grid
/// from, from + step, ..., to, plus a least-squares smoothing polynomial.
SweepCResult sweep_ratio_c(std::span<const int> ids, double c_from, double c_to, double step,
                           const Tolerance& tol, std::size_t fit_degree = 5);

struct SweepJRow {
  int j = 0;
  double c = 0.0;
  std::optional<long> total_evaluations;
};

/// Total active-search evaluation count over `ids` for c = 10^(j/2),
/// j = j_from..j_to.
std::vector<SweepJRow> sweep_ratio_a_exponent(std::span<const int> ids, int j_from, int j_to,
                                              const Tolerance& tol);

struct OracleMinimum {
  double x = 0.0;
  double f = 0.0;
  /// Set when the minimum value is attained on an interval of positive width
  /// (a flat bottom, or a region where the double-precision target is exactly
  /// constant).
  std::optional<Interval> plateau;
};

/// Independent minimizer: dense grid scan, then golden refinement of the best
/// cell to 1e-12 width, or plateau-edge refinement when the minimum is flat.
OracleMinimum reference_minimizer(const std::function<double(double)>& f, const Interval& interval,
                                  std::size_t grid = 1'000'000);
OracleMinimum reference_minimizer(int id);

/// One line of the fixtures file.
struct FixtureRecord {
  int id = 0;
  double lo = 0.0;
  double hi = 0.0;
  FunctionClass class_label = FunctionClass::strict_interior;
  std::string expression;
  std::array<int, kPaperColumns> reference{};
  double oracle_x = 0.0;
  double oracle_f = 0.0;
  std::optional<Interval> plateau;
};

/// Reads the tab-separated fixtures file. Lines starting with '#' are comments.
std::vector<FixtureRecord> load_fixtures(const std::filesystem::path& path);
/// Writes the fixtures file for the built-in suite and oracle.
std::string format_fixtures();

/// a |x - v|^p + k on an interval containing v.
struct UnimodalProblem {
  double scale = 1.0;
  double center = 0.0;
  double power = 2.0;
  double offset = 0.0;
  Interval interval{-1.0, 1.0};

  double operator()(double x) const noexcept;
  /// Bounds of the set where the double-precision target equals its value at
  /// `center`; a single point when no rounding plateau exists.
  std::pair<double, double> argmin_set() const;
};

std::vector<UnimodalProblem> random_unimodal_problems(std::uint64_t seed, std::size_t count);

FunctionClass parse_function_class(std::string_view text);

}  // namespace ratiosec
