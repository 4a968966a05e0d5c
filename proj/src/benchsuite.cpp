#include "ratiosec/benchsuite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "ratiosec/active_search.hpp"
#include "ratiosec/brent.hpp"
#include "ratiosec/section_search.hpp"

namespace ratiosec {

// ---------------------------------------------------------------------------
// Methods

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::bisection: return "bisect";
    case Method::golden: return "golden";
    case Method::ratio_p: return "ratio-p";
    case Method::ratio_a: return "ratio-a";
    case Method::brent: return "brent";
    case Method::brent_m: return "brent-m";
  }
  return "unknown";
}

bool method_takes_ratio(Method m) noexcept {
  return m == Method::ratio_p || m == Method::ratio_a || m == Method::brent_m;
}

MethodSpec MethodSpec::make(Method method, std::optional<double> c) {
  if (!method_takes_ratio(method)) {
    if (c) throw ConfigError(fmt::format("method {} takes no ratio", method_name(method)));
    return {method, std::nullopt};
  }
  if (!c) {
    c = method == Method::ratio_a ? kDefaultActiveRatio : kDefaultBrentMRatio;
  }
  RatioConfig check(*c);
  return {method, c};
}

MethodSpec MethodSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  std::optional<double> c;
  if (colon != std::string_view::npos) {
    const std::string_view num = text.substr(colon + 1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || end != num.data() + num.size()) {
      throw ConfigError(fmt::format("bad ratio in method '{}'", text));
    }
    c = value;
  }
  for (Method m : {Method::bisection, Method::golden, Method::ratio_p, Method::ratio_a,
                   Method::brent, Method::brent_m}) {
    if (name == method_name(m)) return make(m, c);
  }
  throw ConfigError(fmt::format("unknown method '{}'", name));
}

std::string MethodSpec::label() const {
  if (!c) return std::string(method_name(method));
  return fmt::format("{}:{}", method_name(method), *c);
}

MinimizeOutcome run_method(const MethodSpec& spec, CountingObjective& obj, const Interval& interval,
                           const Tolerance& tol, const IterationObserver& observer) {
  switch (spec.method) {
    case Method::bisection: return minimize_bisection(obj, interval, tol, observer);
    case Method::golden: return minimize_golden(obj, interval, tol, observer);
    case Method::ratio_p:
      return minimize_ratio_p(obj, interval, tol, RatioConfig(spec.c.value_or(kDefaultBrentMRatio)),
                              observer);
    case Method::ratio_a:
      return minimize_ratio_a(obj, interval, tol, RatioConfig(spec.c.value_or(kDefaultActiveRatio)),
                              observer);
    case Method::brent: return brent_minimize(obj, interval, tol, observer);
    case Method::brent_m:
      return brent_m_minimize(obj, interval, tol, RatioConfig(spec.c.value_or(kDefaultBrentMRatio)),
                              Recognizers{}, observer);
  }
  throw ConfigError("unknown method");
}

std::string_view column_name(PaperColumn col) noexcept {
  switch (col) {
    case PaperColumn::bisec: return "Bisec";
    case PaperColumn::gold: return "Gold";
    case PaperColumn::ratio_p_05: return "RatioP(0.5)";
    case PaperColumn::ratio_p_02: return "RatioP(0.2)";
    case PaperColumn::ratio_a: return "RatioA";
    case PaperColumn::brent: return "Brent";
    case PaperColumn::brent_m: return "BrentM";
  }
  return "unknown";
}

std::optional<PaperColumn> paper_column(const MethodSpec& spec) noexcept {
  switch (spec.method) {
    case Method::bisection: return PaperColumn::bisec;
    case Method::golden: return PaperColumn::gold;
    case Method::brent: return PaperColumn::brent;
    case Method::ratio_p:
      if (spec.c == 0.5) return PaperColumn::ratio_p_05;
      if (spec.c == 0.2) return PaperColumn::ratio_p_02;
      return std::nullopt;
    case Method::ratio_a:
      if (spec.c == kDefaultActiveRatio) return PaperColumn::ratio_a;
      return std::nullopt;
    case Method::brent_m:
      if (spec.c == kDefaultBrentMRatio) return PaperColumn::brent_m;
      return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The twenty benchmark problems. Powers go through std::pow so that the CLI
// expression in `expression` evaluates to the same bits.

namespace {

double f01(double) { return 1.0; }
double f02(double x) { return 20.0 + 16.0 / x; }
double f03(double x) { return 1.5 + std::exp(x); }
double f04(double x) { return 1.5 + std::max(4.0 * std::cos(x), 1.0); }
double f05(double x) { return 1.2 + std::max(5.0 * std::exp(x) - 1.0, 1.0); }
double f06(double x) { return 1.5 + std::max(std::cos(4.0 - std::pow(x, 2.0)), 0.5); }
double f07(double x) {
  double m = std::max(std::exp(-x), std::cos(x));
  m = std::max(m, std::pow(x, 4.0));
  return 1.5 + std::max(m, std::pow(x, 2.0));
}
double f08(double x) {
  return 0.2 + std::max(13.0 * std::pow(x - 2.0, 2.0), 20.0 * (x - 1.0));
}
double f09(double x) { return 1.2 + std::abs(x - 1.0); }
double f10(double x) { return 12.0 + 1000.0 * std::pow(std::abs(x - 2.0), 8.4); }
double f11(double x) { return 0.3 + std::cos(std::pow(x, 2.0) + 2.0 * x - 3.0); }
double f12(double x) { return 0.2 + std::pow(x - 1.5, 2.0); }
double f13(double x) { return 100.0 + std::pow(1.0 - std::exp(x) * std::sin(x), 2.0); }
double f14(double x) { return 1.2 - std::cos(std::pow(x, 2.0)); }
double f15(double x) { return 1.2 + 5.0 * std::exp(-std::pow(x, 2.0)) + x; }
double f16(double x) { return 1.2 + std::exp(-x) + 3.5 * std::sin(x); }
double f17(double x) { return 2.3 + 3.0 * std::exp(x) - std::pow(x, 2.0) + 5.0 * x; }
double f18(double x) { return 1.2 + 3.0 * std::cosh(x - 2.0) - 2.0 * std::sinh(x - 3.0); }
double f19(double x) { return 2.3 + std::pow(std::exp(3.0 - x) + 4.0 * (x - 2.0), 2.0); }
double f20(double x) { return 1.2 + std::pow(std::abs(x - 2.0), 3.6); }

using FC = FunctionClass;

// Columns: Bisec, Gold, RatioP(0.5), RatioP(0.2), RatioA, Brent, BrentM.
const std::array<BenchFunction, kSuiteSize> kSuite{{
    {1, "1", f01, {0.5, 1.5}, FC::constant, {36, 26, 3, 3, 3, 22, 3}},
    {2, "20+16/x", f02, {2.6, 6.8}, FC::monotone_decreasing, {32, 25, 6, 6, 6, 22, 6}},
    {3, "1.5+exp(x)", f03, {1.2, 3.7}, FC::monotone_increasing, {36, 28, 6, 6, 6, 25, 6}},
    {4, "1.5+max(4*cos(x),1)", f04, {0.1, 4.9}, FC::flat_bottom, {36, 27, 4, 4, 4, 22, 3}},
    {5, "1.2+max(5*exp(x)-1,1)", f05, {-1.6, 1.1}, FC::flat_bottom, {36, 29, 8, 10, 8, 24, 6}},
    {6, "1.5+max(cos(4-x^2),0.5)", f06, {3.2, 3.5}, FC::flat_bottom, {28, 21, 4, 4, 4, 16, 4}},
    {7, "1.5+max(exp(-x),cos(x),x^4,x^2)", f07, {-0.6, 1.1}, FC::strict_interior,
     {36, 28, 26, 23, 20, 26, 23}},
    {8, "0.2+max(13*(x-2)^2,20*(x-1))", f08, {-1.2, 2.7}, FC::strict_interior,
     {38, 29, 31, 21, 27, 27, 22}},
    {9, "1.2+abs(x-1)", f09, {0.5, 6.5}, FC::strict_interior, {40, 30, 31, 27, 21, 21, 6}},
    {10, "12+1000*abs(x-2)^8.4", f10, {1.0, 4.3}, FC::strict_interior, {34, 27, 27, 18, 11, 12, 13}},
    {11, "0.3+cos(x^2+2*x-3)", f11, {-0.9, 0.9}, FC::strict_interior, {44, 33, 37, 26, 12, 12, 12}},
    {12, "0.2+(x-1.5)^2", f12, {0.3, 3.2}, FC::strict_interior, {36, 28, 31, 20, 4, 6, 4}},
    {13, "100+(1-exp(x)*sin(x))^2", f13, {0.1, 1.0}, FC::strict_interior,
     {36, 27, 29, 18, 14, 10, 10}},
    {14, "1.2-cos(x^2)", f14, {-1.2, 1.5}, FC::strict_interior, {70, 51, 33, 21, 13, 39, 12}},
    {15, "1.2+5*exp(-x^2)+x", f15, {0.3, 11.5}, FC::strict_interior, {40, 30, 34, 26, 13, 13, 18}},
    {16, "1.2+exp(-x)+3.5*sin(x)", f16, {-1.6, 0.8}, FC::strict_interior,
     {38, 29, 29, 22, 11, 9, 12}},
    {17, "2.3+3*exp(x)-x^2+5*x", f17, {-15.0, 7.0}, FC::strict_interior,
     {42, 32, 35, 23, 16, 11, 11}},
    {18, "1.2+3*cosh(x-2)-2*sinh(x-3)", f18, {-2.1, 2.5}, FC::strict_interior,
     {38, 29, 31, 20, 10, 9, 9}},
    {19, "2.3+(exp(3-x)+4*(x-2))^2", f19, {-0.5, 2.5}, FC::strict_interior,
     {38, 30, 32, 22, 13, 10, 13}},
    {20, "1.2+abs(x-2)^3.6", f20, {0.1, 1.0}, FC::strict_interior, {38, 28, 30, 21, 11, 9, 11}},
}};

}  // namespace

const BenchFunction& table3(int id) {
  if (id < 1 || id > kSuiteSize) {
    throw PreconditionError(fmt::format("benchmark id must be in 1..{}, got {}", kSuiteSize, id));
  }
  return kSuite[static_cast<std::size_t>(id - 1)];
}

std::span<const BenchFunction> table3_all() noexcept { return kSuite; }

bool classification_matches(FunctionClass label, FunctionClass returned) noexcept {
  if (label == FunctionClass::constant) {
    return returned == FunctionClass::constant || returned == FunctionClass::flat_bottom;
  }
  return label == returned;
}

FunctionClass parse_function_class(std::string_view text) {
  for (FunctionClass c : {FunctionClass::constant, FunctionClass::monotone_increasing,
                          FunctionClass::monotone_decreasing, FunctionClass::flat_bottom,
                          FunctionClass::strict_interior}) {
    if (text == to_string(c)) return c;
  }
  throw PreconditionError(fmt::format("unknown function class '{}'", text));
}

// ---------------------------------------------------------------------------
// Benchmark runner

std::string_view to_string(CellStatus s) noexcept {
  switch (s) {
    case CellStatus::converged: return "converged";
    case CellStatus::budget_exhausted: return "budget_exhausted";
    case CellStatus::failed: return "failed";
  }
  return "unknown";
}

long BenchReport::total(const MethodSpec& m) const {
  const std::string label = m.label();
  for (const auto& [name, sum] : totals) {
    if (name == label) return sum;
  }
  throw PreconditionError(fmt::format("method {} is not part of the report", label));
}

const BenchRow* BenchReport::find(const MethodSpec& m, int id) const {
  for (const BenchRow& row : rows) {
    if (row.method == m && row.function_id == id) return &row;
  }
  return nullptr;
}

BenchReport run_benchmark(std::span<const MethodSpec> methods, std::span<const int> ids,
                          const Tolerance& tol) {
  if (methods.empty() || ids.empty()) throw PreconditionError("benchmark needs methods and ids");
  BenchReport report;
  report.methods.assign(methods.begin(), methods.end());
  report.ids.assign(ids.begin(), ids.end());

  for (const MethodSpec& method : methods) {
    long sum = 0;
    for (int id : ids) {
      const BenchFunction& fn = table3(id);
      BenchRow row;
      row.method = method;
      row.function_id = id;
      CountingObjective obj(fn.evaluator);
      try {
        const MinimizeOutcome out = run_method(method, obj, fn.interval, tol);
        row.evaluations = out.evaluations;
        row.x_min = out.x_min;
        row.f_min = out.f_min;
        row.classification = out.classification;
        row.status = out.status == Status::converged ? CellStatus::converged
                                                     : CellStatus::budget_exhausted;
      } catch (const std::exception& e) {
        row.evaluations = obj.count();
        row.status = CellStatus::failed;
        row.error = e.what();
      }
      sum += static_cast<long>(row.evaluations);
      report.rows.push_back(std::move(row));
    }
    report.totals.emplace_back(method.label(), sum);
  }

  for (const auto& [num, num_total] : report.totals) {
    for (const auto& [den, den_total] : report.totals) {
      if (num == den) continue;
      const double ratio = den_total == 0 ? 0.0 : static_cast<double>(num_total) / den_total;
      report.ratios.push_back({num, den, ratio});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sweeps

SweepCResult sweep_ratio_c(std::span<const int> ids, double c_from, double c_to, double step,
                           const Tolerance& tol, std::size_t fit_degree) {
  if (!(c_from > 0.0 && c_from < c_to && c_to < 1.0)) {
    throw PreconditionError("sweep bounds must satisfy 0 < from < to < 1");
  }
  if (!(step > 0.0)) throw PreconditionError("sweep step must be positive");
  if (ids.empty()) throw PreconditionError("sweep needs at least one function");

  SweepCResult result;
  const auto n = static_cast<std::size_t>(std::floor((c_to - c_from) / step + 1e-9));
  std::vector<Point2> fit_points;
  for (std::size_t k = 0; k <= n; ++k) {
    const double c = std::round((c_from + static_cast<double>(k) * step) * 1e12) / 1e12;
    SweepSample sample{c, std::nullopt};
    try {
      const MethodSpec spec = MethodSpec::make(Method::ratio_p, c);
      double sum = 0.0;
      for (int id : ids) {
        const BenchFunction& fn = table3(id);
        CountingObjective obj(fn.evaluator);
        sum += static_cast<double>(run_method(spec, obj, fn.interval, tol).evaluations);
      }
      sample.mean_evaluations = sum / static_cast<double>(ids.size());
      fit_points.push_back({c, *sample.mean_evaluations});
    } catch (const std::exception&) {
    }
    result.samples.push_back(sample);
  }

  double best = HUGE_VAL;
  for (const SweepSample& s : result.samples) {
    if (s.mean_evaluations && *s.mean_evaluations < best) {
      best = *s.mean_evaluations;
      result.raw_argmin = s.c;
    }
  }

  if (fit_points.size() >= fit_degree + 2) {
    result.smoothing = fit_polynomial(fit_points, fit_degree);
    const int grid = 10000;
    double low = HUGE_VAL;
    for (int i = 0; i <= grid; ++i) {
      const double c = c_from + (c_to - c_from) * i / grid;
      const double v = (*result.smoothing)(c);
      if (v < low) {
        low = v;
        result.smoothed_argmin = c;
      }
    }
  }
  return result;
}

std::vector<SweepJRow> sweep_ratio_a_exponent(std::span<const int> ids, int j_from, int j_to,
                                              const Tolerance& tol) {
  if (j_from > j_to || j_from < -15 || j_to > -2) {
    throw PreconditionError("exponent range must lie within [-15, -2]");
  }
  if (ids.empty()) throw PreconditionError("sweep needs at least one function");

  std::vector<SweepJRow> rows;
  for (int j = j_from; j <= j_to; ++j) {
    SweepJRow row{j, std::pow(10.0, j / 2.0), std::nullopt};
    try {
      const MethodSpec spec = MethodSpec::make(Method::ratio_a, row.c);
      long total = 0;
      for (int id : ids) {
        const BenchFunction& fn = table3(id);
        CountingObjective obj(fn.evaluator);
        total += static_cast<long>(run_method(spec, obj, fn.interval, tol).evaluations);
      }
      row.total_evaluations = total;
    } catch (const std::exception&) {
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

// Moves `outside` and `inside` together until they are adjacent doubles;
// `inside` stays on the plateau.
double plateau_edge(const std::function<double(double)>& f, double fmin, double outside,
                    double inside) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (outside + inside);
    if (mid == outside || mid == inside) break;
    (f(mid) == fmin ? inside : outside) = mid;
  }
  return inside;
}

}  // namespace

OracleMinimum reference_minimizer(const std::function<double(double)>& f, const Interval& interval,
                                  std::size_t grid) {
  const double lo = interval.lo();
  const double hi = interval.hi();
  auto at = [&](std::size_t i) {
    return i == grid ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid);
  };

  std::size_t best = 0;
  double fmin = f(lo);
  std::size_t first_eq = 0;
  std::size_t last_eq = 0;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double y = f(at(i));
    if (y < fmin) {
      fmin = y;
      best = first_eq = last_eq = i;
    } else if (y == fmin) {
      last_eq = i;
    }
  }

  OracleMinimum out;
  if (last_eq > first_eq) {
    const double left = first_eq == 0 ? lo : plateau_edge(f, fmin, at(first_eq - 1), at(first_eq));
    const double right = last_eq == grid ? hi : plateau_edge(f, fmin, at(last_eq + 1), at(last_eq));
    out.plateau = Interval(left, right);
    out.x = 0.5 * (left + right);
    out.f = fmin;
    return out;
  }

  // Golden refinement over the neighbouring grid cells.
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = at(best == 0 ? 0 : best - 1);
  double b = at(std::min(best + 1, grid));
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  const double xr = 0.5 * (a + b);
  const double fr = f(xr);
  if (fr < fmin) {
    out.x = xr;
    out.f = fr;
  } else {
    out.x = at(best);
    out.f = fmin;
  }
  return out;
}

OracleMinimum reference_minimizer(int id) {
  const BenchFunction& fn = table3(id);
  return reference_minimizer(fn.evaluator, fn.interval);
}

// ---------------------------------------------------------------------------
// Fixtures file

namespace {

constexpr std::string_view kFixtureHeader =
    "# Benchmark suite fixtures: problem definitions, published evaluation counts and\n"
    "# oracle minimizers (reference_minimizer, 10^6-point grid + golden refinement).\n"
    "# One record per line, tab-separated; '-' marks an absent plateau.\n"
    "# Count columns: Bisec Gold RatioP(0.5) RatioP(0.2) RatioA Brent BrentM.\n"
    "# id\tlo\thi\tclass\texpression\tbisec\tgold\tratio_p_05\tratio_p_02\tratio_a\tbrent\t"
    "brent_m\toracle_x\toracle_f\tplateau_lo\tplateau_hi\n";

double parse_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw PreconditionError(fmt::format("fixtures line {}: bad number '{}'", line, field));
  }
  return value;
}

int parse_int(std::string_view field, std::size_t line) {
  int value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw PreconditionError(fmt::format("fixtures line {}: bad integer '{}'", line, field));
  }
  return value;
}

}  // namespace

std::vector<FixtureRecord> load_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError(fmt::format("cannot open fixtures file {}", path.string()));

  std::vector<FixtureRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() != 16) {
      throw PreconditionError(
          fmt::format("fixtures line {}: expected 16 fields, got {}", line_no, fields.size()));
    }
    FixtureRecord r;
    r.id = parse_int(fields[0], line_no);
    r.lo = parse_double(fields[1], line_no);
    r.hi = parse_double(fields[2], line_no);
    r.class_label = parse_function_class(fields[3]);
    r.expression = std::string(fields[4]);
    for (std::size_t k = 0; k < kPaperColumns; ++k) r.reference[k] = parse_int(fields[5 + k], line_no);
    r.oracle_x = parse_double(fields[12], line_no);
    r.oracle_f = parse_double(fields[13], line_no);
    if (fields[14] != "-") {
      r.plateau = Interval(parse_double(fields[14], line_no), parse_double(fields[15], line_no));
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string format_fixtures() {
  std::string out(kFixtureHeader);
  for (const BenchFunction& fn : kSuite) {
    const OracleMinimum oracle = reference_minimizer(fn.id);
    out += fmt::format("{}\t{}\t{}\t{}\t{}", fn.id, fn.interval.lo(), fn.interval.hi(),
                       to_string(fn.class_label), fn.expression);
    for (int count : fn.reference) out += fmt::format("\t{}", count);
    out += fmt::format("\t{}\t{}", oracle.x, oracle.f);
    if (oracle.plateau) {
      out += fmt::format("\t{}\t{}\n", oracle.plateau->lo(), oracle.plateau->hi());
    } else {
      out += "\t-\t-\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic problems

double UnimodalProblem::operator()(double x) const noexcept {
  return scale * std::pow(std::abs(x - center), power) + offset;
}

std::pair<double, double> UnimodalProblem::argmin_set() const {
  const double target = (*this)(center);
  auto edge = [&](double toward) {
    if ((*this)(toward) == target) return toward;
    return plateau_edge([this](double x) { return (*this)(x); }, target, toward, center);
  };
  return {edge(interval.lo()), edge(interval.hi())};
}

std::vector<UnimodalProblem> random_unimodal_problems(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UnimodalProblem> problems;
  problems.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    UnimodalProblem p;
    p.scale = std::pow(10.0, -1.0 + 2.0 * unit(rng));
    p.center = -5.0 + 10.0 * unit(rng);
    p.power = 1.0 + 5.0 * unit(rng);
    p.offset = -5.0 + 10.0 * unit(rng);
    const double width = 0.2 + 9.8 * unit(rng);
    const double share = 0.02 + 0.96 * unit(rng);
    p.interval = Interval(p.center - share * width, p.center + (1.0 - share) * width);
    problems.push_back(p);
  }
  return problems;
}

}  // namespace ratiosec
