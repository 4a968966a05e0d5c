#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ratiosec/benchsuite.hpp"
#include "ratiosec/expression.hpp"

#ifndef RATIOSEC_FIXTURES
#define RATIOSEC_FIXTURES "data/table3_fixtures.tsv"
#endif

namespace ratiosec::cli {

namespace {

using nlohmann::ordered_json;

int parse_int(std::string_view text) {
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument(fmt::format("'{}' is not an integer", text));
  }
  return value;
}

std::string num(double v) { return fmt::format("{}", v); }

template <class T>
std::string opt_num(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

// Emits to stdout or to the --out file.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error(fmt::format("cannot write '{}'", path));
      out_ = file_.get();
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ostream* out_;
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::string format = "csv";
  std::string out_path;
  double eps = 1e-5;
  std::size_t max_evals = 1000;

  Format parsed_format() const {
    if (format == "csv") return Format::csv;
    if (format == "markdown" || format == "md") return Format::markdown;
    if (format == "jsonl" || format == "json-lines") return Format::jsonl;
    throw std::invalid_argument(fmt::format("unknown format '{}'", format));
  }

  Tolerance tolerance() const {
    Tolerance tol;
    tol.epsilon = eps;
    tol.max_evaluations = max_evals;
    tol.validate();
    return tol;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "csv, markdown or jsonl")->capture_default_str();
  cmd->add_option("--out", c.out_path, "write the table to this file instead of stdout");
  cmd->add_option("--eps", c.eps, "relative tolerance")->capture_default_str();
  cmd->add_option("--max-evals", c.max_evals, "evaluation budget per run")->capture_default_str();
}

// ---------------------------------------------------------------------------
// minimize

struct MinimizeArgs {
  Common common;
  std::string expr;
  std::string method = "ratio-p";
  double a = 0.0;
  double b = 0.0;
  std::optional<double> c;
};

int cmd_minimize(const MinimizeArgs& args, std::ostream& out, std::ostream& err) {
  const Format format = args.common.parsed_format();
  const Tolerance tol = args.common.tolerance();
  if (!(args.a < args.b)) throw std::invalid_argument("--a must be less than --b");
  const Interval interval(args.a, args.b);
  MethodSpec spec = MethodSpec::parse(args.method);
  if (args.c) spec = MethodSpec::make(spec.method, args.c);

  const Expression expression = Expression::parse(args.expr);
  CountingObjective obj([&](double x) { return expression(x); });
  const MinimizeOutcome r = run_method(spec, obj, interval, tol);

  Sink sink(out, args.common.out_path);
  std::ostream& os = *sink;
  switch (format) {
    case Format::csv:
      os << "method,x_min,f_min,evaluations,classification,status\n";
      os << fmt::format("{},{},{},{},{},{}\n", spec.label(), num(r.x_min), num(r.f_min),
                        r.evaluations, to_string(r.classification), to_string(r.status));
      break;
    case Format::markdown:
      os << "| method | x_min | f_min | evaluations | classification | status |\n";
      os << "|---|---:|---:|---:|---|---|\n";
      os << fmt::format("| {} | {} | {} | {} | {} | {} |\n", spec.label(), num(r.x_min),
                        num(r.f_min), r.evaluations, to_string(r.classification),
                        to_string(r.status));
      break;
    case Format::jsonl: {
      ordered_json j;
      j["method"] = spec.label();
      j["x_min"] = r.x_min;
      j["f_min"] = r.f_min;
      j["evaluations"] = r.evaluations;
      j["classification"] = to_string(r.classification);
      j["status"] = to_string(r.status);
      os << j.dump() << '\n';
      break;
    }
  }
  if (r.status != Status::converged) {
    err << "minimize: evaluation budget exhausted before convergence\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  Common common;
  std::string methods = "bisect,golden,ratio-p:0.5,ratio-p:0.2,ratio-a,brent,brent-m";
  std::string functions = "1-20";
  std::optional<double> c;
  bool compare_paper = false;
  std::string fixtures = RATIOSEC_FIXTURES;
};

std::vector<MethodSpec> parse_methods(std::string_view text, std::optional<double> c) {
  std::vector<MethodSpec> specs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    if (item.empty()) throw std::invalid_argument("empty entry in --methods");
    MethodSpec spec = MethodSpec::parse(item);
    if (c && method_takes_ratio(spec.method) && item.find(':') == std::string_view::npos) {
      spec = MethodSpec::make(spec.method, c);
    }
    specs.push_back(spec);
    pos = comma + 1;
  }
  return specs;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  const Format format = args.common.parsed_format();
  const Tolerance tol = args.common.tolerance();
  const std::vector<MethodSpec> methods = parse_methods(args.methods, args.c);
  const std::vector<int> ids = parse_function_ids(args.functions);

  std::map<int, FixtureRecord> fixtures;
  if (args.compare_paper) {
    for (FixtureRecord& r : load_fixtures(args.fixtures)) fixtures.emplace(r.id, std::move(r));
  }
  auto paper_count = [&](const MethodSpec& m, int id) -> std::optional<int> {
    const auto col = paper_column(m);
    const auto it = fixtures.find(id);
    if (!col || it == fixtures.end()) return std::nullopt;
    return it->second.reference[static_cast<std::size_t>(*col)];
  };

  const BenchReport report = run_benchmark(methods, ids, tol);

  Sink sink(out, args.common.out_path);
  std::ostream& os = *sink;
  switch (format) {
    case Format::csv:
      os << "method,function_id,evaluations,x_min,f_min,classification,status";
      os << (args.compare_paper ? ",reference_evaluations,delta\n" : "\n");
      for (const BenchRow& row : report.rows) {
        os << fmt::format("{},{},{},{},{},{},{}", row.method.label(), row.function_id,
                          row.evaluations, num(row.x_min), num(row.f_min),
                          to_string(row.classification), to_string(row.status));
        if (args.compare_paper) {
          const auto paper = paper_count(row.method, row.function_id);
          os << ',' << opt_num(paper) << ',';
          if (paper) os << static_cast<long>(row.evaluations) - *paper;
        }
        os << '\n';
      }
      break;
    case Format::markdown: {
      os << "| N |";
      for (const MethodSpec& m : methods) os << ' ' << m.label() << " |";
      os << "\n|---:|";
      for (std::size_t i = 0; i < methods.size(); ++i) os << "---:|";
      os << '\n';
      for (int id : ids) {
        os << "| " << id << " |";
        for (const MethodSpec& m : methods) {
          const BenchRow* row = report.find(m, id);
          std::string cell = row->status == CellStatus::failed ? "fail"
                                                               : std::to_string(row->evaluations);
          if (row->status == CellStatus::budget_exhausted) cell += '!';
          if (args.compare_paper) {
            if (const auto paper = paper_count(m, id)) cell += fmt::format(" ({})", *paper);
          }
          os << ' ' << cell << " |";
        }
        os << '\n';
      }
      os << "| Σk |";
      for (const MethodSpec& m : methods) os << ' ' << report.total(m) << " |";
      os << '\n';
      if (args.compare_paper) {
        os << "| Σk reference |";
        for (const MethodSpec& m : methods) {
          long sum = 0;
          bool any = false;
          for (int id : ids) {
            if (const auto paper = paper_count(m, id)) {
              sum += *paper;
              any = true;
            }
          }
          os << ' ' << (any ? std::to_string(sum) : std::string("–")) << " |";
        }
        os << '\n';
      }
      const long base = report.total(methods.back());
      os << "| Relat |";
      for (const MethodSpec& m : methods) {
        os << ' '
           << (base == 0 ? std::string("–")
                         : fmt::format("{:.2f}", static_cast<double>(report.total(m)) / base))
           << " |";
      }
      os << '\n';
      break;
    }
    case Format::jsonl:
      for (const BenchRow& row : report.rows) {
        ordered_json j;
        j["method"] = row.method.label();
        j["function_id"] = row.function_id;
        j["evaluations"] = row.evaluations;
        j["x_min"] = row.x_min;
        j["f_min"] = row.f_min;
        j["classification"] = to_string(row.classification);
        j["status"] = to_string(row.status);
        if (!row.error.empty()) j["error"] = row.error;
        if (args.compare_paper) {
          const auto paper = paper_count(row.method, row.function_id);
          j["reference_evaluations"] = paper ? ordered_json(*paper) : ordered_json();
          j["delta"] = paper ? ordered_json(static_cast<long>(row.evaluations) - *paper)
                             : ordered_json();
        }
        os << j.dump() << '\n';
      }
      break;
  }

  const bool all_failed = std::all_of(report.rows.begin(), report.rows.end(), [](const BenchRow& r) {
    return r.status != CellStatus::converged;
  });
  return all_failed ? kExitNotConverged : kExitOk;
}

// ---------------------------------------------------------------------------
// sweeps

struct SweepCArgs {
  Common common;
  std::string functions = "7-20";
  double from = 0.01;
  double to = 0.80;
  double step = 0.01;
  std::size_t fit_degree = 5;
};

int cmd_sweep_c(const SweepCArgs& args, std::ostream& out) {
  const Format format = args.common.parsed_format();
  const std::vector<int> ids = parse_function_ids(args.functions);
  const SweepCResult r = sweep_ratio_c(ids, args.from, args.to, args.step,
                                       args.common.tolerance(), args.fit_degree);
  auto smoothed = [&](double c) {
    return r.smoothing ? std::optional<double>((*r.smoothing)(c)) : std::nullopt;
  };

  Sink sink(out, args.common.out_path);
  std::ostream& os = *sink;
  switch (format) {
    case Format::csv:
      os << "c,mean_evaluations,smoothed_value\n";
      for (const SweepSample& s : r.samples) {
        os << fmt::format("{},{},{}\n", num(s.c), opt_num(s.mean_evaluations), opt_num(smoothed(s.c)));
      }
      break;
    case Format::markdown:
      os << "| c | K | smoothed |\n|---:|---:|---:|\n";
      for (const SweepSample& s : r.samples) {
        os << fmt::format("| {} | {} | {} |\n", num(s.c),
                          s.mean_evaluations ? fmt::format("{:.3f}", *s.mean_evaluations) : "–",
                          smoothed(s.c) ? fmt::format("{:.3f}", *smoothed(s.c)) : "–");
      }
      os << fmt::format("\nminimum K at c = {}", num(r.raw_argmin));
      if (r.smoothing) os << fmt::format("; smoothed minimum at c = {:.4f}", r.smoothed_argmin);
      os << '\n';
      break;
    case Format::jsonl:
      for (const SweepSample& s : r.samples) {
        ordered_json j;
        j["c"] = s.c;
        j["mean_evaluations"] = s.mean_evaluations ? ordered_json(*s.mean_evaluations) : ordered_json();
        j["smoothed_value"] = smoothed(s.c) ? ordered_json(*smoothed(s.c)) : ordered_json();
        os << j.dump() << '\n';
      }
      break;
  }
  return kExitOk;
}

struct SweepJArgs {
  Common common;
  std::string functions = "7-20";
  int from = -15;
  int to = -2;
};

int cmd_sweep_j(const SweepJArgs& args, std::ostream& out) {
  const Format format = args.common.parsed_format();
  const std::vector<int> ids = parse_function_ids(args.functions);
  const auto rows = sweep_ratio_a_exponent(ids, args.from, args.to, args.common.tolerance());

  Sink sink(out, args.common.out_path);
  std::ostream& os = *sink;
  switch (format) {
    case Format::csv:
      os << "j,c,total_evaluations\n";
      for (const SweepJRow& row : rows) {
        os << fmt::format("{},{},{}\n", row.j, num(row.c), opt_num(row.total_evaluations));
      }
      break;
    case Format::markdown:
      os << "| j | c | Σk |\n|---:|---:|---:|\n";
      for (const SweepJRow& row : rows) {
        os << fmt::format("| {} | {:.3g} | {} |\n", row.j, row.c,
                          row.total_evaluations ? std::to_string(*row.total_evaluations) : "–");
      }
      break;
    case Format::jsonl:
      for (const SweepJRow& row : rows) {
        ordered_json j;
        j["j"] = row.j;
        j["c"] = row.c;
        j["total_evaluations"] =
            row.total_evaluations ? ordered_json(*row.total_evaluations) : ordered_json();
        os << j.dump() << '\n';
      }
      break;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// prop: randomized bracketing harness

struct PropArgs {
  Common common;
  std::string methods = "bisect,golden,ratio-p:0.5,ratio-p:0.2,ratio-a,brent,brent-m";
  std::uint64_t seed = 1;
  std::size_t count = 500;
};

int cmd_prop(const PropArgs& args, std::ostream& out) {
  const Format format = args.common.parsed_format();
  const Tolerance tol = args.common.tolerance();
  const std::vector<MethodSpec> methods = parse_methods(args.methods, std::nullopt);
  const auto problems = random_unimodal_problems(args.seed, args.count);

  struct Tally {
    std::size_t bracket = 0;
    std::size_t answer = 0;
  };
  std::vector<Tally> tallies(methods.size());
  for (const UnimodalProblem& p : problems) {
    const auto [lo, hi] = p.argmin_set();
    const double slack = 10.0 * e0(tol, p.center);
    for (std::size_t k = 0; k < methods.size(); ++k) {
      CountingObjective obj([&p](double x) { return p(x); });
      bool lost = false;
      const MinimizeOutcome r = run_method(methods[k], obj, p.interval, tol,
                                           [&](const IterationRecord& rec) {
                                             if (rec.hi < lo || rec.lo > hi) lost = true;
                                           });
      if (lost) ++tallies[k].bracket;
      if (r.x_min < lo - slack || r.x_min > hi + slack) ++tallies[k].answer;
    }
  }

  Sink sink(out, args.common.out_path);
  std::ostream& os = *sink;
  bool clean = true;
  if (format == Format::markdown) os << "| method | targets | bracket_failures | answer_failures |\n|---|---:|---:|---:|\n";
  if (format == Format::csv) os << "method,targets,bracket_failures,answer_failures\n";
  for (std::size_t k = 0; k < methods.size(); ++k) {
    clean = clean && tallies[k].bracket == 0 && tallies[k].answer == 0;
    const std::string label = methods[k].label();
    switch (format) {
      case Format::csv:
        os << fmt::format("{},{},{},{}\n", label, problems.size(), tallies[k].bracket, tallies[k].answer);
        break;
      case Format::markdown:
        os << fmt::format("| {} | {} | {} | {} |\n", label, problems.size(), tallies[k].bracket,
                          tallies[k].answer);
        break;
      case Format::jsonl: {
        ordered_json j;
        j["method"] = label;
        j["targets"] = problems.size();
        j["bracket_failures"] = tallies[k].bracket;
        j["answer_failures"] = tallies[k].answer;
        os << j.dump() << '\n';
        break;
      }
    }
  }
  return clean ? kExitOk : kExitNotConverged;
}

int cmd_fixtures(const Common& common, std::ostream& out) {
  Sink sink(out, common.out_path);
  *sink << format_fixtures();
  return kExitOk;
}

}  // namespace

std::vector<int> parse_function_ids(std::string_view text) {
  std::vector<int> ids;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    if (item.empty()) throw std::invalid_argument("empty entry in function list");
    const std::size_t dash = item.find('-', 1);
    const int first = parse_int(item.substr(0, dash));
    const int last = dash == std::string_view::npos ? first : parse_int(item.substr(dash + 1));
    if (first > last || first < 1 || last > kSuiteSize) {
      throw std::invalid_argument(fmt::format("bad function range '{}'", item));
    }
    for (int id = first; id <= last; ++id) ids.push_back(id);
    pos = comma + 1;
  }
  return ids;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ratio-section minimization of unimodal functions"};
  app.require_subcommand(1);

  MinimizeArgs min_args;
  auto* minimize = app.add_subcommand("minimize", "minimize an expression in x on [a, b]");
  add_common(minimize, min_args.common);
  minimize->add_option("--expr", min_args.expr, "objective, e.g. \"0.2+(x-1.5)^2\"")->required();
  minimize->add_option("--a", min_args.a, "left end")->required();
  minimize->add_option("--b", min_args.b, "right end")->required();
  minimize->add_option("--method", min_args.method, "bisect, golden, ratio-p, ratio-a, brent, brent-m")
      ->capture_default_str();
  minimize->add_option("--c", min_args.c, "section ratio for ratio-p, ratio-a and brent-m");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "run solvers over the benchmark suite");
  add_common(bench, bench_args.common);
  bench->add_option("--methods", bench_args.methods, "comma-separated methods, name[:c]")
      ->capture_default_str();
  bench->add_option("--functions", bench_args.functions, "ids, e.g. 1-20 or 7,9,12")
      ->capture_default_str();
  bench->add_option("--c", bench_args.c, "ratio for methods listed without one");
  bench->add_flag("--compare-paper", bench_args.compare_paper, "add published counts and deltas");
  bench->add_option("--fixtures", bench_args.fixtures, "fixtures file")->capture_default_str();

  SweepCArgs sweep_c_args;
  auto* sweep_c = app.add_subcommand("sweep-c", "mean ratio-p evaluations versus c");
  add_common(sweep_c, sweep_c_args.common);
  sweep_c->add_option("--functions", sweep_c_args.functions)->capture_default_str();
  sweep_c->add_option("--from", sweep_c_args.from)->capture_default_str();
  sweep_c->add_option("--to", sweep_c_args.to)->capture_default_str();
  sweep_c->add_option("--step", sweep_c_args.step)->capture_default_str();
  sweep_c->add_option("--fit-degree", sweep_c_args.fit_degree)->capture_default_str();

  SweepJArgs sweep_j_args;
  auto* sweep_j = app.add_subcommand("sweep-j", "total ratio-a evaluations for c = 10^(j/2)");
  add_common(sweep_j, sweep_j_args.common);
  sweep_j->add_option("--functions", sweep_j_args.functions)->capture_default_str();
  sweep_j->add_option("--from", sweep_j_args.from)->capture_default_str();
  sweep_j->add_option("--to", sweep_j_args.to)->capture_default_str();

  PropArgs prop_args;
  auto* prop = app.add_subcommand("prop", "randomized bracketing check on a|x-v|^p + k targets");
  add_common(prop, prop_args.common);
  prop->add_option("--methods", prop_args.methods)->capture_default_str();
  prop->add_option("--seed", prop_args.seed)->capture_default_str();
  prop->add_option("--count", prop_args.count)->capture_default_str();

  Common fixtures_args;
  auto* fixtures = app.add_subcommand("fixtures", "write the benchmark fixtures file");
  fixtures->add_option("--out", fixtures_args.out_path, "destination file");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (minimize->parsed()) return cmd_minimize(min_args, out, err);
    if (bench->parsed()) return cmd_bench(bench_args, out);
    if (sweep_c->parsed()) return cmd_sweep_c(sweep_c_args, out);
    if (sweep_j->parsed()) return cmd_sweep_j(sweep_j_args, out);
    if (prop->parsed()) return cmd_prop(prop_args, out);
    if (fixtures->parsed()) return cmd_fixtures(fixtures_args, out);
  } catch (const ParseError& e) {
    err << "error: expression " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ratiosec::cli
