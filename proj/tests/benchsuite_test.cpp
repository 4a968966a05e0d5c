#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "ratiosec/benchsuite.hpp"

using namespace ratiosec;

TEST_CASE("suite lookup") {
  const auto& f12 = table3(12);
  CHECK(f12.interval == Interval(0.3, 3.2));
  CHECK(f12.evaluator(1.5) == doctest::Approx(0.2));
  CHECK(f12.evaluator(2.5) == doctest::Approx(1.2));
  for (double x : {0.5, 0.8, 1.5}) CHECK(table3(1).evaluator(x) == 1.0);
  CHECK(table3(9).evaluator(3.0) == doctest::Approx(3.2));
  CHECK_THROWS_AS(table3(0), PreconditionError);
  CHECK_THROWS_AS(table3(21), PreconditionError);
  CHECK(table3_all().size() == kSuiteSize);
  for (int id = 1; id <= kSuiteSize; ++id) CHECK(table3(id).id == id);
}

TEST_CASE("method specs") {
  CHECK(MethodSpec::parse("ratio-p:0.5") == MethodSpec::make(Method::ratio_p, 0.5));
  CHECK(MethodSpec::parse("ratio-p").c == 0.2);
  CHECK(MethodSpec::parse("ratio-a").c == 1e-3);
  CHECK(MethodSpec::parse("brent-m").c == 0.2);
  CHECK_FALSE(MethodSpec::parse("golden").c);
  for (const char* text : {"bisect", "golden", "ratio-p:0.35", "ratio-a:0.01", "brent", "brent-m:0.1"}) {
    const auto spec = MethodSpec::parse(text);
    CHECK(MethodSpec::parse(spec.label()) == spec);
  }
  CHECK_THROWS_AS(MethodSpec::parse("newton"), ConfigError);
  CHECK_THROWS_AS(MethodSpec::parse("brent:0.3"), ConfigError);
  CHECK_THROWS_AS(MethodSpec::parse("ratio-p:1.5"), ConfigError);
  CHECK_THROWS_AS(MethodSpec::parse("ratio-p:x"), ConfigError);
}

TEST_CASE("reference columns") {
  CHECK(paper_column(MethodSpec::parse("ratio-p:0.5")) == PaperColumn::ratio_p_05);
  CHECK(paper_column(MethodSpec::parse("ratio-p:0.2")) == PaperColumn::ratio_p_02);
  CHECK_FALSE(paper_column(MethodSpec::parse("ratio-p:0.3")));
  CHECK(paper_column(MethodSpec::parse("brent")) == PaperColumn::brent);
  CHECK(table3(12).reference_count(PaperColumn::bisec) == 36);
  CHECK(table3(1).reference_count(PaperColumn::brent) == 22);
}

TEST_CASE("one-evaluation budget exhausts every cell") {
  const std::vector<MethodSpec> methods{MethodSpec::parse("golden")};
  std::vector<int> ids;
  for (int id = 1; id <= kSuiteSize; ++id) ids.push_back(id);
  const auto report = run_benchmark(methods, ids, Tolerance{1e-5, 1e-10, 1});
  long sum = 0;
  for (const BenchRow& row : report.rows) {
    CHECK(row.status == CellStatus::budget_exhausted);
    sum += static_cast<long>(row.evaluations);
  }
  CHECK(report.total(methods[0]) == sum);
}

TEST_CASE("totals are row sums and ratios cover method pairs") {
  const std::vector<MethodSpec> methods{MethodSpec::parse("bisect"), MethodSpec::parse("golden"),
                                        MethodSpec::parse("ratio-p:0.5")};
  const std::vector<int> ids{7, 8, 9, 12, 15};
  const auto report = run_benchmark(methods, ids, Tolerance{});
  CHECK(report.rows.size() == 15);
  for (const MethodSpec& m : methods) {
    long sum = 0;
    for (int id : ids) sum += static_cast<long>(report.find(m, id)->evaluations);
    CHECK(report.total(m) == sum);
  }
  CHECK(report.ratios.size() == 6);
  CHECK(report.find(MethodSpec::parse("brent"), 7) == nullptr);
  CHECK_THROWS_AS(run_benchmark({}, ids, Tolerance{}), PreconditionError);
}

TEST_CASE("fixtures file matches the suite and the oracle") {
  const auto records = load_fixtures(RATIOSEC_FIXTURES);
  REQUIRE(records.size() == kSuiteSize);
  for (const FixtureRecord& r : records) {
    const BenchFunction& fn = table3(r.id);
    CHECK(r.expression == fn.expression);
    CHECK(Interval(r.lo, r.hi) == fn.interval);
    CHECK(r.reference == fn.reference);
    CHECK(r.class_label == fn.class_label);
  }
  std::ifstream in(RATIOSEC_FIXTURES);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == format_fixtures());
}

TEST_CASE("oracle examples") {
  const auto m12 = reference_minimizer(12);
  CHECK(m12.x == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(m12.f == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_FALSE(m12.plateau);
  const auto m2 = reference_minimizer(2);
  CHECK(m2.x == 6.8);
  CHECK(m2.f == 20 + 16 / 6.8);
  const auto m1 = reference_minimizer(1);
  REQUIRE(m1.plateau);
  CHECK(m1.plateau->lo() == 0.5);
  CHECK(m1.plateau->hi() == 1.5);
}

TEST_CASE("oracle on a shifted absolute value") {
  const auto m = reference_minimizer([](double x) { return 3 + std::abs(x - 0.123456789); },
                                     Interval(-1, 2), 10'000);
  CHECK(std::abs(m.x - 0.123456789) <= 1e-11);
}

TEST_CASE("recognizing methods classify the suite") {
  const Tolerance tol;
  for (const char* text : {"ratio-p:0.5", "ratio-p:0.2", "ratio-a", "brent-m"}) {
    const auto spec = MethodSpec::parse(text);
    for (const BenchFunction& fn : table3_all()) {
      // binary64 plateaus and targets monotone on their printed interval
      if (fn.id == 10 || fn.id == 13 || fn.id == 14 || fn.id == 17 || fn.id == 18 || fn.id == 20) continue;
      CountingObjective obj(fn.evaluator);
      const auto out = run_method(spec, obj, fn.interval, tol);
      CAPTURE(text);
      CAPTURE(fn.id);
      CHECK(classification_matches(fn.class_label, out.classification));
    }
  }
}

TEST_CASE("monotone targets cost six at every ratio") {
  const std::vector<int> ids{2, 3};
  const auto sweep = sweep_ratio_c(ids, 0.05, 0.75, 0.05, Tolerance{}, 3);
  CHECK(sweep.samples.size() == 15);
  for (const SweepSample& s : sweep.samples) CHECK(s.mean_evaluations == 6.0);
}

TEST_CASE("single-function exponent sweep agrees with the benchmark") {
  const std::vector<int> ids{12};
  const auto rows = sweep_ratio_a_exponent(ids, -15, -2, Tolerance{});
  REQUIRE(rows.size() == 14);
  for (const SweepJRow& row : rows) {
    CHECK(row.c == doctest::Approx(std::pow(10.0, row.j / 2.0)));
    const std::vector<MethodSpec> m{MethodSpec::make(Method::ratio_a, row.c)};
    const auto report = run_benchmark(m, ids, Tolerance{});
    CHECK(row.total_evaluations == report.total(m[0]));
  }
  CHECK_THROWS_AS(sweep_ratio_a_exponent(ids, -16, -2, Tolerance{}), PreconditionError);
}

TEST_CASE("random problems are reproducible") {
  const auto a = random_unimodal_problems(42, 50);
  const auto b = random_unimodal_problems(42, 50);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].center == b[i].center);
    CHECK(a[i].interval.contains(a[i].center));
    CHECK(a[i].power >= 1);
    const auto [lo, hi] = a[i].argmin_set();
    CHECK(lo <= a[i].center);
    CHECK(a[i].center <= hi);
    CHECK(a[i](lo) == a[i](a[i].center));
  }
}

TEST_CASE("class names round-trip") {
  for (FunctionClass c : {FunctionClass::constant, FunctionClass::monotone_increasing,
                          FunctionClass::monotone_decreasing, FunctionClass::flat_bottom,
                          FunctionClass::strict_interior}) {
    CHECK(parse_function_class(to_string(c)) == c);
  }
  CHECK_THROWS_AS(parse_function_class("wavy"), PreconditionError);
}
