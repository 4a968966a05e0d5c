#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

using ratiosec::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "ratiosec");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("function id lists") {
  using ratiosec::cli::parse_function_ids;
  CHECK(parse_function_ids("1-3") == std::vector<int>{1, 2, 3});
  CHECK(parse_function_ids("7,9,12") == std::vector<int>{7, 9, 12});
  CHECK(parse_function_ids("1-2,12") == std::vector<int>{1, 2, 12});
  CHECK_THROWS_AS(parse_function_ids("0-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function_ids("5-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function_ids("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function_ids("21"), std::invalid_argument);
}

TEST_CASE("minimize a constant") {
  const auto r = call({"minimize", "--expr", "1", "--a", "0.5", "--b", "1.5", "--method", "ratio-p",
                       "--c", "0.2"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "method,x_min,f_min,evaluations,classification,status");
  CHECK(l[1].find(",3,flat_bottom,converged") != std::string::npos);
}

TEST_CASE("minimize the shifted parabola with brent-m") {
  const auto r = call({"minimize", "--expr", "0.2+(x-1.5)^2", "--a", "0.3", "--b", "3.2",
                       "--method", "brent-m", "--eps", "1e-5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("brent-m:0.2,1.5,") != std::string::npos);
}

TEST_CASE("malformed expression exits with usage code") {
  const auto r = call({"minimize", "--expr", "1+*x", "--a", "0", "--b", "1"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("offset 2") != std::string::npos);
}

TEST_CASE("bad arguments exit with usage code") {
  CHECK(call({"minimize", "--expr", "x", "--a", "2", "--b", "1"}).code == 1);
  CHECK(call({"minimize", "--expr", "x", "--a", "0", "--b", "1", "--method", "brent", "--c", "0.3"}).code == 1);
  CHECK(call({"bench", "--functions", "0-4"}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
}

TEST_CASE("exhausted budget exits with code 2") {
  const auto r = call({"minimize", "--expr", "(x-0.3)^2", "--a", "0", "--b", "1", "--method",
                       "golden", "--max-evals", "5"});
  CHECK(r.code == 2);
  CHECK(r.out.find(",5,strict_interior,budget_exhausted") != std::string::npos);
  CHECK(call({"minimize", "--expr", "x", "--a", "0", "--b", "1", "--max-evals", "0"}).code == 1);
}

TEST_CASE("bench csv with reference counts") {
  const auto r = call({"bench", "--methods", "bisect,golden,ratio-p", "--c", "0.5", "--functions",
                       "1-3", "--compare-paper"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 10);
  CHECK(l[0] == "method,function_id,evaluations,x_min,f_min,classification,status,reference_evaluations,delta");
  CHECK(l[7].rfind("ratio-p:0.5,1,3,", 0) == 0);
}

TEST_CASE("bench markdown and jsonl") {
  const auto md = call({"bench", "--methods", "brent", "--functions", "12", "--format", "markdown"});
  CHECK(md.code == 0);
  CHECK(md.out.find("| 12 |") != std::string::npos);
  const auto js = call({"bench", "--methods", "brent", "--functions", "12", "--format", "jsonl"});
  CHECK(js.code == 0);
  CHECK(js.out.find("\"function_id\":12") != std::string::npos);
}

TEST_CASE("sweep-j has one row per exponent") {
  const auto r = call({"sweep-j", "--functions", "12"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 15);
  CHECK(l[0] == "j,c,total_evaluations");
  CHECK(l[1].rfind("-15,", 0) == 0);
  CHECK(l[14].rfind("-2,", 0) == 0);
}

TEST_CASE("sweep-c csv") {
  const auto r = call({"sweep-c", "--functions", "12", "--from", "0.1", "--to", "0.5", "--step", "0.1"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 6);
  CHECK(l[0] == "c,mean_evaluations,smoothed_value");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"bench", "--methods", "ratio-a,brent-m", "--functions", "7-12"};
  CHECK(call(args).out == call(args).out);
  const std::vector<std::string> prop{"prop", "--seed", "5", "--count", "20", "--methods", "golden"};
  const auto a = call(prop);
  CHECK(a.out == call(prop).out);
  CHECK(a.out.rfind("method,targets,bracket_failures,answer_failures", 0) == 0);
}
