#include "doctest.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "expansia/report.hpp"
#include "expansia/scenario.hpp"

using namespace expansia;
using nlohmann::json;

namespace {

std::string scenario_path(const std::string& name) { return std::string(EXPANSIA_SCENARIO_DIR) + "/" + name; }

RunResult run(const std::string& task, const std::string& file, const RunOptions& opts = {})
{
  return run_task(task, load_scenario(scenario_path(file)), opts);
}

std::string dump_all(const RunResult& r)
{
  std::string out;
  for (const auto& j : r.reports)
    out += j.dump() + "\n";
  return out;
}

constexpr const char* kHexagon = R"(
[group Z6]
perm r = 1,2,3,4,5,0

[subgroup H]
of = Z6
word = r r

[space]
kind = metric
labels = a b c d e f
row = 1
row = 2 1
row = 3 2 1
row = 2 3 2 1
row = 1 2 3 2 1

[cover S]
A: a
B: b
C: c
D: d
E: e
F: f

[params]
constant = 1/2
)";

}  // namespace

TEST_CASE("parsing a scenario")
{
  auto s = parse_scenario(kHexagon);
  CHECK(s.group_names == std::vector<std::string>{"Z6"});
  CHECK(s.target() == "Z6");
  CHECK(s.group("Z6").generators().size() == 2);
  REQUIRE(s.space);
  const auto& m = std::get<FiniteMetricSpace>(*s.space);
  CHECK(m.distance(3, 0) == 3);
  CHECK(m.diameter() == 3);
  CHECK(s.cover("S").size() == 6);
  CHECK(s.rational("constant") == Rational(1, 2));
  CHECK(s.subgroup("H").gens.size() == 1);
  CHECK(s.action().on_torus() == false);
  CHECK_THROWS_AS(s.cover("T"), std::invalid_argument);
}

TEST_CASE("scenario errors carry positions")
{
  SUBCASE("malformed matrix")
  {
    try {
      load_scenario(scenario_path("bad_matrix.scn"));
      FAIL("malformed matrix accepted");
    } catch (const ScenarioError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 16);
    }
  }
  SUBCASE("unknown section")
  {
    try {
      parse_scenario("[space]\nkind = torus\n[bogus]\n");
      FAIL("unknown section accepted");
    } catch (const ScenarioError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("line without a separator")
  {
    try {
      parse_scenario("[params]\ndepth 4\n");
      FAIL("missing '=' accepted");
    } catch (const ScenarioError& e) {
      CHECK(e.line() == 2);
    }
  }
  CHECK_THROWS_AS(parse_scenario("[group G]\nperm s = 0,0\n"), ScenarioError);
}

TEST_CASE("linear certification through reports")
{
  const std::vector<std::pair<std::string, int>> want{
      {"certify_G.scn", 0}, {"certify_BC.scn", 0}, {"certify_B.scn", 1}, {"certify_C.scn", 1}};
  for (const auto& [file, code] : want) {
    auto r = run("certify", file);
    CHECK(r.exit_code == code);
    REQUIRE(r.reports.size() == 1);
    CHECK(r.reports[0]["exit"] == code);
    CHECK(r.reports[0]["tool"] == "expansia");
    CHECK(r.reports[0]["version"] == kVersion);
  }
  auto bc = run("certify", "certify_BC.scn");
  CHECK(bc.reports[0]["element"]["trace"] == 3);
  CHECK(bc.reports[0]["element"]["determinant"] == 1);
}

TEST_CASE("rationals are always written as p/q")
{
  CHECK(exact(Rational(1, 2)) == "1/2");
  CHECK(exact(Rational(3)) == "3/1");
  CHECK(exact(Rational(-2, 6)) == "-1/3");
}

TEST_CASE("other tasks")
{
  CHECK(run("falsify", "bc_falsify.scn").exit_code == 2);
  auto fp = run("fixed-points", "bc_fixed_points.scn");
  CHECK(fp.exit_code == 0);
  auto beta = run("beta", "beta_3I.scn");
  CHECK(beta.exit_code == 0);
  CHECK(beta.reports[0].dump().find("\"1/3\"") != std::string::npos);
  CHECK(run("fiber", "fiber_2I.scn").exit_code == 0);
  CHECK(run("cover-verify", "bc_quarter_boxes.scn").exit_code == 0);
  CHECK(run("cover-verify", "sierpinski.scn").exit_code == 1);
  for (const char* task : {"falsify", "estimate", "syndetic", "cover-verify", "cover-build"})
    CHECK_MESSAGE(run(task, "cyclic6.scn").exit_code == 0, task);
  CHECK_THROWS_AS(run("teleport", "cyclic6.scn"), std::invalid_argument);
}

TEST_CASE("overrides are echoed")
{
  RunOptions opts;
  opts.depth = 3;
  opts.seed = 9;
  auto r = run("falsify", "bc_falsify.scn", opts);
  CHECK(r.reports[0]["params"]["depth"] == 3);
  CHECK(r.reports[0]["seed"] == 9);
  CHECK(r.reports[0]["scenario"]["overrides"]["depth"] == 3);
  CHECK_FALSE(r.reports[0].contains("timing_ms"));
  opts.timing = true;
  CHECK(run("falsify", "bc_falsify.scn", opts).reports[0].contains("timing_ms"));
}

TEST_CASE("reports are deterministic")
{
  const std::vector<std::pair<std::string, std::string>> runs{
      {"certify", "certify_G.scn"}, {"falsify", "bc_falsify.scn"}, {"estimate", "cyclic6.scn"}};
  for (const auto& [task, file] : runs) {
    RunOptions opts;
    opts.seed = 5;
    CHECK(dump_all(run(task, file, opts)) == dump_all(run(task, file, opts)));
  }
}

TEST_CASE("replay")
{
  SUBCASE("certified report")
  {
    auto r = run("certify", "certify_G.scn");
    CHECK(replay_reports(r.reports).ok);
  }
  SUBCASE("falsified report")
  {
    auto r = run("certify", "certify_B.scn");
    CHECK(replay_reports(r.reports).ok);
  }
  SUBCASE("inconclusive report")
  {
    auto r = run("falsify", "bc_falsify.scn");
    CHECK(replay_reports(r.reports).ok);
  }
  SUBCASE("tampered witness word")
  {
    auto r = run("certify", "certify_G.scn");
    r.reports[0]["verdict"]["word"] = json::array({"B"});
    auto out = replay_reports(r.reports);
    CHECK_FALSE(out.ok);
    CHECK(out.field.find("word") != std::string::npos);
  }
  SUBCASE("tampered verdict")
  {
    auto r = run("cover-verify", "sierpinski.scn");
    r.reports[0]["exit"] = 0;
    CHECK_FALSE(replay_reports(r.reports).ok);
  }
  SUBCASE("different major version")
  {
    auto r = run("certify", "certify_G.scn");
    r.reports[0]["version"] = "2.0.0";
    CHECK_THROWS_AS(replay_reports(r.reports), VersionMismatch);
  }
}
