#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

#ifndef RIEMANN2D_CLI_PATH
#error "RIEMANN2D_CLI_PATH must point at the CLI binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RIEMANN2D_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("integrate: disk area") {
  RunResult r = run_cli("integrate --domain disk --field one --tol 1e-3");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - kPi) <= 1e-3);
  CHECK(j["status"] == "Converged");
  CHECK(j["gap"].get<double>() <= 1e-3);
}

TEST_CASE("integrate: aligned rectangle is exact") {
  RunResult r = run_cli("integrate --domain rect:0,0,2,1 --field one --tol 1e-9");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["value"].get<double>() == 2.0);
}

TEST_CASE("integrate: counterexample field over the L-shape") {
  RunResult r =
      run_cli("integrate --domain lshape --field paper-example:6 --tol 1e-3 --max-level 12");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>()) <= 1e-3);
}

TEST_CASE("integrate: config echo preserves parsed values") {
  RunResult r = run_cli(
      "integrate --domain disk --field one --tol 0.002 --max-level 14 --eps0 0.25 "
      "--eps-terms 9 --seed 42");
  const json j = json::parse(r.out);
  CHECK(j["config"]["tol"].get<double>() == 0.002);
  CHECK(j["config"]["max_level"].get<int>() == 14);
  CHECK(j["config"]["eps0"].get<double>() == 0.25);
  CHECK(j["config"]["eps_terms"].get<int>() == 9);
  CHECK(j["config"]["seed"].get<int>() == 42);
  CHECK(j["config"]["domain"] == "disk");
  CHECK(j["config"]["field"] == "one");
}

TEST_CASE("fubini-check: disk against the iterated route") {
  RunResult r = run_cli("fubini-check --domain disk --field one --tol 1e-3");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["discrepancy"].get<double>() <= 2e-3);
  CHECK(j["discrepancy"].get<double>() <=
        j["predicted_bound"].get<double>() + j["double_gap"].get<double>() +
            j["iterated_gap"].get<double>());
  CHECK(j["slices"].size() == 33);
}

TEST_CASE("fubini-check: via-rectangle mode covers the discontinuity set") {
  RunResult r = run_cli(
      "fubini-check --domain rect:0,0,2,2 --field paper-example:6 --tol 1e-3 --via-rectangle");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["double"].get<double>()) <= 1e-3);
  CHECK(std::abs(j["iterated"].get<double>()) <= 1e-3);
}

TEST_CASE("counterexample: table and json") {
  RunResult table = run_cli("counterexample --depth 6");
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("h(1) outside envelope:           yes") != std::string::npos);
  CHECK(table.out.find("-2 / -1") != std::string::npos);

  RunResult r = run_cli("counterexample --depth 6 --output json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["h1_outside_envelope"] == true);
  CHECK(j["envelope_lower"].get<double>() >= -2.0);
  CHECK(j["envelope_upper"].get<double>() <= -1.0);
  CHECK(std::abs(j["h1"].get<double>()) <= 1e-6);
  CHECK(j["claimed_lower"].get<double>() == -2.0);
  CHECK(j["claimed_upper"].get<double>() == -1.0);

  RunResult depth1 = run_cli("counterexample --depth 1 --output json");
  CHECK(json::parse(depth1.out)["cantor_measure"].get<double>() == 0.75);
}

TEST_CASE("counterexample: depth 0 is a usage error") {
  RunResult r = run_cli("counterexample --depth 0");
  CHECK(r.exit_code == 1);
}

TEST_CASE("measure: CSV bracket of pi") {
  RunResult r = run_cli("measure --domain disk --level 10");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("level,inner,outer\n", 0) == 0);
  double inner = 0.0, outer = 0.0;
  int level = 0;
  REQUIRE(std::sscanf(r.out.c_str(), "level,inner,outer\n%d,%lf,%lf", &level, &inner,
                      &outer) == 3);
  CHECK(level == 10);
  CHECK(inner <= kPi);
  CHECK(outer >= kPi);
}

TEST_CASE("measure: grid dump CSV") {
  RunResult r = run_cli("measure --domain lshape --level 2 --dump-grid");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("level,x_lo,y_lo,x_hi,y_hi,tag\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : r.out) rows += ch == '\n';
  CHECK(rows == 1 + 16);  // header + 4x4 cells
  CHECK(r.out.find("2,0,0,0.5,0.5,FullInside") != std::string::npos);
  CHECK(r.out.find("2,0,1.5,0.5,2,FullOutside") != std::string::npos);
}

TEST_CASE("integrate: table output") {
  RunResult r = run_cli("integrate --domain disk --field one --tol 1e-2 --output table");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("value") != std::string::npos);
  CHECK(r.out.find("Converged") != std::string::npos);
}

TEST_CASE("slice: chord length via json") {
  RunResult r = run_cli("slice --domain disk --x 0.6 --eps 1e-3 --output json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["total_length"].get<double>() - 1.6) <= 2e-3);
  RunResult csv = run_cli("slice --domain disk --x 0.6 --eps 1e-3");
  CHECK(csv.out.rfind("y_lo,y_hi\n", 0) == 0);
}

TEST_CASE("oscillation: constant field dumps only the header") {
  RunResult r = run_cli("oscillation --field one --rect 0,0,1,1 --level 6 --delta 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "x_lo,y_lo,x_hi,y_hi,osc_estimate\n");
}

TEST_CASE("identical configurations produce byte-identical output") {
  const std::string cmd = "integrate --domain disk --field poly --tol 5e-3 --seed 7";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  CHECK(a.out == b.out);
  CHECK(a.exit_code == b.exit_code);

  RunResult c = run_cli("fubini-check --domain lshape --field paper-example:4 --tol 1e-3");
  RunResult d = run_cli("fubini-check --domain lshape --field paper-example:4 --tol 1e-3");
  CHECK(c.out == d.out);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("integrate --domain blob --field one").exit_code == 1);
  CHECK(run_cli("integrate --domain disk --field nope").exit_code == 1);
  CHECK(run_cli("no-such-command").exit_code == 1);
  CHECK(run_cli("integrate --tol -3").exit_code == 1);
}

TEST_CASE("unresolvable covers exit with code 2") {
  RunResult r = run_cli(
      "fubini-check --domain rect:0,0,1,1 --field cantor-stripes --tol 1e-2 --via-rectangle");
  CHECK(r.exit_code == 2);
}
