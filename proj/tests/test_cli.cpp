// Black-box checks of the wgtool binary: exit-code contract, file round
// trips, determinism of outputs.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#ifndef WGTOOL_PATH
#define WGTOOL_PATH "wgtool"
#endif

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(WGTOOL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate is deterministic and traces round-trip") {
  REQUIRE(run("simulate --profile h3 --freqs \"31.2:31.3:2\" --source-pos 6 "
              "--noise 0.1 --seed 7 --out cli_a") == 0);
  REQUIRE(run("simulate --profile h3 --freqs \"31.2:31.3:2\" --source-pos 6 "
              "--noise 0.1 --seed 7 --out cli_b") == 0);
  const std::string a = slurp("cli_a/trace_31p2.csv");
  const std::string b = slurp("cli_b/trace_31p2.csv");
  REQUIRE(!a.empty());
  CHECK(a == b);
  REQUIRE(run("simulate --profile h3 --freqs \"31.2:31.3:2\" --source-pos 6 "
              "--noise 0.1 --seed 8 --out cli_c") == 0);
  CHECK(slurp("cli_c/trace_31p2.csv") != a);
}

TEST_CASE("fit prints lambda and reports through JSON") {
  REQUIRE(run("simulate --profile h3 --freqs \"31.4:31.5:2\" --source-pos 6 "
              "--out cli_fit") == 0);
  CHECK(run("fit --trace cli_fit/trace_31p4.csv --out cli_fit/report.json") == 0);
  const std::string rep = slurp("cli_fit/report.json");
  CHECK(rep.find("\"lambda\"") != std::string::npos);
  CHECK(rep.find("\"alpha\"") != std::string::npos);
}

TEST_CASE("exit codes: validation 2, io 4") {
  CHECK(run("simulate --profile h9 --freqs \"31:32:2\" --source-pos 6") == 2);
  CHECK(run("simulate --profile h3") == 2);             // missing frequencies
  CHECK(run("fit --trace does_not_exist.csv") == 4);
  CHECK(run("reconstruct --config does_not_exist.json") == 4);
}

TEST_CASE("empty trace file is an io error") {
  std::ofstream("cli_empty.csv").close();
  CHECK(run("fit --trace cli_empty.csv") == 4);
  std::remove("cli_empty.csv");
}

}  // TEST_SUITE
