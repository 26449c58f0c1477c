#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "yamabe/cli.hpp"
#include "yamabe/serialization.hpp"

using namespace yamabe;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  const Result r = run_cli(std::move(args));
  REQUIRE(r.code == cli::kExitOk);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("envelope fields") {
  const Json j = run_json({"gn", "2", "2"});
  for (const char* key : {"schema", "quantity", "value", "method", "anchor", "tolerances", "seed", "result"})
    CHECK(j.contains(key));
  CHECK(std::abs(j["value"].get<double>() - 0.41343) < 5e-4);
  CHECK(j["tolerances"].contains("ode"));
}

TEST_CASE("documented examples") {
  const Json c = run_json({"constants", "5"});
  CHECK(c["result"]["a"].get<double>() == doctest::Approx(16.0 / 3.0).epsilon(1e-11));
  CHECK(c["result"]["p"].get<double>() == doctest::Approx(10.0 / 3.0).epsilon(1e-11));

  const double y = 12.0 * std::sqrt(2.0) * std::numbers::pi;
  const Json b = run_json({"ah-bounds", "4", format_number(y, 17)});
  CHECK(b["result"]["lower"].get<double>() == doctest::Approx(24.0 * std::numbers::pi).epsilon(1e-11));
  CHECK(b["result"]["upper"].get<double>() == doctest::Approx(4.0 * std::sqrt(42.0) * std::numbers::pi).epsilon(1e-11));
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"no-such-command"}).code == cli::kExitUsage);
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"ah-bounds", "4", "-1"}).code == cli::kExitValidation);
  CHECK(run_cli({"constants", "2"}).code == cli::kExitValidation);
  CHECK(run_cli({"gn", "2", "2", "--tol-ode", "-1"}).code == cli::kExitValidation);
  CHECK(run_cli({"constants", "5", "--format", "xml"}).code == cli::kExitValidation);
  // a coarse bisection cannot resolve the ground state
  CHECK(run_cli({"gn", "2", "2", "--tol-bisect", "1e-3"}).code == cli::kExitAccuracy);
}

TEST_CASE("subcommands run") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sphere-yamabe", "4"},
           {"constants", "3", "3"},
           {"gn-closed", "3"},
           {"spectrum", "2", "1", "4", "5"},
           {"nodal", "20", "2", "8", "6"},
           {"first-n", "20", "2", "8", "6"},
           {"second-n", "20", "2", "8", "6", "12.566370614359172"},
           {"sweep-sandwich", "3", "--t-grid", "1:100:3"},
           {"sweep-limit", "3", "--t-grid", "1:100:3"},
           {"tables", "--computed-alpha"}}) {
    CAPTURE(args.front());
    const Result r = run_cli(args);
    CHECK(r.code == cli::kExitOk);
    CHECK(Json::accept(r.out));
  }
}

TEST_CASE("deterministic output") {
  const std::vector<std::string> args{"sweep-sandwich", "3", "--t-grid", "1:1000:4", "--format", "csv", "--seed", "9"};
  const Result a = run_cli(args), b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# schema=1\n# seed=9\n", 0) == 0);
  CHECK(run_cli({"tables"}).out == run_cli({"tables"}).out);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "yamabe_cli_test.json";
  const Result r = run_cli({"sphere-yamabe", "3", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const Json j = Json::parse(in);
  CHECK(j["quantity"].is_string());
  std::filesystem::remove(path);
}
