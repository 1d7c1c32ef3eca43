#include <json.hpp>

#include "cli_runner.hpp"
#include "doctest.h"

using namespace opcalc::testing;

namespace {

CliRun run(const std::string& args) { return run_cli(args); }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("verify 'no.such.*'").code == 2);
  CHECK(run("verify '3d.eq7' --format xml").code == 2);
  CHECK(run("verify '3d.eq7' --param 'q=1'").code == 2);
  CHECK(run("verify '3d.eq7'").code == 0);
  CHECK(run("verify '3d.B.printed-right'").code == 1);
  CHECK(run("show nonsense").code == 2);
  CHECK(run("matrix r 1").code == 2);
}

TEST_CASE("parse") {
  auto r = run("parse 'D[r]*r - r*D[r]'");
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  CHECK(run("parse 'D[q]'").code == 2);
  CHECK(run("parse 'D[x]*x' --vars x,y,z").out == "x*D[x] + 1\n");
}

TEST_CASE("matrix output") {
  auto r = run("matrix h_a 1 --format json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["basis"] == nlohmann::json::array({"1", "r"}));
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][1][0] == "0");

  auto id = nlohmann::json::parse(run("matrix identity 2 --format json").out);
  REQUIRE(id["rows"].size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) CHECK(id["rows"][i][k] == (i == k ? "1" : "0"));
}

TEST_CASE("verify JSON schema") {
  auto r = run("verify '3d.eq*' --format json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 6);
  for (const auto& e : j) {
    CHECK(e["check"].is_string());
    CHECK(e["status"] == "pass");
    CHECK(e["residual_terms"] == 0);
    CHECK(e["witnesses"].is_array());
    CHECK(e["elapsed_ms"].is_number_integer());
  }
  auto fail = nlohmann::json::parse(run("verify '3d.B.printed-right' --format json").out);
  CHECK(fail[0]["status"] == "fail");
  CHECK(fail[0]["residual_terms"].get<int>() > 0);
  CHECK_FALSE(fail[0]["witnesses"].empty());
}

TEST_CASE("parameter bindings specialize residuals") {
  CHECK(run("verify 2d.integrals").code == 1);
  CHECK(run("verify 2d.integrals --param p=1 --param beta=3/2").code == 0);
}

TEST_CASE("deterministic reports") {
  std::string args = "verify '[3g]*' --format json --no-timing";
  auto a = run(args + " --jobs 1");
  auto b = run(args + " --jobs 3");
  auto c = run(args + " --jobs 3");
  CHECK(a.out == b.out);
  CHECK(b.out == c.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("show/parse round trip over built-in operators") {
  CHECK(first_unstable_operator() == "");
}
