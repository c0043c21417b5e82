#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef ROTORBOX_CLI_PATH
#error "ROTORBOX_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ROTORBOX_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

nlohmann::json strip_timings(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("timings");
  return j;
}

}  // namespace

TEST_CASE("shift: json payload, values, opaque-partition case") {
  const RunResult r = run_cli("shift --n-rounds 100 --grid 512 --postselect up_x --output json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == "1.0");
  CHECK(j["results"]["shift"]["unit"] == "hbar");
  const double shift = j["results"]["shift"]["value"].get<double>();
  CHECK(std::abs(shift + 1.0) < 0.02);
  CHECK(std::abs(shift + 1.0) <
        j["results"]["predicted_deviation_bound"]["value"].get<double>());

  const RunResult dn = run_cli("shift --n-rounds 100 --grid 512 --postselect down_x");
  CHECK(std::abs(nlohmann::json::parse(dn.out)["results"]["shift"]["value"].get<double>() -
                 1.0) < 0.02);

  const RunResult zero = run_cli("shift --epsilon 0 --n-rounds 10 --grid 128 --delta-theta 0.2");
  CHECK(std::abs(nlohmann::json::parse(zero.out)["results"]["shift"]["value"].get<double>()) <
        1e-12);
}

TEST_CASE("reports are deterministic and round-trip through JSON") {
  const std::string flags = "shift --n-rounds 20 --grid 256 --delta-theta 0.1";
  const RunResult a = run_cli(flags);
  const RunResult b = run_cli(flags);
  REQUIRE(a.exit_code == 0);
  CHECK(strip_timings(a.out) == strip_timings(b.out));
  // lossless round trip: parse -> dump -> parse identical
  const auto j = strip_timings(a.out);
  CHECK(nlohmann::json::parse(j.dump()) == j);
}

TEST_CASE("csv output is a flat table with unit tags") {
  const RunResult r = run_cli("shift --n-rounds 10 --grid 128 --delta-theta 0.2 --output csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("key,value,unit") == 0);
  CHECK(r.out.find("results.shift,") != std::string::npos);
  CHECK(r.out.find(",hbar") != std::string::npos);
}

TEST_CASE("flux: single wall index and svg output") {
  const RunResult r = run_cli("flux --n-rounds 20 --wall-index 20 --ideal");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["results"]["simulated"]["value"].get<double>() - (-3.92e-2)) < 5e-4);

  const std::string svg_path = "/tmp/rotorbox_flux_test.svg";
  const RunResult prof =
      run_cli("flux --n-rounds 4 --delta-theta 0.05 --grid 1024 --ideal --svg " + svg_path);
  REQUIRE(prof.exit_code == 0);
  std::ifstream svg(svg_path);
  REQUIRE(svg.good());
  std::string content((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  CHECK(content.find("<svg") != std::string::npos);
  CHECK(content.find("series,x,y") != std::string::npos);  // embedded data table
  std::remove(svg_path.c_str());
}

TEST_CASE("momentum: defaults, p0 = 0, budget guard") {
  const RunResult r = run_cli("momentum --n-rounds 50 --delta-theta 0.1 --grid 1024");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["reflection_mode"] == "once-per-transit");
  CHECK(std::abs(j["results"]["lx_shift"]["value"].get<double>() + 1.0) < 0.03);

  const RunResult zero = run_cli("momentum --n-rounds 50 --delta-theta 0.1 --grid 1024 --p0 0");
  CHECK(std::abs(nlohmann::json::parse(zero.out)["results"]["p_transfer"]["value"]
                     .get<double>()) < 1e-12);

  // 2 N p0 delta_xw = 2 > 1: model validity violated
  const RunResult bad =
      run_cli("momentum --n-rounds 50 --delta-theta 0.1 --p0 1 --delta-xw 0.02");
  CHECK(bad.exit_code == 3);
}

TEST_CASE("momentum sweep emits a quadratically decaying ladder") {
  const RunResult r = run_cli(
      "momentum --n-rounds 50 --delta-theta 0.1 --grid 1024 --sweep --sweep-rungs 3");
  REQUIRE(r.exit_code == 0);
  const auto rows = nlohmann::json::parse(r.out)["results"]["rows"];
  REQUIRE(rows.size() == 3);
  const double p0 = rows[0]["p_transfer"]["value"].get<double>();
  const double p1 = rows[1]["p_transfer"]["value"].get<double>();
  CHECK(p0 / p1 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("sweep: survival ladder is monotone toward 1") {
  const RunResult r = run_cli("sweep --n-ladder 25,50,100 --grid 512");
  REQUIRE(r.exit_code == 0);
  const auto ladder = nlohmann::json::parse(r.out)["results"]["ladder"];
  REQUIRE(ladder.size() == 3);
  double prev = 0.0;
  for (const auto& row : ladder) {
    const double s = row["survival"]["value"].get<double>();
    CHECK(s > prev);
    CHECK(std::abs(s - row["survival_analytic"]["value"].get<double>()) < 0.05 * 0.05);
    prev = s;
  }
}

TEST_CASE("backward: physical and ideal fidelities") {
  const RunResult r = run_cli("backward --n-rounds 100");
  REQUIRE(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["results"]["fidelity"]["value"].get<double>() >= 0.999);

  const RunResult ideal =
      run_cli("backward --ideal --n-rounds 20 --delta-theta 0.35 --grid 512 "
              "--family raised-cosine");
  CHECK(std::abs(nlohmann::json::parse(ideal.out)["results"]["fidelity"]["value"]
                     .get<double>() - 1.0) < 1e-10);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("shift --no-such-flag").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("shift --postselect sideways").exit_code == 1);
}
