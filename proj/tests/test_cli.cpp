#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(HYPMAG_CLI_PATH) + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("levels: JSON content for a=1, b=3") {
  const auto r = run("levels --a 1 --b 3");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["params"]["a"] == 1.0);
  CHECK(j["params"]["b"] == 3.0);
  REQUIRE(j["levels"].size() == 3);
  CHECK(j["levels"][0]["energy"] == doctest::Approx(2.75));
  CHECK(j["levels"][1]["energy"] == doctest::Approx(6.75));
  CHECK(j["levels"][2]["energy"] == doctest::Approx(8.75));
  CHECK(j["threshold"] == doctest::Approx(9.0));
}

TEST_CASE("levels: weak field has no discrete levels") {
  const auto r = run("levels --a 1 --b 0.4");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["levels"].empty());
  CHECK(j["threshold"] == doctest::Approx(0.16));
}

TEST_CASE("levels: --b and --B a^2 spellings are byte-identical") {
  const auto r1 = run("levels --a 1 --b 3");
  const auto r2 = run("levels --B 3 --a 1");
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("levels: CSV format and column order") {
  const auto r = run("levels --a 1 --b 3 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("n,energy\n", 0) == 0);
  CHECK(r.out.find("threshold,9\n") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
  CHECK(run("levels --a 1").exit_code == 2);                 // no field given
  CHECK(run("levels --a 1 --b 2 --B 2").exit_code == 2);     // both spellings
  CHECK(run("levels --a -1 --b 2").exit_code == 2);          // bad radius
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("spectrum --a 1 --b 3").exit_code == 2);         // no coupling
  CHECK(run("levels --a 1 --b 3 --format yaml").exit_code == 2);
  CHECK(run("wavefunction --a 1 --b 3 --alpha 0 --w 0,-1").exit_code == 2);
}

TEST_CASE("determinism: identical invocations, identical bytes") {
  const std::string args = "qfunction --a 1 --b 3 --grid -8,2,40";
  const auto r1 = run(args);
  const auto r2 = run(args);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("qfunction: metadata records the resolved convention") {
  const auto r = run("qfunction --a 1 --b 3 --grid -5,2,20");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["convention"]["sign"] == -1.0);
  CHECK(j["convention"]["oracle_drift"].get<double>() < 1e-6);
  REQUIRE(!j["rows"].empty());
  // dQ/dzeta positive everywhere off the poles.
  for (const auto& row : j["rows"])
    CHECK(row["dQ_dzeta"].get<double>() > 0.0);
}

TEST_CASE("spectrum: residuals tiny, energies increasing, w ignored") {
  const auto r = run("spectrum --a 1 --b 3 --alpha 0");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  double prev = -1e300;
  int solved = 0;
  for (const auto& row : j["states"]) {
    if (row["status"] != "solved") continue;
    ++solved;
    CHECK(row["residual"].get<double>() < 1e-12);
    CHECK(row["energy"].get<double>() > prev);
    prev = row["energy"].get<double>();
  }
  CHECK(solved == 3);

  const auto moved = run("spectrum --a 1 --b 3 --alpha 0 --w 2,0.5");
  const json jm = json::parse(moved.out);
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    if (j["states"][i]["status"] != "solved") continue;
    CHECK(jm["states"][i]["energy"].get<double>() ==
          doctest::Approx(j["states"][i]["energy"].get<double>())
              .epsilon(1e-12));
  }
}

TEST_CASE("spectrum: lambda spelling matches alpha spelling") {
  const auto r1 = run("spectrum --a 1 --b 3 --alpha 0");
  const auto r2 = run("spectrum --a 1 --b 3 --lambda 1");
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("wavefunction: norm metadata and NaN-marked site") {
  const auto r =
      run("wavefunction --a 1 --b 3 --alpha 0 --w 0,1 --level 0 "
          "--window -1,1,0.5,1.5 --nx 5 --ny 5 --rel-tol 1e-8");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["norm_check"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(j["rows"].size() == 25);
  // The grid point exactly at w = (0, 1) is NaN-marked (JSON null).
  bool found_site = false;
  for (const auto& row : j["rows"]) {
    if (row["x"].get<double>() == 0.0 && row["y"].get<double>() == 1.0) {
      found_site = true;
      CHECK(row["abs2"].is_null());
    } else if (!row["abs2"].is_null()) {
      CHECK(row["abs2"].get<double>() >= 0.0);
    }
  }
  CHECK(found_site);
}

TEST_CASE("wavefunction: unsolvable level exits 3") {
  const auto r =
      run("wavefunction --a 1 --b 3 --alpha 0 --w 0,1 --level 3 --nx 2 --ny 2");
  CHECK(r.exit_code == 3);
}

TEST_CASE("berry-phase analytic: circle flux and quanta") {
  const auto r = run("berry-phase --a 1 --b 1 --circle 0,1,1");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  const double expect = 2.0 * M_PI * (std::cosh(1.0) - 1.0);
  CHECK(j["analytic_phase"].get<double>() ==
        doctest::Approx(expect).epsilon(1e-10));
  CHECK(j["flux"].get<double>() ==
        doctest::Approx(j["analytic_phase"].get<double>()));
  CHECK(j["flux_quanta"].get<double>() ==
        doctest::Approx(expect / (2.0 * M_PI)).epsilon(1e-10));
  CHECK(j["numeric_phase"].is_null());  // NaN serialized as null
  CHECK(j["degenerate"] == false);
}

TEST_CASE("berry-phase: polyline file input and degenerate flag") {
  const std::string path = "cli_test_polyline.txt";
  {
    std::ofstream f(path);
    f << "0 1\n1 1\n1 2\n0 2\n";
  }
  const auto r = run("berry-phase --a 1 --b 2 --polyline " + path);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  // Rectangle [0,1] x [1,2]: flux = b (u2-u1)(1/v1 - 1/v2) = 2 * 0.5 = 1.
  CHECK(j["flux"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  {
    std::ofstream f(path);
    f << "0 1\n1 1\n2 1\n";  // collinear: encloses nothing
  }
  const auto rd = run("berry-phase --a 1 --b 2 --polyline " + path);
  REQUIRE(rd.exit_code == 0);
  const json jd = json::parse(rd.out);
  CHECK(jd["degenerate"] == true);
  CHECK(jd["flux"].get<double>() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("berry-phase: loop flags are mutually exclusive") {
  CHECK(run("berry-phase --a 1 --b 1").exit_code == 2);
  CHECK(run("berry-phase --a 1 --b 1 --circle 0,1,1 --ellipse 0,2,1,0.5")
            .exit_code == 2);
}

TEST_CASE("--out writes the same bytes as stdout, atomically") {
  const std::string path = "cli_test_levels.json";
  const auto direct = run("levels --a 1 --b 3");
  const auto filed = run("levels --a 1 --b 3 --out " + path);
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.out.empty());
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::string content((std::istreambuf_iterator<char>(f)),
                      std::istreambuf_iterator<char>());
  CHECK(content == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("berry-connection: numeric vs analytic at a cheap tolerance") {
  const auto r =
      run("berry-connection --a 1 --b 1 --alpha 0 --w 0,1 --level 0 "
          "--rel-tol 1e-7");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["analytic"]["u_component"].get<double>() == doctest::Approx(1.0));
  CHECK(j["numeric"]["u_component"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(j["numeric"]["v_component"].get<double>()) < 1e-4);
}
