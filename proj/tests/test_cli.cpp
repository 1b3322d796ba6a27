#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DIASTASIS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path write_temp(const std::string& name, const json& j) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << j.dump();
  return path;
}

}  // namespace

TEST_CASE("diastasis and distance") {
  const Run r = run("diastasis --space ball2 --w 0,0,0,0 --z 0.5,0,0,0");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["space"] == "ball2");
  CHECK(j["diastasis"].get<double>() == doctest::Approx(0.28768207245178).epsilon(1e-12));

  const Run d = run("distance --space ball1 --w 0,0 --z 0.5,0");
  REQUIRE(d.code == 0);
  CHECK(json::parse(d.out)["distance"].get<double>() == doctest::Approx(std::atanh(0.5)).epsilon(1e-12));

  const Run p = run("diastasis --space poly2 --w 0,0,0,0 --z 0.5,0,0.5,0");
  REQUIRE(p.code == 0);
  CHECK(json::parse(p.out)["diastasis"].get<double>() == doctest::Approx(-2 * std::log(0.75)).epsilon(1e-12));
}

TEST_CASE("barycentre of a single atom is its image") {
  const json problem = {{"n", 1}, {"atoms", json::array({{{"z", {{0.3, -0.2}}}, {"w", 1.0}}})}};
  const auto path = write_temp("diastasis_cli_single_atom.json", problem);
  const Run r = run("barycentre --problem " + path.string());
  std::filesystem::remove(path);
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["point"][0][0].get<double>() == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(j["point"][0][1].get<double>() == doctest::Approx(-0.2).epsilon(1e-10));
  CHECK(j["residual"].get<double>() <= 1e-10);
}

TEST_CASE("entropy") {
  const Run r = run("entropy --space ball2 --tol 0.05");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["diastatic_entropy"].get<double>() - 4.0) <= 0.1);
  CHECK(std::abs(j["critical_exponent"].get<double>() - 2.0) <= 0.05);
}

TEST_CASE("verify suites") {
  const Run r = run("verify hyperbolic --seed 7 --samples 50");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["suite"] == "hyperbolic");
  CHECK(j["seed"] == 7);
  CHECK(!j["records"].empty());
  for (const json& rec : j["records"]) CHECK(rec["pass"] == true);

  const Run ops = run("verify operators --seed 3 --samples 40");
  REQUIRE(ops.code == 0);
  const json parsed = json::parse(ops.out);
  bool found = false;
  for (const json& rec : parsed["records"]) {
    if (rec["name"].get<std::string>().find("trace_K") != std::string::npos) found = true;
  }
  CHECK(found);
}

TEST_CASE("verify output is deterministic apart from timing") {
  json a = json::parse(run("verify barycentre --seed 11 --samples 20").out);
  json b = json::parse(run("verify barycentre --seed 11 --samples 20").out);
  a.erase("wall_time_s");
  b.erase("wall_time_s");
  CHECK(a == b);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("verify nosuch").code == 2);
  CHECK(run("diastasis --space disc2 --w 0,0 --z 0,0").code == 2);
  CHECK(run("diastasis --space ball1 --w 0,0 --z 1.5,0").code == 2);
  CHECK(run("diastasis --space ball2 --w 0,0 --z 0,0,0,0").code == 2);
  CHECK(run("distance --space omega2 --w 0,0,0,0,0,0,0,0 --z 0,0,0,0,0,0,0,0").code == 2);
  CHECK(run("entropy --space omega2").code == 2);
  CHECK(run("barycentre --problem /nonexistent/problem.json").code == 2);
  CHECK(run("").code == 2);
}
