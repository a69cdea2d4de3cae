#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "maneuver/io/artifacts.hpp"

using namespace maneuver;
namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* env = std::getenv("MANEUVER_BIN");
  REQUIRE_MESSAGE(env != nullptr, "MANEUVER_BIN must point at the CLI");
  return env;
}

int run(const std::string& args) {
  const std::string cmd =
      "\"" + binary() + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("maneuver_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string sub(const std::string& name) const {
    return (path / name).string();
  }
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

}  // namespace

TEST_CASE("plan succeeds and emits the path artifacts") {
  TempDir tmp;
  const std::string out = tmp.sub("out");
  CHECK(run("plan --out \"" + out + "\"") == 0);
  for (const char* f :
       {"spline.csv", "curvature_forward.csv", "curvature_backward.csv",
        "speed_forward.csv", "speed_backward.csv", "fit_report.json"})
    CHECK(fs::exists(fs::path(out) / f));
}

TEST_CASE("validation failures exit with code 2") {
  TempDir tmp;
  // Bad direction flag value.
  CHECK(run("simulate --direction sideways --out \"" + tmp.sub("a") + "\"") ==
        2);
  // Unknown preset.
  CHECK(run("plan --preset paper-table-9 --out \"" + tmp.sub("b") + "\"") ==
        2);
  // Unknown key in a config file.
  const std::string cfg = tmp.sub("bad.json");
  write_file(cfg, R"({"preset": "paper", "bogus": 1})");
  CHECK(run("plan --config \"" + cfg + "\" --out \"" + tmp.sub("c") + "\"") ==
        2);
  // simulate --reuse-artifacts with no upstream outputs.
  CHECK(run("simulate --reuse-artifacts --out \"" + tmp.sub("d") + "\"") == 2);
  // report before anything was simulated.
  CHECK(run("report --out \"" + tmp.sub("e") + "\"") == 2);
}

TEST_CASE("infeasible pole region exits with code 4") {
  TempDir tmp;
  const std::string cfg = tmp.sub("hopeless.json");
  write_file(cfg,
             R"({"preset": "paper",
                 "d_region": {"sigma_min": 10.0, "zeta_min": 0.5,
                              "omega_max": 20.0}})");
  CHECK(run("design --config \"" + cfg + "\" --out \"" + tmp.sub("out") +
            "\"") == 4);
}

TEST_CASE("plan, design, reuse, simulate and report chain together") {
  TempDir tmp;
  const std::string out = tmp.sub("out");
  REQUIRE(run("plan --out \"" + out + "\"") == 0);
  REQUIRE(run("design --out \"" + out + "\"") == 0);
  CHECK(fs::exists(fs::path(out) / "schedule_forward.json"));
  CHECK(fs::exists(fs::path(out) / "schedule_backward.json"));

  CHECK(run("simulate --reuse-artifacts --controllers PID "
            "--direction forward --out \"" +
            out + "\"") == 0);
  CHECK(fs::exists(fs::path(out) / "trajectory_forward_PID.csv"));
  CHECK(fs::exists(fs::path(out) / "metrics_forward.json"));
  CHECK(fs::exists(fs::path(out) / "comparison_forward.md"));
  CHECK(run("report --direction forward --out \"" + out + "\"") == 0);
}

TEST_CASE("a destabilizing stored schedule exits with code 3") {
  TempDir tmp;
  const std::string out = tmp.sub("out");
  REQUIRE(run("plan --out \"" + out + "\"") == 0);
  REQUIRE(run("design --out \"" + out + "\"") == 0);

  // Sabotage the stored schedule with positive feedback, and lift the
  // steering saturation so the divergence is actually observable.
  GainSchedule bad;
  bad.direction = Direction::forward;
  bad.entries.push_back({0.1, PidGains{-40.0, 0.0, -5.0, 0.01}});
  bad.entries.push_back({1.0, PidGains{-40.0, 0.0, -5.0, 0.01}});
  write_schedule_json(bad, DobSettings{},
                      (fs::path(out) / "schedule_forward.json").string());
  const std::string cfg = tmp.sub("wide.json");
  write_file(cfg,
             R"({"preset": "paper", "sim": {"steering_limit": 1e9}})");
  CHECK(run("simulate --reuse-artifacts --controllers PID "
            "--direction forward --config \"" +
            cfg + "\" --out \"" + out + "\"") == 3);
}
