#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "squeeze_cli/commands.hpp"
#include "squeeze_cli/config.hpp"

using namespace squeeze;
using namespace squeeze::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("squeeze_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& command, const Json& user, const fs::path& dir) {
  std::ostringstream out, err;
  Overrides ov;
  ov.out_dir = dir.string();
  const int code = run_command(command, user, ov, {2, &out, &err});
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> data_rows(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, '\t')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Config, DefaultsResolve) {
  const RunConfig rc = resolve(Json::object());
  EXPECT_EQ(rc.scenario, Scenario::steady);
  EXPECT_EQ(rc.schedule.kappa(), 1.0);
  EXPECT_EQ(rc.tau.size(), 61u);
  EXPECT_FALSE(rc.montecarlo.has_value());
}

TEST(Config, PresetsResolve) {
  for (const auto& name : preset_names()) {
    EXPECT_NO_THROW(resolve(preset(name))) << name;
    EXPECT_FALSE(preset_summary(name).empty());
  }
  EXPECT_THROW(preset("nope"), ConfigError);
}

TEST(Config, MonteCarloDefaultsFollowRates) {
  const RunConfig rc = resolve(preset("steady"));
  ASSERT_TRUE(rc.montecarlo.has_value());
  EXPECT_NEAR(rc.montecarlo->mc.dt, 0.01 / 1.5, 1e-15);
  EXPECT_EQ(rc.montecarlo->mc.bin_steps, 15u);
  EXPECT_EQ(rc.resolved["montecarlo"]["bin_steps"].get<int>(), 15);
}

TEST(Config, Errors) {
  auto bad = [](const char* text) {
    try {
      resolve(Json::parse(text));
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(bad(R"({"schedule": {"kappa": 1.0, "kappa_out": 2.0}})").find("kappa_out <= kappa"), std::string::npos);
  EXPECT_NE(bad(R"({"schedule": {"kappa": -1.0}})").find("schedule.kappa"), std::string::npos);
  EXPECT_NE(bad(R"({"scenario": "phase_jump", "schedule": {"pump_magnitude": 0.5}})").find("theta_after"),
            std::string::npos);
  EXPECT_NE(bad(R"({"scenario": "warp"})").find("scenario"), std::string::npos);
  EXPECT_NE(bad(R"({"grids": {"tau": [0.5, 0.1]}})").find("grids.tau"), std::string::npos);
}

TEST(Config, Overrides) {
  Overrides ov;
  ov.seed = 77;
  ov.out_dir = "/tmp/x";
  const RunConfig rc = resolve(preset("vacuum"), ov);
  EXPECT_EQ(rc.montecarlo->mc.seed, 77u);
  EXPECT_EQ(rc.out_dir, "/tmp/x");
}

TEST(Commands, ConfigErrorExitCode) {
  const auto dir = scratch("badcfg");
  const RunResult r = run("correlators", Json::parse(R"({"schedule": {"kappa": 1.0, "kappa_out": 2.0}})"), dir);
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_NE(r.err.find("kappa_out"), std::string::npos);
}

TEST(Commands, VacuumCorrelatorsHaveNoSmoothPart) {
  const auto dir = scratch("vacuum");
  const RunResult r = run("correlators", preset("vacuum"), dir);
  ASSERT_EQ(r.code, kOk) << r.err;
  const std::string text = slurp(dir / "correlators.tsv");
  EXPECT_EQ(text.rfind("# squeeze ", 0), 0u);
  EXPECT_NE(text.find("# config: "), std::string::npos);
  const auto rows = data_rows(dir / "correlators.tsv");
  ASSERT_EQ(rows.size(), 62u);
  EXPECT_EQ(rows[0][0], "t1");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t c = 4; c < 8; ++c) EXPECT_EQ(std::stod(rows[i][c]), 0.0);
    EXPECT_EQ(std::stod(rows[i][8]), i == 1 ? 0.5 : 0.0);
  }
}

TEST(Commands, LowPowerComparisonNeverFails) {
  const auto dir = scratch("lowpower");
  Json cfg = preset("steady");
  cfg["montecarlo"]["n_traj"] = 10;
  cfg["grids"]["tau"] = Json::array({0.0, 0.5});
  const RunResult r = run("montecarlo", cfg, dir);
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("low-power"), std::string::npos);
}

TEST(Commands, MonteCarloRerunIsBitwiseIdentical) {
  Json cfg = preset("steady");
  cfg["montecarlo"]["n_traj"] = 600;
  cfg["grids"]["tau"] = Json::array({0.0, 0.5, 1.0});
  const auto a = scratch("rerun_a");
  const auto b = scratch("rerun_b");
  ASSERT_EQ(run("montecarlo", cfg, a).code, kOk);
  ASSERT_EQ(run("montecarlo", cfg, b).code, kOk);
  const auto ra = data_rows(a / "montecarlo.tsv");
  ASSERT_EQ(ra.size(), 4u);
  EXPECT_EQ(ra, data_rows(b / "montecarlo.tsv"));
}

TEST(Commands, VacuumVariance) {
  const auto dir = scratch("variance");
  const RunResult r = run("variance", preset("vacuum"), dir);
  ASSERT_EQ(r.code, kOk) << r.err;
  for (const auto& row : data_rows(dir / "variance.tsv"))
    if (row[0] == "total") EXPECT_NEAR(std::stod(row[1]), 2.5, 1e-12);
}

TEST(Commands, PhasePreservingMonteCarloIsRejected) {
  const auto dir = scratch("pp");
  Json cfg = preset("vacuum");
  cfg["schedule"]["amplifier"] = "phase_preserving";
  EXPECT_EQ(run("montecarlo", cfg, dir).code, kConfigError);
}
