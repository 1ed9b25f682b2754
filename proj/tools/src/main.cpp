#include <iostream>

#include "CLI11.hpp"
#include "squeeze/version.hpp"
#include "squeeze_cli/commands.hpp"

using namespace squeeze::cli;

int main(int argc, char** argv) {
  CLI::App app{"Two-time quadrature correlators of a parametrically driven resonator"};
  app.set_version_flag("--version", squeeze::kVersion);
  app.require_subcommand(1);

  std::string config_path, preset_name, out_dir;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--preset", preset_name, "built-in config")->check(CLI::IsMember(preset_names()));
    cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
    cmd->add_option("--threads", threads, "worker cap, 0 = all cores");
    cmd->add_option("--seed", seed, "Monte Carlo seed (overrides montecarlo.seed)");
  };
  for (const char* name : {"correlators", "montecarlo", "variance"}) add_common(app.add_subcommand(name));
  auto* presets = app.add_subcommand("presets", "list presets, or print one with --preset");
  presets->add_option("--preset", preset_name)->check(CLI::IsMember(preset_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  if (cmd->get_name() == "presets") {
    if (preset_name.empty()) {
      for (const auto& n : preset_names()) std::cout << n << "\t" << preset_summary(n) << "\n";
    } else {
      std::cout << preset(preset_name).dump(2) << "\n";
    }
    return kOk;
  }

  Json user = Json::object();
  try {
    if (!preset_name.empty()) user = preset(preset_name);
    if (!config_path.empty()) user.merge_patch(load_file(config_path));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  Overrides ov;
  if (cmd->count("--seed")) ov.seed = seed;
  if (cmd->count("--out")) ov.out_dir = out_dir;
  return run_command(cmd->get_name(), std::move(user), ov, {threads, &std::cout, &std::cerr});
}
