#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "squeeze/integrator.hpp"
#include "squeeze/moments.hpp"
#include "squeeze/montecarlo.hpp"
#include "squeeze/nonlinear.hpp"
#include "squeeze/schedule.hpp"
#include "squeeze/signal.hpp"

namespace squeeze::cli {

using Json = nlohmann::ordered_json;

/// Invalid configuration; `field` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Scenario { steady, phase_jump, custom, nonlinear };

struct McSettings {
  McConfig mc;
  /// Seconds of burn-in from vacuum when the deterministic start is relaxed and the
  /// drive is not constant before the first t1.
  std::optional<double> burn_in;
};

struct VarianceSettings {
  WeightFunction weight;
  QuadratureResolution resolution;
  bool compare_mc = false;
};

struct NonlinearSettings {
  NonlinearResonator resonator;
  CenterState c0;
  double knot_step = 0.01;
};

struct RunConfig {
  Json resolved;  // defaults merged with the user file and flag overrides
  Scenario scenario = Scenario::steady;
  DriveSchedule schedule = DriveSchedule::constant(0.0, 0.0, 1.0);
  QuadratureSchedule quad;
  InitialCondition init;
  std::vector<double> t1;
  std::vector<double> tau;
  IntegratorConfig integrator;
  std::optional<McSettings> montecarlo;
  std::optional<VarianceSettings> variance;
  std::optional<NonlinearSettings> nonlinear;
  std::string out_dir = ".";
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

Json default_config();
std::vector<std::string> preset_names();
/// One-line description of a preset.
std::string preset_summary(const std::string& name);
/// Full user-level config of a preset; throws ConfigError for unknown names.
Json preset(const std::string& name);

/// Merges `user` over the defaults, applies overrides and validates every field.
RunConfig resolve(const Json& user, const Overrides& overrides = {});
Json load_file(const std::string& path);

}  // namespace squeeze::cli
