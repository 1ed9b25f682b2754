#include "squeeze_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "squeeze/error.hpp"

namespace squeeze::cli {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const Json& require(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(join(path, key), "required field is missing");
  return j.at(key);
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

double number_at(const Json& j, const std::string& path, const std::string& key) {
  return number(require(j, path, key), join(path, key));
}

double number_or(const Json& j, const std::string& path, const std::string& key, double fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return number(j.at(key), join(path, key));
}

std::string string_at(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> number_list(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

/// A number, or {"type": constant|step|ramp|piecewise|table, ...}.
TimeFunction function_spec(const Json& j, const std::string& field) {
  if (j.is_number()) return TimeFunction::constant(number(j, field));
  if (!j.is_object()) throw ConfigError(field, "expected a number or a function object");
  const std::string type = string_at(require(j, field, "type"), join(field, "type"));
  try {
    if (type == "constant") return TimeFunction::constant(number_at(j, field, "value"));
    if (type == "step")
      return TimeFunction::step(number_at(j, field, "before"), number_at(j, field, "after"), number_at(j, field, "at"));
    if (type == "ramp")
      return TimeFunction::ramp(number_at(j, field, "t0"), number_at(j, field, "v0"), number_at(j, field, "t1"),
                                number_at(j, field, "v1"));
    if (type == "piecewise") {
      const Json& pieces = require(j, field, "pieces");
      if (!pieces.is_array() || pieces.empty()) throw ConfigError(join(field, "pieces"), "expected a nonempty array");
      std::vector<TimeFunction::Piece> ps;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto v = number_list(pieces[i], join(field, "pieces") + "[" + std::to_string(i) + "]");
        if (v.size() != 3) throw ConfigError(join(field, "pieces"), "each piece is [start, value, slope]");
        ps.push_back({v[0], v[1], v[2]});
      }
      return TimeFunction::piecewise(std::move(ps), number_or(j, field, "end", std::numeric_limits<double>::infinity()));
    }
    if (type == "table")
      return TimeFunction::tabulated(number_list(require(j, field, "t"), join(field, "t")),
                                     number_list(require(j, field, "v"), join(field, "v")));
  } catch (const squeeze::Error& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(join(field, "type"), "unknown function type '" + type + "'");
}

/// A list of numbers, or {"start", "stop", "step"} / {"start", "stop", "count"}.
std::vector<double> grid_spec(const Json& j, const std::string& field) {
  if (j.is_array()) return number_list(j, field);
  if (!j.is_object()) throw ConfigError(field, "expected an array or a range object");
  const double start = number_at(j, field, "start");
  const double stop = number_at(j, field, "stop");
  if (!(stop >= start)) throw ConfigError(field, "stop must not be below start");
  std::vector<double> out;
  if (j.contains("count")) {
    const double c = number(j.at("count"), join(field, "count"));
    if (c < 1 || c != std::floor(c)) throw ConfigError(join(field, "count"), "must be a positive integer");
    const auto count = static_cast<std::size_t>(c);
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
  }
  const double step = number_at(j, field, "step");
  if (!(step > 0.0)) throw ConfigError(join(field, "step"), "must be positive");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

void strictly_ascending(const std::vector<double>& v, const std::string& field) {
  if (v.empty()) throw ConfigError(field, "must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw ConfigError(field, "must be strictly ascending");
}

Scenario parse_scenario(const Json& j) {
  const std::string s = string_at(j, "scenario");
  if (s == "steady") return Scenario::steady;
  if (s == "phase_jump") return Scenario::phase_jump;
  if (s == "custom") return Scenario::custom;
  if (s == "nonlinear") return Scenario::nonlinear;
  throw ConfigError("scenario", "expected steady, phase_jump, custom or nonlinear, got '" + s + "'");
}

AmplifierMode parse_amplifier(const Json& j) {
  const std::string s = string_at(j, "schedule.amplifier");
  if (s == "phase_sensitive") return AmplifierMode::phase_sensitive;
  if (s == "phase_preserving") return AmplifierMode::phase_preserving;
  throw ConfigError("schedule.amplifier", "expected phase_sensitive or phase_preserving");
}

DriveSchedule parse_schedule(const Json& s, Scenario scenario) {
  const std::string p = "schedule";
  const double kappa = number_at(s, p, "kappa");
  if (!(kappa > 0.0)) throw ConfigError("schedule.kappa", "kappa must be positive");
  const double kappa_out = number_at(s, p, "kappa_out");
  if (!(kappa_out > 0.0) || kappa_out > kappa)
    throw ConfigError("schedule.kappa_out", "invariant 0 < kappa_out <= kappa violated (kappa_out = " + fmt(kappa_out) +
                                                ", kappa = " + fmt(kappa) + ")");
  const double n_bath = number_at(s, p, "n_bath");
  if (!(n_bath >= 0.0)) throw ConfigError("schedule.n_bath", "n_bath must be nonnegative");
  const AmplifierMode mode = parse_amplifier(require(s, p, "amplifier"));

  if (scenario == Scenario::phase_jump) {
    const double mag = number_at(s, p, "pump_magnitude");
    if (!(mag >= 0.0)) throw ConfigError("schedule.pump_magnitude", "must be nonnegative");
    if (number_at(s, p, "detuning") != 0.0)
      throw ConfigError("schedule.detuning", "the phase_jump scenario has zero detuning");
    if (number_at(s, p, "pump_phase") != 0.0)
      throw ConfigError("schedule.pump_phase", "the phase_jump scenario starts from theta = 0; set theta_after");
    return make_phase_jump(mag, number_at(s, p, "theta_after"), kappa).with_output(kappa_out, n_bath, mode);
  }
  if (scenario == Scenario::steady) {
    for (const char* key : {"detuning", "pump_magnitude", "pump_phase"})
      if (!require(s, p, key).is_number())
        throw ConfigError(join(p, key), "the steady scenario needs a constant (plain number)");
  }
  try {
    return DriveSchedule(function_spec(require(s, p, "detuning"), "schedule.detuning"),
                         function_spec(require(s, p, "pump_magnitude"), "schedule.pump_magnitude"),
                         function_spec(require(s, p, "pump_phase"), "schedule.pump_phase"), kappa, kappa_out, n_bath,
                         mode);
  } catch (const squeeze::Error& e) {
    throw ConfigError("schedule", e.what());
  }
}

InitialCondition parse_initial(const Json& j) {
  const std::string p = "initial";
  const std::string type = string_at(require(j, p, "type"), "initial.type");
  InitialCondition init;
  if (type == "relaxed") {
    if (j.contains("t0")) throw ConfigError("initial.t0", "a relaxed start has no t0");
    return init;
  }
  init.t0 = number_at(j, p, "t0");
  if (type == "vacuum") {
    init.state = Vacuum{};
  } else if (type == "thermal") {
    init.state = Thermal{number_at(j, p, "n")};
  } else if (type == "squeezed") {
    init.state = SqueezedVacuum{number_at(j, p, "r"), number_or(j, p, "angle", 0.0)};
  } else if (type == "custom") {
    const auto m = number_list(require(j, p, "m_aa"), "initial.m_aa");
    if (m.size() != 2) throw ConfigError("initial.m_aa", "expected [re, im]");
    init.state = CustomMoments{Complex(m[0], m[1]), number_at(j, p, "m_abs")};
  } else {
    throw ConfigError("initial.type", "expected relaxed, vacuum, thermal, squeezed or custom");
  }
  try {
    (void)initial_moments(init.state, *init.t0);
  } catch (const squeeze::Error& e) {
    throw ConfigError("initial", e.what());
  }
  return init;
}

NonlinearSettings parse_nonlinear(const Json& j, const DriveSchedule& base) {
  const std::string p = "nonlinear";
  NonlinearSettings out;
  const auto coeffs = number_list(require(j, p, "omega_r"), "nonlinear.omega_r");
  const double omega_rf = number_or(j, p, "omega_rf", 0.0);
  const TimeFunction re = j.contains("drive_re") ? function_spec(j.at("drive_re"), "nonlinear.drive_re") : TimeFunction::constant(0.0);
  const TimeFunction im = j.contains("drive_im") ? function_spec(j.at("drive_im"), "nonlinear.drive_im") : TimeFunction::constant(0.0);
  out.resonator = NonlinearResonator::polynomial(coeffs, re, im, omega_rf, base);
  try {
    out.resonator.validate(number_or(j, p, "n_max", 100.0));
  } catch (const squeeze::Error& e) {
    throw ConfigError("nonlinear.omega_r", e.what());
  }
  const auto c0 = j.contains("center0") ? number_list(j.at("center0"), "nonlinear.center0") : std::vector<double>{0.0, 0.0};
  if (c0.size() != 2) throw ConfigError("nonlinear.center0", "expected [re, im]");
  out.c0 = {Complex(c0[0], c0[1]), number_at(j, p, "t_start")};
  out.knot_step = number_or(j, p, "knot_step", 0.01);
  if (!(out.knot_step > 0.0)) throw ConfigError("nonlinear.knot_step", "must be positive");
  return out;
}

McSettings parse_montecarlo(Json& j, const DriveSchedule& schedule) {
  const std::string p = "montecarlo";
  McSettings s;
  const double kappa_plus = schedule.kappa() + schedule.max_pump_magnitude(schedule.domain().lo, schedule.domain().hi);
  if (!j.contains("dt") || j.at("dt").is_null()) j["dt"] = 0.01 / kappa_plus;
  s.mc.dt = number_at(j, p, "dt");
  if (!(s.mc.dt > 0.0)) throw ConfigError("montecarlo.dt", "must be positive");
  if (!j.contains("bin_steps") || j.at("bin_steps").is_null())
    j["bin_steps"] = std::max<std::int64_t>(1, std::llround(0.1 / (schedule.kappa() * s.mc.dt)));
  const double bins = number_at(j, p, "bin_steps");
  if (bins < 1 || bins != std::floor(bins)) throw ConfigError("montecarlo.bin_steps", "must be a positive integer");
  s.mc.bin_steps = static_cast<std::size_t>(bins);
  if (!j.contains("n_traj")) j["n_traj"] = 1000;
  const double n = number_at(j, p, "n_traj");
  if (n < 2 || n != std::floor(n)) throw ConfigError("montecarlo.n_traj", "must be an integer >= 2");
  s.mc.n_traj = static_cast<std::size_t>(n);
  if (!j.contains("seed")) j["seed"] = 1;
  if (!j.at("seed").is_number_unsigned() && !(j.at("seed").is_number_integer() && j.at("seed").get<std::int64_t>() >= 0))
    throw ConfigError("montecarlo.seed", "must be a nonnegative integer");
  s.mc.seed = j.at("seed").get<std::uint64_t>();
  if (!j.contains("output_noise")) j["output_noise"] = "correlated";
  const std::string noise = string_at(j.at("output_noise"), "montecarlo.output_noise");
  if (noise == "correlated") {
    s.mc.output_noise = OutputNoise::correlated;
  } else if (noise == "independent") {
    s.mc.output_noise = OutputNoise::independent;
  } else {
    throw ConfigError("montecarlo.output_noise", "expected correlated or independent");
  }
  if (j.contains("burn_in")) {
    s.burn_in = number_at(j, p, "burn_in");
    if (!(*s.burn_in >= 0.0)) throw ConfigError("montecarlo.burn_in", "must be nonnegative");
  }
  return s;
}

VarianceSettings parse_variance(Json& j) {
  const std::string p = "variance";
  VarianceSettings v;
  const Json& w = require(j, p, "weight");
  const auto support = number_list(require(w, "variance.weight", "support"), "variance.weight.support");
  if (support.size() != 2 || !(support[1] > support[0]))
    throw ConfigError("variance.weight.support", "expected [a, b] with b > a");
  v.weight.support = {support[0], support[1]};
  v.weight.w = w.contains("w") ? function_spec(w.at("w"), "variance.weight.w") : TimeFunction::constant(1.0);
  try {
    v.weight.validate();
  } catch (const squeeze::Error& e) {
    throw ConfigError("variance.weight", e.what());
  }
  if (!j.contains("step")) j["step"] = v.resolution.step;
  if (!j.contains("rel_tol")) j["rel_tol"] = v.resolution.rel_tol;
  if (!j.contains("abs_tol")) j["abs_tol"] = v.resolution.abs_tol;
  if (!j.contains("compare_mc")) j["compare_mc"] = false;
  v.resolution.step = number_at(j, p, "step");
  v.resolution.rel_tol = number_at(j, p, "rel_tol");
  v.resolution.abs_tol = number_at(j, p, "abs_tol");
  if (!(v.resolution.step > 0.0)) throw ConfigError("variance.step", "must be positive");
  if (!j.at("compare_mc").is_boolean()) throw ConfigError("variance.compare_mc", "expected true or false");
  v.compare_mc = j.at("compare_mc").get<bool>();
  return v;
}

}  // namespace

Json default_config() {
  return Json::parse(R"({
    "scenario": "steady",
    "schedule": {"kappa": 1.0, "detuning": 0.0, "pump_magnitude": 0.0, "pump_phase": 0.0,
                 "n_bath": 0.0, "amplifier": "phase_sensitive"},
    "initial": {"type": "relaxed"},
    "grids": {"t1": [0.0], "tau": {"start": 0.0, "stop": 6.0, "step": 0.1}, "phi": 0.0},
    "integrator": {"rel_tol": 1e-10, "abs_tol": 1e-12},
    "output": {"dir": "."}
  })");
}

std::vector<std::string> preset_names() { return {"vacuum", "steady", "fig2", "nonlinear-kerr"}; }

std::string preset_summary(const std::string& name) {
  if (name == "vacuum") return "undriven resonator; smooth correlators vanish, <R^2> = T/4";
  if (name == "steady") return "kappa = 1, |eps| = 0.5, squeezed quadrature, 10^5-trajectory check, T = 200 window";
  if (name == "fig2") return "theta jumps by pi/2 at t = 0; kappa t1 = 0.25, 1, 2 and 30 as the steady proxy";
  if (name == "nonlinear-kerr") return "Kerr resonator with a coherent drive and no pump; self-generated squeezing";
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

Json preset(const std::string& name) {
  if (name == "vacuum") {
    return Json::parse(R"({
      "scenario": "steady",
      "schedule": {"kappa": 1.0, "pump_magnitude": 0.0},
      "grids": {"t1": [0.0], "tau": {"start": 0.0, "stop": 6.0, "step": 0.1}, "phi": 0.0},
      "montecarlo": {"n_traj": 10000},
      "variance": {"weight": {"support": [0.0, 10.0]}}
    })");
  }
  if (name == "steady") {
    return Json::parse(R"({
      "scenario": "steady",
      "schedule": {"kappa": 1.0, "pump_magnitude": 0.5, "pump_phase": 0.0},
      "grids": {"t1": [0.0], "tau": {"start": 0.0, "stop": 6.0, "step": 0.1}, "phi": 0.0},
      "montecarlo": {"n_traj": 100000},
      "variance": {"weight": {"support": [0.0, 200.0]}, "step": 0.1, "rel_tol": 1e-5}
    })");
  }
  if (name == "fig2") {
    Json j = Json::parse(R"({
      "scenario": "phase_jump",
      "schedule": {"kappa": 1.0, "pump_magnitude": 0.5, "theta_after": 0.0},
      "grids": {"t1": [0.25, 1.0, 2.0, 30.0], "tau": {"start": 0.0, "stop": 6.0, "step": 0.1}, "phi": 0.0},
      "montecarlo": {"n_traj": 20000},
      "variance": {"weight": {"support": [0.0, 2.0]}, "compare_mc": true}
    })");
    j["schedule"]["theta_after"] = std::numbers::pi / 2;
    return j;
  }
  if (name == "nonlinear-kerr") {
    return Json::parse(R"({
      "scenario": "nonlinear",
      "schedule": {"kappa": 1.0, "pump_magnitude": 0.0},
      "nonlinear": {"omega_r": [0.0, 0.004], "omega_rf": 0.0, "drive_re": 3.8, "drive_im": 0.0,
                    "center0": [0.0, 0.0], "t_start": -60.0},
      "grids": {"t1": [0.0], "tau": {"start": 0.0, "stop": 6.0, "step": 0.1}, "phi": 0.0},
      "montecarlo": {"n_traj": 20000}
    })");
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

RunConfig resolve(const Json& user, const Overrides& overrides) {
  if (!user.is_object()) throw ConfigError("", "config must be a JSON object");
  RunConfig rc;
  Json j = default_config();
  j.merge_patch(user);
  if (overrides.seed && j.contains("montecarlo")) j["montecarlo"]["seed"] = *overrides.seed;
  if (overrides.out_dir) j["output"]["dir"] = *overrides.out_dir;

  rc.scenario = parse_scenario(require(j, "", "scenario"));
  Json& s = j["schedule"];
  if (!s.contains("kappa_out") || s.at("kappa_out").is_null()) s["kappa_out"] = s.value("kappa", 1.0);
  if (rc.scenario == Scenario::phase_jump && !s.contains("theta_after"))
    throw ConfigError("schedule.theta_after", "required field is missing");
  rc.schedule = parse_schedule(s, rc.scenario);
  rc.init = parse_initial(require(j, "", "initial"));
  if (rc.scenario == Scenario::steady && rc.init.t0)
    throw ConfigError("initial.type", "the steady scenario needs a relaxed start");

  const Json& g = require(j, "", "grids");
  rc.t1 = grid_spec(require(g, "grids", "t1"), "grids.t1");
  strictly_ascending(rc.t1, "grids.t1");
  rc.tau = grid_spec(require(g, "grids", "tau"), "grids.tau");
  strictly_ascending(rc.tau, "grids.tau");
  if (rc.tau.front() < 0.0) throw ConfigError("grids.tau", "tau must be nonnegative");
  rc.quad.phi = function_spec(require(g, "grids", "phi"), "grids.phi");

  const Json& ic = require(j, "", "integrator");
  rc.integrator.rel_tol = number_at(ic, "integrator", "rel_tol");
  rc.integrator.abs_tol = number_at(ic, "integrator", "abs_tol");
  rc.integrator.max_step = number_or(ic, "integrator", "max_step", std::numeric_limits<double>::infinity());
  try {
    rc.integrator.validate();
  } catch (const squeeze::Error& e) {
    throw ConfigError("integrator", e.what());
  }

  if (rc.scenario == Scenario::nonlinear) {
    rc.nonlinear = parse_nonlinear(require(j, "", "nonlinear"), rc.schedule);
  } else if (j.contains("nonlinear")) {
    throw ConfigError("nonlinear", "only valid with scenario = nonlinear");
  }
  if (j.contains("montecarlo")) rc.montecarlo = parse_montecarlo(j["montecarlo"], rc.schedule);
  if (j.contains("variance")) rc.variance = parse_variance(j["variance"]);
  rc.out_dir = string_at(require(require(j, "", "output"), "output", "dir"), "output.dir");
  rc.resolved = j;
  return rc;
}

}  // namespace squeeze::cli
