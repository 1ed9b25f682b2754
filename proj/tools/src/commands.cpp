#include "squeeze_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

#include "squeeze/analytic.hpp"
#include "squeeze/correlators.hpp"
#include "squeeze/decomposition.hpp"
#include "squeeze/error.hpp"
#include "squeeze/nonlinear.hpp"
#include "squeeze_cli/table.hpp"

namespace squeeze::cli {

namespace {

std::string output_path(const RunConfig& rc, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(rc.out_dir, ec);
  if (ec) throw ConfigError("output.dir", "cannot create " + rc.out_dir + ": " + ec.message());
  return (std::filesystem::path(rc.out_dir) / name).string();
}

/// Where a Monte Carlo run has to start so that its ensemble matches `rc.init` at
/// t_first, and the Gaussian state to draw there.
struct McStart {
  double t_start;
  InitialStateSpec state;
};

McStart plan_start(const RunConfig& rc, double t_first, double margin, double dt) {
  if (rc.init.t0) {
    if (t_first - margin < *rc.init.t0) throw ConfigError("initial.t0", "first requested time is too close to t0");
    return {*rc.init.t0, rc.init.state};
  }
  if (rc.nonlinear) return {rc.nonlinear->c0.t, Vacuum{}};

  const auto& mc = *rc.montecarlo;
  double t_start;
  InitialStateSpec state = Vacuum{};
  const auto& bps = rc.schedule.breakpoints();
  const double first_bp = bps.empty() ? std::numeric_limits<double>::infinity() : bps.front();
  if (!mc.burn_in && std::isinf(rc.schedule.domain().lo)) {
    // drive is constant before first_bp: start inside that stretch from its steady state
    t_start = std::min(first_bp, t_first) - margin;
    const DriveSample s = rc.schedule.sample(t_start);
    const auto p = analytic::make_steady_params(s.kappa, s.pump, s.detuning);
    const CorrelatorPair k = analytic::steady_general(p, 0.0);
    state = CustomMoments{k.k_ff / s.kappa, k.k_ffstar.real() / s.kappa + 0.5};
  } else {
    const double burn = mc.burn_in ? *mc.burn_in : relaxation_time(rc.schedule, t_first);
    t_start = t_first - margin - burn;
  }
  // align the step grid with t_first
  t_start = t_first - std::ceil((t_first - t_start) / dt - 1e-9) * dt;
  return {t_start, state};
}

void require_phase_sensitive(const DriveSchedule& s) {
  if (s.amplifier_mode() == AmplifierMode::phase_preserving)
    throw ConfigError("schedule.amplifier", "the Monte Carlo model covers the phase-sensitive output only");
}

const DriveSchedule& deterministic_schedule(const RunConfig& rc, const std::optional<EffectiveSchedule>& eff) {
  return eff ? eff->schedule : rc.schedule;
}

double z_score(double est, double se, double expected) {
  const double d = est - expected;
  if (se > 0.0) return d / se;
  return d == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), d);
}

struct ZTracker {
  double max_abs = 0.0;
  std::string where;
  std::size_t count = 0;
  void add(double z, const std::string& label) {
    ++count;
    if (std::abs(z) > max_abs || (std::isnan(z) && where.empty())) {
      max_abs = std::isnan(z) ? std::numeric_limits<double>::infinity() : std::abs(z);
      where = label;
    }
  }
};

int finish_comparison(const ZTracker& z, std::size_t n_traj, const std::string& file, std::ostream& out) {
  const bool low_power = n_traj < kLowPowerTrajectories;
  out << "points compared: " << z.count << "\n";
  out << "max |z| = " << format_number(z.max_abs) << (z.where.empty() ? "" : " at " + z.where) << "\n";
  out << "wrote " << file << "\n";
  if (low_power) {
    out << "comparison: low-power (n_traj = " << n_traj << " < " << kLowPowerTrajectories << "), not assessed\n";
    return kOk;
  }
  if (z.max_abs > kZFail) {
    out << "comparison: FAIL (|z| > " << kZFail << ")\n";
    return kStatisticalFailure;
  }
  out << "comparison: pass\n";
  return kOk;
}

}  // namespace

int run_correlators(const RunConfig& rc, const Context& ctx) {
  std::vector<CorrelatorRow> rows;
  std::vector<std::string> notes;
  if (rc.nonlinear) {
    const auto r = nonlinear_correlators(rc.nonlinear->resonator, rc.quad, rc.t1, rc.tau, rc.init, rc.nonlinear->c0,
                                         rc.integrator, ctx.threads, rc.nonlinear->knot_step);
    rows = r.rows;
    for (const auto& w : r.warnings) {
      *ctx.err << "warning: " << w << "\n";
      notes.push_back("warning: " + w);
    }
  } else {
    rows = correlator_grid(rc.schedule, rc.quad, rc.t1, rc.tau, rc.init, rc.integrator, ctx.threads);
  }

  TableWriter table(output_path(rc, "correlators.tsv"), "correlators", rc.resolved,
                    {"t1", "tau", "phi1", "phi2", "re_kff", "im_kff", "re_kffstar", "im_kffstar", "delta_weight",
                     "k_quad_smooth", "A", "B", "phi", "psi", "degenerate_flag"},
                    notes);
  for (const auto& r : rows) {
    const SqueezeParams sp = decompose(r.pair);
    table << r.t1 << r.tau << r.phi1 << r.phi2 << r.pair.k_ff.real() << r.pair.k_ff.imag() << r.pair.k_ffstar.real()
          << r.pair.k_ffstar.imag() << r.pair.delta_weight << r.quad.smooth << sp.a << sp.b << sp.phi << sp.psi
          << std::string(sp.degenerate ? "1" : "0");
    table.end_row();
  }
  *ctx.out << "rows: " << rows.size() << "\nwrote " << table.path() << "\n";
  return kOk;
}

int run_montecarlo(const RunConfig& rc, const Context& ctx) {
  if (!rc.montecarlo) throw ConfigError("montecarlo", "section required for the montecarlo command");
  require_phase_sensitive(rc.schedule);
  const McSettings& settings = *rc.montecarlo;
  const double width = static_cast<double>(settings.mc.bin_steps) * settings.mc.dt;

  std::vector<double> taus;
  for (double t : rc.tau)
    if (t == 0.0 || t >= width * (1.0 - 1e-9)) taus.push_back(t);
  if (taus.empty()) throw ConfigError("grids.tau", "no tau is 0 or at least one bin width (" + format_number(width) + ")");

  std::optional<EffectiveSchedule> eff;
  if (rc.nonlinear) {
    const double t_end = rc.t1.back() + taus.back() + 2.0 * width + settings.mc.dt;
    eff = effective_schedule(rc.nonlinear->resonator, rc.nonlinear->c0, t_end, rc.nonlinear->knot_step, rc.integrator);
  }
  const DriveSchedule& det = deterministic_schedule(rc, eff);

  std::vector<std::string> notes;
  if (settings.mc.output_noise == OutputNoise::independent) notes.push_back("note: independent output noise (negative control)");
  const std::string path = output_path(rc, "montecarlo.tsv");
  std::vector<std::string> cols{"t1", "tau", "t1_bin", "t2_bin"};
  for (const char* c : {"re_kff", "im_kff", "re_kffstar", "im_kffstar"}) {
    cols.push_back(c);
    cols.push_back(std::string("se_") + c);
  }
  for (const char* c : {"det_re_kff", "det_im_kff", "det_re_kffstar", "det_im_kffstar", "z_re_kff", "z_im_kff",
                        "z_re_kffstar", "z_im_kffstar"})
    cols.push_back(c);

  struct Block {
    double t1;
    std::vector<McPairPoint> points;
    std::vector<ComplexEstimate> mean_offset;
    std::vector<double> mean_times;
    std::vector<std::string> warnings;
  };
  std::vector<Block> blocks;
  for (double t1 : rc.t1) {
    McConfig mc = settings.mc;
    mc.threads = ctx.threads;
    const McStart start = plan_start(rc, t1, width + mc.dt, mc.dt);
    mc.t_start = start.t_start;
    mc.initial = start.state;
    mc.t_end = t1 + taus.back() + 2.0 * width;
    Block b{t1, {}, {}, {}, {}};
    if (rc.nonlinear) {
      auto r = estimate_nonlinear_fluctuations(rc.nonlinear->resonator, mc, rc.nonlinear->c0, t1, taus, rc.integrator);
      b.points = std::move(r.points);
      b.mean_offset = std::move(r.mean_offset);
      b.mean_times.push_back(b.points.front().t1_bin);
      for (const auto& p : b.points) b.mean_times.push_back(p.t2_bin);
      b.warnings = std::move(r.warnings);
    } else {
      auto r = estimate_correlator_pair(rc.schedule, mc, t1, taus);
      b.points = std::move(r.points);
      b.warnings = std::move(r.warnings);
    }
    blocks.push_back(std::move(b));
  }
  for (const auto& b : blocks)
    for (const auto& w : b.warnings) {
      if (std::find(notes.begin(), notes.end(), "warning: " + w) != notes.end()) continue;
      notes.push_back("warning: " + w);
      *ctx.err << "warning: " << w << "\n";
    }

  TableWriter table(path, "montecarlo", rc.resolved, cols, notes);
  ZTracker z;
  for (const auto& b : blocks) {
    const double t1c = b.points.front().t1_bin;
    std::vector<double> tau_c;
    for (const auto& p : b.points) {
      const double tc = p.t2_bin - t1c;
      if (tau_c.empty() || tc > tau_c.back()) tau_c.push_back(tc);
    }
    const double t1s[] = {t1c};
    const auto m = moments_on_grid(det, rc.init, t1s, rc.integrator);
    const auto pairs = correlator_pair(det, t1c, tau_c, m[0], rc.integrator);
    for (const auto& p : b.points) {
      const auto it = std::lower_bound(tau_c.begin(), tau_c.end(), p.t2_bin - t1c);
      CorrelatorPair expect = apply_scalings(pairs[static_cast<std::size_t>(it - tau_c.begin())], det);
      if (p.tau == 0.0) {
        // equal-step products carry kappa_out <|alpha|^2> including the vacuum 1/2
        expect.k_ffstar += expect.delta_weight / width +
                           det.kappa_out() * expect.delta_weight / static_cast<double>(settings.mc.bin_steps);
      }
      const double det_vals[] = {expect.k_ff.real(), expect.k_ff.imag(), expect.k_ffstar.real(), expect.k_ffstar.imag()};
      const McEstimate* est[] = {&p.k_ff.re, &p.k_ff.im, &p.k_ffstar.re, &p.k_ffstar.im};
      const char* names[] = {"re_kff", "im_kff", "re_kffstar", "im_kffstar"};
      table << b.t1 << p.tau << p.t1_bin << p.t2_bin;
      for (const auto* e : est) table << e->mean << e->std_error;
      for (double d : det_vals) table << d;
      for (int c = 0; c < 4; ++c) {
        const double zc = z_score(est[c]->mean, est[c]->std_error, det_vals[c]);
        table << zc;
        z.add(zc, std::string(names[c]) + " t1=" + format_number(b.t1) + " tau=" + format_number(p.tau));
      }
      table.end_row();
    }
  }

  if (rc.nonlinear) {
    TableWriter means(output_path(rc, "montecarlo_mean.tsv"), "montecarlo", rc.resolved,
                      {"t1", "t_bin", "re_offset", "se_re_offset", "im_offset", "se_im_offset", "z_re", "z_im"}, notes);
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.mean_offset.size(); ++i) {
        const auto& e = b.mean_offset[i];
        const double zr = z_score(e.re.mean, e.re.std_error, 0.0);
        const double zi = z_score(e.im.mean, e.im.std_error, 0.0);
        means << b.t1 << b.mean_times[i] << e.re.mean << e.re.std_error << e.im.mean << e.im.std_error << zr << zi;
        means.end_row();
        z.add(zr, "mean offset re t=" + format_number(b.mean_times[i]));
        z.add(zi, "mean offset im t=" + format_number(b.mean_times[i]));
      }
    }
    *ctx.out << "wrote " << means.path() << "\n";
  }
  return finish_comparison(z, settings.mc.n_traj, table.path(), *ctx.out);
}

int run_variance(const RunConfig& rc, const Context& ctx) {
  if (!rc.variance) throw ConfigError("variance", "section required for the variance command");
  const VarianceSettings& vs = *rc.variance;
  std::optional<EffectiveSchedule> eff;
  if (rc.nonlinear)
    eff = effective_schedule(rc.nonlinear->resonator, rc.nonlinear->c0, vs.weight.support.hi, rc.nonlinear->knot_step,
                             rc.integrator);
  const DriveSchedule& det = deterministic_schedule(rc, eff);
  const VarianceReport r = integrated_variance(det, rc.quad, vs.weight, rc.init, rc.integrator, vs.resolution, ctx.threads);
  const double length = vs.weight.support.hi - vs.weight.support.lo;

  std::vector<std::pair<std::string, double>> rows{{"total", r.total},     {"smooth", r.smooth},
                                                   {"delta", r.delta},     {"coarse", r.coarse},
                                                   {"refined", r.refined}, {"window_length", length}};
  if (r.asymptotic_rate) {
    rows.emplace_back("asymptotic_rate", *r.asymptotic_rate);
    rows.emplace_back("finite_window_correction", r.total - *r.asymptotic_rate * length);
  }

  int code = kOk;
  std::optional<ZTracker> z;
  if (vs.compare_mc) {
    if (!rc.montecarlo) throw ConfigError("montecarlo", "variance.compare_mc needs a montecarlo section");
    if (rc.nonlinear) throw ConfigError("variance.compare_mc", "not available for the nonlinear scenario");
    require_phase_sensitive(rc.schedule);
    McConfig mc = rc.montecarlo->mc;
    mc.threads = ctx.threads;
    const McStart start = plan_start(rc, vs.weight.support.lo, mc.dt, mc.dt);
    mc.t_start = start.t_start;
    mc.initial = start.state;
    mc.t_end = vs.weight.support.hi + mc.dt;
    const McEstimate e = estimate_integrated_variance(rc.schedule, rc.quad, vs.weight, mc);
    const double zv = z_score(e.mean, e.std_error, r.total);
    rows.emplace_back("mc_mean", e.mean);
    rows.emplace_back("mc_std_error", e.std_error);
    rows.emplace_back("z", zv);
    z.emplace();
    z->add(zv, "integrated variance");
  }

  TableWriter table(output_path(rc, "variance.tsv"), "variance", rc.resolved, {"quantity", "value"});
  for (const auto& [k, v] : rows) {
    table << k << v;
    table.end_row();
    *ctx.out << k << " = " << format_number(v) << "\n";
  }
  if (z) code = finish_comparison(*z, rc.montecarlo->mc.n_traj, table.path(), *ctx.out);
  else *ctx.out << "wrote " << table.path() << "\n";
  return code;
}

int run_command(const std::string& command, Json user, const Overrides& overrides, const Context& ctx) {
  try {
    if (command == "montecarlo" && !user.contains("montecarlo")) user["montecarlo"] = Json::object();
    const RunConfig rc = resolve(user, overrides);
    if (command == "correlators") return run_correlators(rc, ctx);
    if (command == "montecarlo") return run_montecarlo(rc, ctx);
    if (command == "variance") return run_variance(rc, ctx);
    throw ConfigError("command", "unknown command '" + command + "'");
  } catch (const ConfigError& e) {
    *ctx.err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConvergenceError& e) {
    *ctx.err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const AccuracyError& e) {
    *ctx.err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const squeeze::Error& e) {
    *ctx.err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    *ctx.err << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace squeeze::cli
