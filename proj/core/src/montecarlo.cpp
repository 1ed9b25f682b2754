#include "squeeze/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "squeeze/error.hpp"
#include "squeeze/parallel.hpp"

namespace squeeze {

void McConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("Monte Carlo dt must be positive");
  if (n_traj < 2) throw ArgumentError("Monte Carlo needs at least 2 trajectories");
  if (!(t_end > t_start)) throw ArgumentError("Monte Carlo window needs t_end > t_start");
  if (bin_steps < 1) throw ArgumentError("bin_steps must be >= 1");
  (void)initial_moments(initial, t_start);
}

std::size_t McConfig::n_steps() const {
  return static_cast<std::size_t>(std::floor((t_end - t_start) / dt + 1e-9)) + 1;
}

namespace detail {

NoiseScales NoiseScales::from(const DriveSchedule& schedule, const McConfig& cfg) {
  NoiseScales s;
  s.sigma = std::sqrt((schedule.n_bath() + 0.5) / (2.0 * cfg.dt));
  s.sqrt_kout = std::sqrt(schedule.kappa_out());
  s.sqrt_kextra = std::sqrt(schedule.kappa() - schedule.kappa_out());
  s.independent_output = cfg.output_noise == OutputNoise::independent;
  return s;
}

Complex sample_gaussian_state(CounterRng& rng, Complex m_aa, double m_abs) {
  // x = Re alpha, p = Im alpha
  const double sxx = 0.5 * (m_abs + m_aa.real());
  const double spp = 0.5 * (m_abs - m_aa.real());
  const double sxp = 0.5 * m_aa.imag();
  const double l11 = std::sqrt(std::max(sxx, 0.0));
  const double l21 = l11 > 0.0 ? sxp / l11 : 0.0;
  const double l22 = std::sqrt(std::max(spp - l21 * l21, 0.0));
  const auto [z1, z2] = rng.normal_pair();
  return {l11 * z1, l21 * z1 + l22 * z2};
}

std::ptrdiff_t bin_start(double t, double t_start, double dt, std::size_t bin_steps) {
  return static_cast<std::ptrdiff_t>(
      std::floor((t - t_start) / dt - 0.5 * static_cast<double>(bin_steps) + 0.5 + 1e-9));
}

}  // namespace detail

namespace {

struct DriveTable {
  std::vector<Complex> rate;  // kappa/2 + i Omega
  std::vector<Complex> half_pump;

  DriveTable(const DriveSchedule& schedule, const McConfig& cfg, std::size_t n) {
    rate.reserve(n);
    half_pump.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const DriveSample s = schedule.sample(cfg.t_start + static_cast<double>(k) * cfg.dt);
      rate.emplace_back(0.5 * s.kappa, s.detuning);
      half_pump.push_back(0.5 * s.pump);
    }
  }

  Complex drift(std::size_t k, Complex a) const { return -rate[k] * a - half_pump[k] * std::conj(a); }
};

Complex start_state(CounterRng& rng, const McConfig& cfg) {
  const MomentState m = initial_moments(cfg.initial, cfg.t_start);
  return detail::sample_gaussian_state(rng, m.m_aa, m.m_abs);
}

}  // namespace

std::vector<std::string> mc_warnings(const DriveSchedule& schedule, const McConfig& cfg) {
  std::vector<std::string> out;
  const double kappa_plus = schedule.kappa() + schedule.max_pump_magnitude(cfg.t_start, cfg.t_end);
  if (cfg.dt * kappa_plus > 0.05) {
    std::ostringstream os;
    os << "dt * kappa_+ = " << cfg.dt * kappa_plus << " exceeds 0.05; Euler-Maruyama bias may be visible";
    out.push_back(os.str());
  }
  std::vector<double> probe;
  const std::size_t n = cfg.n_steps();
  const std::size_t stride = std::max<std::size_t>(1, n / 256);
  for (std::size_t k = 0; k < n; k += stride) probe.push_back(cfg.t_start + static_cast<double>(k) * cfg.dt);
  for (const auto& flag : check_stability(schedule, probe)) {
    if (flag.violated) {
      std::ostringstream os;
      os << "drive violates the stability condition at t = " << flag.t;
      out.push_back(os.str());
      break;
    }
  }
  return out;
}

Trajectory simulate_trajectory(const DriveSchedule& schedule, const McConfig& cfg, std::uint64_t index) {
  cfg.validate();
  const std::size_t n = cfg.n_steps();
  const DriveTable drive(schedule, cfg, n);
  const auto noise = detail::NoiseScales::from(schedule, cfg);
  CounterRng rng(cfg.seed, index);
  const Complex a0 = start_state(rng, cfg);

  Trajectory tr;
  tr.t.reserve(n);
  tr.alpha.reserve(n);
  tr.f.reserve(n);
  detail::run_trajectory(
      n, cfg.dt, noise, rng, a0, [&](std::size_t k, Complex a) { return drive.drift(k, a); },
      [&](std::size_t k, Complex a, Complex f) {
        tr.t.push_back(cfg.t_start + static_cast<double>(k) * cfg.dt);
        tr.alpha.push_back(a);
        tr.f.push_back(f);
      });
  return tr;
}

McPairResult estimate_correlator_pair(const DriveSchedule& schedule, const McConfig& cfg, double t1,
                                      std::span<const double> tau_grid) {
  cfg.validate();
  const std::size_t m = cfg.bin_steps;
  const double width = static_cast<double>(m) * cfg.dt;
  const std::size_t n_total = cfg.n_steps();

  const std::ptrdiff_t b1 = detail::bin_start(t1, cfg.t_start, cfg.dt, m);
  std::vector<std::ptrdiff_t> b2(tau_grid.size());
  for (std::size_t j = 0; j < tau_grid.size(); ++j) {
    const double tau = tau_grid[j];
    if (tau < 0.0 || (j > 0 && !(tau > tau_grid[j - 1]))) throw ArgumentError("tau grid must be ascending and >= 0");
    if (tau != 0.0 && tau < width * (1.0 - 1e-9)) {
      std::ostringstream os;
      os << "tau = " << tau << " is shorter than the bin width " << width;
      throw ArgumentError(os.str());
    }
    b2[j] = tau == 0.0 ? b1 : std::max(detail::bin_start(t1 + tau, cfg.t_start, cfg.dt, m),
                                       b1 + static_cast<std::ptrdiff_t>(m));
  }
  const std::ptrdiff_t k_hi = (b2.empty() ? b1 : b2.back()) + static_cast<std::ptrdiff_t>(m);
  if (b1 < 0 || k_hi > static_cast<std::ptrdiff_t>(n_total))
    throw ArgumentError("requested correlator times fall outside the simulated window");

  const std::size_t n_run = static_cast<std::size_t>(k_hi);
  const DriveTable drive(schedule, cfg, n_run);
  const auto noise = detail::NoiseScales::from(schedule, cfg);
  const std::size_t n_blocks = (cfg.n_traj + detail::kBlockSize - 1) / detail::kBlockSize;
  const std::size_t nt = tau_grid.size();

  struct BlockStats {
    std::vector<detail::ComplexStats> kff, kffstar;
  };
  std::vector<BlockStats> blocks(n_blocks);

  parallel_for(n_blocks, cfg.threads, [&](std::size_t blk) {
    BlockStats& st = blocks[blk];
    st.kff.resize(nt);
    st.kffstar.resize(nt);
    std::vector<Complex> f_window(static_cast<std::size_t>(k_hi - b1));
    const std::size_t first = blk * detail::kBlockSize;
    const std::size_t last = std::min(cfg.n_traj, first + detail::kBlockSize);
    for (std::size_t traj = first; traj < last; ++traj) {
      CounterRng rng(cfg.seed, traj);
      const Complex a0 = start_state(rng, cfg);
      detail::run_trajectory(
          n_run, cfg.dt, noise, rng, a0, [&](std::size_t k, Complex a) { return drive.drift(k, a); },
          [&](std::size_t k, Complex, Complex f) {
            if (static_cast<std::ptrdiff_t>(k) >= b1) f_window[k - static_cast<std::size_t>(b1)] = f;
          });
      auto bin_mean = [&](std::ptrdiff_t start) {
        Complex s{};
        const std::size_t off = static_cast<std::size_t>(start - b1);
        for (std::size_t i = 0; i < m; ++i) s += f_window[off + i];
        return s / static_cast<double>(m);
      };
      const Complex f1 = bin_mean(b1);
      for (std::size_t j = 0; j < nt; ++j) {
        const Complex f2 = bin_mean(b2[j]);
        st.kff[j].add(f1 * f2);
        st.kffstar[j].add(f1 * std::conj(f2));
      }
    }
  });

  std::vector<detail::ComplexStats> kff(nt), kffstar(nt);
  for (const auto& blk : blocks) {
    for (std::size_t j = 0; j < nt; ++j) {
      kff[j].merge(blk.kff[j]);
      kffstar[j].merge(blk.kffstar[j]);
    }
  }

  McPairResult result;
  result.warnings = mc_warnings(schedule, cfg);
  auto centre = [&](std::ptrdiff_t b) { return cfg.t_start + (static_cast<double>(b) + 0.5 * static_cast<double>(m)) * cfg.dt; };
  for (std::size_t j = 0; j < nt; ++j) {
    result.points.push_back({tau_grid[j], centre(b1), centre(b2[j]), kff[j].estimate(), kffstar[j].estimate()});
    if (tau_grid[j] == 0.0) {
      ComplexEstimate d = kffstar[j].estimate();
      for (McEstimate* e : {&d.re, &d.im}) {
        e->mean *= width;
        e->std_error *= width;
      }
      result.delta_estimate = d;
    }
  }
  return result;
}

McEstimate estimate_integrated_variance(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                                        const WeightFunction& weight, const McConfig& cfg) {
  cfg.validate();
  weight.validate();
  const std::size_t n_total = cfg.n_steps();
  std::vector<Complex> coeff(n_total);
  std::size_t n_run = 0;
  for (std::size_t k = 0; k < n_total; ++k) {
    const double t = cfg.t_start + static_cast<double>(k) * cfg.dt;
    // step k carries [t_k, t_k + dt); the support is treated as half-open
    if (t < weight.support.lo - 1e-9 * cfg.dt || t >= weight.support.hi - 1e-9 * cfg.dt) continue;
    const double w = weight.w(t);
    if (w != 0.0) {
      coeff[k] = w * cfg.dt * std::polar(1.0, -quad(t));
      n_run = k + 1;
    }
  }
  if (n_run == 0) throw ArgumentError("weight function has no support inside the simulated window");
  if (weight.support.lo < cfg.t_start || weight.support.hi > cfg.t_end + cfg.dt)
    throw ArgumentError("weight support extends beyond the simulated window");

  const DriveTable drive(schedule, cfg, n_run);
  const auto noise = detail::NoiseScales::from(schedule, cfg);
  const std::size_t n_blocks = (cfg.n_traj + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<detail::RunningStats> blocks(n_blocks);

  parallel_for(n_blocks, cfg.threads, [&](std::size_t blk) {
    const std::size_t first = blk * detail::kBlockSize;
    const std::size_t last = std::min(cfg.n_traj, first + detail::kBlockSize);
    for (std::size_t traj = first; traj < last; ++traj) {
      CounterRng rng(cfg.seed, traj);
      const Complex a0 = start_state(rng, cfg);
      double r = 0.0;
      detail::run_trajectory(
          n_run, cfg.dt, noise, rng, a0, [&](std::size_t k, Complex a) { return drive.drift(k, a); },
          [&](std::size_t k, Complex, Complex f) { r += (coeff[k] * f).real(); });
      blocks[blk].add(r * r);
    }
  });

  detail::RunningStats total;
  for (const auto& b : blocks) total.merge(b);
  return total.estimate();
}

}  // namespace squeeze
