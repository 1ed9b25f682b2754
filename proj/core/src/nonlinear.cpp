#include "squeeze/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "squeeze/error.hpp"
#include "squeeze/moments.hpp"
#include "squeeze/parallel.hpp"

namespace squeeze {

NonlinearResonator NonlinearResonator::polynomial(std::vector<double> coeffs, TimeFunction drive_re,
                                                  TimeFunction drive_im, double omega_rf, DriveSchedule base) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  for (double c : coeffs)
    if (!std::isfinite(c)) throw ArgumentError("omega_r polynomial coefficients must be finite");
  NonlinearResonator r;
  r.base = std::move(base);
  r.omega_r = [coeffs](double n) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + *it;
    return acc;
  };
  r.domega_dn = [coeffs](double n) {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * n + static_cast<double>(k) * coeffs[k];
    return acc;
  };
  r.drive_re = std::move(drive_re);
  r.drive_im = std::move(drive_im);
  r.omega_rf = omega_rf;
  return r;
}

void NonlinearResonator::validate(double n_max) const {
  if (!omega_r || !domega_dn) throw ArgumentError("omega_r and domega_dn must both be set");
  if (!(n_max > 0.0) || !std::isfinite(n_max)) throw ArgumentError("n_max must be positive and finite");
  constexpr int kProbes = 64;
  for (int i = 0; i <= kProbes; ++i) {
    const double n = n_max * i / kProbes;
    const double w = omega_r(n);
    const double d = domega_dn(n);
    if (!std::isfinite(w) || !std::isfinite(d)) {
      std::ostringstream os;
      os << "omega_r or its derivative is not finite at n = " << n;
      throw ArgumentError(os.str());
    }
    const double h = 1e-4 * std::max(1.0, n);
    const double lo = std::max(0.0, n - h);
    const double numeric = (omega_r(n + h) - omega_r(lo)) / (n + h - lo);
    const double scale = std::max({std::abs(d), std::abs(numeric), 1e-12 * std::max(1.0, std::abs(w))});
    if (std::abs(numeric - d) > 1e-6 * scale + 1e-9 * std::abs(w) / std::max(1.0, n)) {
      std::ostringstream os;
      os << "domega_dn disagrees with the numerical derivative of omega_r at n = " << n << " (" << d << " vs "
         << numeric << ")";
      throw ArgumentError(os.str());
    }
  }
}

std::vector<double> NonlinearResonator::breakpoints() const {
  std::vector<double> out = base.breakpoints();
  for (const auto* f : {&drive_re, &drive_im}) out.insert(out.end(), f->breakpoints().begin(), f->breakpoints().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Complex center_rhs(const NonlinearResonator& res, double t, Complex a) {
  const DriveSample s = res.base.sample(t);
  const double freq = res.omega_r(std::norm(a)) - res.omega_rf + s.detuning;
  return Complex(-0.5 * s.kappa, -freq) * a - 0.5 * s.pump * std::conj(a) - Complex(0.0, 1.0) * res.drive(t);
}

std::vector<CenterState> evolve_center(const NonlinearResonator& res, const CenterState& c0,
                                       std::span<const double> t_grid, const IntegratorConfig& cfg) {
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw ArgumentError("center grid must be strictly ascending");
  if (!t_grid.empty() && t_grid.front() < c0.t) throw ArgumentError("center grid starts before the initial state");
  if (!std::isfinite(c0.alpha_c.real()) || !std::isfinite(c0.alpha_c.imag()))
    throw ArgumentError("initial center must be finite");
  const auto bps = res.breakpoints();
  const auto values = integrate_adaptive<Complex>(
      [&](double t, const Complex& a) { return center_rhs(res, t, a); }, c0.alpha_c, c0.t, t_grid, bps, cfg);
  std::vector<CenterState> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = {values[i], t_grid[i]};
  return out;
}

EffectiveDrive effective_drive(const NonlinearResonator& res, const CenterState& center) {
  const DriveSample s = res.base.sample(center.t);
  const double n = std::norm(center.alpha_c);
  const double slope = res.domega_dn(n);
  EffectiveDrive d;
  d.omega_eff = res.omega_r(n) - res.omega_rf + s.detuning + slope * n;
  d.eps_eff = s.pump + Complex(0.0, 2.0 * slope) * center.alpha_c * center.alpha_c;
  return d;
}

EffectiveSchedule effective_schedule(const NonlinearResonator& res, const CenterState& c0, double t_end,
                                     double knot_step, const IntegratorConfig& cfg) {
  if (!(t_end > c0.t)) throw ArgumentError("effective schedule needs t_end > c0.t");
  if (!(knot_step > 0.0)) throw ArgumentError("knot_step must be positive");

  std::vector<double> cuts{c0.t, t_end};
  std::vector<double> interior;
  for (double b : res.breakpoints())
    if (b > c0.t && b < t_end) interior.push_back(b);
  cuts.insert(cuts.begin() + 1, interior.begin(), interior.end());

  std::vector<double> knots;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double len = cuts[c + 1] - cuts[c];
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / knot_step - 1e-12)));
    for (std::size_t i = 0; i < n; ++i) knots.push_back(cuts[c] + len * static_cast<double>(i) / static_cast<double>(n));
  }
  knots.push_back(t_end);

  const auto centers = evolve_center(res, c0, knots, cfg);
  const std::size_t n = knots.size();
  std::vector<double> re(n), im(n), sl_re(n), sl_im(n), sr_re(n), sr_im(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = centers[i].alpha_c;
    re[i] = a.real();
    im[i] = a.imag();
    const Complex right = center_rhs(res, knots[i], a);
    Complex left = right;
    if (std::binary_search(interior.begin(), interior.end(), knots[i]))
      left = center_rhs(res, std::nextafter(knots[i], -std::numeric_limits<double>::infinity()), a);
    sl_re[i] = left.real();
    sl_im[i] = left.imag();
    sr_re[i] = right.real();
    sr_im[i] = right.imag();
  }
  auto center_re = TimeFunction::hermite(knots, re, sl_re, sr_re);
  auto center_im = TimeFunction::hermite(knots, im, sl_im, sr_im);

  const Interval domain{c0.t, t_end};
  auto drive_at = [res, center_re, center_im](double t) {
    return effective_drive(res, {Complex(center_re(t), center_im(t)), t});
  };
  auto omega = TimeFunction::from_callable([drive_at](double t) { return drive_at(t).omega_eff; }, domain, interior);
  auto eps_re = TimeFunction::from_callable([drive_at](double t) { return drive_at(t).eps_eff.real(); }, domain, interior);
  auto eps_im = TimeFunction::from_callable([drive_at](double t) { return drive_at(t).eps_eff.imag(); }, domain, interior);
  const DriveSchedule& b = res.base;
  return {DriveSchedule::cartesian(omega, eps_re, eps_im, b.kappa(), b.kappa_out(), b.n_bath(), b.amplifier_mode()),
          center_re, center_im};
}

NonlinearCorrelatorResult nonlinear_correlators(const NonlinearResonator& res, const QuadratureSchedule& quad,
                                                std::span<const double> t1_grid, std::span<const double> tau_grid,
                                                const InitialCondition& init, const CenterState& c0,
                                                const IntegratorConfig& cfg, unsigned threads, double knot_step) {
  if (t1_grid.empty() || tau_grid.empty()) return {effective_schedule(res, c0, c0.t + knot_step, knot_step, cfg), {}, {}};
  const double t_end = *std::max_element(t1_grid.begin(), t1_grid.end()) + tau_grid.back();
  NonlinearCorrelatorResult out{effective_schedule(res, c0, std::max(t_end, c0.t + knot_step), knot_step, cfg), {}, {}};
  out.rows = correlator_grid(out.effective.schedule, quad, t1_grid, tau_grid, init, cfg, threads);

  const auto moments = moments_on_grid(out.effective.schedule, init, t1_grid, cfg);
  for (std::size_t i = 0; i < t1_grid.size(); ++i) {
    const double t = t1_grid[i];
    const double metric = std::abs(res.domega_dn(std::norm(out.effective.center(t)))) * (moments[i].m_abs - 0.5);
    if (metric > 0.1 * res.base.kappa()) {
      std::ostringstream os;
      os << "weak-nonlinearity gate exceeded at t1 = " << t << ": |domega_dn| (m_abs - 1/2) = " << metric
         << " > 0.1 kappa";
      out.warnings.push_back(os.str());
    }
  }
  return out;
}

NonlinearMcResult estimate_nonlinear_fluctuations(const NonlinearResonator& res, const McConfig& cfg,
                                                  const CenterState& c0, double t1, std::span<const double> tau_grid,
                                                  const IntegratorConfig& center_cfg) {
  cfg.validate();
  if (c0.t > cfg.t_start) throw ArgumentError("center initial time must not exceed the Monte Carlo start");
  const std::size_t m = cfg.bin_steps;
  const double width = static_cast<double>(m) * cfg.dt;
  const std::size_t nt = tau_grid.size();

  std::vector<std::ptrdiff_t> bins{detail::bin_start(t1, cfg.t_start, cfg.dt, m)};
  for (std::size_t j = 0; j < nt; ++j) {
    const double tau = tau_grid[j];
    if (tau < 0.0 || (j > 0 && !(tau > tau_grid[j - 1]))) throw ArgumentError("tau grid must be ascending and >= 0");
    if (tau != 0.0 && tau < width * (1.0 - 1e-9)) throw ArgumentError("nonzero tau must be at least one bin width");
    bins.push_back(tau == 0.0 ? bins[0]
                              : std::max(detail::bin_start(t1 + tau, cfg.t_start, cfg.dt, m),
                                         bins[0] + static_cast<std::ptrdiff_t>(m)));
  }
  const std::ptrdiff_t k_hi = bins.back() + static_cast<std::ptrdiff_t>(m);
  if (bins.front() < 0 || k_hi > static_cast<std::ptrdiff_t>(cfg.n_steps()))
    throw ArgumentError("requested correlator times fall outside the simulated window");
  const auto n_run = static_cast<std::size_t>(k_hi);

  std::vector<double> steps(n_run);
  for (std::size_t k = 0; k < n_run; ++k) steps[k] = cfg.t_start + static_cast<double>(k) * cfg.dt;
  const auto center = evolve_center(res, c0, steps, center_cfg);

  std::vector<Complex> rate(n_run), half_pump(n_run), coherent(n_run);
  for (std::size_t k = 0; k < n_run; ++k) {
    const DriveSample s = res.base.sample(steps[k]);
    rate[k] = Complex(0.5 * s.kappa, s.detuning - res.omega_rf);
    half_pump[k] = 0.5 * s.pump;
    coherent[k] = Complex(0.0, 1.0) * res.drive(steps[k]);
  }
  const auto noise = detail::NoiseScales::from(res.base, cfg);
  const MomentState m0 = initial_moments(cfg.initial, cfg.t_start);

  const std::size_t nb = bins.size();
  std::vector<Complex> f_bins(cfg.n_traj * nb), a_bins(cfg.n_traj * nb);
  const std::size_t n_blocks = (cfg.n_traj + detail::kBlockSize - 1) / detail::kBlockSize;
  parallel_for(n_blocks, cfg.threads, [&](std::size_t blk) {
    const std::size_t first = blk * detail::kBlockSize;
    const std::size_t last = std::min(cfg.n_traj, first + detail::kBlockSize);
    std::vector<Complex> f_steps(n_run), a_steps(n_run);
    for (std::size_t traj = first; traj < last; ++traj) {
      CounterRng rng(cfg.seed, traj);
      const Complex a0 = center.front().alpha_c + detail::sample_gaussian_state(rng, m0.m_aa, m0.m_abs);
      detail::run_trajectory(
          n_run, cfg.dt, noise, rng, a0,
          [&](std::size_t k, Complex a) {
            return Complex(0.0, -res.omega_r(std::norm(a) - 1.0)) * a - rate[k] * a - half_pump[k] * std::conj(a) -
                   coherent[k];
          },
          [&](std::size_t k, Complex a, Complex f) {
            f_steps[k] = f;
            a_steps[k] = a - center[k].alpha_c;
          });
      for (std::size_t b = 0; b < nb; ++b) {
        Complex fs{}, as{};
        for (std::size_t i = 0; i < m; ++i) {
          const auto k = static_cast<std::size_t>(bins[b]) + i;
          fs += f_steps[k];
          as += a_steps[k];
        }
        f_bins[traj * nb + b] = fs / static_cast<double>(m);
        a_bins[traj * nb + b] = as / static_cast<double>(m);
      }
    }
  });

  std::vector<Complex> f_mean(nb);
  NonlinearMcResult out;
  out.mean_offset.resize(nb);
  {
    std::vector<detail::ComplexStats> fs(nb), as(nb);
    for (std::size_t traj = 0; traj < cfg.n_traj; ++traj) {
      for (std::size_t b = 0; b < nb; ++b) {
        fs[b].add(f_bins[traj * nb + b]);
        as[b].add(a_bins[traj * nb + b]);
      }
    }
    for (std::size_t b = 0; b < nb; ++b) {
      f_mean[b] = fs[b].estimate().mean();
      out.mean_offset[b] = as[b].estimate();
    }
  }

  auto centre = [&](std::ptrdiff_t b) { return cfg.t_start + (static_cast<double>(b) + 0.5 * static_cast<double>(m)) * cfg.dt; };
  for (std::size_t j = 0; j < nt; ++j) {
    detail::ComplexStats kff, kffstar;
    for (std::size_t traj = 0; traj < cfg.n_traj; ++traj) {
      const Complex d1 = f_bins[traj * nb] - f_mean[0];
      const Complex d2 = f_bins[traj * nb + j + 1] - f_mean[j + 1];
      kff.add(d1 * d2);
      kffstar.add(d1 * std::conj(d2));
    }
    out.points.push_back({tau_grid[j], centre(bins[0]), centre(bins[j + 1]), kff.estimate(), kffstar.estimate()});
  }
  out.warnings = mc_warnings(res.base, cfg);
  return out;
}

}  // namespace squeeze
