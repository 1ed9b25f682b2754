#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "squeeze/correlators.hpp"
#include "squeeze/integrator.hpp"
#include "squeeze/montecarlo.hpp"
#include "squeeze/schedule.hpp"
#include "squeeze/time_function.hpp"

namespace squeeze {

/// Weakly nonlinear resonator with photon-number dependent frequency omega_r(n),
/// coherent drive eps_c(t) and the parametric drive, damping and bath of `base`.
/// The detuning of `base` is added to omega_r(n) - omega_rf.
struct NonlinearResonator {
  std::function<double(double)> omega_r;
  std::function<double(double)> domega_dn;
  TimeFunction drive_re = TimeFunction::constant(0.0);
  TimeFunction drive_im = TimeFunction::constant(0.0);
  double omega_rf = 0.0;
  DriveSchedule base = DriveSchedule::constant(0.0, 0.0, 1.0);

  /// omega_r(n) = sum_k coeffs[k] n^k.
  static NonlinearResonator polynomial(std::vector<double> coeffs, TimeFunction drive_re, TimeFunction drive_im,
                                       double omega_rf, DriveSchedule base);

  Complex drive(double t) const { return {drive_re(t), drive_im(t)}; }
  /// Checks finiteness on [0, n_max] and domega_dn against a central difference.
  void validate(double n_max) const;
  /// Base, drive and detuning breakpoints, ascending.
  std::vector<double> breakpoints() const;
};

struct CenterState {
  Complex alpha_c{};
  double t = 0.0;
};

/// d alpha_c / dt for the classical center equation.
Complex center_rhs(const NonlinearResonator& res, double t, Complex alpha_c);

std::vector<CenterState> evolve_center(const NonlinearResonator& res, const CenterState& c0,
                                       std::span<const double> t_grid, const IntegratorConfig& cfg = {});

struct EffectiveDrive {
  double omega_eff = 0.0;
  Complex eps_eff{};
};

EffectiveDrive effective_drive(const NonlinearResonator& res, const CenterState& center);

/// Linearized fluctuation drive along a center trajectory started at c0, defined on
/// [c0.t, t_end]. alpha_c is interpolated by cubic Hermite pieces on knots at most
/// `knot_step` apart, with the exact center derivative as slope.
struct EffectiveSchedule {
  DriveSchedule schedule;
  TimeFunction center_re;
  TimeFunction center_im;

  Complex center(double t) const { return {center_re(t), center_im(t)}; }
};

EffectiveSchedule effective_schedule(const NonlinearResonator& res, const CenterState& c0, double t_end,
                                     double knot_step = 0.01, const IntegratorConfig& cfg = {});

struct NonlinearCorrelatorResult {
  EffectiveSchedule effective;
  std::vector<CorrelatorRow> rows;
  /// Weak-nonlinearity gate |domega_dn| (m_abs - 1/2) > 0.1 kappa, one entry per offending t1.
  std::vector<std::string> warnings;
};

/// Fluctuation correlators of delta f = f - sqrt(kappa_out) alpha_c from the linear
/// engine run on the effective schedule.
NonlinearCorrelatorResult nonlinear_correlators(const NonlinearResonator& res, const QuadratureSchedule& quad,
                                                std::span<const double> t1_grid, std::span<const double> tau_grid,
                                                const InitialCondition& init, const CenterState& c0,
                                                const IntegratorConfig& cfg = {}, unsigned threads = 0,
                                                double knot_step = 0.01);

struct NonlinearMcResult {
  /// Ensemble covariances of the binned output with the ensemble mean removed.
  std::vector<McPairPoint> points;
  /// <alpha> - alpha_c on the t1 bin followed by each t1 + tau bin.
  std::vector<ComplexEstimate> mean_offset;
  std::vector<std::string> warnings;
};

/// Langevin simulation of the full nonlinear equation, with the frequency taken at
/// the Wigner-ordered photon number omega_r(|alpha|^2 - 1). Trajectories start from
/// alpha_c(cfg.t_start) plus a Gaussian fluctuation drawn from cfg.initial; c0.t
/// must not exceed cfg.t_start.
NonlinearMcResult estimate_nonlinear_fluctuations(const NonlinearResonator& res, const McConfig& cfg,
                                                  const CenterState& c0, double t1, std::span<const double> tau_grid,
                                                  const IntegratorConfig& center_cfg = {});

}  // namespace squeeze
