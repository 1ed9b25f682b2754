#pragma once

#include <vector>

#include "squeeze/linalg.hpp"
#include "squeeze/time_function.hpp"

namespace squeeze {

enum class AmplifierMode { phase_sensitive, phase_preserving };

/// Drive parameters at a single instant.
struct DriveSample {
  double detuning = 0.0;  // Omega(t), rad/s
  Complex pump{};         // eps(t) = |eps| e^{i theta}
  double kappa = 1.0;

  bool operator==(const DriveSample&) const = default;
};

/// Time-dependent configuration of the parametrically driven resonator.
///
/// The pump is stored either in polar form (|eps(t)|, theta(t)) or, for schedules
/// synthesized from a center trajectory, in Cartesian form (Re eps, Im eps).
/// Immutable after construction.
class DriveSchedule {
 public:
  DriveSchedule(TimeFunction detuning, TimeFunction pump_magnitude, TimeFunction pump_phase, double kappa,
                double kappa_out, double n_bath = 0.0, AmplifierMode mode = AmplifierMode::phase_sensitive);

  static DriveSchedule constant(double detuning, Complex pump, double kappa);
  static DriveSchedule cartesian(TimeFunction detuning, TimeFunction pump_re, TimeFunction pump_im, double kappa,
                                 double kappa_out, double n_bath = 0.0,
                                 AmplifierMode mode = AmplifierMode::phase_sensitive);

  /// Throws DomainError when t is outside domain().
  DriveSample sample(double t) const;

  /// Same drive with different output coupling, bath occupation and amplifier.
  DriveSchedule with_output(double kappa_out, double n_bath, AmplifierMode mode) const;

  double kappa() const { return kappa_; }
  double kappa_out() const { return kappa_out_; }
  double n_bath() const { return n_bath_; }
  AmplifierMode amplifier_mode() const { return mode_; }
  bool is_polar() const { return polar_; }

  const TimeFunction& detuning() const { return detuning_; }
  /// |eps| in polar form, Re eps in Cartesian form.
  const TimeFunction& pump_first() const { return pump_a_; }
  /// theta in polar form, Im eps in Cartesian form.
  const TimeFunction& pump_second() const { return pump_b_; }

  Interval domain() const { return domain_; }
  /// Union of all component breakpoints, ascending and unique.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool is_constant() const;

  /// Upper bound of |eps(t)| over [lo, hi].
  double max_pump_magnitude(double lo, double hi) const;

 private:
  DriveSchedule(bool polar, TimeFunction detuning, TimeFunction a, TimeFunction b, double kappa, double kappa_out,
                double n_bath, AmplifierMode mode);

  bool polar_;
  TimeFunction detuning_;
  TimeFunction pump_a_;
  TimeFunction pump_b_;
  double kappa_;
  double kappa_out_;
  double n_bath_;
  AmplifierMode mode_;
  Interval domain_;
  std::vector<double> breakpoints_;
};

/// Amplified-quadrature angle phi(t), interpreted modulo 2 pi.
struct QuadratureSchedule {
  TimeFunction phi = TimeFunction::constant(0.0);

  static QuadratureSchedule constant(double phi) { return {TimeFunction::constant(phi)}; }
  double operator()(double t) const { return phi(t); }
};

DriveSample sample_drive(const DriveSchedule& schedule, double t);

struct StabilityFlag {
  double t;
  bool violated;
};

/// Flags instants where |eps|^2 >= kappa^2 + 4 Omega^2. Exact only for constant
/// drives; advisory otherwise.
std::vector<StabilityFlag> check_stability(const DriveSchedule& schedule, const std::vector<double>& t_grid);

/// Omega = 0, constant |eps|, theta = 0 for t < 0 and theta_after for t >= 0,
/// kappa_out = kappa, zero bath occupation.
DriveSchedule make_phase_jump(double pump_magnitude, double theta_after, double kappa);

}  // namespace squeeze
