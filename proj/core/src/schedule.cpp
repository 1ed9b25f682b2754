#include "squeeze/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "squeeze/error.hpp"

namespace squeeze {

namespace {

std::vector<double> merge_breakpoints(std::initializer_list<const TimeFunction*> fns) {
  std::vector<double> out;
  for (const auto* f : fns) out.insert(out.end(), f->breakpoints().begin(), f->breakpoints().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

DriveSchedule::DriveSchedule(TimeFunction detuning, TimeFunction pump_magnitude, TimeFunction pump_phase,
                             double kappa, double kappa_out, double n_bath, AmplifierMode mode)
    : DriveSchedule(true, std::move(detuning), std::move(pump_magnitude), std::move(pump_phase), kappa, kappa_out,
                    n_bath, mode) {}

DriveSchedule::DriveSchedule(bool polar, TimeFunction detuning, TimeFunction a, TimeFunction b, double kappa,
                             double kappa_out, double n_bath, AmplifierMode mode)
    : polar_(polar),
      detuning_(std::move(detuning)),
      pump_a_(std::move(a)),
      pump_b_(std::move(b)),
      kappa_(kappa),
      kappa_out_(kappa_out),
      n_bath_(n_bath),
      mode_(mode) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ArgumentError("kappa must be positive and finite");
  if (!(kappa_out > 0.0) || kappa_out > kappa)
    throw ArgumentError("kappa_out must satisfy 0 < kappa_out <= kappa");
  if (!(n_bath >= 0.0) || !std::isfinite(n_bath)) throw ArgumentError("n_bath must be nonnegative");
  if (polar_ && pump_a_.knot_minimum() < 0.0) throw ArgumentError("pump_magnitude must be nonnegative");
  domain_ = intersect(intersect(detuning_.domain(), pump_a_.domain()), pump_b_.domain());
  if (domain_.lo > domain_.hi) throw ArgumentError("schedule components have disjoint domains");
  breakpoints_ = merge_breakpoints({&detuning_, &pump_a_, &pump_b_});
}

DriveSchedule DriveSchedule::constant(double detuning, Complex pump, double kappa) {
  return DriveSchedule(TimeFunction::constant(detuning), TimeFunction::constant(std::abs(pump)),
                       TimeFunction::constant(std::arg(pump)), kappa, kappa);
}

DriveSchedule DriveSchedule::cartesian(TimeFunction detuning, TimeFunction pump_re, TimeFunction pump_im,
                                       double kappa, double kappa_out, double n_bath, AmplifierMode mode) {
  return DriveSchedule(false, std::move(detuning), std::move(pump_re), std::move(pump_im), kappa, kappa_out, n_bath,
                       mode);
}

DriveSample DriveSchedule::sample(double t) const {
  if (!domain_.contains(t)) {
    std::ostringstream os;
    os << "time " << t << " outside schedule domain [" << domain_.lo << ", " << domain_.hi << "]";
    throw DomainError(os.str());
  }
  DriveSample s;
  s.detuning = detuning_(t);
  s.kappa = kappa_;
  if (polar_) {
    const double mag = pump_a_(t);
    if (mag < 0.0) throw ArgumentError("pump_magnitude is negative at a sampled time");
    s.pump = std::polar(mag, pump_b_(t));
  } else {
    s.pump = Complex(pump_a_(t), pump_b_(t));
  }
  return s;
}

DriveSchedule DriveSchedule::with_output(double kappa_out, double n_bath, AmplifierMode mode) const {
  return DriveSchedule(polar_, detuning_, pump_a_, pump_b_, kappa_, kappa_out, n_bath, mode);
}

bool DriveSchedule::is_constant() const {
  return detuning_.is_constant() && pump_a_.is_constant() && pump_b_.is_constant();
}

double DriveSchedule::max_pump_magnitude(double lo, double hi) const {
  if (polar_) return pump_a_.sup_abs(lo, hi);
  return std::hypot(pump_a_.sup_abs(lo, hi), pump_b_.sup_abs(lo, hi));
}

DriveSample sample_drive(const DriveSchedule& schedule, double t) { return schedule.sample(t); }

std::vector<StabilityFlag> check_stability(const DriveSchedule& schedule, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw ArgumentError("stability check needs a nonempty time grid");
  std::vector<StabilityFlag> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const DriveSample s = schedule.sample(t);
    const double lhs = std::norm(s.pump);
    const double rhs = s.kappa * s.kappa + 4.0 * s.detuning * s.detuning;
    out.push_back({t, lhs >= rhs});
  }
  return out;
}

DriveSchedule make_phase_jump(double pump_magnitude, double theta_after, double kappa) {
  if (!(pump_magnitude >= 0.0)) throw ArgumentError("pump magnitude must be nonnegative");
  if (!(kappa > 0.0)) throw ArgumentError("kappa must be positive");
  return DriveSchedule(TimeFunction::constant(0.0), TimeFunction::constant(pump_magnitude),
                       TimeFunction::step(0.0, theta_after, 0.0), kappa, kappa);
}

}  // namespace squeeze
