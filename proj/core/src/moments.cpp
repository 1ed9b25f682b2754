#include "squeeze/moments.hpp"

#include <cmath>
#include <sstream>

#include "squeeze/error.hpp"
#include "squeeze/propagator.hpp"

namespace squeeze {

Mat2 MomentState::matrix() const {
  return Mat2{{Complex(m_abs), m_aa, std::conj(m_aa), Complex(m_abs)}};
}

MomentState MomentState::from_matrix(const Mat2& s, double t) {
  return {0.5 * (s(0, 1) + std::conj(s(1, 0))), 0.5 * (s(0, 0).real() + s(1, 1).real()), t};
}

void validate_moments(Complex m_aa, double m_abs) {
  if (!std::isfinite(m_abs) || !std::isfinite(m_aa.real()) || !std::isfinite(m_aa.imag()))
    throw ArgumentError("moments must be finite");
  constexpr double slack = 1e-12;
  if (m_abs < 0.5 - slack) {
    std::ostringstream os;
    os << "<|alpha|^2> = " << m_abs << " is below the vacuum floor 1/2";
    throw ArgumentError(os.str());
  }
  const double lhs = m_abs * m_abs;
  const double rhs = std::norm(m_aa) + 0.25;
  if (lhs < rhs - slack * std::max(1.0, rhs)) {
    std::ostringstream os;
    os << "moments violate the uncertainty bound m_abs^2 >= |m_aa|^2 + 1/4 (" << lhs << " < " << rhs << ")";
    throw ArgumentError(os.str());
  }
}

namespace {

struct InitialMomentsVisitor {
  double t0;
  MomentState operator()(const Vacuum&) const { return {Complex{}, 0.5, t0}; }
  MomentState operator()(const Thermal& th) const {
    if (!(th.n >= 0.0)) throw ArgumentError("thermal occupation must be nonnegative");
    return {Complex{}, th.n + 0.5, t0};
  }
  MomentState operator()(const SqueezedVacuum& sq) const {
    const double sh = std::sinh(sq.r);
    const double ch = std::cosh(sq.r);
    return {-std::polar(sh * ch, sq.angle), sh * sh + 0.5, t0};
  }
  MomentState operator()(const CustomMoments& c) const {
    validate_moments(c.m_aa, c.m_abs);
    return {c.m_aa, c.m_abs, t0};
  }
};

}  // namespace

MomentState initial_moments(const InitialStateSpec& spec, double t0) {
  return std::visit(InitialMomentsVisitor{t0}, spec);
}

std::vector<MomentState> evolve_moments(const DriveSchedule& schedule, const MomentState& m0,
                                        std::span<const double> t_grid, const IntegratorConfig& cfg) {
  if (t_grid.empty()) return {};
  const Interval dom = schedule.domain();
  if (!dom.contains(m0.t) || !dom.contains(t_grid.back()))
    throw DomainError("moment evolution leaves the schedule domain");

  auto rhs = [&schedule](double t, const Mat2& s) {
    const DriveSample d = schedule.sample(t);
    const Mat2 m = evolution_matrix(d).m;
    Mat2 out = m * s + s * m.adjoint();
    out(0, 0) += 0.5 * d.kappa;
    out(1, 1) += 0.5 * d.kappa;
    return out;
  };
  const auto values = integrate_adaptive<Mat2>(rhs, m0.matrix(), m0.t, t_grid, schedule.breakpoints(), cfg);
  std::vector<MomentState> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back(MomentState::from_matrix(values[i], t_grid[i]));
  return out;
}

double relaxation_time(const DriveSchedule& schedule, double t_ref) {
  const double kappa = schedule.kappa();
  const double eps_max = schedule.max_pump_magnitude(-std::numeric_limits<double>::infinity(), t_ref);
  double rate = kappa - eps_max;
  if (!(rate > 0.0)) {
    const DriveSample s = schedule.sample(t_ref);
    const Complex gap = std::sqrt(Complex(std::norm(s.pump) - 4.0 * s.detuning * s.detuning, 0.0));
    rate = kappa - gap.real();
    if (!(rate > 0.0)) {
      std::ostringstream os;
      os << "drive at t = " << t_ref << " is unstable; no steady state to relax to";
      throw StabilityError(os.str());
    }
  }
  return std::max(20.0 / rate, 20.0 / kappa);
}

std::vector<MomentState> moments_on_grid(const DriveSchedule& schedule, const InitialCondition& init,
                                         std::span<const double> t_grid, const IntegratorConfig& cfg) {
  if (t_grid.empty()) return {};
  double t0;
  if (init.t0) {
    t0 = *init.t0;
  } else {
    t0 = t_grid.front() - relaxation_time(schedule, t_grid.front());
    if (!schedule.domain().contains(t0)) {
      std::ostringstream os;
      os << "relaxed start needs the schedule defined from t = " << t0 << ", but its domain begins at "
         << schedule.domain().lo;
      throw DomainError(os.str());
    }
  }
  if (t_grid.front() < t0) throw ArgumentError("moment grid starts before the initial time");
  return evolve_moments(schedule, initial_moments(init.state, t0), t_grid, cfg);
}

}  // namespace squeeze
