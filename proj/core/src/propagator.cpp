#include "squeeze/propagator.hpp"

#include <cmath>

#include "squeeze/error.hpp"

namespace squeeze {

EvolutionMatrix evolution_matrix(const DriveSample& s) {
  const Complex diag(-0.5 * s.kappa, -s.detuning);
  return {Mat2{{diag, -0.5 * s.pump, -0.5 * std::conj(s.pump), std::conj(diag)}}};
}

std::vector<GreenFunction> propagate_green(const DriveSchedule& schedule, double t_in, std::span<const double> t_grid,
                                           const IntegratorConfig& cfg) {
  if (t_grid.empty()) return {};
  const Interval dom = schedule.domain();
  if (!dom.contains(t_in) || !dom.contains(t_grid.back()))
    throw DomainError("Green's function grid leaves the schedule domain");

  auto rhs = [&schedule](double t, const Mat2& g) { return evolution_matrix(schedule.sample(t)).m * g; };
  const auto values = integrate_adaptive<Mat2>(rhs, Mat2::identity(), t_in, t_grid, schedule.breakpoints(), cfg);

  std::vector<GreenFunction> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({values[i], t_in, t_grid[i]});
  return out;
}

GreenFunction green_constant(const DriveSample& s, double dt) {
  if (!(dt >= 0.0)) throw ArgumentError("green_constant requires dt >= 0");
  if (dt == 0.0) return {Mat2::identity(), 0.0, 0.0};

  const Complex gap = std::sqrt(Complex(std::norm(s.pump) - 4.0 * s.detuning * s.detuning, 0.0));
  const Complex q = 0.5 * gap * dt;
  const double decay = 0.5 * s.kappa * dt;

  Complex c;   // e^{-decay} cosh(q)
  Complex sc;  // e^{-decay} sinh(q) / q
  if (std::abs(q) < 1e-4) {
    const Complex q2 = q * q;
    const double e = std::exp(-decay);
    c = e * (1.0 + q2 / 2.0 + q2 * q2 / 24.0);
    sc = e * (1.0 + q2 / 6.0 + q2 * q2 / 120.0);
  } else {
    const Complex ep = std::exp(q - decay);
    const Complex em = std::exp(-q - decay);
    c = 0.5 * (ep + em);
    sc = (ep - em) / (2.0 * q);
  }

  Mat2 n = evolution_matrix(s).m;
  n(0, 0) += 0.5 * s.kappa;
  n(1, 1) += 0.5 * s.kappa;
  return {c * Mat2::identity() + (sc * dt) * n, 0.0, dt};
}

}  // namespace squeeze
