#include "squeeze/analytic.hpp"

#include <cmath>
#include <sstream>

#include "squeeze/error.hpp"

namespace squeeze::analytic {

namespace {

void require_overdamped_stable(double kappa, double eps_mag) {
  if (!(kappa > 0.0)) throw ArgumentError("kappa must be positive");
  if (!(eps_mag >= 0.0)) throw ArgumentError("pump magnitude must be nonnegative");
  if (!(eps_mag < kappa)) {
    std::ostringstream os;
    os << "|eps| = " << eps_mag << " is not below kappa = " << kappa;
    throw StabilityError(os.str());
  }
}

// g(x) = e^{-x tau/2} / x
Complex decay_over(Complex x, double tau) { return std::exp(-0.5 * x * tau) / x; }

}  // namespace

SteadyParams make_steady_params(double kappa, Complex eps, double omega) {
  if (!(kappa > 0.0)) throw ArgumentError("kappa must be positive");
  const double e2 = std::norm(eps);
  if (!(e2 < kappa * kappa + 4.0 * omega * omega)) {
    std::ostringstream os;
    os << "unstable drive: |eps|^2 = " << e2 << " >= kappa^2 + 4 Omega^2 = " << kappa * kappa + 4.0 * omega * omega;
    throw StabilityError(os.str());
  }
  SteadyParams p;
  p.kappa = kappa;
  p.eps = eps;
  p.omega = omega;
  const double d = e2 - 4.0 * omega * omega;
  p.gap = d >= 0.0 ? Complex(std::sqrt(d), 0.0) : Complex(0.0, std::sqrt(-d));
  p.kappa_plus = kappa + p.gap;
  p.kappa_minus = kappa - p.gap;
  return p;
}

QuadratureValue steady_simple(double kappa, double eps_mag, double theta, double phi, double tau) {
  require_overdamped_stable(kappa, eps_mag);
  const double kp = kappa + eps_mag;
  const double km = kappa - eps_mag;
  const double c = std::cos(phi - 0.5 * theta);
  const double s = std::sin(phi - 0.5 * theta);
  const double at = std::abs(tau);
  QuadratureValue v;
  v.smooth = -kappa * eps_mag / (4.0 * kp) * std::exp(-0.5 * kp * at) * c * c +
             kappa * eps_mag / (4.0 * km) * std::exp(-0.5 * km * at) * s * s;
  v.delta_weight = tau == 0.0 ? 0.25 : 0.0;
  return v;
}

double integrated_steady(double kappa, double eps_mag, Quadrature quad) {
  require_overdamped_stable(kappa, eps_mag);
  const double ratio = (kappa - eps_mag) / (kappa + eps_mag);
  return quad == Quadrature::squeezed ? 0.25 * ratio * ratio : 0.25 / (ratio * ratio);
}

CorrelatorPair steady_general(const SteadyParams& p, double tau) {
  const double at = std::abs(tau);
  const double kappa = p.kappa;
  const Complex gm = decay_over(p.kappa_minus, at);
  const Complex gp = decay_over(p.kappa_plus, at);

  // (g(kappa - gap) - g(kappa + gap)) / gap
  Complex split;
  if (std::abs(p.gap) < 1e-6 * kappa) {
    // g'(x) = -g(x) (tau/2 + 1/x), g'''(x) = -g(x) (tau^3/8 + 3 tau^2/(4x) + 3 tau/x^2 + 6/x^3)
    const double g0 = std::exp(-0.5 * kappa * at) / kappa;
    const double d1 = -g0 * (0.5 * at + 1.0 / kappa);
    const double d3 = -g0 * (at * at * at / 8.0 + 0.75 * at * at / kappa + 3.0 * at / (kappa * kappa) +
                             6.0 / (kappa * kappa * kappa));
    split = -2.0 * d1 - (p.gap * p.gap / 3.0) * d3;
  } else {
    split = (gm - gp) / p.gap;
  }

  CorrelatorPair out;
  out.k_ff = -(kappa * p.eps / 4.0) * ((gm + gp) - Complex(0.0, 2.0 * p.omega) * split);
  out.k_ffstar = (kappa * std::norm(p.eps) / 4.0) * split;
  out.delta_weight = tau == 0.0 ? 0.5 : 0.0;
  out.t1 = 0.0;
  out.t2 = tau;
  return out;
}

CorrelatorPair phase_jump(double kappa, double eps_mag, double theta_tilde, double t1, double tau) {
  require_overdamped_stable(kappa, eps_mag);
  if (!(t1 >= 0.0) || !(tau >= 0.0)) throw ArgumentError("phase_jump needs t1 >= 0 and tau >= 0");
  const double kp = kappa + eps_mag;
  const double km = kappa - eps_mag;
  const double pre = kappa * eps_mag / (4.0 * (kappa * kappa - eps_mag * eps_mag));
  auto branch = [&](double k_pm) {
    const Complex transient((1.0 - std::cos(theta_tilde)) * std::exp(-k_pm * t1),
                            std::sin(theta_tilde) * std::exp(-kappa * t1));
    return (pre * transient - eps_mag / (4.0 * k_pm)) * std::exp(-0.5 * k_pm * tau);
  };
  const Complex p_plus = branch(kp);
  const Complex p_minus = branch(km);
  CorrelatorPair out;
  out.k_ff = kappa * (p_minus + p_plus) * std::polar(1.0, theta_tilde);
  out.k_ffstar = kappa * (p_plus - p_minus);
  out.delta_weight = tau == 0.0 ? 0.5 : 0.0;
  out.t1 = t1;
  out.t2 = t1 + tau;
  return out;
}

}  // namespace squeeze::analytic
