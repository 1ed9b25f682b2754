#pragma once

#include "squeeze/correlators.hpp"
#include "squeeze/linalg.hpp"

namespace squeeze::analytic {

/// Constant-drive parameters for the steady-state closed forms.
/// gap = sqrt(|eps|^2 - 4 Omega^2) when |Omega| <= |eps|/2 (overdamped), otherwise
/// i sqrt(4 Omega^2 - |eps|^2) (underdamped); kappa_plus/minus = kappa +/- gap.
struct SteadyParams {
  double kappa = 1.0;
  Complex eps{};
  double omega = 0.0;
  Complex gap{};
  Complex kappa_plus{};
  Complex kappa_minus{};
};

/// Throws StabilityError unless |eps|^2 < kappa^2 + 4 Omega^2.
SteadyParams make_steady_params(double kappa, Complex eps, double omega);

struct QuadratureValue {
  double smooth = 0.0;
  double delta_weight = 0.0;
};

/// Zero-detuning steady correlator K_{phi phi}(0, tau); delta weight 1/4 at tau = 0.
QuadratureValue steady_simple(double kappa, double eps_mag, double theta, double phi, double tau);

enum class Quadrature { squeezed, antisqueezed };

/// Integral of the steady K_{phi phi}(0, tau) over all tau, delta term included:
/// (1/4)(kappa_-/kappa_+)^2 for phi = theta/2, (1/4)(kappa_+/kappa_-)^2 for (theta + pi)/2.
double integrated_steady(double kappa, double eps_mag, Quadrature quad);

/// Steady K_ff(0, tau) and K_ff*(0, tau) for constant drive; |tau| is used, and
/// tau = 0 carries delta weight 1/2. Near gap = 0 a series replaces the 1/gap terms.
CorrelatorPair steady_general(const SteadyParams& p, double tau);

/// Transient correlators at (t1, t1 + tau) after theta jumps from 0 to theta_tilde at
/// t = 0 with Omega = 0 and constant |eps| < kappa. Requires t1 >= 0, tau >= 0.
CorrelatorPair phase_jump(double kappa, double eps_mag, double theta_tilde, double t1, double tau);

}  // namespace squeeze::analytic
