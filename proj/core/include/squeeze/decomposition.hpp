#pragma once

#include <span>
#include <vector>

#include "squeeze/correlators.hpp"

namespace squeeze {

/// K_{phi1 phi2} = A cos(phi1 - phi) cos(phi2 - psi) + B sin(phi1 - phi) sin(phi2 - psi)
/// (smooth part). Branch convention: A - B = |K_ff| and A + B = |K_ff*| are both
/// nonnegative, phi + psi = arg K_ff, phi - psi = arg K_ff*, and phi is folded into
/// (-pi/2, pi/2] by the joint shift (phi, psi) -> (phi + pi, psi + pi).
struct SqueezeParams {
  double a = 0.0;
  double b = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  /// Set when K_ff or K_ff* vanishes and one angle combination is undefined (then 0).
  bool degenerate = false;
};

SqueezeParams decompose(const CorrelatorPair& pair);

/// Inverse of decompose on the smooth parts; t1 and t2 are left at zero.
CorrelatorPair reconstruct(const SqueezeParams& params, double delta_weight);

/// Smooth K_{phi phi} along the given quadrature angles (phase-space ellipse).
std::vector<double> ellipse(const SqueezeParams& params, std::span<const double> phi_grid);

/// Smooth K_{phi1 phi2} from the four parameters.
double evaluate(const SqueezeParams& params, double phi1, double phi2);

}  // namespace squeeze
