#pragma once

#include <span>
#include <vector>

#include "squeeze/integrator.hpp"
#include "squeeze/linalg.hpp"
#include "squeeze/schedule.hpp"

namespace squeeze {

/// Drift matrix of the ensemble-averaged (alpha, alpha*) dynamics:
///   [[-kappa/2 - i Omega, -eps/2], [-eps*/2, -kappa/2 + i Omega]].
struct EvolutionMatrix {
  Mat2 m;
};

/// G(t | t_in), solution of dG/dt = M(t) G with G(t_in | t_in) = 1.
struct GreenFunction {
  Mat2 g = Mat2::identity();
  double t_in = 0.0;
  double t = 0.0;
};

EvolutionMatrix evolution_matrix(const DriveSample& sample);

/// Integrates the Green's function from t_in to every point of the strictly
/// ascending grid (grid.front() >= t_in). Restarts at schedule breakpoints.
std::vector<GreenFunction> propagate_green(const DriveSchedule& schedule, double t_in,
                                           std::span<const double> t_grid, const IntegratorConfig& cfg = {});

/// exp(M dt) for a constant drive. Uses the closed form
/// exp(M dt) = e^{-kappa dt/2} [cosh(q) 1 + (sinh(q)/q) N dt], q = gap dt / 2,
/// where N = M + kappa/2 satisfies N^2 = (gap/2)^2 with gap^2 = |eps|^2 - 4 Omega^2.
/// The series for sinh(q)/q takes over near the degenerate point gap = 0.
GreenFunction green_constant(const DriveSample& sample, double dt);

}  // namespace squeeze
