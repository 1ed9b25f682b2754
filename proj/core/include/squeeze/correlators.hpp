#pragma once

#include <span>
#include <vector>

#include "squeeze/integrator.hpp"
#include "squeeze/linalg.hpp"
#include "squeeze/moments.hpp"
#include "squeeze/schedule.hpp"

namespace squeeze {

/// Smooth parts of K_ff(t1, t2) = <f(t1) f(t2)> and K_ff*(t1, t2) = <f(t1) f*(t2)>,
/// plus the weight of the delta(t2 - t1) term carried by K_ff*.
struct CorrelatorPair {
  Complex k_ff{};
  Complex k_ffstar{};
  double delta_weight = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

/// K_{phi1 phi2}(t1, t2) split into its smooth value and delta(t2 - t1) weight.
struct QuadratureCorrelator {
  double smooth = 0.0;
  double delta_weight = 0.0;
};

/// kappa (<alpha^2>, <|alpha|^2> - 1/2): the correlator vector at t2 = t1 + 0.
Vec2 correlator_initial(const MomentState& m, double kappa);

/// Base-normalized (kappa_out = kappa, zero bath, phase-sensitive) correlators at
/// (t1, t1 + tau) for every tau of the strictly ascending, nonnegative grid.
/// tau = 0 yields the one-sided limit t2 -> t1 + 0 with delta_weight 1/2.
std::vector<CorrelatorPair> correlator_pair(const DriveSchedule& schedule, double t1,
                                            std::span<const double> tau_grid, const MomentState& m_at_t1,
                                            const IntegratorConfig& cfg = {});

/// The same correlators with t1 and t2 exchanged.
CorrelatorPair extend_symmetric(const CorrelatorPair& pair);

/// Applies kappa_out/kappa and (1 + 2 n_bath) to the smooth parts; the delta
/// weight gets (1 + 2 n_bath) and doubles for a phase-preserving amplifier.
CorrelatorPair apply_scalings(const CorrelatorPair& pair, const DriveSchedule& schedule);

QuadratureCorrelator quadrature_correlator(const CorrelatorPair& pair, double phi1, double phi2);

/// Scaled correlators at (t_a, t_b) in either order; t_b < t_a goes through
/// extend_symmetric of the (t_b, t_a) pair.
CorrelatorPair correlator_at(const DriveSchedule& schedule, double t_a, double t_b, const InitialCondition& init,
                             const IntegratorConfig& cfg = {});

struct CorrelatorRow {
  double t1 = 0.0;
  double tau = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  CorrelatorPair pair;  // scaled
  QuadratureCorrelator quad;
};

/// Full (t1, tau) table, t1-major. Moments are evolved once along t1_grid; each t1
/// row owns an independent Green's-function integration and rows run on up to
/// `threads` workers (0 = hardware concurrency).
std::vector<CorrelatorRow> correlator_grid(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                                           std::span<const double> t1_grid, std::span<const double> tau_grid,
                                           const InitialCondition& init, const IntegratorConfig& cfg = {},
                                           unsigned threads = 0);

}  // namespace squeeze
