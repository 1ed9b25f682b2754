#include "squeeze/correlators.hpp"

#include <algorithm>

#include "squeeze/error.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/propagator.hpp"

namespace squeeze {

Vec2 correlator_initial(const MomentState& m, double kappa) {
  return {kappa * m.m_aa, Complex(kappa * (m.m_abs - 0.5))};
}

std::vector<CorrelatorPair> correlator_pair(const DriveSchedule& schedule, double t1,
                                            std::span<const double> tau_grid, const MomentState& m_at_t1,
                                            const IntegratorConfig& cfg) {
  if (m_at_t1.t != t1) throw ArgumentError("moments must be given at t1");
  std::vector<double> t2;
  t2.reserve(tau_grid.size());
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (tau_grid[i] < 0.0) throw ArgumentError("tau grid must be nonnegative");
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1])) throw ArgumentError("tau grid must be strictly ascending");
    t2.push_back(t1 + tau_grid[i]);
  }
  const Vec2 k0 = correlator_initial(m_at_t1, schedule.kappa());
  const auto greens = propagate_green(schedule, t1, t2, cfg);

  std::vector<CorrelatorPair> out;
  out.reserve(greens.size());
  for (std::size_t i = 0; i < greens.size(); ++i) {
    const Vec2 k = greens[i].g * k0;
    out.push_back({k.x, k.y, tau_grid[i] == 0.0 ? 0.5 : 0.0, t1, t2[i]});
  }
  return out;
}

CorrelatorPair extend_symmetric(const CorrelatorPair& p) {
  return {p.k_ff, std::conj(p.k_ffstar), p.delta_weight, p.t2, p.t1};
}

CorrelatorPair apply_scalings(const CorrelatorPair& p, const DriveSchedule& schedule) {
  const double thermal = 1.0 + 2.0 * schedule.n_bath();
  const double smooth = (schedule.kappa_out() / schedule.kappa()) * thermal;
  const double amp = schedule.amplifier_mode() == AmplifierMode::phase_preserving ? 2.0 : 1.0;
  return {smooth * p.k_ff, smooth * p.k_ffstar, p.delta_weight * thermal * amp, p.t1, p.t2};
}

QuadratureCorrelator quadrature_correlator(const CorrelatorPair& p, double phi1, double phi2) {
  const double smooth =
      0.5 * (p.k_ff * std::polar(1.0, -(phi1 + phi2))).real() + 0.5 * (p.k_ffstar * std::polar(1.0, -(phi1 - phi2))).real();
  return {smooth, 0.5 * p.delta_weight};
}

CorrelatorPair correlator_at(const DriveSchedule& schedule, double t_a, double t_b, const InitialCondition& init,
                             const IntegratorConfig& cfg) {
  const double lo = std::min(t_a, t_b);
  const double hi = std::max(t_a, t_b);
  const double ts[] = {lo};
  const double taus[] = {hi - lo};
  const auto m = moments_on_grid(schedule, init, ts, cfg);
  CorrelatorPair p = apply_scalings(correlator_pair(schedule, lo, taus, m[0], cfg).front(), schedule);
  p.t2 = hi;
  return t_b < t_a ? extend_symmetric(p) : p;
}

std::vector<CorrelatorRow> correlator_grid(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                                           std::span<const double> t1_grid, std::span<const double> tau_grid,
                                           const InitialCondition& init, const IntegratorConfig& cfg,
                                           unsigned threads) {
  const auto moments = moments_on_grid(schedule, init, t1_grid, cfg);
  const std::size_t nt = tau_grid.size();
  std::vector<CorrelatorRow> table(t1_grid.size() * nt);

  parallel_for(t1_grid.size(), threads, [&](std::size_t i) {
    const double t1 = t1_grid[i];
    const auto pairs = correlator_pair(schedule, t1, tau_grid, moments[i], cfg);
    const double phi1 = quad(t1);
    for (std::size_t j = 0; j < nt; ++j) {
      CorrelatorRow& row = table[i * nt + j];
      row.t1 = t1;
      row.tau = tau_grid[j];
      row.phi1 = phi1;
      row.phi2 = quad(t1 + tau_grid[j]);
      row.pair = apply_scalings(pairs[j], schedule);
      row.quad = quadrature_correlator(row.pair, row.phi1, row.phi2);
    }
  });
  return table;
}

}  // namespace squeeze
