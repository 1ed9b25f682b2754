#include "squeeze/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "squeeze/correlators.hpp"
#include "squeeze/error.hpp"
#include "squeeze/parallel.hpp"
#include "squeeze/propagator.hpp"

namespace squeeze {

WeightFunction WeightFunction::box(double a, double b, double height) {
  WeightFunction w{TimeFunction::constant(height), {a, b}};
  w.validate();
  return w;
}

void WeightFunction::validate() const {
  if (!std::isfinite(support.lo) || !std::isfinite(support.hi) || !(support.hi > support.lo))
    throw ArgumentError("weight support must be a finite interval with hi > lo");
  const Interval d = w.domain();
  if (!d.contains(support.lo) || !d.contains(support.hi))
    throw ArgumentError("weight function is not defined over its whole support");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// A quadrature node; `left` selects the left limit of piecewise functions at t.
struct Node {
  double t;
  double weight;
  bool left;
};

double sided(double t, bool left) { return left ? std::nextafter(t, kNegInf) : t; }

// Weight at a sided time; the support is half-open so that touching windows do not overlap.
double weight_at(const WeightFunction& w, double t) {
  return t >= w.support.lo && t < w.support.hi ? w.w(t) : 0.0;
}

// Composite Simpson nodes on [a, b] with an even number of intervals of size <= h.
void simpson_nodes(double a, double b, double h, std::vector<Node>& out) {
  const double len = b - a;
  if (!(len > 0.0)) return;
  std::size_t n = 2 * static_cast<std::size_t>(std::ceil(len / (2.0 * h) - 1e-12));
  n = std::max<std::size_t>(n, 2);
  const double dx = len / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double t = i == n ? b : a + dx * static_cast<double>(i);
    out.push_back({t, w * dx / 3.0, i == n});
  }
}

std::vector<double> cut_points(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                               const WeightFunction& w_a, const WeightFunction& w_b, double lo, double hi) {
  std::vector<double> cuts{lo, hi, w_a.support.lo, w_a.support.hi, w_b.support.lo, w_b.support.hi};
  for (const auto* bps : {&schedule.breakpoints(), &quad.phi.breakpoints(), &w_a.w.breakpoints(), &w_b.w.breakpoints()})
    cuts.insert(cuts.end(), bps->begin(), bps->end());
  std::erase_if(cuts, [&](double c) { return c < lo || c > hi; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

struct Problem {
  const DriveSchedule& schedule;
  const QuadratureSchedule& quad;
  const WeightFunction& w_a;
  const WeightFunction& w_b;
  const InitialCondition& init;
  const IntegratorConfig& cfg;
  std::vector<double> cuts;
  unsigned threads;
};

double smooth_integral(const Problem& pb, double h) {
  std::vector<Node> outer;
  for (std::size_t c = 0; c + 1 < pb.cuts.size(); ++c) simpson_nodes(pb.cuts[c], pb.cuts[c + 1], h, outer);

  std::vector<double> t1_unique;
  for (const auto& n : outer) t1_unique.push_back(n.t);
  std::sort(t1_unique.begin(), t1_unique.end());
  t1_unique.erase(std::unique(t1_unique.begin(), t1_unique.end()), t1_unique.end());
  const auto moments = moments_on_grid(pb.schedule, pb.init, t1_unique, pb.cfg);

  std::vector<double> partial(outer.size(), 0.0);
  parallel_for(outer.size(), pb.threads, [&](std::size_t i) {
    const Node& o = outer[i];
    const double t1 = o.t;
    const double wa1 = weight_at(pb.w_a, sided(t1, o.left));
    const double wb1 = weight_at(pb.w_b, sided(t1, o.left));
    const double phi1 = pb.quad(sided(t1, o.left));

    std::vector<Node> inner;
    double start = t1;
    for (double c : pb.cuts) {
      if (c <= t1) continue;
      simpson_nodes(start, c, h, inner);
      start = c;
    }
    if (inner.empty()) return;

    std::vector<double> taus;
    std::vector<std::size_t> slot(inner.size());
    for (std::size_t j = 0; j < inner.size(); ++j) {
      const double tau = inner[j].t - t1;
      if (taus.empty() || tau > taus.back()) taus.push_back(tau);
      slot[j] = taus.size() - 1;
    }
    const auto it = std::lower_bound(t1_unique.begin(), t1_unique.end(), t1);
    const MomentState& m = moments[static_cast<std::size_t>(it - t1_unique.begin())];
    const auto pairs = correlator_pair(pb.schedule, t1, taus, m, pb.cfg);

    double acc = 0.0;
    for (std::size_t j = 0; j < inner.size(); ++j) {
      const Node& in = inner[j];
      const double t2s = sided(in.t, in.left);
      const double wsum = wa1 * weight_at(pb.w_b, t2s) + wb1 * weight_at(pb.w_a, t2s);
      if (wsum == 0.0) continue;
      const CorrelatorPair scaled = apply_scalings(pairs[slot[j]], pb.schedule);
      acc += in.weight * wsum * quadrature_correlator(scaled, phi1, pb.quad(t2s)).smooth;
    }
    partial[i] = o.weight * acc;
  });

  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double delta_integral(const Problem& pb, double h) {
  const double thermal = 1.0 + 2.0 * pb.schedule.n_bath();
  const double amp = pb.schedule.amplifier_mode() == AmplifierMode::phase_preserving ? 2.0 : 1.0;
  const double weight = 0.25 * thermal * amp;
  std::vector<Node> nodes;
  for (std::size_t c = 0; c + 1 < pb.cuts.size(); ++c) simpson_nodes(pb.cuts[c], pb.cuts[c + 1], h, nodes);
  double acc = 0.0;
  for (const auto& n : nodes) {
    const double t = sided(n.t, n.left);
    acc += n.weight * weight_at(pb.w_a, t) * weight_at(pb.w_b, t);
  }
  return weight * acc;
}

std::optional<double> asymptotic_rate(const Problem& pb) {
  if (!pb.schedule.is_constant() || !pb.quad.phi.is_constant()) return std::nullopt;
  const double t_ref = pb.w_a.support.lo;
  const double ts[] = {t_ref};
  const auto m = moments_on_grid(pb.schedule, InitialCondition{}, ts, pb.cfg);
  const Vec2 k0 = correlator_initial(m[0], pb.schedule.kappa());
  const Mat2 drift = evolution_matrix(pb.schedule.sample(t_ref)).m;
  const Complex det = drift.det();
  // \int_0^inf e^{M tau} dtau k0 = -M^{-1} k0
  const Mat2 inv{{drift(1, 1) / det, -drift(0, 1) / det, -drift(1, 0) / det, drift(0, 0) / det}};
  const Vec2 integral = -1.0 * (inv * k0);
  CorrelatorPair pair{integral.x, integral.y, 0.5, t_ref, t_ref};
  const double phi = pb.quad(t_ref);
  const QuadratureCorrelator q = quadrature_correlator(apply_scalings(pair, pb.schedule), phi, phi);
  return q.delta_weight + 2.0 * q.smooth;
}

}  // namespace

VarianceReport cross_covariance(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                                const WeightFunction& w_a, const WeightFunction& w_b, const InitialCondition& init,
                                const IntegratorConfig& cfg, const QuadratureResolution& res, unsigned threads) {
  w_a.validate();
  w_b.validate();
  if (!(res.step > 0.0)) throw ArgumentError("quadrature step must be positive");
  const double lo = std::min(w_a.support.lo, w_b.support.lo);
  const double hi = std::max(w_a.support.hi, w_b.support.hi);
  if (!schedule.domain().contains(lo) || !schedule.domain().contains(hi))
    throw DomainError("weight support leaves the schedule domain");

  const Problem pb{schedule, quad, w_a, w_b, init, cfg, cut_points(schedule, quad, w_a, w_b, lo, hi), threads};

  const double coarse = smooth_integral(pb, res.step);
  const double fine = smooth_integral(pb, 0.5 * res.step);
  const double delta = delta_integral(pb, 0.5 * res.step);
  if (std::abs(fine - coarse) > std::max(res.abs_tol, res.rel_tol * std::abs(fine + delta))) {
    std::ostringstream os;
    os << "quadrature unresolved: step " << res.step << " gives " << coarse + delta << ", step " << 0.5 * res.step
       << " gives " << fine + delta;
    throw AccuracyError(os.str(), coarse + delta, fine + delta);
  }

  VarianceReport r;
  r.smooth = fine + (fine - coarse) / 15.0;
  r.delta = delta;
  r.total = r.smooth + r.delta;
  r.coarse = coarse + delta;
  r.refined = fine + delta;
  if (w_a.support.lo == w_b.support.lo && w_a.support.hi == w_b.support.hi && w_a.w.is_constant() &&
      w_b.w.is_constant())
    r.asymptotic_rate = asymptotic_rate(pb);
  return r;
}

VarianceReport integrated_variance(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                                   const WeightFunction& w, const InitialCondition& init, const IntegratorConfig& cfg,
                                   const QuadratureResolution& res, unsigned threads) {
  return cross_covariance(schedule, quad, w, w, init, cfg, res, threads);
}

}  // namespace squeeze
