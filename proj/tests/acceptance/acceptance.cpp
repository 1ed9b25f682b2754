// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion; exits nonzero if
// any selected criterion fails. Usage: squeeze_acceptance [--criterion N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "squeeze/analytic.hpp"
#include "squeeze/correlators.hpp"
#include "squeeze/decomposition.hpp"
#include "squeeze/moments.hpp"
#include "squeeze/montecarlo.hpp"
#include "squeeze/nonlinear.hpp"
#include "squeeze/signal.hpp"

using namespace squeeze;

namespace {

constexpr double kPiD = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Report {
 public:
  void check(bool ok, const std::string& what) {
    pass_ = pass_ && ok;
    if (!detail_.empty()) detail_ += "; ";
    detail_ += what + (ok ? "" : " (failed)");
  }
  Outcome done() const { return {pass_, detail_}; }

 private:
  bool pass_ = true;
  std::string detail_;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

double pair_error(const CorrelatorPair& a, const CorrelatorPair& b) {
  return std::max(std::abs(a.k_ff - b.k_ff), std::abs(a.k_ffstar - b.k_ffstar));
}

double wrap(double x) { return std::remainder(x, 2 * kPiD); }

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto taus = linspace(0.0, 6.0, 61);
  double worst = 0.0;
  int underdamped = 0, overdamped = 0;
  for (int i = 0; i < 10; ++i) {
    const double kappa = 0.5 + u(rng);
    double omega = 0.6 * (u(rng) - 0.5) * kappa;
    double mag;
    if (i == 0) {
      omega = 0.6 * kappa;
      mag = 0.8 * kappa;  // |eps| < 2|Omega|
    } else {
      mag = 0.7 * u(rng) * std::sqrt(kappa * kappa + 4 * omega * omega);
    }
    const Complex eps = std::polar(mag, 2 * kPiD * u(rng));
    const auto sp = analytic::make_steady_params(kappa, eps, omega);
    ++(sp.gap.imag() != 0.0 ? underdamped : overdamped);
    const auto s = DriveSchedule::constant(omega, eps, kappa);
    const double t1s[] = {0.0};
    const auto rows = correlator_grid(s, QuadratureSchedule::constant(0.0), t1s, taus, InitialCondition{});
    for (const auto& r : rows) worst = std::max(worst, pair_error(r.pair, analytic::steady_general(sp, r.tau)));
  }
  const double secs = seconds_since(t0);
  Report rep;
  rep.check(underdamped >= 1 && overdamped >= 1,
            std::to_string(underdamped) + " underdamped and " + std::to_string(overdamped) + " overdamped drives");
  rep.check(worst < 1e-8, "max abs error " + num(worst) + " < 1e-8");
  rep.check(secs < 10.0, "runtime " + num(secs) + " s < 10 s");
  return rep.done();
}

Outcome criterion2() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double kappa = 0.5 + u(rng);
    const double mag = 0.95 * kappa * u(rng);
    const double theta = 2 * kPiD * u(rng);
    const double phi = 2 * kPiD * u(rng);
    const double tau = 6.0 * u(rng) / kappa;
    const auto q = quadrature_correlator(
        analytic::steady_general(analytic::make_steady_params(kappa, std::polar(mag, theta), 0.0), tau), phi, phi);
    worst = std::max(worst, std::abs(q.smooth - analytic::steady_simple(kappa, mag, theta, phi, tau).smooth));
  }
  Report rep;
  rep.check(worst < 1e-10, "max abs error " + num(worst) + " over 100 samples < 1e-10");
  return rep.done();
}

Outcome criterion3() {
  const double theta = 0.8;
  const auto s = DriveSchedule::constant(0.0, std::polar(0.5, theta), 1.0);
  const double h = 0.01;
  const int n = 8000;  // tau up to 80
  std::vector<double> taus;
  for (int i = 0; i <= n; ++i) taus.push_back(h * i);
  const double t1s[] = {0.0};
  const auto m = moments_on_grid(s, InitialCondition{}, t1s);
  const auto pairs = correlator_pair(s, 0.0, taus, m[0]);
  Report rep;
  for (const auto& [phi, expect, label] : {std::tuple{theta / 2, 1.0 / 36, "phi = theta/2"},
                                           std::tuple{(theta + kPiD) / 2, 2.25, "phi = (theta + pi)/2"}}) {
    double simpson = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      simpson += w * quadrature_correlator(apply_scalings(pairs[static_cast<std::size_t>(i)], s), phi, phi).smooth;
    }
    simpson *= h / 3;
    const double delta = quadrature_correlator(apply_scalings(pairs[0], s), phi, phi).delta_weight;
    const double total = 2 * simpson + delta;
    const double rel = std::abs(total - expect) / expect;
    rep.check(rel < 1e-6, std::string(label) + ": " + num(total) + " vs " + num(expect) + ", rel " + num(rel));
  }
  return rep.done();
}

struct BranchFree {
  double diff, sum, plus, minus;  // |K_ff|, |K_ff*|, arg K_ff, arg K_ff*
};

BranchFree invariants(const CorrelatorPair& p) {
  const SqueezeParams s = decompose(p);
  return {s.a - s.b, s.a + s.b, s.phi + s.psi, s.phi - s.psi};
}

double distance(const BranchFree& a, const BranchFree& b) {
  return std::max({std::abs(a.diff - b.diff), std::abs(a.sum - b.sum), std::abs(wrap(a.plus - b.plus)),
                   std::abs(wrap(a.minus - b.minus))});
}

Outcome criterion4() {
  const double theta = kPiD / 2;
  const auto s = make_phase_jump(0.5, theta, 1.0);
  const auto taus = linspace(0.0, 6.0, 61);
  const double t1s[] = {0.25, 1.0, 2.0, 30.0};
  const auto rows = correlator_grid(s, QuadratureSchedule::constant(0.0), t1s, taus, InitialCondition{});
  const auto steady = analytic::make_steady_params(1.0, std::polar(0.5, theta), 0.0);

  double worst = 0.0, transient_split = 0.0, late_split = 0.0;
  double dist[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const auto& r = rows[i * taus.size() + j];
      if (i < 3) worst = std::max(worst, pair_error(r.pair, analytic::phase_jump(1.0, 0.5, theta, r.t1, r.tau)));
      const SqueezeParams d = decompose(r.pair);
      const double split = std::abs(wrap(d.phi - d.psi));
      if (i < 3) transient_split = std::max(transient_split, split);
      if (i == 3) late_split = std::max(late_split, split);
      dist[i] = std::max(dist[i], distance(invariants(r.pair), invariants(analytic::steady_general(steady, r.tau))));
    }
  }
  Report rep;
  rep.check(worst < 1e-8, "engine vs closed form max abs error " + num(worst) + " < 1e-8");
  rep.check(transient_split > 1e-3, "transient max |phi - psi| " + num(transient_split));
  rep.check(late_split < 1e-6, "kappa t1 = 30 max |phi - psi| " + num(late_split) + " < 1e-6");
  const bool converging = dist[0] > dist[1] && dist[1] > dist[2] && dist[2] > dist[3] && dist[2] > 1e-3;
  rep.check(converging, "distance to steady curves " + num(dist[0]) + " > " + num(dist[1]) + " > " + num(dist[2]) +
                            " > " + num(dist[3]));
  return rep.done();
}

Outcome criterion5() {
  Report rep;
  const auto taus = linspace(0.0, 6.0, 61);
  const double t1s[] = {0.0};
  double worst_im = 0.0;
  for (const auto& [omega, eps] : {std::pair{0.0, Complex(0.5)}, std::pair{0.4, std::polar(0.7, 1.2)},
                                   std::pair{1.0, std::polar(0.5, -0.4)}}) {
    const auto rows = correlator_grid(DriveSchedule::constant(omega, eps, 1.0), QuadratureSchedule::constant(0.0), t1s,
                                      taus, InitialCondition{});
    for (const auto& r : rows) worst_im = std::max(worst_im, std::abs(r.pair.k_ffstar.imag()));
  }
  rep.check(worst_im < 1e-8, "constant drive max |Im K_ff*| " + num(worst_im) + " < 1e-8");

  double closed_ratio = 0.0;
  for (double tau : taus) {
    const auto c = analytic::phase_jump(1.0, 0.5, kPiD / 2, 0.25, tau);
    closed_ratio = std::max(closed_ratio, std::abs(c.k_ffstar.imag()) / std::abs(c.k_ffstar));
  }
  const double jt[] = {0.25};
  double ratio = 0.0;
  for (const auto& r : correlator_grid(make_phase_jump(0.5, kPiD / 2, 1.0), QuadratureSchedule::constant(0.0), jt,
                                       taus, InitialCondition{}))
    ratio = std::max(ratio, std::abs(r.pair.k_ffstar.imag()) / std::abs(r.pair.k_ffstar));
  rep.check(closed_ratio > 1e-3, "closed-form max |Im K_ff*|/|K_ff*| " + num(closed_ratio) + " > 1e-3");
  rep.check(ratio > 1e-3, "engine ratio at kappa t1 = 0.25 " + num(ratio) + " > 1e-3");
  return rep.done();
}

Outcome criterion6() {
  const auto base = DriveSchedule(TimeFunction::ramp(0.0, 0.0, 2.0, 0.3), TimeFunction::constant(0.6),
                                  TimeFunction::step(0.0, 1.0, 0.5), 1.2, 1.2);
  const auto taus = linspace(0.0, 4.0, 21);
  const double t1s[] = {0.2, 1.0};
  const auto q = QuadratureSchedule::constant(0.3);
  auto grid = [&](const DriveSchedule& s) { return correlator_grid(s, q, t1s, taus, InitialCondition{}); };
  const auto ref = grid(base);

  double thermal_dev = 0.0, kout_dev = 0.0;
  bool delta_thermal = true, delta_kout = true, delta_pp = true;
  const double nb = 0.7, kout = 0.45;
  const auto th = grid(base.with_output(1.2, nb, AmplifierMode::phase_sensitive));
  const auto ko = grid(base.with_output(kout, 0.0, AmplifierMode::phase_sensitive));
  const auto pp = grid(base.with_output(1.2, 0.0, AmplifierMode::phase_preserving));
  auto rel = [](Complex a, Complex b) { return b == Complex{} ? std::abs(a) : std::abs(a - b) / std::abs(b); };
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const auto& r = ref[i].pair;
    thermal_dev = std::max({thermal_dev, rel(th[i].pair.k_ff, (1 + 2 * nb) * r.k_ff),
                            rel(th[i].pair.k_ffstar, (1 + 2 * nb) * r.k_ffstar)});
    kout_dev = std::max({kout_dev, rel(ko[i].pair.k_ff, (kout / 1.2) * r.k_ff),
                         rel(ko[i].pair.k_ffstar, (kout / 1.2) * r.k_ffstar)});
    delta_thermal = delta_thermal && th[i].pair.delta_weight == (1 + 2 * nb) * r.delta_weight;
    delta_kout = delta_kout && ko[i].pair.delta_weight == r.delta_weight;
    delta_pp = delta_pp && pp[i].pair.delta_weight == 2 * r.delta_weight && pp[i].pair.k_ff == r.k_ff;
  }
  Report rep;
  rep.check(thermal_dev < 1e-14, "(1 + 2 n_bath) scaling rel dev " + num(thermal_dev));
  rep.check(kout_dev < 1e-14, "kappa_out/kappa scaling rel dev " + num(kout_dev));
  rep.check(delta_kout, "delta weight unchanged by kappa_out");
  rep.check(delta_thermal, "delta weight scaled by (1 + 2 n_bath)");
  rep.check(delta_pp, "delta weight doubled in phase-preserving mode");
  return rep.done();
}

Outcome criterion7() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(-2.0, 5.0);
  const auto jump = make_phase_jump(0.5, kPiD / 2, 1.0);
  const auto ramp = DriveSchedule(TimeFunction::ramp(-1.0, 0.2, 3.0, -0.4), TimeFunction::ramp(0.0, 0.3, 2.0, 0.8),
                                  TimeFunction::ramp(-1.0, 0.0, 4.0, 2.5), 1.0, 0.8, 0.3);
  double worst = 0.0;
  for (const DriveSchedule* s : {&jump, &ramp}) {
    for (int i = 0; i < 25; ++i) {
      const double t = u(rng), tp = u(rng);
      const CorrelatorPair a = correlator_at(*s, t, tp, InitialCondition{});
      const CorrelatorPair b = correlator_at(*s, tp, t, InitialCondition{});
      worst = std::max({worst, std::abs(a.k_ff - b.k_ff), std::abs(a.k_ffstar - std::conj(b.k_ffstar))});
      const double p1 = 2 * kPiD * (u(rng) + 2) / 7, p2 = 2 * kPiD * (u(rng) + 2) / 7;
      worst = std::max(worst, std::abs(quadrature_correlator(a, p1, p2).smooth - quadrature_correlator(b, p2, p1).smooth));
    }
  }
  Report rep;
  rep.check(worst < 1e-10, "max exchange asymmetry " + num(worst) + " over 50 random pairs < 1e-10");
  return rep.done();
}

struct McCase {
  std::string label;
  DriveSchedule schedule;
  double t1;
};

/// Largest |z| of the binned Monte Carlo correlators against the engine.
double mc_max_z(const McCase& c, OutputNoise noise, std::size_t n_traj, std::string& where) {
  const double dt = 0.01 / 1.5;
  McConfig cfg;
  cfg.dt = dt;
  cfg.bin_steps = 15;
  cfg.n_traj = n_traj;
  cfg.seed = 8;
  cfg.output_noise = noise;
  const double width = 15 * dt;
  std::vector<double> taus{0.0};
  for (int i = 1; i <= 12; ++i) taus.push_back(0.5 * i);
  // constant drive before min(t1, 0): start there from the analytic steady state
  const double lead = std::min(c.t1, 0.0) - width - dt;
  cfg.t_start = c.t1 - std::ceil((c.t1 - lead) / dt - 1e-9) * dt;
  cfg.t_end = c.t1 + taus.back() + 2 * width;
  const auto [aa, abs] = oracle::steady_moments(1.0, 0.0, c.schedule.sample(cfg.t_start).pump);
  cfg.initial = CustomMoments{aa, abs};
  const auto r = estimate_correlator_pair(c.schedule, cfg, c.t1, taus);

  const double t1c = r.points.front().t1_bin;
  std::vector<double> tau_c;
  for (const auto& p : r.points) tau_c.push_back(p.t2_bin - t1c);
  const double t1s[] = {t1c};
  const auto m = moments_on_grid(c.schedule, InitialCondition{}, t1s);
  const auto det = correlator_pair(c.schedule, t1c, tau_c, m[0]);
  double worst = 0.0;
  for (std::size_t j = 0; j < r.points.size(); ++j) {
    CorrelatorPair e = apply_scalings(det[j], c.schedule);
    if (r.points[j].tau == 0.0) e.k_ffstar += e.delta_weight / width + c.schedule.kappa_out() * e.delta_weight / 15.0;
    const auto& p = r.points[j];
    const McEstimate* est[] = {&p.k_ff.re, &p.k_ff.im, &p.k_ffstar.re, &p.k_ffstar.im};
    const double val[] = {e.k_ff.real(), e.k_ff.imag(), e.k_ffstar.real(), e.k_ffstar.imag()};
    for (int k = 0; k < 4; ++k) {
      const double z = std::abs(est[k]->mean - val[k]) / est[k]->std_error;
      if (z > worst) {
        worst = z;
        where = c.label + " tau=" + num(p.tau);
      }
    }
  }
  return worst;
}

Outcome criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 100000;
  const auto steady = DriveSchedule::constant(0.0, 0.5, 1.0);
  const auto jump = make_phase_jump(0.5, kPiD / 2, 1.0);
  const std::vector<McCase> cases{{"steady", steady, 0.5},
                                  {"jump t1=0.25", jump, 0.25},
                                  {"jump t1=1", jump, 1.0},
                                  {"jump t1=2", jump, 2.0}};
  Report rep;
  for (const auto& c : cases) {
    std::string where;
    const double z = mc_max_z(c, OutputNoise::correlated, n, where);
    rep.check(z < 4.0, c.label + " max |z| " + num(z));
  }
  std::string where;
  const double zneg = mc_max_z(cases[0], OutputNoise::independent, n, where);
  rep.check(zneg > 10.0, "negative control max |z| " + num(zneg) + " > 10 at " + where);
  const double secs = seconds_since(t0);
  rep.check(secs < 300.0, "runtime " + num(secs) + " s < 300 s");
  return rep.done();
}

Outcome criterion9() {
  double worst = 0.0;
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const double kappa = 0.5 + u(rng), omega = u(rng) - 0.5;
    const Complex eps = std::polar(0.8 * kappa * u(rng), 6.0 * u(rng));
    const auto s = DriveSchedule::constant(omega, eps, kappa);
    const std::vector<oracle::Segment> segs{{-INFINITY, kappa, omega, eps}};
    const MomentState m0 = initial_moments(SqueezedVacuum{0.4 * u(rng), 6.0 * u(rng)}, 0.0);
    const auto grid = linspace(0.5, 8.0, 16);
    const auto m = evolve_moments(s, m0, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto [aa, abs] = oracle::moments(segs, 0.0, m0.m_aa, m0.m_abs, grid[k]);
      worst = std::max({worst, std::abs(m[k].m_aa - aa), std::abs(m[k].m_abs - abs)});
    }
  }
  const auto jump = make_phase_jump(0.5, kPiD / 2, 1.0);
  const std::vector<oracle::Segment> segs{{-INFINITY, 1.0, 0.0, 0.5}, {0.0, 1.0, 0.0, Complex(0.0, 0.5)}};
  const auto grid = linspace(-2.0, 6.0, 33);
  const auto m = evolve_moments(jump, initial_moments(Vacuum{}, -3.0), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto [aa, abs] = oracle::moments(segs, -3.0, 0.0, 0.5, grid[k]);
    worst = std::max({worst, std::abs(m[k].m_aa - aa), std::abs(m[k].m_abs - abs)});
  }
  Report rep;
  rep.check(worst < 1e-8, "Lyapunov ODE vs integral form max abs error " + num(worst) + " < 1e-8");
  return rep.done();
}

Outcome criterion10() {
  Report rep;
  const auto base = make_phase_jump(0.5, kPiD / 2, 1.0).with_output(0.8, 0.2, AmplifierMode::phase_sensitive);
  const auto res = NonlinearResonator::polynomial({2.0}, TimeFunction::ramp(-5.0, 0.0, 1.0, 0.9),
                                                  TimeFunction::constant(0.3), 2.0, base);
  const CenterState c0{Complex(0.2, -0.1), -30.0};
  const InitialCondition init{Vacuum{}, -30.0};
  const double t1s[] = {-1.0, 0.25, 1.0, 2.0};
  const auto taus = linspace(0.0, 6.0, 31);
  const auto quad = QuadratureSchedule::constant(0.4);
  const auto nl = nonlinear_correlators(res, quad, t1s, taus, init, c0);
  const auto lin = correlator_grid(base, quad, t1s, taus, init);
  double worst = 0.0;
  for (std::size_t i = 0; i < lin.size(); ++i) worst = std::max(worst, pair_error(nl.rows[i].pair, lin[i].pair));
  rep.check(worst < 1e-10, "domega/dn = 0 vs linear engine max abs error " + num(worst) + " < 1e-10");

  const double chi = 0.004, eps_c = 3.8;
  const auto kerr = NonlinearResonator::polynomial({0.0, chi}, TimeFunction::constant(eps_c),
                                                   TimeFunction::constant(0.0), 0.0,
                                                   DriveSchedule::constant(0.0, 0.0, 1.0));
  const auto eff = effective_schedule(kerr, {Complex{}, 0.0}, 200.0);
  const double n = oracle::kerr_photon_number(1.0, chi, eps_c);
  const double got = std::abs(eff.schedule.sample(200.0).pump);
  const double err = std::abs(got - 2 * chi * n);
  rep.check(err < 1e-8, "|eps_eff| " + num(got) + " vs 2 |omega'| n = " + num(2 * chi * n) + ", error " + num(err));
  return rep.done();
}

Outcome criterion11() {
  Report rep;
  const auto vac = integrated_variance(DriveSchedule::constant(0.0, 0.0, 1.0), QuadratureSchedule::constant(0.0),
                                       WeightFunction::box(0.0, 10.0), InitialCondition{});
  const double vac_err = std::abs(vac.total - 2.5);
  rep.check(vac_err < 1e-12, "vacuum <R^2> error " + num(vac_err) + " < 1e-12");

  QuadratureResolution fine;
  fine.step = 0.1;
  fine.rel_tol = 1e-5;
  const double T = 200.0;
  const auto st = integrated_variance(DriveSchedule::constant(0.0, 0.5, 1.0), QuadratureSchedule::constant(0.0),
                                      WeightFunction::box(0.0, T), InitialCondition{}, {}, fine);
  const double ratio = st.total / T * 36.0;
  rep.check(std::abs(ratio - 1.0) < 0.01, "steady <R^2>/T = " + num(st.total / T) + " is " + num(ratio) +
                                              " x 1/36 (<R^2> = " + num(st.total) + ")");

  const auto jump = make_phase_jump(0.5, kPiD / 2, 1.0);
  const auto w = WeightFunction::box(0.0, 2.0);
  const auto det = integrated_variance(jump, QuadratureSchedule::constant(0.0), w, InitialCondition{});
  McConfig cfg;
  cfg.dt = 0.01 / 1.5;
  cfg.n_traj = 100000;
  cfg.seed = 11;
  cfg.t_start = -15 * cfg.dt;
  cfg.t_end = 2.0 + cfg.dt;
  const auto [aa, abs] = oracle::steady_moments(1.0, 0.0, 0.5);
  cfg.initial = CustomMoments{aa, abs};
  const auto mc = estimate_integrated_variance(jump, QuadratureSchedule::constant(0.0), w, cfg);
  const double z = (mc.mean - det.total) / mc.std_error;
  rep.check(std::abs(z) < 4.0, "transient window engine " + num(det.total) + " vs Monte Carlo " + num(mc.mean) +
                                   " +- " + num(mc.std_error) + ", z = " + num(z));
  return rep.done();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10, criterion11};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be between 1 and %zu\n", criteria.size());
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("[%s] %zu %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
