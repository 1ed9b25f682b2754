#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include "squeeze/linalg.hpp"
#include "squeeze/moments.hpp"
#include "squeeze/rng.hpp"
#include "squeeze/schedule.hpp"
#include "squeeze/signal.hpp"

namespace squeeze {

/// Which noise sample enters the output f = -v + sqrt(kappa_out) alpha.
enum class OutputNoise {
  correlated,   // the same v that drives alpha (the physical model)
  independent,  // a fresh sample; negative control only
};

struct McConfig {
  double dt = 1e-2;
  std::size_t n_traj = 1000;
  std::uint64_t seed = 1;
  double t_start = 0.0;
  double t_end = 1.0;
  /// Consecutive steps averaged into one output bin for correlator estimates.
  std::size_t bin_steps = 1;
  OutputNoise output_noise = OutputNoise::correlated;
  /// Gaussian state at t_start, drawn per trajectory.
  InitialStateSpec initial = Vacuum{};
  unsigned threads = 0;

  void validate() const;
  std::size_t n_steps() const;
};

/// Sample mean with standard error sample_std / sqrt(n).
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

struct ComplexEstimate {
  McEstimate re;
  McEstimate im;
  Complex mean() const { return {re.mean, im.mean}; }
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Complex> alpha;
  std::vector<Complex> f;
};

struct McPairPoint {
  double tau = 0.0;
  /// Midpoints of the two averaging bins actually used.
  double t1_bin = 0.0;
  double t2_bin = 0.0;
  ComplexEstimate k_ff;
  ComplexEstimate k_ffstar;
};

struct McPairResult {
  std::vector<McPairPoint> points;
  /// tau = 0 bin of K_ff* times the bin width: the delta weight n_bath + 1/2 plus
  /// terms of order bin width. Present only when the tau grid contains 0; that point
  /// is not a smooth estimate.
  std::optional<ComplexEstimate> delta_estimate;
  std::vector<std::string> warnings;
};

/// Euler-Maruyama path of the Langevin model on t_k = t_start + k dt, k < n_steps.
Trajectory simulate_trajectory(const DriveSchedule& schedule, const McConfig& cfg, std::uint64_t trajectory_index);

/// Ensemble estimates of f(t1) f(t1 + tau) and f(t1) f*(t1 + tau), with f averaged
/// over bins of cfg.bin_steps steps centred (to dt/2) on the requested times.
/// Nonzero tau must be at least one bin width so that bins do not overlap.
McPairResult estimate_correlator_pair(const DriveSchedule& schedule, const McConfig& cfg, double t1,
                                      std::span<const double> tau_grid);

/// <R^2> for R = sum_k w(t_k) Re[e^{-i phi(t_k)} f_k] dt.
McEstimate estimate_integrated_variance(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                                        const WeightFunction& weight, const McConfig& cfg);

/// Warnings for the given schedule and step (coarse dt, unstable instants).
std::vector<std::string> mc_warnings(const DriveSchedule& schedule, const McConfig& cfg);

namespace detail {

/// Mergeable running mean / variance (Chan et al.).
struct RunningStats {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const RunningStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double nt = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / nt;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / nt;
    n += o.n;
  }
  McEstimate estimate() const {
    McEstimate e;
    e.n = n;
    e.mean = mean;
    e.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    return e;
  }
};

struct ComplexStats {
  RunningStats re, im;
  void add(Complex z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void merge(const ComplexStats& o) {
    re.merge(o.re);
    im.merge(o.im);
  }
  ComplexEstimate estimate() const { return {re.estimate(), im.estimate()}; }
};

/// Trajectories per accumulation block. Blocks are merged in index order, so the
/// ensemble statistics do not depend on the number of workers.
inline constexpr std::size_t kBlockSize = 512;

/// Noise amplitudes shared by every step.
struct NoiseScales {
  double sigma = 0.0;         // std of Re v and Im v: sqrt((n_bath + 1/2) / (2 dt))
  double sqrt_kout = 0.0;     // sqrt(kappa_out)
  double sqrt_kextra = 0.0;   // sqrt(kappa - kappa_out)
  bool independent_output = false;

  static NoiseScales from(const DriveSchedule& schedule, const McConfig& cfg);
};

/// Draws alpha from the Gaussian with the given second moments.
Complex sample_gaussian_state(CounterRng& rng, Complex m_aa, double m_abs);

/// One Euler-Maruyama trajectory. drift(k, alpha) is the deterministic part of
/// d alpha / dt at step k; sink(k, alpha_k, f_k) observes every step.
template <class Drift, class Sink>
void run_trajectory(std::size_t n_steps, double dt, const NoiseScales& noise, CounterRng& rng, Complex alpha,
                    Drift&& drift, Sink&& sink) {
  for (std::size_t k = 0; k < n_steps; ++k) {
    const auto [vr, vi] = rng.normal_pair();
    const Complex v(noise.sigma * vr, noise.sigma * vi);
    Complex kick = noise.sqrt_kout * v;
    if (noise.sqrt_kextra > 0.0) {
      const auto [ur, ui] = rng.normal_pair();
      kick += noise.sqrt_kextra * Complex(noise.sigma * ur, noise.sigma * ui);
    }
    Complex out_noise = v;
    if (noise.independent_output) {
      const auto [wr, wi] = rng.normal_pair();
      out_noise = Complex(noise.sigma * wr, noise.sigma * wi);
    }
    sink(k, alpha, -out_noise + noise.sqrt_kout * alpha);
    alpha += drift(k, alpha) * dt + kick * dt;
  }
}

/// Start index of the bin of `bin_steps` steps centred on time t.
std::ptrdiff_t bin_start(double t, double t_start, double dt, std::size_t bin_steps);

}  // namespace detail

}  // namespace squeeze
