#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "squeeze/error.hpp"
#include "squeeze/linalg.hpp"

namespace squeeze {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0))
      throw ArgumentError("integrator tolerances and max_step must be positive");
  }
};

namespace detail {

inline double component_ratio(Complex e, Complex y0, Complex y1, double atol, double rtol) {
  return std::abs(e) / (atol + rtol * std::max(std::abs(y0), std::abs(y1)));
}

inline double error_ratio(Complex e, Complex y0, Complex y1, double atol, double rtol) {
  return component_ratio(e, y0, y1, atol, rtol);
}

inline double error_ratio(const Vec2& e, const Vec2& y0, const Vec2& y1, double atol, double rtol) {
  return std::max(component_ratio(e.x, y0.x, y1.x, atol, rtol), component_ratio(e.y, y0.y, y1.y, atol, rtol));
}

inline double error_ratio(const Mat2& e, const Mat2& y0, const Mat2& y1, double atol, double rtol) {
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i) r = std::max(r, component_ratio(e.a[i], y0.a[i], y1.a[i], atol, rtol));
  return r;
}

}  // namespace detail

/// Adaptive Dormand-Prince 4(5) integration of dy/dt = rhs(t, y).
///
/// Returns y at every point of the ascending `grid` (all >= t0). Steps never
/// straddle a breakpoint: integration restarts at each one, and within a segment
/// ending at b the right-hand side is sampled at or before the left neighbour of b,
/// so a right-continuous jump at b is not seen until the next segment.
template <class State, class Rhs>
std::vector<State> integrate_adaptive(Rhs&& rhs, State y0, double t0, std::span<const double> grid,
                                      std::span<const double> breakpoints, const IntegratorConfig& cfg) {
  cfg.validate();
  std::vector<State> out;
  out.reserve(grid.size());
  if (grid.empty()) return out;
  if (grid.front() < t0) throw ArgumentError("integration grid starts before the initial time");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ArgumentError("integration grid must be strictly ascending");

  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  double t = t0;
  State y = y0;
  double h = std::min(cfg.max_step, 0.1);
  std::size_t next_bp = 0;

  for (double target : grid) {
    while (t < target) {
      while (next_bp < breakpoints.size() && breakpoints[next_bp] <= t) ++next_bp;
      double seg_end = target;
      if (next_bp < breakpoints.size() && breakpoints[next_bp] < target) seg_end = breakpoints[next_bp];
      const double eval_cap = std::nextafter(seg_end, -std::numeric_limits<double>::infinity());
      auto f = [&](double ts, const State& ys) { return rhs(std::min(ts, eval_cap), ys); };

      State k1 = f(t, y);
      while (t < seg_end) {
        const double remaining = seg_end - t;
        const bool last = h >= remaining;
        const double hs = last ? remaining : h;
        const State k2 = f(t + c2 * hs, y + (hs * a21) * k1);
        const State k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
        const State k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 = f(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const State y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double t_new = last ? seg_end : t + hs;
        const State k7 = f(t_new, y_new);
        const State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double ratio = detail::error_ratio(err, y, y_new, cfg.abs_tol, cfg.rel_tol);

        if (ratio <= 1.0) {
          t = t_new;
          y = y_new;
          k1 = k7;
          const double grow = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
          // A step clipped to the segment end says little about the natural size.
          if (!last || grow < 1.0) h = std::min(cfg.max_step, hs * grow);
        } else {
          const double shrink = std::isfinite(ratio) ? std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 0.9) : 0.1;
          h = hs * shrink;
          if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "step size underflow while integrating on [" << t << ", " << seg_end << "]";
            throw ConvergenceError(os.str(), t, seg_end);
          }
        }
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace squeeze
