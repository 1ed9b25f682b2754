#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace squeeze {

/// Closed time interval; either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t >= lo && t <= hi; }
  static Interval everywhere() { return {}; }
};

/// Intersection of two intervals (may be empty, lo > hi).
Interval intersect(const Interval& a, const Interval& b);

/// A real function of time.
///
/// Three backings are available: piecewise-linear segments (constants, steps,
/// ramps and linearly interpolated tables), piecewise cubic Hermite tables, and
/// an arbitrary callable. Every discontinuity is right-continuous, so f(t_jump)
/// is the value after the jump. Instances are immutable and cheap to copy.
class TimeFunction {
 public:
  /// One linear piece, valid from `start` until the next piece begins.
  /// f(t) = value + slope * (t - start). A piece starting at -inf must have slope 0.
  struct Piece {
    double start;
    double value;
    double slope;
  };

  TimeFunction();  // constant zero

  static TimeFunction constant(double value);
  static TimeFunction step(double before, double after, double at);
  /// Constant `v0` before t0, linear ramp on [t0, t1], constant `v1` afterwards.
  static TimeFunction ramp(double t0, double v0, double t1, double v1);
  /// Pieces must have strictly increasing starts; the domain runs from the first
  /// start to `domain_end`.
  static TimeFunction piecewise(std::vector<Piece> pieces,
                                double domain_end = std::numeric_limits<double>::infinity());
  /// Linear interpolation through (t[i], v[i]); domain is [t.front(), t.back()].
  static TimeFunction tabulated(std::vector<double> t, std::vector<double> v);
  /// Cubic Hermite interpolation. Interval [t[i], t[i+1]] uses slope_right[i] at its
  /// left end and slope_left[i+1] at its right end; nodes where the two differ are
  /// reported as breakpoints.
  static TimeFunction hermite(std::vector<double> t, std::vector<double> v,
                              std::vector<double> slope_left, std::vector<double> slope_right);
  static TimeFunction from_callable(std::function<double(double)> f, Interval domain,
                                    std::vector<double> breakpoints = {});

  /// Throws DomainError outside domain().
  double operator()(double t) const;

  Interval domain() const;
  /// Interior points where the function or its derivative may jump, ascending.
  const std::vector<double>& breakpoints() const;
  bool is_constant() const;
  /// Supremum of |f| on [lo, hi] (clipped to the domain). Exact for linear pieces,
  /// sampled otherwise.
  double sup_abs(double lo, double hi) const;
  /// Smallest value over the knots, breakpoints and finite domain ends. Exact lower
  /// bound for piecewise-linear functions.
  double knot_minimum() const;

 private:
  struct Impl;
  explicit TimeFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace squeeze
