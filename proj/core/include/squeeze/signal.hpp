#pragma once

#include <optional>

#include "squeeze/integrator.hpp"
#include "squeeze/moments.hpp"
#include "squeeze/schedule.hpp"
#include "squeeze/time_function.hpp"

namespace squeeze {

/// Integration weight w(t) of R = \int w(t) f_phi(t) dt; zero outside `support`.
struct WeightFunction {
  TimeFunction w = TimeFunction::constant(1.0);
  Interval support{0.0, 1.0};

  double operator()(double t) const { return support.contains(t) ? w(t) : 0.0; }
  /// w = height on [a, b].
  static WeightFunction box(double a, double b, double height = 1.0);
  void validate() const;
};

struct QuadratureResolution {
  /// Target node spacing of the composite Simpson rule; the refined pass halves it.
  double step = 0.05;
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;
};

struct VarianceReport {
  double total = 0.0;   // Richardson-extrapolated smooth part plus delta part
  double smooth = 0.0;  // double integral of the smooth correlator
  double delta = 0.0;   // exact integral of w_a w_b times the delta weight
  double coarse = 0.0;  // total at `step`
  double refined = 0.0; // total at `step / 2`
  /// Only for constant drive and constant phi: delta weight + 2 \int_0^inf K_phiphi dtau,
  /// the long-window growth rate of <R^2> per unit time for a unit box weight.
  std::optional<double> asymptotic_rate;
};

/// <R_a R_b> = \iint w_a(t1) w_b(t2) K(t1, t2) dt1 dt2 + \int w_a w_b (delta weight) dt.
/// Smooth part by iterated Simpson over the t2 >= t1 half-plane (both orderings of
/// the weights), split at every weight, drive and phi breakpoint. Throws
/// AccuracyError when the step and half-step results disagree beyond tolerance.
VarianceReport cross_covariance(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                                const WeightFunction& w_a, const WeightFunction& w_b, const InitialCondition& init,
                                const IntegratorConfig& cfg = {}, const QuadratureResolution& res = {},
                                unsigned threads = 0);

/// <R^2> for R = \int w(t) f_phi(t) dt.
VarianceReport integrated_variance(const DriveSchedule& schedule, const QuadratureSchedule& quad,
                                   const WeightFunction& w, const InitialCondition& init,
                                   const IntegratorConfig& cfg = {}, const QuadratureResolution& res = {},
                                   unsigned threads = 0);

}  // namespace squeeze
