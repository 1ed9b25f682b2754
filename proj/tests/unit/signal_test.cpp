#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "squeeze/error.hpp"
#include "squeeze/signal.hpp"

using namespace squeeze;

namespace {

// 2 \int_0^T (T - tau) a e^{-b tau} d tau
double exp_window(double a, double b, double t) { return 2 * a * (t / b - (1 - std::exp(-b * t)) / (b * b)); }

// steady box-window variance at zero detuning, theta = 0
double steady_box(double kappa, double e, double phi, double t) {
  const double kp = kappa + e, km = kappa - e;
  const double c = std::cos(phi), s = std::sin(phi);
  return 0.25 * t + exp_window(-kappa * e / (4 * kp) * c * c, kp / 2, t) +
         exp_window(kappa * e / (4 * km) * s * s, km / 2, t);
}

}  // namespace

TEST(WeightFunction, Box) {
  const auto w = WeightFunction::box(0.0, 2.0, 3.0);
  EXPECT_EQ(w(1.0), 3.0);
  EXPECT_EQ(w(2.5), 0.0);
  EXPECT_THROW(WeightFunction::box(1.0, 1.0), ArgumentError);
  WeightFunction bad{TimeFunction::tabulated({0.0, 1.0}, {1.0, 1.0}), {0.0, 2.0}};
  EXPECT_THROW(bad.validate(), ArgumentError);
}

TEST(IntegratedVariance, VacuumIsQuarterT) {
  const auto s = DriveSchedule::constant(0.0, 0.0, 1.0);
  const auto r = integrated_variance(s, QuadratureSchedule::constant(0.7), WeightFunction::box(0.0, 10.0),
                                     InitialCondition{});
  EXPECT_NEAR(r.total, 2.5, 1e-12);
  EXPECT_NEAR(r.delta, 2.5, 1e-12);
  EXPECT_NEAR(r.smooth, 0.0, 1e-12);
  ASSERT_TRUE(r.asymptotic_rate.has_value());
  EXPECT_NEAR(*r.asymptotic_rate, 0.25, 1e-12);
}

TEST(IntegratedVariance, SteadyBoxMatchesClosedForm) {
  const auto s = DriveSchedule::constant(0.0, 0.5, 1.0);
  for (double phi : {0.0, 0.6, std::numbers::pi / 2}) {
    const auto r = integrated_variance(s, QuadratureSchedule::constant(phi), WeightFunction::box(0.0, 5.0),
                                       InitialCondition{});
    const double expect = steady_box(1.0, 0.5, phi, 5.0);
    EXPECT_NEAR(r.total, expect, 1e-6 * std::abs(expect)) << phi;
  }
}

TEST(IntegratedVariance, SqueezedRateIsOneThirtySixth) {
  const auto s = DriveSchedule::constant(0.0, 0.5, 1.0);
  const auto r = integrated_variance(s, QuadratureSchedule::constant(0.0), WeightFunction::box(0.0, 2.0),
                                     InitialCondition{});
  ASSERT_TRUE(r.asymptotic_rate.has_value());
  EXPECT_NEAR(*r.asymptotic_rate, 1.0 / 36, 1e-12);
  const auto a = integrated_variance(s, QuadratureSchedule::constant(std::numbers::pi / 2),
                                     WeightFunction::box(0.0, 2.0), InitialCondition{});
  // relaxed start leaves a relative error of order e^{-20}
  EXPECT_NEAR(*a.asymptotic_rate, 2.25, 1e-8);
}

TEST(IntegratedVariance, ScalesQuadraticallyWithWeight) {
  const auto s = make_phase_jump(0.5, std::numbers::pi / 2, 1.0);
  const auto q = QuadratureSchedule::constant(0.0);
  const auto one = integrated_variance(s, q, WeightFunction::box(-0.5, 1.5), InitialCondition{});
  const auto three = integrated_variance(s, q, WeightFunction::box(-0.5, 1.5, 3.0), InitialCondition{});
  EXPECT_NEAR(three.total, 9 * one.total, 1e-10);
  EXPECT_FALSE(one.asymptotic_rate.has_value());
}

TEST(CrossCovariance, TouchingWindowsShareNoDelta) {
  const auto s = DriveSchedule::constant(0.0, 0.0, 1.0);
  const auto r = cross_covariance(s, QuadratureSchedule::constant(0.0), WeightFunction::box(0.0, 1.0),
                                  WeightFunction::box(1.0, 2.0), InitialCondition{});
  EXPECT_EQ(r.delta, 0.0);
  EXPECT_EQ(r.total, 0.0);
}

TEST(CrossCovariance, AdditiveOverAdjacentWindows) {
  const auto s = make_phase_jump(0.5, std::numbers::pi / 2, 1.0);
  const auto q = QuadratureSchedule{TimeFunction::ramp(0.0, 0.0, 2.0, 1.0)};
  const auto a = WeightFunction::box(0.0, 1.0);
  const auto b = WeightFunction::box(1.0, 2.0);
  const InitialCondition init;
  const double vab = integrated_variance(s, q, WeightFunction::box(0.0, 2.0), init).total;
  const double va = integrated_variance(s, q, a, init).total;
  const double vb = integrated_variance(s, q, b, init).total;
  const double cab = cross_covariance(s, q, a, b, init).total;
  EXPECT_NEAR(vab, va + vb + 2 * cab, 1e-8);
  EXPECT_NEAR(cross_covariance(s, q, b, a, init).total, cab, 1e-10);
}

TEST(IntegratedVariance, NonnegativeForAnyWeight) {
  const auto s = make_phase_jump(0.8, 2.0, 1.0);
  for (double slope : {-3.0, 0.0, 2.0}) {
    const WeightFunction w{TimeFunction::ramp(0.0, 1.0, 1.0, 1.0 + slope), {-1.0, 3.0}};
    for (double phi : {0.0, 0.8, 2.0}) {
      QuadratureResolution res;
      res.rel_tol = 1e-5;
      const auto r = integrated_variance(s, QuadratureSchedule::constant(phi), w, InitialCondition{}, {}, res);
      EXPECT_GE(r.total, 0.0);
    }
  }
}

TEST(IntegratedVariance, CoarseStepFailsAccuracyCheck) {
  const auto s = DriveSchedule::constant(0.0, 0.9, 1.0);
  QuadratureResolution res;
  res.step = 2.0;
  res.rel_tol = 1e-10;
  EXPECT_THROW(integrated_variance(s, QuadratureSchedule::constant(0.0), WeightFunction::box(0.0, 8.0),
                                   InitialCondition{}, {}, res),
               AccuracyError);
}

TEST(IntegratedVariance, RejectsSupportOutsideDomain) {
  const auto s = DriveSchedule(TimeFunction::tabulated({0.0, 5.0}, {0.0, 0.0}), TimeFunction::constant(0.5),
                               TimeFunction::constant(0.0), 1.0, 1.0);
  EXPECT_THROW(integrated_variance(s, QuadratureSchedule::constant(0.0), WeightFunction::box(1.0, 6.0),
                                   InitialCondition{Vacuum{}, 0.0}),
               DomainError);
}
