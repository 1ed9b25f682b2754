#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "squeeze/error.hpp"
#include "squeeze/time_function.hpp"

using squeeze::Interval;
using squeeze::TimeFunction;

TEST(TimeFunction, StepIsRightContinuous) {
  const auto f = TimeFunction::step(1.0, 3.0, 2.0);
  EXPECT_EQ(f(1.999), 1.0);
  EXPECT_EQ(f(2.0), 3.0);
  EXPECT_EQ(f(-1e9), 1.0);
  ASSERT_EQ(f.breakpoints().size(), 1u);
  EXPECT_EQ(f.breakpoints()[0], 2.0);
  EXPECT_FALSE(f.is_constant());
}

TEST(TimeFunction, RampInterpolatesAndClamps) {
  const auto f = TimeFunction::ramp(0.0, 1.0, 2.0, 5.0);
  EXPECT_DOUBLE_EQ(f(-3.0), 1.0);
  EXPECT_DOUBLE_EQ(f(1.0), 3.0);
  EXPECT_DOUBLE_EQ(f(7.0), 5.0);
  EXPECT_DOUBLE_EQ(f.sup_abs(-10, 10), 5.0);
}

TEST(TimeFunction, TabulatedHasFiniteDomain) {
  const auto f = TimeFunction::tabulated({0.0, 1.0, 3.0}, {0.0, 2.0, -2.0});
  EXPECT_DOUBLE_EQ(f(0.5), 1.0);
  EXPECT_DOUBLE_EQ(f(2.0), 0.0);
  EXPECT_THROW(f(3.5), squeeze::DomainError);
  EXPECT_DOUBLE_EQ(f.knot_minimum(), -2.0);
}

TEST(TimeFunction, HermiteReproducesCubics) {
  auto p = [](double t) { return 1.0 - 2.0 * t + 0.5 * t * t * t; };
  auto dp = [](double t) { return -2.0 + 1.5 * t * t; };
  std::vector<double> t{0.0, 0.7, 1.5, 2.0}, v, s;
  for (double x : t) {
    v.push_back(p(x));
    s.push_back(dp(x));
  }
  const auto f = TimeFunction::hermite(t, v, s, s);
  for (double x = 0.0; x <= 2.0; x += 0.05) EXPECT_NEAR(f(x), p(x), 1e-13);
  EXPECT_TRUE(f.breakpoints().empty());
}

TEST(TimeFunction, HermiteReportsSlopeJumpsAsBreakpoints) {
  const auto f = TimeFunction::hermite({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}, {1.0, 1.0, -1.0}, {1.0, -1.0, -1.0});
  ASSERT_EQ(f.breakpoints().size(), 1u);
  EXPECT_EQ(f.breakpoints()[0], 1.0);
}

TEST(TimeFunction, CallableKeepsDomainAndBreakpoints) {
  const auto f = TimeFunction::from_callable([](double t) { return std::sin(t); }, {0.0, 4.0}, {1.0, 2.0});
  EXPECT_DOUBLE_EQ(f(1.0), std::sin(1.0));
  EXPECT_EQ(f.breakpoints().size(), 2u);
  EXPECT_THROW(f(-0.1), squeeze::DomainError);
  EXPECT_NEAR(f.sup_abs(0.0, 4.0), 1.0, 1e-5);
}

TEST(TimeFunction, PiecewiseValidatesOrdering) {
  EXPECT_THROW(TimeFunction::piecewise({{1.0, 0.0, 0.0}, {0.5, 1.0, 0.0}}), squeeze::ArgumentError);
  const auto f = TimeFunction::piecewise({{-std::numeric_limits<double>::infinity(), 2.0, 0.0}, {1.0, 2.0, 1.0}}, 3.0);
  EXPECT_DOUBLE_EQ(f(2.5), 3.5);
  EXPECT_EQ(f.domain().hi, 3.0);
}

TEST(Interval, Intersect) {
  const Interval i = squeeze::intersect({0.0, 2.0}, {1.0, 5.0});
  EXPECT_EQ(i.lo, 1.0);
  EXPECT_EQ(i.hi, 2.0);
  EXPECT_TRUE(Interval::everywhere().contains(1e300));
}
