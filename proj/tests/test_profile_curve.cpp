#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numbers>
#include <random>

#include "plateau/numerics.hpp"
#include "plateau/profile_curve.hpp"

using namespace plateau;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected plateau::Error";
  return ErrorCode::InvalidArgument;
}

const double kLambdas[] = {0.25, 0.5, 0.75, 1.0, 1.5, 3.0};

}  // namespace

TEST(ProfileCurve, Cases) {
  EXPECT_EQ(make_curve(0.5).kind(), SolitonCase::LessThanOne);
  EXPECT_EQ(make_curve(1.0).kind(), SolitonCase::EqualOne);
  EXPECT_EQ(make_curve(2.0).kind(), SolitonCase::GreaterThanOne);
}

TEST(ProfileCurve, Omega) {
  EXPECT_NEAR(make_curve(2.0).omega(), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(make_curve(0.5).omega(), std::sqrt(0.75), 1e-15);
  EXPECT_EQ(make_curve(1.0).omega(), 0.0);
}

TEST(ProfileCurve, RejectsBadLambda) {
  EXPECT_EQ(code_of([] { make_curve(0.0); }), ErrorCode::UnsupportedLambda);
  EXPECT_EQ(code_of([] { make_curve(-1.0); }), ErrorCode::UnsupportedLambda);
  EXPECT_EQ(code_of([] { make_curve(std::nan("")); }), ErrorCode::UnsupportedLambda);
  EXPECT_EQ(code_of([] { make_curve(1.0 + 1e-12); }), ErrorCode::UnsupportedLambda);
  EXPECT_NO_THROW(make_curve(1.0 + 1e-6));
}

TEST(ProfileCurve, HorizontalTangentAtLowestPoint) {
  for (double lambda : kLambdas) {
    const auto c = make_curve(lambda);
    const auto p = c.sample(0.0);
    const double w0 = lambda == 1.0 ? 1.0 : std::abs(lambda - 1.0);
    EXPECT_NEAR(p.x1, 0.0, 1e-15);
    EXPECT_NEAR(p.x3, std::log(w0), 1e-15);
    EXPECT_NEAR(p.dx1, 1.0, 1e-15);
    EXPECT_NEAR(p.dx3, 0.0, 1e-15);
    EXPECT_NEAR(p.kappa, 1.0 + lambda, 1e-15);
    EXPECT_NEAR(p.weight, w0, 1e-15);
  }
}

TEST(ProfileCurve, LambdaOneRowAtOrigin) {
  const auto p = make_curve(1.0).sample(0.0);
  EXPECT_EQ(p.kappa, 2.0);
  EXPECT_EQ(p.weight, 1.0);
}

TEST(ProfileCurve, ArcLengthAndSolitonResiduals) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (double lambda : kLambdas) {
    const auto c = make_curve(lambda);
    for (int i = 0; i < 1000; ++i) {
      const double s = dist(rng);
      EXPECT_NEAR(c.dx1(s) * c.dx1(s) + c.dx3(s) * c.dx3(s), 1.0, 1e-9);
      EXPECT_NEAR(c.soliton_residual(s), 0.0, 1e-6);
    }
  }
}

// Oracle: x1 and x3 recovered by integrating their derivatives from 0.
TEST(ProfileCurve, PositionMatchesIntegratedTangent) {
  for (double lambda : kLambdas) {
    const auto c = make_curve(lambda);
    for (double s : {-7.3, -2.0, 0.4, 3.1, 9.5}) {
      const double lo = std::min(0.0, s), hi = std::max(0.0, s), sign = s < 0.0 ? -1.0 : 1.0;
      const double x1 = sign * integrate([&](double u) { return c.curvature(u) - lambda; }, lo, hi).value;
      const double x3 = sign * integrate([&](double u) { return c.dx3(u); }, lo, hi).value;
      EXPECT_NEAR(c.x1(s), x1, 1e-9) << lambda << " " << s;
      EXPECT_NEAR(c.x3(s) - c.x3(0.0), x3, 1e-9) << lambda << " " << s;
    }
  }
}

TEST(ProfileCurve, TangentAngleDerivativeIsCurvature) {
  for (double lambda : kLambdas) {
    const auto c = make_curve(lambda);
    for (double s : {-3.0, 0.5, 2.2}) {
      const double h = 1e-5;
      auto angle = [&](double u) { return std::atan2(c.dx3(u), c.dx1(u)); };
      double d = angle(s + h) - angle(s - h);
      if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
      if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
      EXPECT_NEAR(d / (2.0 * h), c.curvature(s), 1e-6);
    }
  }
}

TEST(ProfileCurve, WeightIsExpOfHeight) {
  for (double lambda : kLambdas) {
    const auto c = make_curve(lambda);
    for (double s : {-9.0, -1.0, 0.3, 4.0, 9.9}) {
      EXPECT_NEAR(c.weight(s), std::exp(c.x3(s)), 1e-12 * c.weight(s));
    }
  }
}

TEST(ProfileCurve, LargeArgumentsStayFinite) {
  const auto c = make_curve(0.25);
  EXPECT_TRUE(std::isfinite(c.x3(1e4)));
  EXPECT_NEAR(c.x3(1e4), c.omega() * 1e4 - std::log(2.0), 1e-6);
}

TEST(ProfileCurve, Symmetry) {
  for (double lambda : kLambdas) {
    const auto c = make_curve(lambda);
    for (double s : {0.3, 1.7, 5.5}) {
      EXPECT_NEAR(c.x1(-s), -c.x1(s), 1e-12);
      EXPECT_NEAR(c.x3(-s), c.x3(s), 1e-12);
    }
  }
}

TEST(ProfileCurve, PeriodicityAboveOne) {
  for (double lambda : {1.5, 3.0}) {
    const auto c = make_curve(lambda);
    const double T = c.period();
    EXPECT_NEAR(T, 2.0 * std::numbers::pi / c.omega(), 1e-15);
    EXPECT_NEAR(c.half_period(), T / 2.0, 1e-15);
    for (double s : {-2.0, 0.1, 1.9}) {
      EXPECT_NEAR(c.x1(s + T), c.x1(s) + 2.0 * std::numbers::pi - lambda * T, 1e-12);
      EXPECT_NEAR(c.x3(s + T), c.x3(s), 1e-12);
      EXPECT_NEAR(c.curvature(s + T), c.curvature(s), 1e-12);
    }
  }
}

TEST(ProfileCurve, ContinuousAcrossBranchPoints) {
  for (double lambda : {1.5, 3.0}) {
    const auto c = make_curve(lambda);
    for (int k = -5; k < 5; ++k) {
      const double s = (2 * k + 1) * std::numbers::pi / c.omega();
      const double d = 1e-12 * std::max(1.0, std::abs(s));
      EXPECT_NEAR(c.x1(s + d), c.x1(s - d), 1e-9);
    }
  }
}

TEST(ProfileCurve, GraphBound) {
  EXPECT_NEAR(make_curve(0.25).graph_bound(), 2.1311, 5e-4);
  EXPECT_NEAR(make_curve(0.5).graph_bound(), 1.5206, 5e-4);
  EXPECT_NEAR(make_curve(0.75).graph_bound(), 1.2024, 5e-4);
  // x1 turns back exactly at s1.
  const auto c = make_curve(0.5);
  EXPECT_NEAR(c.dx1(c.graph_bound()), 0.0, 1e-12);
}

TEST(ProfileCurve, WrongCaseAccessors) {
  EXPECT_EQ(code_of([] { make_curve(0.5).period(); }), ErrorCode::WrongCase);
  EXPECT_EQ(code_of([] { make_curve(1.0).half_period(); }), ErrorCode::WrongCase);
  EXPECT_EQ(code_of([] { make_curve(2.0).graph_bound(); }), ErrorCode::WrongCase);
  EXPECT_EQ(code_of([] { make_curve(1.0).graph_bound(); }), ErrorCode::WrongCase);
}
