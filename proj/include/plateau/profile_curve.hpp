#pragma once

// Base curves of cylindrical translating lambda-solitons with density vector
// e3 and rulings along e2. The surface is Psi(s, t) = (x1(s), t, x3(s)) and
// the curve satisfies kappa(s) = x1'(s) + lambda with s the arc length.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "plateau/error.hpp"

namespace plateau {

enum class SolitonCase { GreaterThanOne, EqualOne, LessThanOne };

constexpr std::string_view to_string(SolitonCase c) noexcept {
  switch (c) {
    case SolitonCase::GreaterThanOne: return "GreaterThanOne";
    case SolitonCase::EqualOne: return "EqualOne";
    case SolitonCase::LessThanOne: return "LessThanOne";
  }
  return "Unknown";
}

struct CurvePoint {
  double x1;
  double x3;
};

struct CurveSample {
  double s;
  double x1;
  double x3;
  double dx1;
  double dx3;
  double kappa;
  double weight;
};

/// Lambda values within this distance of 1 (but not equal to it) are
/// rejected: the frequency vanishes and period and graph bound blow up.
inline constexpr double kNearOneExclusion = 1e-9;

class ProfileCurve {
 public:
  static ProfileCurve make(double lambda) {
    if (!std::isfinite(lambda) || lambda <= 0.0) {
      throw Error(ErrorCode::UnsupportedLambda,
                  "lambda must be finite and positive (lambda = 0 is the grim reaper)");
    }
    if (lambda == 1.0) return ProfileCurve(lambda, SolitonCase::EqualOne, 0.0);
    if (std::abs(lambda - 1.0) <= kNearOneExclusion) {
      throw Error(ErrorCode::UnsupportedLambda,
                  "lambda within 1e-9 of 1 but not equal to 1 is ill-conditioned");
    }
    const double omega = std::sqrt(std::abs(lambda * lambda - 1.0));
    return ProfileCurve(lambda, lambda > 1.0 ? SolitonCase::GreaterThanOne : SolitonCase::LessThanOne,
                        omega);
  }

  double lambda() const noexcept { return lambda_; }
  SolitonCase kind() const noexcept { return case_; }
  /// sqrt(|lambda^2 - 1|); zero for lambda = 1.
  double omega() const noexcept { return omega_; }

  CurvePoint position(double s) const { return {x1(s), x3(s)}; }

  double x1(double s) const {
    switch (case_) {
      case SolitonCase::GreaterThanOne: {
        // 2*atan(k*tan(w s / 2)) unwrapped onto the branch containing w s / 2,
        // which keeps x1 smooth across w s = (2j + 1) pi.
        const double half_phase = 0.5 * omega_ * s;
        const double turns = std::round(half_phase / std::numbers::pi);
        const double reduced = half_phase - turns * std::numbers::pi;
        const double angle = std::atan2(steepness_ * std::sin(reduced), std::cos(reduced));
        return -lambda_ * s + 2.0 * (angle + turns * std::numbers::pi);
      }
      case SolitonCase::EqualOne:
        return -s + 2.0 * std::atan(s);
      case SolitonCase::LessThanOne:
        return -lambda_ * s + 2.0 * std::atan(steepness_ * std::tanh(0.5 * omega_ * s));
    }
    return 0.0;
  }

  /// x3(s) = log of the weight, evaluated without overflow for large |s|.
  double x3(double s) const {
    switch (case_) {
      case SolitonCase::GreaterThanOne:
        return std::log(lambda_ - std::cos(omega_ * s));
      case SolitonCase::EqualOne:
        return std::log1p(s * s);
      case SolitonCase::LessThanOne: {
        const double x = omega_ * std::abs(s);
        const double decay = std::exp(-x);
        return x + std::log(0.5 * (1.0 + decay * decay) - lambda_ * decay);
      }
    }
    return 0.0;
  }

  double dx1(double s) const { return curvature(s) - lambda_; }

  double dx3(double s) const {
    switch (case_) {
      case SolitonCase::GreaterThanOne:
        return omega_ * std::sin(omega_ * s) / (lambda_ - std::cos(omega_ * s));
      case SolitonCase::EqualOne:
        return 2.0 * s / (1.0 + s * s);
      case SolitonCase::LessThanOne:
        return omega_ * std::tanh(omega_ * s) / (1.0 - lambda_ / std::cosh(omega_ * s));
    }
    return 0.0;
  }

  /// Curvature of the base curve, always positive.
  double curvature(double s) const {
    switch (case_) {
      case SolitonCase::GreaterThanOne:
        return (lambda_ * lambda_ - 1.0) / (lambda_ - std::cos(omega_ * s));
      case SolitonCase::EqualOne:
        return 2.0 / (1.0 + s * s);
      case SolitonCase::LessThanOne:
        return (1.0 - lambda_ * lambda_) / (std::cosh(omega_ * s) - lambda_);
    }
    return 0.0;
  }

  /// Density factor e^{x3(s)} of the weighted area element.
  double weight(double s) const {
    switch (case_) {
      case SolitonCase::GreaterThanOne:
        return lambda_ - std::cos(omega_ * s);
      case SolitonCase::EqualOne:
        return 1.0 + s * s;
      case SolitonCase::LessThanOne:
        return std::cosh(omega_ * s) - lambda_;
    }
    return 0.0;
  }

  CurveSample sample(double s) const {
    return {s, x1(s), x3(s), dx1(s), dx3(s), curvature(s), weight(s)};
  }

  /// Parameter period T = 2 pi / omega (lambda > 1 only).
  double period() const {
    require(SolitonCase::GreaterThanOne, "period");
    return 2.0 * std::numbers::pi / omega_;
  }

  /// s0 = T / 2, half-width of the symmetric fundamental piece.
  double half_period() const { return 0.5 * period(); }

  /// s1 = acosh(1 / lambda) / omega: the curve is a graph over the x1-axis
  /// exactly on (-s1, s1) (lambda < 1 only).
  double graph_bound() const {
    require(SolitonCase::LessThanOne, "graph_bound");
    return std::acosh(1.0 / lambda_) / omega_;
  }

  /// kappa(s) - (x1'(s) + lambda) with x1' from a central difference of the
  /// closed-form position. Vanishes up to O(step^2) plus rounding.
  double soliton_residual(double s, double step = 1e-5) const {
    const double dx1_numeric = (x1(s + step) - x1(s - step)) / (2.0 * step);
    return curvature(s) - (dx1_numeric + lambda_);
  }

 private:
  ProfileCurve(double lambda, SolitonCase c, double omega)
      : lambda_(lambda), case_(c), omega_(omega) {
    if (c == SolitonCase::GreaterThanOne) steepness_ = std::sqrt((lambda + 1.0) / (lambda - 1.0));
    if (c == SolitonCase::LessThanOne) steepness_ = std::sqrt((1.0 + lambda) / (1.0 - lambda));
  }

  void require(SolitonCase wanted, const char* what) const {
    if (case_ != wanted) {
      throw Error(ErrorCode::WrongCase, std::string(what) + " is only defined for lambda " +
                                            (wanted == SolitonCase::GreaterThanOne ? "> 1" : "< 1"));
    }
  }

  double lambda_;
  SolitonCase case_;
  double omega_;
  double steepness_ = 1.0;
};

inline ProfileCurve make_curve(double lambda) { return ProfileCurve::make(lambda); }

}  // namespace plateau
