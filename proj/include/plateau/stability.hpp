#pragma once

// Second variation of the weighted area on compact cylindrical pieces,
// evaluated on separated test functions u(s, t) = f(s) g(t).
//
// For a profile piece Psi([a, b] x [0, L]) with g(t) = sin(k pi t / L) the
// form reduces to
//
//   Q = (L/2) * integral_a^b (f'^2 - (kappa^2 - k^2 pi^2 / L^2) f^2) e^{x3} ds
//
// with k = 2 for volume-preserving variations and k = 1 for strong
// stability. Direct quadrature of this integral is the reference value;
// closed forms are checked against it.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "plateau/error.hpp"
#include "plateau/numerics.hpp"
#include "plateau/profile_curve.hpp"

namespace plateau {

enum class StabilityMode { VolumePreserving, Strong };

constexpr std::string_view to_string(StabilityMode m) noexcept {
  return m == StabilityMode::VolumePreserving ? "VolumePreserving" : "Strong";
}

/// k^2 in g'' = -(k pi / L)^2 g for the axial profile of each mode.
constexpr double axial_factor(StabilityMode m) noexcept {
  return m == StabilityMode::VolumePreserving ? 4.0 : 1.0;
}

/// Axial lengths below this are rejected (1/L^2 terms overflow).
inline constexpr double kMinLength = 1e-6;

inline void check_length(double length) {
  if (!std::isfinite(length) || length < kMinLength) {
    throw Error(ErrorCode::InvalidArgument, "axial length L must be finite and >= 1e-6");
  }
}

class PieceSpec {
 public:
  PieceSpec(ProfileCurve curve, double a, double b, double length)
      : curve_(curve), a_(a), b_(b), length_(length) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
      throw Error(ErrorCode::InvalidArgument, "piece interval needs finite a < b");
    }
    check_length(length);
  }

  /// Fundamental piece [-s0 + sigma, s0 + sigma] of a lambda > 1 curve.
  static PieceSpec fundamental(const ProfileCurve& curve, double sigma, double length) {
    const double s0 = curve.half_period();
    if (!(sigma >= 0.0 && sigma <= s0)) {
      throw Error(ErrorCode::OutOfRange, "sigma must lie in [0, s0]");
    }
    return PieceSpec(curve, -s0 + sigma, s0 + sigma, length);
  }

  /// Symmetric piece [-s0, s0].
  static PieceSpec symmetric(const ProfileCurve& curve, double s0, double length) {
    if (!(s0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "s0 must be positive");
    return PieceSpec(curve, -s0, s0, length);
  }

  const ProfileCurve& curve() const noexcept { return curve_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return length_; }

  PieceSpec with_length(double length) const { return PieceSpec(curve_, a_, b_, length); }

 private:
  ProfileCurve curve_;
  double a_;
  double b_;
  double length_;
};

/// Full circular cylinder of radius r and axial length L, rulings along the
/// density vector.
class CylinderSpec {
 public:
  CylinderSpec(double radius, double length) : radius_(radius), length_(length) {
    if (!std::isfinite(radius) || !(radius > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "cylinder radius must be positive");
    }
    check_length(length);
  }

  double radius() const noexcept { return radius_; }
  double length() const noexcept { return length_; }

 private:
  double radius_;
  double length_;
};

// Spatial test profiles. The three built-in families have the form
// f = h(s) e^{-x3(s)/2}, which cancels the weight in the reduced integrals.
struct Gt1Fundamental {
  double sigma;
};
struct Eq1Quadratic {
  double s0;
};
struct Lt1Cosine {
  double s0;
};
struct CustomProfile {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

using TestProfile = std::variant<Gt1Fundamental, Eq1Quadratic, Lt1Cosine, CustomProfile>;

inline std::string describe(const TestProfile& profile) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Gt1Fundamental>) {
          return "sin(pi s/(2 s0) + pi/2 (1 - sigma/s0)) e^{-x3/2}, sigma=" + std::to_string(p.sigma);
        } else if constexpr (std::is_same_v<T, Eq1Quadratic>) {
          return "(s^2 - s0^2) e^{-x3/2}, s0=" + std::to_string(p.s0);
        } else if constexpr (std::is_same_v<T, Lt1Cosine>) {
          return "cos(pi s/(2 s0)) e^{-x3/2}, s0=" + std::to_string(p.s0);
        } else {
          return "custom";
        }
      },
      profile);
}

/// g(t) = sin(harmonic * pi * t / L) * e^{-damping * t}.
struct AxialProfile {
  double harmonic;
  double damping;
  double length;

  double value(double t) const {
    return std::sin(harmonic * std::numbers::pi * t / length) * std::exp(-damping * t);
  }
  double derivative(double t) const {
    const double k = harmonic * std::numbers::pi / length;
    return (k * std::cos(k * t) - damping * std::sin(k * t)) * std::exp(-damping * t);
  }
};

/// Axial factor for profile pieces: sin(2 pi t / L) or sin(pi t / L).
inline AxialProfile piece_axial_profile(StabilityMode mode, double length) {
  return {mode == StabilityMode::VolumePreserving ? 2.0 : 1.0, 0.0, length};
}

/// Axial factor for cylinders. The e^{-t} damping makes the weighted mean
/// integral of sin(2 pi t / L) e^{-t} against e^t vanish.
inline AxialProfile cylinder_axial_profile(StabilityMode mode, double length) {
  return {mode == StabilityMode::VolumePreserving ? 2.0 : 1.0, 1.0, length};
}

struct QFormBreakdown {
  double grad_term = 0.0;       // integral f'^2 e^{x3}
  double curvature_term = 0.0;  // integral kappa^2 f^2 e^{x3}
  double mass_term = 0.0;       // integral f^2 e^{x3}
  double total = 0.0;           // assembled Q
  double error_estimate = 0.0;  // bound on |total| error from the three quadratures
};

inline double assemble_q(double grad, double curvature, double mass, double length,
                         StabilityMode mode) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 0.5 * length * (grad - curvature + axial_factor(mode) * pi2 / (length * length) * mass);
}

namespace detail {

struct Amplitude {
  double h;
  double dh;
};

inline QFormBreakdown assemble(const QuadratureResult& grad, const QuadratureResult& curv,
                               const QuadratureResult& mass, double length, StabilityMode mode) {
  QFormBreakdown out{grad.value, curv.value, mass.value, 0.0, 0.0};
  out.total = assemble_q(out.grad_term, out.curvature_term, out.mass_term, length, mode);
  out.error_estimate = assemble_q(grad.error_estimate, -curv.error_estimate, mass.error_estimate,
                                  length, mode);
  return out;
}

inline void check_endpoint(double value, double s) {
  if (!(std::abs(value) <= 1e-9)) {
    throw Error(ErrorCode::EndpointViolation,
                "test profile does not vanish at s = " + std::to_string(s));
  }
}

template <typename Amp>
QFormBreakdown integrate_amplitude(const PieceSpec& piece, Amp amp, StabilityMode mode,
                                   const QuadratureConfig& cfg) {
  const ProfileCurve& curve = piece.curve();
  for (double s : {piece.a(), piece.b()}) {
    check_endpoint(amp(s).h * std::exp(-0.5 * curve.x3(s)), s);
  }
  auto grad = integrate(
      [&](double s) {
        const Amplitude v = amp(s);
        const double d = v.dh - 0.5 * v.h * curve.dx3(s);
        return d * d;
      },
      piece.a(), piece.b(), cfg);
  auto curv = integrate(
      [&](double s) {
        const double k = curve.curvature(s);
        const double h = amp(s).h;
        return k * k * h * h;
      },
      piece.a(), piece.b(), cfg);
  auto mass = integrate(
      [&](double s) {
        const double h = amp(s).h;
        return h * h;
      },
      piece.a(), piece.b(), cfg);
  return detail::assemble(grad, curv, mass, piece.length(), mode);
}

inline QFormBreakdown integrate_custom(const PieceSpec& piece, const CustomProfile& p,
                                       StabilityMode mode, const QuadratureConfig& cfg) {
  if (!p.f || !p.df) throw Error(ErrorCode::InvalidArgument, "custom profile needs f and f'");
  const ProfileCurve& curve = piece.curve();
  check_endpoint(p.f(piece.a()), piece.a());
  check_endpoint(p.f(piece.b()), piece.b());
  auto grad = integrate(
      [&](double s) {
        const double d = p.df(s);
        return d * d * curve.weight(s);
      },
      piece.a(), piece.b(), cfg);
  auto curv = integrate(
      [&](double s) {
        const double k = curve.curvature(s);
        const double f = p.f(s);
        return k * k * f * f * curve.weight(s);
      },
      piece.a(), piece.b(), cfg);
  auto mass = integrate(
      [&](double s) {
        const double f = p.f(s);
        return f * f * curve.weight(s);
      },
      piece.a(), piece.b(), cfg);
  return detail::assemble(grad, curv, mass, piece.length(), mode);
}

}  // namespace detail

/// Q_phi(u) for u = f(s) g(t) on a profile piece, by quadrature of the three
/// component integrals.
inline QFormBreakdown qform_profile(const PieceSpec& piece, const TestProfile& profile,
                                    StabilityMode mode, const QuadratureConfig& cfg = {}) {
  using std::numbers::pi;
  return std::visit(
      [&](const auto& p) -> QFormBreakdown {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Gt1Fundamental>) {
          const double s0 = piece.curve().half_period();
          const double freq = pi / (2.0 * s0);
          const double shift = 0.5 * pi * (1.0 - p.sigma / s0);
          return detail::integrate_amplitude(
              piece,
              [=](double s) {
                return detail::Amplitude{std::sin(freq * s + shift), freq * std::cos(freq * s + shift)};
              },
              mode, cfg);
        } else if constexpr (std::is_same_v<T, Eq1Quadratic>) {
          const double s0sq = p.s0 * p.s0;
          return detail::integrate_amplitude(
              piece, [=](double s) { return detail::Amplitude{s * s - s0sq, 2.0 * s}; }, mode, cfg);
        } else if constexpr (std::is_same_v<T, Lt1Cosine>) {
          const double freq = pi / (2.0 * p.s0);
          return detail::integrate_amplitude(
              piece,
              [=](double s) {
                return detail::Amplitude{std::cos(freq * s), -freq * std::sin(freq * s)};
              },
              mode, cfg);
        } else {
          return detail::integrate_custom(piece, p, mode, cfg);
        }
      },
      profile);
}

/// I(u) = 2 Q / L for volume-preserving variations.
inline double reduced_I(const PieceSpec& piece, const TestProfile& profile,
                        const QuadratureConfig& cfg = {}) {
  const QFormBreakdown q = qform_profile(piece, profile, StabilityMode::VolumePreserving, cfg);
  return 2.0 * q.total / piece.length();
}

/// Integral of g over [0, L] (the t-factor of the weighted mean of u).
inline double zero_weighted_mean_residual(const PieceSpec& piece, const TestProfile& /*profile*/,
                                          StabilityMode mode, const QuadratureConfig& cfg = {}) {
  const AxialProfile g = piece_axial_profile(mode, piece.length());
  return integrate([&](double t) { return g.value(t); }, 0.0, piece.length(), cfg).value;
}

/// Integral of g(t) e^t over [0, L]; cylinders carry the weight along the axis.
inline double zero_weighted_mean_residual(const CylinderSpec& cyl, StabilityMode mode,
                                          const QuadratureConfig& cfg = {}) {
  const AxialProfile g = cylinder_axial_profile(mode, cyl.length());
  const double k = g.harmonic * std::numbers::pi / cyl.length();
  const double growth = 1.0 - g.damping;
  return integrate([&](double t) { return std::sin(k * t) * std::exp(growth * t); }, 0.0,
                   cyl.length(), cfg)
      .value;
}

enum class CriticalMethod { ClosedForm, RootFound };

constexpr std::string_view to_string(CriticalMethod m) noexcept {
  return m == CriticalMethod::ClosedForm ? "ClosedForm" : "RootFound";
}

struct CriticalLength {
  double value;
  CriticalMethod method;
  StabilityMode mode;
};

enum class LengthVerdict { BelowCritical, Marginal, Unstable };

/// L > L0 is certified unstable; L == L0 exactly is marginal.
inline LengthVerdict verdict(const CriticalLength& critical, double length) {
  if (length > critical.value) return LengthVerdict::Unstable;
  if (length == critical.value) return LengthVerdict::Marginal;
  return LengthVerdict::BelowCritical;
}

// ---------------------------------------------------------------------------
// lambda > 1: fundamental pieces

namespace detail {

inline double gt1_phase_factor(double lambda, double sigma) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::WrongCase, "closed form needs lambda > 1");
  }
  const double omega = std::sqrt(lambda * lambda - 1.0);
  const double s0 = std::numbers::pi / omega;
  if (!(sigma >= 0.0 && sigma <= s0)) {
    throw Error(ErrorCode::OutOfRange, "sigma must lie in [0, s0] with s0 = pi / sqrt(lambda^2 - 1)");
  }
  return lambda + std::cos(sigma * omega);
}

}  // namespace detail

/// Closed-form Q for the fundamental-piece family:
/// pi / (8 L w) * (4 k^2 pi^2 - 3 L^2 w (lambda + cos(sigma w))), w = sqrt(lambda^2 - 1).
inline double q_gt1_closed(double lambda, double sigma, double length,
                           StabilityMode mode = StabilityMode::VolumePreserving) {
  using std::numbers::pi;
  const double c = detail::gt1_phase_factor(lambda, sigma);
  check_length(length);
  const double omega = std::sqrt(lambda * lambda - 1.0);
  return pi / (8.0 * length * omega) *
         (4.0 * axial_factor(mode) * pi * pi - 3.0 * length * length * omega * c);
}

inline CriticalLength L0_gt1(double lambda, double sigma,
                             StabilityMode mode = StabilityMode::VolumePreserving) {
  using std::numbers::pi;
  const double c = detail::gt1_phase_factor(lambda, sigma);
  const double omega = std::sqrt(lambda * lambda - 1.0);
  const double k = std::sqrt(axial_factor(mode));
  return {2.0 * k * pi / std::sqrt(3.0 * c * omega), CriticalMethod::ClosedForm, mode};
}

/// Largest L0 over sigma in [0, s0], attained at sigma = s0.
inline CriticalLength L0_gt1_uniform(double lambda,
                                     StabilityMode mode = StabilityMode::VolumePreserving) {
  if (!(lambda > 1.0)) throw Error(ErrorCode::WrongCase, "uniform bound needs lambda > 1");
  return L0_gt1(lambda, std::numbers::pi / std::sqrt(lambda * lambda - 1.0), mode);
}

// ---------------------------------------------------------------------------
// lambda = 1: symmetric pieces [-s0, s0]

/// phi(s0) = -s0^3/3 - 9 s0 + (9 + 6 s0^2 - 3 s0^4) atan(s0): the large-L
/// limit of 2Q/L for the quadratic family.
inline double varphi_eq1(double s0) {
  const double s2 = s0 * s0;
  return -s0 * s2 / 3.0 - 9.0 * s0 + (9.0 + 6.0 * s2 - 3.0 * s2 * s2) * std::atan(s0);
}

/// The unique positive zero of varphi_eq1 (about 1.0213).
inline double eq1_threshold() {
  return find_root(varphi_eq1, 1.0, 1.05, RootConfig{1e-14, 200});
}

inline double q_eq1_closed(double s0, double length,
                           StabilityMode mode = StabilityMode::VolumePreserving) {
  if (!(s0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "s0 must be positive");
  check_length(length);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double s5 = std::pow(s0, 5);
  const double mass_part = axial_factor(mode) * 16.0 * pi2 * s5 / (15.0 * length * length);
  return 0.5 * length * (mass_part + varphi_eq1(s0));
}

inline CriticalLength L0_eq1(double s0, StabilityMode mode = StabilityMode::VolumePreserving) {
  if (!(s0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "s0 must be positive");
  const double phi = varphi_eq1(s0);
  if (!(phi < 0.0)) {
    throw Error(ErrorCode::BelowThreshold,
                "s0 = " + std::to_string(s0) + " is below threshold s̄₀≈1.0213");
  }
  const double k = std::sqrt(axial_factor(mode));
  return {k * 4.0 * std::numbers::pi * std::pow(s0, 2.5) / std::sqrt(-15.0 * phi),
          CriticalMethod::ClosedForm, mode};
}

// ---------------------------------------------------------------------------
// lambda < 1: symmetric pieces, numerical critical length

struct LengthScan {
  double start = 1.0;
  double stop = 200.0;
  double ratio = 1.2;
  RootConfig root{1e-6, 200};
};

/// Root in L of the reduced form for the cosine family on [-s0, s0].
///
/// The three component integrals do not depend on L, so they are computed
/// once; the scan then walks a geometric L-grid and the first sign change is
/// refined by find_root.
inline CriticalLength L0_lt1_numeric(double lambda, double s0,
                                     StabilityMode mode = StabilityMode::VolumePreserving,
                                     const QuadratureConfig& cfg = {}, const LengthScan& scan = {}) {
  const ProfileCurve curve = make_curve(lambda);
  if (curve.kind() != SolitonCase::LessThanOne) {
    throw Error(ErrorCode::WrongCase, "numeric critical length needs 0 < lambda < 1");
  }
  if (!(s0 > curve.graph_bound())) {
    throw Error(ErrorCode::GraphRegime,
                "s0 <= s1 = " + std::to_string(curve.graph_bound()) +
                    ": the piece is a graph and strongly stable");
  }
  const QFormBreakdown parts =
      qform_profile(PieceSpec::symmetric(curve, s0, 1.0), Lt1Cosine{s0}, mode, cfg);
  auto reduced = [&](double length) {
    return 2.0 * assemble_q(parts.grad_term, parts.curvature_term, parts.mass_term, length, mode) /
           length;
  };
  const std::vector<double> grid = geometric_grid(scan.start, scan.stop, scan.ratio);
  const auto bracket = scan_sign_change(reduced, grid);
  if (!bracket) {
    throw Error(ErrorCode::NotFoundInRange,
                "I(u) stays positive up to L = " + std::to_string(scan.stop));
  }
  return {find_root(reduced, bracket->first, bracket->second, scan.root), CriticalMethod::RootFound,
          mode};
}

struct TableResult {
  double lambda;
  std::vector<double> s0_rows;
  std::vector<double> length_columns;
  std::vector<std::vector<double>> cells;
  std::vector<std::vector<double>> error_estimates;
  std::vector<std::optional<std::size_t>> first_negative;
};

/// Reduced form I(u) of the cosine family for every (s0, L) pair.
inline TableResult table_I(double lambda, const std::vector<double>& s0_rows,
                           const std::vector<double>& length_columns,
                           const QuadratureConfig& cfg = {}) {
  const ProfileCurve curve = make_curve(lambda);
  TableResult table{lambda, s0_rows, length_columns, {}, {}, {}};
  for (double s0 : s0_rows) {
    std::vector<double> row;
    std::vector<double> errors;
    std::optional<std::size_t> mark;
    for (std::size_t j = 0; j < length_columns.size(); ++j) {
      const double length = length_columns[j];
      const QFormBreakdown q = qform_profile(PieceSpec::symmetric(curve, s0, length), Lt1Cosine{s0},
                                             StabilityMode::VolumePreserving, cfg);
      const double value = 2.0 * q.total / length;
      if (!mark && value < 0.0) mark = j;
      row.push_back(value);
      errors.push_back(2.0 * q.error_estimate / length);
    }
    table.cells.push_back(std::move(row));
    table.error_estimates.push_back(std::move(errors));
    table.first_negative.push_back(mark);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Circular cylinders

/// Constant-mean-curvature form for f = 1, g = sin(2 pi t / L).
inline double cyl_cmc_q(const CylinderSpec& cyl) {
  using std::numbers::pi;
  const double r = cyl.radius();
  const double L = cyl.length();
  return -pi * r * L * (1.0 / (r * r) - 4.0 * pi * pi / (L * L));
}

/// 8 pi^2 r^2 + L^2 (r^2 - 2), which decides the sign of the closed form.
inline double cylinder_sign_factor(const CylinderSpec& cyl) {
  const double r = cyl.radius();
  const double L = cyl.length();
  return 8.0 * std::numbers::pi * std::numbers::pi * r * r + L * L * (r * r - 2.0);
}

/// Closed form of the weighted form for f = 1, g = sin(2 pi t / L) e^{-t}:
/// 8 pi^3 (1 - e^{-L}) / (r L^2 (L^2 + 16 pi^2)) * (8 pi^2 r^2 + L^2 (r^2 - 2)).
inline double cyl_soliton_q_closed(const CylinderSpec& cyl) {
  using std::numbers::pi;
  const double r = cyl.radius();
  const double L = cyl.length();
  const double prefactor = 8.0 * pi * pi * pi * (-std::expm1(-L)) / (r * L * L * (L * L + 16.0 * pi * pi));
  return prefactor * cylinder_sign_factor(cyl);
}

/// Weighted form 2 pi r * integral_0^L (g'^2 - g^2 / r^2) e^t dt for f = 1 by
/// quadrature. For volume-preserving mode the sign is cross-checked against
/// the closed form.
inline double cyl_soliton_q(const CylinderSpec& cyl, const QuadratureConfig& cfg = {},
                            StabilityMode mode = StabilityMode::VolumePreserving) {
  const AxialProfile g = cylinder_axial_profile(mode, cyl.length());
  const double r = cyl.radius();
  const double k = g.harmonic * std::numbers::pi / cyl.length();
  const double growth = 1.0 - 2.0 * g.damping;
  const auto result = integrate(
      [&](double t) {
        const double sn = std::sin(k * t);
        const double dg = k * std::cos(k * t) - g.damping * sn;
        return (dg * dg - sn * sn / (r * r)) * std::exp(growth * t);
      },
      0.0, cyl.length(), cfg);
  const double quadrature = 2.0 * std::numbers::pi * r * result.value;
  if (mode == StabilityMode::VolumePreserving) {
    const double closed = cyl_soliton_q_closed(cyl);
    const bool disagree = (quadrature < 0.0) != (closed < 0.0);
    if (disagree && std::abs(quadrature - closed) > 1e-8) {
      throw Error(ErrorCode::MismatchBeyondTolerance,
                  "cylinder quadrature and closed form disagree in sign");
    }
  }
  return quadrature;
}

inline CriticalLength cyl_soliton_L0(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "cylinder radius must be positive");
  if (!(radius < std::numbers::sqrt2)) {
    throw Error(ErrorCode::RadiusTooLarge, "no instability certificate from this family for r >= sqrt(2)");
  }
  return {std::sqrt(8.0) * std::numbers::pi * radius / std::sqrt(2.0 - radius * radius),
          CriticalMethod::ClosedForm, StabilityMode::VolumePreserving};
}

/// Critical length 2 pi r of the cylinder as a constant-mean-curvature surface.
inline CriticalLength cyl_cmc_L0(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "cylinder radius must be positive");
  return {2.0 * std::numbers::pi * radius, CriticalMethod::ClosedForm,
          StabilityMode::VolumePreserving};
}

enum class CylinderAltVariant { HalfSinPlain, HalfSinDamped };

/// Closed forms for f = sin(s / r) with g = sin(pi t / L) (plain) or
/// g = sin(pi t / L) e^{-t} (damped); both reduce to pi r * integral g'^2 e^t.
inline double cyl_alt_q(const CylinderSpec& cyl, CylinderAltVariant variant) {
  using std::numbers::pi;
  const double r = cyl.radius();
  const double L = cyl.length();
  const double growth = variant == CylinderAltVariant::HalfSinPlain ? std::expm1(L) : -std::expm1(-L);
  return r * pi * pi * pi * growth * (L * L + 2.0 * pi * pi) / (L * L * L * L + 4.0 * pi * pi * L * L);
}

/// Same quantity as cyl_alt_q by quadrature of the unreduced form
/// (pi / r) * integral g^2 e^t - pi r * integral g (g'' + g' + g / r^2) e^t.
inline double cyl_alt_q_quadrature(const CylinderSpec& cyl, CylinderAltVariant variant,
                                   const QuadratureConfig& cfg = {}) {
  using std::numbers::pi;
  const double r = cyl.radius();
  const double k = pi / cyl.length();
  const double d = variant == CylinderAltVariant::HalfSinPlain ? 0.0 : 1.0;
  // g = sin(kt) e^{-dt}; g e^{t} carries e^{(1-d)t}, g^2 e^{t} carries e^{(1-2d)t}.
  auto integrand = [&](double t) {
    const double sn = std::sin(k * t);
    const double cs = std::cos(k * t);
    const double g = sn;
    const double dg = k * cs - d * sn;
    const double ddg = -k * k * sn - 2.0 * d * k * cs + d * d * sn;
    const double damp = std::exp((1.0 - 2.0 * d) * t);
    return ((pi / r) * g * g - pi * r * g * (ddg + dg + g / (r * r))) * damp;
  };
  return integrate(integrand, 0.0, cyl.length(), cfg).value;
}

// ---------------------------------------------------------------------------
// Certificates and probes

struct InstabilityWitness {
  TestProfile profile;
  AxialProfile axial;
  double q;
  double zero_mean_residual;
};

/// Evaluates the standard test family for the piece and returns it when it
/// certifies instability. Families exist for fundamental pieces (lambda > 1)
/// and symmetric pieces (lambda <= 1); other intervals yield no witness.
inline std::optional<InstabilityWitness> instability_certificate(
    const PieceSpec& piece, StabilityMode mode, const QuadratureConfig& cfg = {}) {
  const ProfileCurve& curve = piece.curve();
  const double width = piece.b() - piece.a();
  const double centre = 0.5 * (piece.a() + piece.b());
  std::optional<TestProfile> profile;
  if (curve.kind() == SolitonCase::GreaterThanOne) {
    if (std::abs(width - curve.period()) <= 1e-9 * curve.period()) profile = Gt1Fundamental{centre};
  } else if (std::abs(centre) <= 1e-12 * piece.b()) {
    if (curve.kind() == SolitonCase::EqualOne) {
      profile = Eq1Quadratic{piece.b()};
    } else {
      profile = Lt1Cosine{piece.b()};
    }
  }
  if (!profile) return std::nullopt;

  const double q = qform_profile(piece, *profile, mode, cfg).total;
  const double residual = zero_weighted_mean_residual(piece, *profile, mode, cfg);
  if (!(q < 0.0)) return std::nullopt;
  if (mode == StabilityMode::VolumePreserving && !(std::abs(residual) < 1e-9)) return std::nullopt;
  return InstabilityWitness{*profile, piece_axial_profile(mode, piece.length()), q, residual};
}

inline std::optional<InstabilityWitness> instability_certificate(
    const CylinderSpec& cyl, StabilityMode mode, const QuadratureConfig& cfg = {}) {
  const double q = cyl_soliton_q(cyl, cfg, mode);
  const double residual = zero_weighted_mean_residual(cyl, mode, cfg);
  if (!(q < 0.0)) return std::nullopt;
  if (mode == StabilityMode::VolumePreserving && !(std::abs(residual) < 1e-9)) return std::nullopt;
  CustomProfile constant{[](double) { return 1.0; }, [](double) { return 0.0; }};
  return InstabilityWitness{constant, cylinder_axial_profile(mode, cyl.length()), q, residual};
}

/// Axial lengths at which graph_stability_probe evaluates each profile.
inline const std::vector<double>& probe_lengths() {
  static const std::vector<double> lengths{0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
  return lengths;
}

/// Minimum strong-mode Q over n_random seeded profiles
/// f(s) = sum_{k=1..5} c_k sin(k pi (s + s0) / (2 s0)), |c| = 1, and the
/// probe_lengths() grid, on the graphical piece [-s0, s0].
inline double graph_stability_probe(double lambda, double s0, int n_random, std::uint64_t seed,
                                    const QuadratureConfig& cfg = {}) {
  const ProfileCurve curve = make_curve(lambda);
  const bool graph = (curve.kind() == SolitonCase::EqualOne && s0 > 0.0 && s0 < 1.0) ||
                     (curve.kind() == SolitonCase::LessThanOne && s0 > 0.0 && s0 < curve.graph_bound());
  if (!graph) {
    throw Error(ErrorCode::NotGraphRegime, "piece [-s0, s0] is not in the graphical regime");
  }
  if (n_random < 1) throw Error(ErrorCode::InvalidArgument, "n_random must be positive");

  constexpr int kTerms = 5;
  std::mt19937_64 rng(seed);
  // Raw 53-bit draws keep the sequence identical across standard libraries.
  auto uniform = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };

  const PieceSpec piece = PieceSpec::symmetric(curve, s0, 1.0);
  const double freq = std::numbers::pi / (2.0 * s0);
  double minimum = std::numeric_limits<double>::infinity();
  for (int n = 0; n < n_random; ++n) {
    std::array<double, kTerms> coeff{};
    double norm = 0.0;
    for (double& c : coeff) {
      c = uniform();
      norm += c * c;
    }
    norm = std::sqrt(norm);
    for (double& c : coeff) c /= norm;

    CustomProfile profile{
        [=](double s) {
          double sum = 0.0;
          for (int k = 0; k < kTerms; ++k) sum += coeff[k] * std::sin((k + 1) * freq * (s + s0));
          return sum;
        },
        [=](double s) {
          double sum = 0.0;
          for (int k = 0; k < kTerms; ++k) {
            sum += coeff[k] * (k + 1) * freq * std::cos((k + 1) * freq * (s + s0));
          }
          return sum;
        }};
    const QFormBreakdown parts = qform_profile(piece, profile, StabilityMode::Strong, cfg);
    for (double length : probe_lengths()) {
      minimum = std::min(minimum, assemble_q(parts.grad_term, parts.curvature_term, parts.mass_term,
                                             length, StabilityMode::Strong));
    }
  }
  return minimum;
}

}  // namespace plateau
