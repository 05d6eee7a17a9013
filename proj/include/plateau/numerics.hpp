#pragma once

// Scalar quadrature and bracketed root finding shared by all stability
// computations. Everything here is a pure function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plateau/error.hpp"

namespace plateau {

template <typename F>
concept ScalarFunction = std::invocable<F&, double> &&
    std::convertible_to<std::invoke_result_t<F&, double>, double>;

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "quadrature config needs abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
    }
  }

  double target(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct RootConfig {
  double x_tol = 1e-12;
  int max_iterations = 200;

  void validate() const {
    if (!(x_tol > 0.0) || max_iterations < 1) {
      throw Error(ErrorCode::InvalidArgument, "root config needs x_tol > 0, max_iterations >= 1");
    }
  }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK tables).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

inline double checked_sample(double y, double x) {
  if (!std::isfinite(y)) {
    throw Error(ErrorCode::NonFinite, "integrand is not finite at x = " + std::to_string(x));
  }
  return y;
}

template <typename F>
Segment gauss_kronrod_15(F& f, double a, double b, long& evaluations) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f_centre = checked_sample(static_cast<double>(f(centre)), centre);
  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f_lo = checked_sample(static_cast<double>(f(centre - dx)), centre - dx);
    const double f_hi = checked_sample(static_cast<double>(f(centre + dx)), centre + dx);
    kronrod += kKronrodWeights[j] * (f_lo + f_hi);
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f_lo + f_hi);
  }
  evaluations += 15;
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

inline bool worse(const Segment& lhs, const Segment& rhs) { return lhs.error < rhs.error; }

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// The segment with the largest |K15 - G7| is bisected until the summed
/// estimate meets cfg.target(value). The estimate is the raw Kronrod/Gauss
/// difference, which overstates the true error of the Kronrod value on
/// smooth integrands.
template <ScalarFunction F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw Error(ErrorCode::InvalidArgument, "integrate needs finite bounds with a <= b");
  }
  QuadratureResult result;
  if (a == b) return result;

  std::vector<detail::Segment> heap;
  heap.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + 1);
  heap.push_back(detail::gauss_kronrod_15(f, a, b, result.evaluations));

  auto totals = [&heap] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& seg : heap) {
      value += seg.value;
      error += seg.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  while (error > cfg.target(value)) {
    if (static_cast<int>(heap.size()) >= cfg.max_subdivisions) {
      throw Error(ErrorCode::NonConvergence,
                  "quadrature tolerance unmet after " + std::to_string(heap.size()) +
                      " subdivisions (error estimate " + std::to_string(error) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), detail::worse);
    const detail::Segment worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw Error(ErrorCode::NonConvergence, "quadrature segment collapsed to machine precision");
    }
    heap.push_back(detail::gauss_kronrod_15(f, worst.a, mid, result.evaluations));
    std::push_heap(heap.begin(), heap.end(), detail::worse);
    heap.push_back(detail::gauss_kronrod_15(f, mid, worst.b, result.evaluations));
    std::push_heap(heap.begin(), heap.end(), detail::worse);

    std::tie(value, error) = totals();
  }
  result.value = value;
  result.error_estimate = error;
  return result;
}

/// Root of f inside [a, b] by bisection with Illinois-style false-position
/// steps. A false-position step is only taken while the previous step at
/// least halved the bracket, so convergence is never slower than bisection.
///
/// An endpoint where f is exactly zero is returned as the root. Otherwise
/// f(a) and f(b) must have strictly opposite signs.
template <ScalarFunction F>
double find_root(F&& f, double a, double b, const RootConfig& cfg = {}) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw Error(ErrorCode::InvalidArgument, "find_root needs finite bounds with a <= b");
  }
  double lo = a;
  double hi = b;
  double f_lo = static_cast<double>(f(lo));
  double f_hi = static_cast<double>(f(hi));
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) {
    throw Error(ErrorCode::NonFinite, "function is not finite at a bracket endpoint");
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw Error(ErrorCode::NoSignChange, "f(a) and f(b) have the same sign");
  }

  // Scaled endpoint values used by the false-position step; the true values
  // only decide which side of the bracket is replaced.
  double g_lo = f_lo;
  double g_hi = f_hi;
  int retained = 0;  // -1: lo kept last step, +1: hi kept last step
  bool last_step_halved = true;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const double width = hi - lo;
    const double mid = lo + 0.5 * width;
    if (width <= cfg.x_tol || mid <= lo || mid >= hi) return mid;

    double x = mid;
    if (last_step_halved) {
      const double candidate = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
      if (candidate > lo && candidate < hi) x = candidate;
    }
    const double fx = static_cast<double>(f(x));
    if (!std::isfinite(fx)) {
      throw Error(ErrorCode::NonFinite, "function is not finite at x = " + std::to_string(x));
    }
    if (fx == 0.0) return x;

    if (std::signbit(fx) == std::signbit(f_lo)) {
      lo = x;
      f_lo = g_lo = fx;
      if (retained == 1) g_hi *= 0.5;
      retained = 1;
    } else {
      hi = x;
      f_hi = g_hi = fx;
      if (retained == -1) g_lo *= 0.5;
      retained = -1;
    }
    last_step_halved = (hi - lo) <= 0.5 * width;
  }
  if (hi - lo <= cfg.x_tol) return lo + 0.5 * (hi - lo);
  throw Error(ErrorCode::NonConvergence,
              "root bracket still wider than x_tol after " + std::to_string(cfg.max_iterations) +
                  " iterations");
}

/// First adjacent grid pair on which f changes sign (or touches zero).
template <ScalarFunction F>
std::optional<std::pair<double, double>> scan_sign_change(F&& f, std::span<const double> grid) {
  if (grid.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "sign scan needs at least two grid points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sign scan grid must be strictly increasing");
    }
  }
  double previous = static_cast<double>(f(grid[0]));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double current = static_cast<double>(f(grid[i]));
    if (previous == 0.0 || current == 0.0 || std::signbit(previous) != std::signbit(current)) {
      return std::pair{grid[i - 1], grid[i]};
    }
    previous = current;
  }
  return std::nullopt;
}

/// Geometric grid start, start*ratio, ... capped by (and ending at) stop.
inline std::vector<double> geometric_grid(double start, double stop, double ratio) {
  if (!(start > 0.0) || !(stop > start) || !(ratio > 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "geometric grid needs 0 < start < stop, ratio > 1");
  }
  std::vector<double> grid;
  for (double x = start; x < stop; x *= ratio) grid.push_back(x);
  grid.push_back(stop);
  return grid;
}

}  // namespace plateau
