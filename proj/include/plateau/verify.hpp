#pragma once

// Self-verification suite behind `plateau verify`: property checks for every
// module, reproduction of the three reference tables, and two informational
// findings about published intermediate formulas.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plateau/io.hpp"
#include "plateau/numerics.hpp"
#include "plateau/profile_curve.hpp"
#include "plateau/stability.hpp"

namespace plateau::verify {

struct Check {
  std::string group;
  std::string name;
  bool passed = false;
  bool informational = false;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.passed || c.informational; });
  }
};

struct Options {
  std::string suite = "all";
  std::optional<double> lambda;  // restricts the tables suite to one table
  QuadratureConfig quadrature;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"numerics", "geometry", "closed-forms",
                                              "reference-values", "tables", "bracketing",
                                              "strong", "graph", "cylinder", "errata"};
  return names;
}

struct ReferenceTable {
  double lambda;
  std::vector<double> s0_rows;
  std::vector<double> length_columns;
  std::vector<std::vector<double>> values;
  std::vector<std::optional<std::size_t>> boxed;
  double tolerance;
};

/// Published I(u) values for the cosine family, with the boxed first
/// negative column of each row.
inline const std::vector<ReferenceTable>& reference_tables() {
  static const std::vector<ReferenceTable> tables{
      {0.25,
       {3, 4, 5, 6, 7},
       {15, 20, 25, 30, 35, 40},
       {{0.2405, 0.0102, -0.0962, -0.1541, -0.1891, -0.2117},
        {0.3229, 0.0158, -0.1262, -0.2034, -0.2499, -0.2802},
        {0.5434, 0.1596, -0.0180, -0.1145, -0.1727, -0.2104},
        {0.8320, 0.3715, 0.1583, 0.0425, -0.0273, -0.0726},
        {1.1585, 0.6211, 0.3724, 0.2373, 0.1558, 0.1030}},
       {2, 2, 2, 4, std::nullopt},
       5e-4},
      {0.5,
       {2, 4, 6, 8, 10},
       {10, 12, 14, 16, 18, 20},
       {{0.2486, 0.0074, -0.1380, -0.2324, -0.2971, -0.3434},
        {0.3297, -0.1527, -0.4436, -0.6324, -0.7619, -0.8545},
        {1.1578, 0.4340, -0.0023, -0.2856, -0.4798, -0.61872},
        {2.1681, 1.2030, 0.6212, 0.2435, -0.0153, -0.2005},
        {3.2460, 2.0397, 1.3124, 0.8403, 0.51667, 0.2851}},
       {2, 1, 2, 4, std::nullopt},
       1e-3},
      {0.75,
       {2, 4, 6, 8, 10},
       {2, 4, 6, 8, 10, 12},
       {{18.3781, 3.5737, 0.832, -0.1273, -0.5715, -0.8127},
        {37.1420, 7.5332, 2.0501, 0.1310, -0.7572, -1.2397},
        {56.7298, 12.3166, 4.0918, 1.2132, -0.1191, -0.8429},
        {76.5192, 17.3016, 6.3353, 2.4972, 0.7206, -0.2443},
        {96.3834, 22.3613, 8.6535, 3.8558, 1.6351, 0.4288}},
       {3, 4, 4, 5, std::nullopt},
       1e-3},
  };
  return tables;
}

namespace detail {

inline std::string fmt(double v) { return io::format_short(v); }

/// Uniform doubles in [lo, hi) from raw mt19937_64 output.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 rng_;
};

class Recorder {
 public:
  explicit Recorder(Report& report) : report_(report) {}

  void run(const std::string& group, const std::string& name, const std::function<Check()>& body,
           bool informational = false) {
    Check check;
    try {
      check = body();
    } catch (const std::exception& e) {
      check.passed = false;
      check.detail = std::string("exception: ") + e.what();
    }
    check.group = group;
    check.name = name;
    check.informational = informational;
    report_.checks.push_back(std::move(check));
  }

 private:
  Report& report_;
};

inline Check result(bool passed, std::string detail) { return Check{"", "", passed, false, std::move(detail)}; }

inline double relative_gap(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

inline void numerics_suite(Recorder& rec, const QuadratureConfig& cfg) {
  rec.run("numerics", "sin over [0, pi] integrates to 2", [&] {
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, cfg);
    return result(std::abs(r.value - 2.0) <= 1e-10, "value " + fmt(r.value));
  });
  rec.run("numerics", "polynomials up to degree 22 are exact on [0, 1]", [&] {
    double worst = 0.0;
    for (int n = 0; n <= 22; ++n) {
      const auto r = integrate([n](double x) { return std::pow(x, n); }, 0.0, 1.0, cfg);
      worst = std::max(worst, std::abs(r.value - 1.0 / (n + 1)));
    }
    return result(worst <= 1e-14, "worst error " + fmt(worst));
  });
  rec.run("numerics", "additivity over split intervals", [&] {
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    const auto whole = integrate(f, 0.0, 4.0, cfg);
    const auto left = integrate(f, 0.0, 1.3, cfg);
    const auto right = integrate(f, 1.3, 4.0, cfg);
    const double gap = std::abs(whole.value - left.value - right.value);
    const double budget = whole.error_estimate + left.error_estimate + right.error_estimate + 1e-15;
    return result(gap <= budget, "gap " + fmt(gap) + " budget " + fmt(budget));
  });
  rec.run("numerics", "root of x^2 - 2 on [1, 2]", [&] {
    const double x = find_root([](double v) { return v * v - 2.0; }, 1.0, 2.0);
    return result(std::abs(x - std::numbers::sqrt2) <= 1e-12, "root " + fmt(x));
  });
}

inline void geometry_suite(Recorder& rec) {
  for (double lambda : {0.25, 0.5, 0.75, 1.0, 1.5, 3.0}) {
    rec.run("geometry", "arc length, soliton ODE and weight at lambda=" + fmt(lambda), [lambda] {
      const ProfileCurve curve = make_curve(lambda);
      Sampler sample(0x5eed0000ULL + static_cast<std::uint64_t>(lambda * 1000));
      double arc = 0.0, ode = 0.0, weight = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double s = sample(-10.0, 10.0);
        const double dx1 = curve.dx1(s), dx3 = curve.dx3(s);
        arc = std::max(arc, std::abs(dx1 * dx1 + dx3 * dx3 - 1.0));
        ode = std::max(ode, std::abs(curve.soliton_residual(s, 1e-5)));
        weight = std::max(weight, std::abs(curve.weight(s) - std::exp(curve.x3(s))) / curve.weight(s));
      }
      return result(arc < 1e-9 && ode < 1e-6 && weight < 1e-12,
                    "arc " + fmt(arc) + " ode " + fmt(ode) + " weight " + fmt(weight));
    });
  }
  for (double lambda : {1.5, 3.0}) {
    rec.run("geometry", "unwrapped x1 continuous across branch points, lambda=" + fmt(lambda), [lambda] {
      const ProfileCurve curve = make_curve(lambda);
      double worst = 0.0;
      for (int k = -5; k < 5; ++k) {
        const double s = (2 * k + 1) * std::numbers::pi / curve.omega();
        const double delta = 1e-12 * std::max(1.0, std::abs(s));
        worst = std::max(worst, std::abs(curve.x1(s + delta) - curve.x1(s - delta)));
      }
      return result(worst < 1e-9, "max jump " + fmt(worst));
    });
    rec.run("geometry", "periodicity of the lambda=" + fmt(lambda) + " curve", [lambda] {
      const ProfileCurve curve = make_curve(lambda);
      const double T = curve.period();
      const double shift = 2.0 * std::numbers::pi - lambda * T;
      double worst = 0.0;
      for (double s = -7.0; s <= 7.0; s += 0.37) {
        worst = std::max({worst, std::abs(curve.x3(s + T) - curve.x3(s)),
                          std::abs(curve.x1(s + T) - curve.x1(s) - shift),
                          std::abs(curve.curvature(s + T) - curve.curvature(s)),
                          std::abs(curve.weight(s + T) - curve.weight(s))});
      }
      return result(worst < 1e-9, "worst " + fmt(worst));
    });
  }
  for (double lambda : {0.25, 0.5, 0.75, 1.0}) {
    rec.run("geometry", "x1 odd and x3 even at lambda=" + fmt(lambda), [lambda] {
      const ProfileCurve curve = make_curve(lambda);
      double worst = 0.0;
      for (double s = 0.0; s <= 10.0; s += 0.25) {
        worst = std::max({worst, std::abs(curve.x1(s) + curve.x1(-s)), std::abs(curve.x3(s) - curve.x3(-s))});
      }
      return result(worst < 1e-12, "worst " + fmt(worst));
    });
  }
}

inline void closed_form_suite(Recorder& rec, const QuadratureConfig& cfg) {
  rec.run("closed-forms", "lambda>1 closed form vs quadrature on 60 points", [&] {
    double worst = 0.0;
    for (double lambda : {1.5, 2.0, 3.0, 5.0}) {
      const ProfileCurve curve = make_curve(lambda);
      const double s0 = curve.half_period();
      for (double sigma : {0.0, 0.5 * s0, s0}) {
        for (double L : {0.5, 1.0, 2.0, 5.0, 10.0}) {
          const double quad = qform_profile(PieceSpec::fundamental(curve, sigma, L), Gt1Fundamental{sigma},
                                            StabilityMode::VolumePreserving, cfg)
                                  .total;
          worst = std::max(worst, relative_gap(quad, q_gt1_closed(lambda, sigma, L)));
        }
      }
    }
    return result(worst <= 1e-6, "worst relative gap " + fmt(worst));
  });
  rec.run("closed-forms", "lambda=1 closed form vs quadrature on 16 points", [&] {
    const ProfileCurve curve = make_curve(1.0);
    double worst = 0.0;
    for (double s0 : {1.5, 2.0, 3.0, 5.0}) {
      for (double L : {2.0, 5.0, 10.0, 20.0}) {
        const double quad = qform_profile(PieceSpec::symmetric(curve, s0, L), Eq1Quadratic{s0},
                                          StabilityMode::VolumePreserving, cfg)
                                .total;
        worst = std::max(worst, relative_gap(quad, q_eq1_closed(s0, L)));
      }
    }
    return result(worst <= 1e-6, "worst relative gap " + fmt(worst));
  });
  rec.run("closed-forms", "lambda>1 L0 nondecreasing in sigma with maximum L0*", [] {
    bool monotone = true;
    double gap = 0.0;
    for (double lambda : {1.5, 2.0, 3.0, 5.0}) {
      const double s0 = std::numbers::pi / std::sqrt(lambda * lambda - 1.0);
      double previous = 0.0, maximum = 0.0;
      for (int i = 0; i < 100; ++i) {
        const double value = L0_gt1(lambda, s0 * i / 99.0).value;
        monotone = monotone && value >= previous;
        previous = value;
        maximum = std::max(maximum, value);
      }
      gap = std::max(gap, std::abs(maximum - L0_gt1_uniform(lambda).value));
    }
    return result(monotone && gap <= 1e-12, "max gap to L0* " + fmt(gap));
  });
  // L0 blows up as s0 approaches the threshold, so it first decreases.
  const auto sweep = [] {
    std::vector<double> values;
    for (int i = 0; i <= 2000; ++i) values.push_back(L0_eq1(1.1 + (10.0 - 1.1) * i / 2000.0).value);
    return values;
  };
  rec.run("closed-forms", "lambda=1 L0 in s0 on [1.1, 10] decreases to one minimum, then increases", [&] {
    const auto values = sweep();
    const auto argmin = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    bool shape = argmin > 0 && argmin + 1 < values.size();
    for (std::size_t i = 1; i < values.size(); ++i) {
      shape = shape && (i <= argmin ? values[i] < values[i - 1] : values[i] > values[i - 1]);
    }
    const double s_min = 1.1 + (10.0 - 1.1) * static_cast<double>(argmin) / 2000.0;
    return result(shape, "minimum L0 " + fmt(values[argmin]) + " near s0 = " + fmt(s_min));
  });
  rec.run("closed-forms", "lambda=1 L0 increasing in s0 over all of [1.1, 10]", [&] {
    const auto values = sweep();
    const bool increasing = std::is_sorted(values.begin(), values.end(), std::less_equal<>{});
    return result(increasing, increasing ? "monotone" :
        "not monotone: L0(1.1) = " + fmt(values.front()) + " exceeds L0(2) = " + fmt(L0_eq1(2.0).value));
  }, true);
}

inline void reference_value_suite(Recorder& rec, const QuadratureConfig& cfg) {
  rec.run("reference-values", "threshold s0bar = 1.0213 +- 5e-4", [] {
    const double root = eq1_threshold();
    return result(std::abs(root - 1.0213) <= 5e-4, "root " + fmt(root));
  });
  rec.run("reference-values", "graph bounds s1(1/4, 1/2, 3/4) +- 5e-4", [] {
    const double s1a = make_curve(0.25).graph_bound();
    const double s1b = make_curve(0.5).graph_bound();
    const double s1c = make_curve(0.75).graph_bound();
    const bool ok = std::abs(s1a - 2.1311) <= 5e-4 && std::abs(s1b - 1.5206) <= 5e-4 &&
                    std::abs(s1c - 1.2024) <= 5e-4;
    return result(ok, fmt(s1a) + ", " + fmt(s1b) + ", " + fmt(s1c));
  });
  rec.run("reference-values", "I(u) at lambda=1/4, s0=3, L=4 is 7.1166 +- 1e-3", [&] {
    const QFormBreakdown q = qform_profile(PieceSpec::symmetric(make_curve(0.25), 3.0, 4.0), Lt1Cosine{3.0},
                                           StabilityMode::VolumePreserving, cfg);
    const double value = 2.0 * q.total / 4.0;
    const double err = 2.0 * q.error_estimate / 4.0;
    return result(std::abs(value - 7.1166) + err <= 1e-3, "value " + fmt(value) + " +- " + fmt(err));
  });
}

inline void table_suite(Recorder& rec, const Options& options) {
  for (const ReferenceTable& ref : reference_tables()) {
    if (options.lambda && *options.lambda != ref.lambda) continue;
    rec.run("tables", "table for lambda=" + fmt(ref.lambda) + " within " + fmt(ref.tolerance), [&] {
      const TableResult table = table_I(ref.lambda, ref.s0_rows, ref.length_columns, options.quadrature);
      double worst = 0.0;
      for (std::size_t i = 0; i < ref.values.size(); ++i) {
        for (std::size_t j = 0; j < ref.values[i].size(); ++j) {
          // the quadrature's own error bound counts against the tolerance
          worst = std::max(worst, std::abs(table.cells[i][j] - ref.values[i][j]) + table.error_estimates[i][j]);
        }
      }
      const bool marks = table.first_negative == ref.boxed;
      return result(worst <= ref.tolerance && marks,
                    "worst |diff| + error bound " + fmt(worst) + (marks ? ", marks match" : ", marks differ"));
    });
  }
}

inline void bracketing_suite(Recorder& rec, const QuadratureConfig& cfg) {
  auto brackets = [](double below, double above) { return below > 0.0 && above < 0.0; };
  rec.run("bracketing", "lambda>1 critical lengths bracket a sign change", [&] {
    bool ok = true;
    for (double lambda : {1.5, 3.0}) {
      const ProfileCurve curve = make_curve(lambda);
      const double s0 = curve.half_period();
      for (double sigma : {0.0, 0.5 * s0, s0}) {
        for (StabilityMode mode : {StabilityMode::VolumePreserving, StabilityMode::Strong}) {
          const double L0 = L0_gt1(lambda, sigma, mode).value;
          auto q = [&](double L) {
            return qform_profile(PieceSpec::fundamental(curve, sigma, L), Gt1Fundamental{sigma}, mode, cfg).total;
          };
          ok = ok && brackets(q(0.99 * L0), q(1.01 * L0));
        }
      }
    }
    return result(ok, ok ? "all bracketed" : "a bracket failed");
  });
  rec.run("bracketing", "lambda=1 critical lengths bracket a sign change", [&] {
    bool ok = true;
    const ProfileCurve curve = make_curve(1.0);
    for (double s0 : {1.5, 2.0, 5.0}) {
      for (StabilityMode mode : {StabilityMode::VolumePreserving, StabilityMode::Strong}) {
        const double L0 = L0_eq1(s0, mode).value;
        auto q = [&](double L) {
          return qform_profile(PieceSpec::symmetric(curve, s0, L), Eq1Quadratic{s0}, mode, cfg).total;
        };
        ok = ok && brackets(q(0.99 * L0), q(1.01 * L0));
      }
    }
    return result(ok, ok ? "all bracketed" : "a bracket failed");
  });
  rec.run("bracketing", "lambda<1 critical lengths fall in the boxed brackets", [&] {
    bool ok = true;
    std::ostringstream detail;
    for (const ReferenceTable& ref : reference_tables()) {
      const ProfileCurve curve = make_curve(ref.lambda);
      for (std::size_t i = 0; i < ref.s0_rows.size(); ++i) {
        if (!ref.boxed[i] || *ref.boxed[i] == 0) continue;
        const double s0 = ref.s0_rows[i];
        const double L0 = L0_lt1_numeric(ref.lambda, s0, StabilityMode::VolumePreserving, cfg).value;
        const double lo = ref.length_columns[*ref.boxed[i] - 1];
        const double hi = ref.length_columns[*ref.boxed[i]];
        auto q = [&](double L) {
          return qform_profile(PieceSpec::symmetric(curve, s0, L), Lt1Cosine{s0}, StabilityMode::VolumePreserving, cfg)
              .total;
        };
        const bool good = L0 > lo && L0 < hi && brackets(q(0.99 * L0), q(1.01 * L0));
        if (!good) detail << "lambda=" << fmt(ref.lambda) << " s0=" << fmt(s0) << " L0=" << fmt(L0) << "; ";
        ok = ok && good;
      }
    }
    return result(ok, ok ? "all bracketed" : detail.str());
  });
  rec.run("bracketing", "cylinder critical lengths bracket a sign change", [&] {
    bool ok = true;
    for (double r : {0.5, 1.0, 1.3}) {
      const double L0 = cyl_soliton_L0(r).value;
      ok = ok && brackets(cyl_soliton_q(CylinderSpec(r, 0.99 * L0), cfg), cyl_soliton_q(CylinderSpec(r, 1.01 * L0), cfg));
    }
    return result(ok, ok ? "all bracketed" : "a bracket failed");
  });
}

inline void strong_suite(Recorder& rec, const QuadratureConfig& cfg) {
  rec.run("strong", "strong-mode closed-form L0 is half the volume-preserving L0", [] {
    double worst = 0.0;
    for (double lambda : {1.5, 2.0, 3.0, 5.0}) {
      const double s0 = std::numbers::pi / std::sqrt(lambda * lambda - 1.0);
      for (double sigma : {0.0, 0.25 * s0, 0.5 * s0, s0}) {
        worst = std::max(worst, std::abs(L0_gt1(lambda, sigma, StabilityMode::Strong).value -
                                         0.5 * L0_gt1(lambda, sigma).value));
      }
    }
    for (double s0 : {1.1, 1.5, 2.0, 3.0, 5.0}) {
      worst = std::max(worst, std::abs(L0_eq1(s0, StabilityMode::Strong).value - 0.5 * L0_eq1(s0).value));
    }
    return result(worst <= 1e-12, "worst gap " + fmt(worst));
  });
  rec.run("strong", "strong-mode numeric L0 is half the volume-preserving L0 (lambda<1)", [&] {
    double worst = 0.0;
    for (auto [lambda, s0] : {std::pair{0.25, 3.0}, std::pair{0.5, 4.0}, std::pair{0.75, 2.0}}) {
      const double full = L0_lt1_numeric(lambda, s0, StabilityMode::VolumePreserving, cfg).value;
      const double strong = L0_lt1_numeric(lambda, s0, StabilityMode::Strong, cfg).value;
      worst = std::max(worst, std::abs(strong - 0.5 * full) / full);
    }
    return result(worst <= 1e-5, "worst relative gap " + fmt(worst));
  });
}

inline void graph_suite(Recorder& rec, const QuadratureConfig& cfg) {
  for (auto [lambda, s0] : {std::pair{0.5, 1.0}, std::pair{1.0, 0.9}}) {
    rec.run("graph", "graphical piece lambda=" + fmt(lambda) + ", s0=" + fmt(s0) + " has Q >= -1e-6", [&, lambda, s0] {
      const double minimum = graph_stability_probe(lambda, s0, 200, 20240501, cfg);
      return result(minimum >= -1e-6, "min Q " + fmt(minimum));
    });
  }
}

inline void cylinder_suite(Recorder& rec, const QuadratureConfig& cfg) {
  rec.run("cylinder", "sign factor matches quadrature and closed form on 100 points", [&] {
    int mismatches = 0;
    for (int i = 0; i < 10; ++i) {
      const double r = 0.15 + 0.2 * i;
      for (int j = 0; j < 10; ++j) {
        const CylinderSpec cyl(r, 0.7 + 3.1 * j);
        const double factor = cylinder_sign_factor(cyl);
        const double quad = cyl_soliton_q(cyl, cfg);
        const double closed = cyl_soliton_q_closed(cyl);
        if ((factor < 0.0) != (quad < 0.0) || (factor < 0.0) != (closed < 0.0)) ++mismatches;
      }
    }
    return result(mismatches == 0, std::to_string(mismatches) + " mismatches");
  });
  rec.run("cylinder", "quadrature zero crossing at sqrt(8) pi r / sqrt(2 - r^2)", [&] {
    double worst = 0.0;
    for (double r : {0.5, 1.0, 1.3}) {
      const double L0 = cyl_soliton_L0(r).value;
      const double root = find_root([&](double L) { return cyl_soliton_q(CylinderSpec(r, L), cfg); }, 0.5 * L0,
                                    2.0 * L0, RootConfig{1e-10, 300});
      worst = std::max(worst, std::abs(root - L0));
    }
    return result(worst <= 1e-6, "worst offset " + fmt(worst));
  });
  rec.run("cylinder", "cmc form vanishes at L = 2 pi r", [] {
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(cyl_cmc_q(CylinderSpec(r, 2.0 * std::numbers::pi * r))));
    return result(worst <= 1e-12, "worst " + fmt(worst));
  });
  rec.run("cylinder", "half-sine test functions give positive Q on 100 points", [&] {
    bool positive = true;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double r = 0.2 + 0.3 * i;
      for (int j = 0; j < 10; ++j) {
        const CylinderSpec cyl(r, 0.3 + 2.5 * j);
        for (auto variant : {CylinderAltVariant::HalfSinPlain, CylinderAltVariant::HalfSinDamped}) {
          const double closed = cyl_alt_q(cyl, variant);
          const double quad = cyl_alt_q_quadrature(cyl, variant, cfg);
          positive = positive && closed > 0.0 && quad > 0.0;
          worst = std::max(worst, std::abs(quad - closed) / closed);
        }
      }
    }
    return result(positive && worst <= 1e-9, "worst relative gap " + fmt(worst));
  });
}

inline void errata_suite(Recorder& rec, const QuadratureConfig& cfg) {
  rec.run(
      "errata", "published lambda=1 component integrals at s0=2",
      [&] {
        const double s0 = 2.0;
        const double at = std::atan(s0);
        const double grad_printed = 11.0 * s0 * s0 * s0 / 3.0 + 3.0 * s0 * (std::pow(s0, 4) - 2.0 * s0 * s0 - 3.0) * at;
        const double curv_printed = -2.0 * (s0 * (s0 * s0 + 3.0) + (std::pow(s0, 4) - 2.0 * s0 * s0 - 3.0) * at);
        const QFormBreakdown q = qform_profile(PieceSpec::symmetric(make_curve(1.0), s0, 10.0), Eq1Quadratic{s0},
                                               StabilityMode::VolumePreserving, cfg);
        const bool agree = std::abs(q.grad_term - grad_printed) < 1e-6 && std::abs(q.curvature_term - curv_printed) < 1e-6;
        return result(agree, "grad " + fmt(q.grad_term) + " vs printed " + fmt(grad_printed) + "; curvature " +
                                 fmt(q.curvature_term) + " vs printed " + fmt(curv_printed) +
                                 "; grad - curvature " + fmt(q.grad_term - q.curvature_term) + " = phi(s0) " +
                                 fmt(varphi_eq1(s0)));
      },
      true);
  rec.run(
      "errata", "published cylinder prefactor e^{-L}(1 - e^{-L})",
      [&] {
        const CylinderSpec cyl(1.0, 3.0);
        const double quad = cyl_soliton_q(cyl, cfg);
        const double printed = cyl_soliton_q_closed(cyl) * std::exp(-cyl.length());
        const double ratio = quad / printed;
        return result(std::abs(ratio - 1.0) < 1e-6,
                      "quadrature / printed = " + fmt(ratio) + " (e^L = " + fmt(std::exp(cyl.length())) +
                          "); sign and zero locus agree");
      },
      true);
}

}  // namespace detail

inline bool is_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

inline Report run(const Options& options) {
  Report report;
  detail::Recorder rec(report);
  const QuadratureConfig& cfg = options.quadrature;
  auto wanted = [&](const char* name) { return options.suite == "all" || options.suite == name; };
  if (wanted("numerics")) detail::numerics_suite(rec, cfg);
  if (wanted("geometry")) detail::geometry_suite(rec);
  if (wanted("closed-forms")) detail::closed_form_suite(rec, cfg);
  if (wanted("reference-values")) detail::reference_value_suite(rec, cfg);
  if (wanted("tables")) detail::table_suite(rec, options);
  if (wanted("bracketing")) detail::bracketing_suite(rec, cfg);
  if (wanted("strong")) detail::strong_suite(rec, cfg);
  if (wanted("graph")) detail::graph_suite(rec, cfg);
  if (wanted("cylinder")) detail::cylinder_suite(rec, cfg);
  if (wanted("errata")) detail::errata_suite(rec, cfg);
  return report;
}

inline void print(std::ostream& out, const Report& report) {
  for (const Check& c : report.checks) {
    const char* tag = c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL");
    out << '[' << tag << "] " << c.group << ": " << c.name << " -- " << c.detail << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const Check& c) { return !c.passed && !c.informational; });
  out << (failed == 0 ? "verification passed" : "verification FAILED") << " (" << report.checks.size()
      << " checks, " << failed << " failed)\n";
}

}  // namespace plateau::verify
