// plateau: command-line front end for the translating-soliton stability library.
//
// Exit codes: 0 success, 1 usage or domain error, 2 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plateau/plateau.hpp"

namespace {

using namespace plateau;

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open output file '" + out_path + "'");
  file << text;
  file.flush();
  if (!file) throw Error(ErrorCode::InvalidArgument, "failed writing output file '" + out_path + "'");
}

StabilityMode mode_of(bool strong) {
  return strong ? StabilityMode::Strong : StabilityMode::VolumePreserving;
}

/// Piece selected by --lambda with --sigma (lambda > 1) or --s0.
PieceSpec select_piece(double lambda, const std::optional<double>& sigma,
                       const std::optional<double>& s0, double length) {
  const ProfileCurve curve = make_curve(lambda);
  if (curve.kind() == SolitonCase::GreaterThanOne) {
    if (!sigma) throw Error(ErrorCode::InvalidArgument, "lambda > 1 pieces need --sigma");
    return PieceSpec::fundamental(curve, *sigma, length);
  }
  if (!s0) throw Error(ErrorCode::InvalidArgument, "lambda <= 1 pieces need --s0");
  return PieceSpec::symmetric(curve, *s0, length);
}

TestProfile default_profile(const PieceSpec& piece, const std::optional<double>& sigma) {
  switch (piece.curve().kind()) {
    case SolitonCase::GreaterThanOne: return Gt1Fundamental{*sigma};
    case SolitonCase::EqualOne: return Eq1Quadratic{piece.b()};
    case SolitonCase::LessThanOne: return Lt1Cosine{piece.b()};
  }
  return Lt1Cosine{piece.b()};
}

std::string line(const std::string& key, double value) {
  return key + ": " + io::format_full(value) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability of cylindrical translating lambda-solitons", "plateau"};
  app.require_subcommand(1);

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "Sample the base curve to CSV");
  double curve_lambda = 0.0;
  double s_min = -10.0;
  double s_max = 10.0;
  int samples = 201;
  std::string curve_out = "-";
  curve_cmd->add_option("--lambda", curve_lambda, "Soliton constant lambda > 0")->required();
  curve_cmd->add_option("--s-min", s_min, "First arc-length sample")->capture_default_str();
  curve_cmd->add_option("--s-max", s_max, "Last arc-length sample")->capture_default_str();
  curve_cmd->add_option("--samples", samples, "Number of uniform samples (>= 2)")->capture_default_str();
  curve_cmd->add_option("--out", curve_out, "Output path, '-' for stdout")->capture_default_str();

  // qform
  auto* qform_cmd = app.add_subcommand("qform", "Evaluate the quadratic form on a piece");
  double q_lambda = 0.0;
  double q_length = 0.0;
  std::optional<double> q_sigma;
  std::optional<double> q_s0;
  bool q_strong = false;
  qform_cmd->add_option("--lambda", q_lambda, "Soliton constant lambda > 0")->required();
  qform_cmd->add_option("--sigma", q_sigma, "Fundamental-piece offset (lambda > 1)");
  qform_cmd->add_option("--s0", q_s0, "Half-width of the symmetric piece (lambda <= 1)");
  qform_cmd->add_option("--length", q_length, "Axial length L")->required();
  qform_cmd->add_flag("--strong", q_strong, "Use g = sin(pi t / L) instead of sin(2 pi t / L)");

  // critical-length
  auto* crit_cmd = app.add_subcommand("critical-length", "Critical instability length L0");
  std::optional<double> c_lambda;
  std::optional<double> c_radius;
  std::optional<double> c_sigma;
  std::optional<double> c_s0;
  bool c_strong = false;
  bool c_uniform = false;
  std::string c_format = "text";
  auto* c_lambda_opt = crit_cmd->add_option("--lambda", c_lambda, "Soliton constant lambda > 0");
  auto* c_radius_opt = crit_cmd->add_option("--radius", c_radius, "Circular cylinder radius");
  c_lambda_opt->excludes(c_radius_opt);
  crit_cmd->add_option("--sigma", c_sigma, "Fundamental-piece offset (lambda > 1)");
  crit_cmd->add_option("--s0", c_s0, "Half-width of the symmetric piece (lambda <= 1)");
  crit_cmd->add_flag("--strong", c_strong, "Strong stability (no volume constraint)");
  crit_cmd->add_flag("--uniform", c_uniform, "Bound valid for every sigma (lambda > 1)");
  crit_cmd->add_option("--format", c_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // table
  auto* table_cmd = app.add_subcommand("table", "Tabulate I(u) for lambda < 1");
  double t_lambda = 0.0;
  std::vector<double> t_s0;
  std::vector<double> t_lengths;
  std::string t_format = "markdown";
  std::string t_out = "-";
  table_cmd->add_option("--lambda", t_lambda, "Soliton constant 0 < lambda < 1")->required();
  table_cmd->add_option("--s0", t_s0, "Row values of s0 (default: reference grid)")->delimiter(',');
  table_cmd->add_option("--L", t_lengths, "Column values of L (default: reference grid)")->delimiter(',');
  table_cmd->add_option("--format", t_format, "Output format")
      ->check(CLI::IsMember({"markdown", "csv"}))
      ->capture_default_str();
  table_cmd->add_option("--out", t_out, "Output path, '-' for stdout")->capture_default_str();

  // cylinder
  auto* cyl_cmd = app.add_subcommand("cylinder", "Compare cmc and soliton stability of a cylinder");
  double y_radius = 0.0;
  double y_length = 0.0;
  cyl_cmd->add_option("--radius", y_radius, "Cylinder radius r > 0")->required();
  cyl_cmd->add_option("--length", y_length, "Axial length L")->required();

  // mesh
  auto* mesh_cmd = app.add_subcommand("mesh", "Export a surface piece as Wavefront OBJ");
  std::optional<double> m_lambda;
  std::optional<double> m_radius;
  std::optional<double> m_sigma;
  std::optional<double> m_s0;
  double m_length = 0.0;
  int m_ns = 64;
  int m_nt = 16;
  std::string m_out;
  auto* m_lambda_opt = mesh_cmd->add_option("--lambda", m_lambda, "Soliton constant lambda > 0");
  auto* m_radius_opt = mesh_cmd->add_option("--radius", m_radius, "Circular cylinder radius");
  m_lambda_opt->excludes(m_radius_opt);
  mesh_cmd->add_option("--sigma", m_sigma, "Fundamental-piece offset (lambda > 1)");
  mesh_cmd->add_option("--s0", m_s0, "Half-width of the symmetric piece (lambda <= 1)");
  mesh_cmd->add_option("--length", m_length, "Axial length L")->required();
  mesh_cmd->add_option("--ns", m_ns, "Samples along the curve (>= 2)")->capture_default_str();
  mesh_cmd->add_option("--nt", m_nt, "Samples along the rulings (>= 2)")->capture_default_str();
  mesh_cmd->add_option("--out", m_out, "Output OBJ path")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  std::string v_suite = "all";
  std::optional<double> v_lambda;
  double v_tol = 1e-10;
  std::vector<std::string> suites{"all"};
  for (const auto& name : verify::suite_names()) suites.push_back(name);
  verify_cmd->add_option("--suite", v_suite, "Suite to run")
      ->check(CLI::IsMember(suites))
      ->capture_default_str();
  verify_cmd->add_option("--lambda", v_lambda, "Restrict the tables suite to one lambda");
  verify_cmd->add_option("--quad-tol", v_tol, "Absolute and relative quadrature tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "error: " << message << '\n';
    return kExitUsage;
  }

  try {
    if (*curve_cmd) {
      const ProfileCurve curve = make_curve(curve_lambda);
      std::ostringstream text;
      io::write_curve_csv(text, curve, s_min, s_max, samples);
      emit(text.str(), curve_out);
    } else if (*qform_cmd) {
      const PieceSpec piece = select_piece(q_lambda, q_sigma, q_s0, q_length);
      const StabilityMode mode = mode_of(q_strong);
      const QFormBreakdown q = qform_profile(piece, default_profile(piece, q_sigma), mode);
      std::ostringstream text;
      text << "mode: " << to_string(mode) << '\n'
           << line("grad_term", q.grad_term) << line("curvature_term", q.curvature_term)
           << line("mass_term", q.mass_term) << line("Q", q.total)
           << line("I", 2.0 * q.total / piece.length()) << line("error_estimate", q.error_estimate);
      emit(text.str(), "-");
    } else if (*crit_cmd) {
      const StabilityMode mode = mode_of(c_strong);
      CriticalLength critical{};
      nlohmann::ordered_json doc;
      if (c_radius) {
        if (c_strong) throw Error(ErrorCode::InvalidArgument, "cylinders have no strong-mode closed form");
        critical = cyl_soliton_L0(*c_radius);
        doc["radius"] = *c_radius;
      } else if (c_lambda) {
        const ProfileCurve curve = make_curve(*c_lambda);
        doc["lambda"] = *c_lambda;
        if (curve.kind() == SolitonCase::GreaterThanOne) {
          if (c_uniform) {
            critical = L0_gt1_uniform(*c_lambda, mode);
          } else {
            if (!c_sigma) throw Error(ErrorCode::InvalidArgument, "lambda > 1 needs --sigma or --uniform");
            critical = L0_gt1(*c_lambda, *c_sigma, mode);
            doc["sigma"] = *c_sigma;
          }
        } else {
          if (!c_s0) throw Error(ErrorCode::InvalidArgument, "lambda <= 1 needs --s0");
          doc["s0"] = *c_s0;
          critical = curve.kind() == SolitonCase::EqualOne ? L0_eq1(*c_s0, mode)
                                                           : L0_lt1_numeric(*c_lambda, *c_s0, mode);
        }
      } else {
        throw Error(ErrorCode::InvalidArgument, "critical-length needs --lambda or --radius");
      }
      std::ostringstream text;
      if (c_format == "json") {
        doc["L0"] = critical.value;
        doc["method"] = std::string(to_string(critical.method));
        doc["mode"] = std::string(to_string(critical.mode));
        text << doc.dump(2) << '\n';
      } else {
        text << "L0: " << io::format_fixed4(critical.value) << '\n'
             << line("value", critical.value) << "method: " << to_string(critical.method) << '\n'
             << "mode: " << to_string(critical.mode) << '\n';
      }
      emit(text.str(), "-");
    } else if (*table_cmd) {
      const ProfileCurve curve = make_curve(t_lambda);
      if (curve.kind() != SolitonCase::LessThanOne) {
        throw Error(ErrorCode::WrongCase, "tables are defined for 0 < lambda < 1");
      }
      if (t_s0.empty() || t_lengths.empty()) {
        const auto grid = io::default_table_grid(t_lambda);
        if (!grid) throw Error(ErrorCode::InvalidArgument, "no reference grid for this lambda; pass --s0 and --L");
        if (t_s0.empty()) t_s0 = grid->first;
        if (t_lengths.empty()) t_lengths = grid->second;
      }
      const io::TableReport report = io::make_report(table_I(t_lambda, t_s0, t_lengths));
      emit(t_format == "csv" ? io::render_csv(report) : io::render_markdown(report), t_out);
    } else if (*cyl_cmd) {
      const CylinderSpec cyl(y_radius, y_length);
      std::ostringstream text;
      text << line("cmc_Q", cyl_cmc_q(cyl)) << line("cmc_L0", cyl_cmc_L0(y_radius).value)
           << line("soliton_Q", cyl_soliton_q(cyl)) << line("soliton_Q_closed_form", cyl_soliton_q_closed(cyl))
           << line("sign_factor", cylinder_sign_factor(cyl));
      if (y_radius < std::numbers::sqrt2) {
        text << line("soliton_L0", cyl_soliton_L0(y_radius).value);
      } else {
        text << "soliton_L0: none (r >= sqrt(2))\n";
      }
      text << line("half_sine_plain_Q", cyl_alt_q(cyl, CylinderAltVariant::HalfSinPlain))
           << line("half_sine_damped_Q", cyl_alt_q(cyl, CylinderAltVariant::HalfSinDamped));
      emit(text.str(), "-");
    } else if (*mesh_cmd) {
      if (m_ns < 2 || m_nt < 2) throw Error(ErrorCode::InvalidArgument, "mesh needs --ns >= 2 and --nt >= 2");
      io::Mesh mesh;
      if (m_radius) {
        mesh = io::cylinder_mesh(CylinderSpec(*m_radius, m_length), m_ns, m_nt);
      } else if (m_lambda) {
        mesh = io::piece_mesh(select_piece(*m_lambda, m_sigma, m_s0, m_length), m_ns, m_nt);
      } else {
        throw Error(ErrorCode::InvalidArgument, "mesh needs --lambda or --radius");
      }
      std::ostringstream text;
      io::write_obj(text, mesh);
      emit(text.str(), m_out);
    } else if (*verify_cmd) {
      verify::Options options;
      options.suite = v_suite;
      options.lambda = v_lambda;
      options.quadrature = QuadratureConfig{v_tol, v_tol, 2000};
      options.quadrature.validate();
      const verify::Report report = verify::run(options);
      verify::print(std::cout, report);
      return report.ok() ? 0 : kExitVerify;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
