#pragma once

// Text emitters: curve samples as CSV, surface pieces as Wavefront OBJ and
// reduced-form tables as markdown or CSV. All number formatting goes through
// std::to_chars, so output never depends on the global locale.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "plateau/error.hpp"
#include "plateau/profile_curve.hpp"
#include "plateau/stability.hpp"

namespace plateau::io {

namespace detail {

template <typename... Args>
std::string to_chars_string(double value, Args... args) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, args...);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "number formatting failed");
  return std::string(buffer.data(), end);
}

}  // namespace detail

/// 17 significant digits, %g style.
inline std::string format_full(double value) {
  return detail::to_chars_string(value, std::chars_format::general, 17);
}

/// Shortest representation that round-trips.
inline std::string format_short(double value) { return detail::to_chars_string(value); }

/// Round half away from zero to 4 decimals.
inline double round4(double value) { return std::round(value * 1e4) / 1e4; }

inline std::string format_fixed4(double value) {
  return detail::to_chars_string(round4(value), std::chars_format::fixed, 4);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// ---------------------------------------------------------------------------
// Curve CSV

inline constexpr std::string_view kCurveHeader = "s,x1,x3,dx1,dx3,kappa,weight";

/// One row per uniform sample of [s_min, s_max].
inline void write_curve_csv(std::ostream& out, const ProfileCurve& curve, double s_min,
                            double s_max, int samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "curve export needs at least 2 samples");
  if (!std::isfinite(s_min) || !std::isfinite(s_max) || !(s_min < s_max)) {
    throw Error(ErrorCode::InvalidArgument, "curve export needs finite s_min < s_max");
  }
  out << kCurveHeader << '\n';
  const double step = (s_max - s_min) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double s = (i == samples - 1) ? s_max : s_min + i * step;
    const CurveSample p = curve.sample(s);
    out << format_full(p.s) << ',' << format_full(p.x1) << ',' << format_full(p.x3) << ','
        << format_full(p.dx1) << ',' << format_full(p.dx3) << ',' << format_full(p.kappa) << ','
        << format_full(p.weight) << '\n';
  }
}

// ---------------------------------------------------------------------------
// OBJ meshes

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> triangles;  // 0-based
};

/// Quad grid of psi over [s_lo, s_hi] x [t_lo, t_hi], vertices s-major
/// (index = i_s * nt + i_t), each quad split into two triangles.
template <typename Psi>
Mesh grid_mesh(Psi&& psi, double s_lo, double s_hi, double t_lo, double t_hi, int ns, int nt) {
  if (ns < 2 || nt < 2) throw Error(ErrorCode::InvalidArgument, "mesh needs ns >= 2 and nt >= 2");
  Mesh mesh;
  const auto nsz = static_cast<std::size_t>(ns);
  const auto ntz = static_cast<std::size_t>(nt);
  mesh.vertices.reserve(nsz * ntz);
  for (int i = 0; i < ns; ++i) {
    const double s = (i == ns - 1) ? s_hi : s_lo + (s_hi - s_lo) * i / (ns - 1);
    for (int j = 0; j < nt; ++j) {
      const double t = (j == nt - 1) ? t_hi : t_lo + (t_hi - t_lo) * j / (nt - 1);
      mesh.vertices.push_back(psi(s, t));
    }
  }
  for (std::size_t i = 0; i + 1 < nsz; ++i) {
    for (std::size_t j = 0; j + 1 < ntz; ++j) {
      const std::size_t v00 = i * ntz + j;
      const std::size_t v10 = (i + 1) * ntz + j;
      const std::size_t v11 = (i + 1) * ntz + j + 1;
      const std::size_t v01 = i * ntz + j + 1;
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

/// Psi(s, t) = (x1(s), t, x3(s)) over the piece.
inline Mesh piece_mesh(const PieceSpec& piece, int ns, int nt) {
  const ProfileCurve& curve = piece.curve();
  return grid_mesh(
      [&](double s, double t) {
        return std::array<double, 3>{curve.x1(s), t, curve.x3(s)};
      },
      piece.a(), piece.b(), 0.0, piece.length(), ns, nt);
}

/// Psi(s, t) = (r cos(s/r), r sin(s/r), t) for s in [0, 2 pi r].
inline Mesh cylinder_mesh(const CylinderSpec& cyl, int ns, int nt) {
  const double r = cyl.radius();
  return grid_mesh(
      [r](double s, double t) {
        return std::array<double, 3>{r * std::cos(s / r), r * std::sin(s / r), t};
      },
      0.0, 2.0 * std::numbers::pi * r, 0.0, cyl.length(), ns, nt);
}

inline void write_obj(std::ostream& out, const Mesh& mesh) {
  for (const auto& v : mesh.vertices) {
    out << "v " << format_full(v[0]) << ' ' << format_full(v[1]) << ' ' << format_full(v[2]) << '\n';
  }
  for (const auto& f : mesh.triangles) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

// ---------------------------------------------------------------------------
// Reduced-form tables

struct TableReport {
  double lambda = 0.0;
  std::vector<double> s0_rows;
  std::vector<double> length_columns;
  std::vector<std::vector<double>> cells;  // rounded to 4 decimals
  std::vector<std::optional<std::size_t>> first_negative;
};

inline TableReport make_report(const TableResult& table) {
  TableReport report{table.lambda, table.s0_rows, table.length_columns, {}, table.first_negative};
  for (const auto& row : table.cells) {
    std::vector<double> rounded;
    for (double v : row) rounded.push_back(round4(v));
    report.cells.push_back(std::move(rounded));
  }
  return report;
}

/// Grids of the three reference tables (lambda = 1/4, 1/2, 3/4).
inline std::optional<std::pair<std::vector<double>, std::vector<double>>> default_table_grid(
    double lambda) {
  if (lambda == 0.25) return std::pair{std::vector<double>{3, 4, 5, 6, 7}, std::vector<double>{15, 20, 25, 30, 35, 40}};
  if (lambda == 0.5) return std::pair{std::vector<double>{2, 4, 6, 8, 10}, std::vector<double>{10, 12, 14, 16, 18, 20}};
  if (lambda == 0.75) return std::pair{std::vector<double>{2, 4, 6, 8, 10}, std::vector<double>{2, 4, 6, 8, 10, 12}};
  return std::nullopt;
}

/// Markdown table; the first negative entry of each row is set in bold.
inline std::string render_markdown(const TableReport& report) {
  std::ostringstream out;
  out << "Values of I(u) for lambda = " << format_short(report.lambda) << "\n\n";
  out << "| s0 \\ L |";
  for (double L : report.length_columns) out << ' ' << format_short(L) << " |";
  out << "\n|---|";
  for (std::size_t j = 0; j < report.length_columns.size(); ++j) out << "---|";
  out << '\n';
  for (std::size_t i = 0; i < report.s0_rows.size(); ++i) {
    out << "| " << format_short(report.s0_rows[i]) << " |";
    for (std::size_t j = 0; j < report.cells[i].size(); ++j) {
      const bool boxed = report.first_negative[i] && *report.first_negative[i] == j;
      const std::string cell = format_fixed4(report.cells[i][j]);
      out << ' ' << (boxed ? "**" + cell + "**" : cell) << " |";
    }
    out << '\n';
  }
  return out.str();
}

/// CSV with header `lambda,s0,L=<L1>,...,first_negative_L`; the last column
/// holds the L of the first negative entry or is empty.
inline std::string render_csv(const TableReport& report) {
  std::ostringstream out;
  out << "lambda,s0";
  for (double L : report.length_columns) out << ",L=" << format_short(L);
  out << ",first_negative_L\n";
  for (std::size_t i = 0; i < report.s0_rows.size(); ++i) {
    out << format_short(report.lambda) << ',' << format_short(report.s0_rows[i]);
    for (double v : report.cells[i]) out << ',' << format_fixed4(v);
    out << ',';
    if (report.first_negative[i]) out << format_short(report.length_columns[*report.first_negative[i]]);
    out << '\n';
  }
  return out.str();
}

inline TableReport parse_table_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw Error(ErrorCode::InvalidArgument, "empty table CSV");

  const auto header = split(lines[0], ',');
  if (header.size() < 4 || header[0] != "lambda" || header[1] != "s0" ||
      header.back() != "first_negative_L") {
    throw Error(ErrorCode::InvalidArgument, "unexpected table CSV header");
  }
  TableReport report;
  for (std::size_t j = 2; j + 1 < header.size(); ++j) {
    if (header[j].substr(0, 2) != "L=") throw Error(ErrorCode::InvalidArgument, "bad column header");
    report.length_columns.push_back(parse_double(header[j].substr(2)));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != header.size()) throw Error(ErrorCode::InvalidArgument, "ragged table CSV row");
    report.lambda = parse_double(fields[0]);
    report.s0_rows.push_back(parse_double(fields[1]));
    std::vector<double> row;
    for (std::size_t j = 2; j + 1 < fields.size(); ++j) row.push_back(parse_double(fields[j]));
    report.cells.push_back(std::move(row));
    std::optional<std::size_t> mark;
    if (!fields.back().empty()) {
      const double L = parse_double(fields.back());
      for (std::size_t j = 0; j < report.length_columns.size(); ++j) {
        if (report.length_columns[j] == L) mark = j;
      }
      if (!mark) throw Error(ErrorCode::InvalidArgument, "first_negative_L is not a column");
    }
    report.first_negative.push_back(mark);
  }
  return report;
}

}  // namespace plateau::io
