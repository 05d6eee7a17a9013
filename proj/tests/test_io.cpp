#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "plateau/io.hpp"

using namespace plateau;

TEST(Format, Numbers) {
  EXPECT_EQ(io::format_full(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_short(0.1), "0.1");
  EXPECT_EQ(io::format_full(-0.0), "0");
  EXPECT_EQ(io::format_fixed4(-0.00004), "0.0000");
  EXPECT_EQ(io::format_fixed4(2.15704), "2.1570");
}

TEST(Format, RoundHalfAwayFromZero) {
  EXPECT_EQ(io::round4(0.00125), 0.0013);
  EXPECT_EQ(io::round4(-0.00125), -0.0013);
  EXPECT_EQ(io::round4(1.23444), 1.2344);
}

TEST(Parse, Doubles) {
  EXPECT_EQ(io::parse_double("1.25"), 1.25);
  EXPECT_THROW(io::parse_double("1.2x"), Error);
  EXPECT_THROW(io::parse_double(""), Error);
}

TEST(CurveCsv, HeaderAndOriginRow) {
  std::ostringstream out;
  io::write_curve_csv(out, make_curve(1.0), -1.0, 1.0, 3);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "s,x1,x3,dx1,dx3,kappa,weight");
  EXPECT_NE(out.str().find("\n0,0,0,1,0,2,1\n"), std::string::npos);
}

TEST(CurveCsv, Errors) {
  std::ostringstream out;
  EXPECT_THROW(io::write_curve_csv(out, make_curve(1.0), 0.0, 1.0, 1), Error);
  EXPECT_THROW(io::write_curve_csv(out, make_curve(1.0), 1.0, 0.0, 5), Error);
}

TEST(Mesh, SingleQuad) {
  const auto piece = PieceSpec::symmetric(make_curve(1.0), 3.0, 5.0);
  const auto mesh = io::piece_mesh(piece, 2, 2);
  EXPECT_EQ(mesh.vertices.size(), 4u);
  EXPECT_EQ(mesh.triangles.size(), 2u);
}

TEST(Mesh, MiddleVertexOnAxis) {
  const auto piece = PieceSpec::symmetric(make_curve(1.0), 3.0, 5.0);
  const auto mesh = io::piece_mesh(piece, 3, 2);
  const std::array<double, 3> a{0.0, 0.0, 0.0}, b{0.0, 5.0, 0.0};
  EXPECT_EQ(mesh.vertices[2], a);
  EXPECT_EQ(mesh.vertices[3], b);
}

TEST(Mesh, ObjIsOneBased) {
  const auto mesh = io::cylinder_mesh(CylinderSpec(1.0, 2.0), 4, 3);
  std::ostringstream out;
  io::write_obj(out, mesh);
  const std::string text = out.str();
  EXPECT_EQ(text.find("f 0"), std::string::npos);
  EXPECT_NE(text.find("f 1 4 5\n"), std::string::npos);
  EXPECT_EQ(mesh.vertices.size(), 12u);
  EXPECT_EQ(mesh.triangles.size(), 12u);
}

TEST(Tables, CsvRoundTripIsIdempotent) {
  const auto report = io::make_report(table_I(0.75, {2, 4}, {2, 8, 12}));
  const std::string csv = io::render_csv(report);
  const auto parsed = io::parse_table_csv(csv);
  EXPECT_EQ(io::render_csv(parsed), csv);
  EXPECT_EQ(io::render_markdown(parsed), io::render_markdown(report));
  EXPECT_EQ(parsed.first_negative, report.first_negative);
}

TEST(Tables, MarkdownBoldsFirstNegative) {
  const auto report = io::make_report(table_I(0.75, {2}, {6, 8, 10}));
  const std::string md = io::render_markdown(report);
  EXPECT_NE(md.find("Values of I(u) for lambda = 0.75"), std::string::npos);
  EXPECT_NE(md.find("**-0.1274**"), std::string::npos);
  EXPECT_EQ(md.find("**-0.5715**"), std::string::npos);
}

TEST(Tables, ParseRejectsMalformed) {
  EXPECT_THROW(io::parse_table_csv(""), Error);
  EXPECT_THROW(io::parse_table_csv("a,b,c,d\n"), Error);
  EXPECT_THROW(io::parse_table_csv("lambda,s0,L=2,first_negative_L\n0.5,2\n"), Error);
  EXPECT_THROW(io::parse_table_csv("lambda,s0,L=2,first_negative_L\n0.5,2,1.0,7\n"), Error);
}
