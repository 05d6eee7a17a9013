#include <gtest/gtest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("plateau_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliRun run(const std::string& args) {
  const fs::path err_file = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(PLATEAU_CLI) + " " + args + " 2>" + err_file.string();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "", ""};
  std::string out;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_file)};
}

int count_lines(const std::string& text, const std::string& prefix) {
  int count = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) count += line.rfind(prefix, 0) == 0;
  return count;
}

void expect_usage_error(const std::string& args) {
  const CliRun r = run(args);
  EXPECT_EQ(r.code, 1) << args;
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << args << ": " << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << args << ": " << r.err;
}

}  // namespace

TEST(Cli, HelpMatchesGolden) {
  const fs::path golden(PLATEAU_GOLDEN_DIR);
  EXPECT_EQ(run("--help").out, slurp(golden / "help.txt"));
  for (const char* cmd : {"curve", "qform", "critical-length", "table", "cylinder", "mesh", "verify"}) {
    const CliRun r = run(std::string(cmd) + " --help");
    EXPECT_EQ(r.code, 0) << cmd;
    EXPECT_EQ(r.out, slurp(golden / (std::string(cmd) + "_help.txt"))) << cmd;
  }
}

TEST(Cli, CurveCsv) {
  const CliRun r = run("curve --lambda 1 --s-min -1 --s-max 1 --samples 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "s,x1,x3,dx1,dx3,kappa,weight");
  EXPECT_NE(r.out.find("\n0,0,0,1,0,2,1\n"), std::string::npos);
  EXPECT_EQ(count_lines(r.out, ""), 4);
  EXPECT_EQ(count_lines(run("curve --lambda 2").out, ""), 202);
}

TEST(Cli, OutputsAreByteIdenticalAcrossRuns) {
  const fs::path a = scratch_dir() / "a.csv", b = scratch_dir() / "b.csv";
  ASSERT_EQ(run("curve --lambda 0.5 --out " + a.string()).code, 0);
  ASSERT_EQ(run("curve --lambda 0.5 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a).find('\r'), std::string::npos);

  const fs::path m1 = scratch_dir() / "a.obj", m2 = scratch_dir() / "b.obj";
  ASSERT_EQ(run("mesh --lambda 2 --sigma 0.4 --length 3 --out " + m1.string()).code, 0);
  ASSERT_EQ(run("mesh --lambda 2 --sigma 0.4 --length 3 --out " + m2.string()).code, 0);
  EXPECT_EQ(slurp(m1), slurp(m2));
}

TEST(Cli, MeshCounts) {
  const fs::path obj = scratch_dir() / "quad.obj";
  ASSERT_EQ(run("mesh --lambda 1 --s0 3 --length 5 --ns 2 --nt 2 --out " + obj.string()).code, 0);
  EXPECT_EQ(count_lines(slurp(obj), "v "), 4);
  EXPECT_EQ(count_lines(slurp(obj), "f "), 2);

  ASSERT_EQ(run("mesh --lambda 1 --s0 3 --length 5 --ns 3 --nt 2 --out " + obj.string()).code, 0);
  const std::string text = slurp(obj);
  EXPECT_NE(text.find("v 0 0 0\nv 0 5 0\n"), std::string::npos);

  ASSERT_EQ(run("mesh --radius 1 --length 2 --ns 5 --nt 4 --out " + obj.string()).code, 0);
  EXPECT_EQ(count_lines(slurp(obj), "v "), 20);
  EXPECT_EQ(count_lines(slurp(obj), "f "), 24);
}

TEST(Cli, CriticalLengthText) {
  CliRun r = run("critical-length --lambda 1 --s0 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("L0: 6.0127\n", 0), 0u);
  EXPECT_NE(r.out.find("method: ClosedForm"), std::string::npos);
  r = run("critical-length --lambda 1 --s0 2 --strong");
  EXPECT_EQ(r.out.rfind("L0: 3.0063\n", 0), 0u);
  EXPECT_EQ(run("critical-length --lambda 3 --uniform").out.rfind("L0: 3.0504\n", 0), 0u);
  EXPECT_EQ(run("critical-length --radius 1").out.rfind("L0: 8.8858\n", 0), 0u);
}

TEST(Cli, CriticalLengthJson) {
  const CliRun r = run("critical-length --lambda 0.5 --s0 4 --format json");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["method"], "RootFound");
  EXPECT_EQ(doc["mode"], "VolumePreserving");
  EXPECT_GT(doc["L0"].get<double>(), 10.0);
  EXPECT_LT(doc["L0"].get<double>(), 12.0);
}

TEST(Cli, TableCsvMarks) {
  const CliRun r = run("table --lambda 0.75 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "lambda,s0,L=2,L=4,L=6,L=8,L=10,L=12,first_negative_L");
  EXPECT_NE(r.out.find("\n0.75,2,18.3781,"), std::string::npos);
  EXPECT_NE(r.out.find(",8\n0.75,4,"), std::string::npos);
  EXPECT_EQ(r.out.substr(r.out.size() - 2), ",\n");
}

TEST(Cli, TableMarkdown) {
  const CliRun r = run("table --lambda 0.5 --s0 4 --L 10,12");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Values of I(u) for lambda = 0.5"), std::string::npos);
  EXPECT_NE(r.out.find("| 4 | 0.3298 | **-0.1527** |"), std::string::npos);
}

TEST(Cli, QformAndCylinder) {
  CliRun r = run("qform --lambda 0.25 --s0 3 --length 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("I: 7.116"), std::string::npos);
  r = run("cylinder --radius 1 --length 9");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("soliton_L0: 8.885765876316"), std::string::npos);
  r = run("cylinder --radius 2 --length 9");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("soliton_L0: none"), std::string::npos);
}

TEST(Cli, ErrorPaths) {
  expect_usage_error("");
  expect_usage_error("bogus");
  expect_usage_error("curve");
  expect_usage_error("curve --lambda 0");
  expect_usage_error("curve --lambda abc");
  expect_usage_error("curve --lambda 1 --samples 1");
  expect_usage_error("curve --lambda 1 --out /nonexistent/dir/x.csv");
  expect_usage_error("critical-length --lambda 1 --s0 1");
  expect_usage_error("critical-length --lambda 2 --sigma 9");
  expect_usage_error("critical-length --lambda 0.5 --s0 1");
  expect_usage_error("critical-length --radius 1.5");
  expect_usage_error("critical-length --radius 1 --lambda 2");
  expect_usage_error("critical-length --lambda 2 --format xml");
  expect_usage_error("table --lambda 2");
  expect_usage_error("table --lambda 0.3");
  expect_usage_error("mesh --lambda 1 --s0 3 --length 5 --ns 1 --out x.obj");
  expect_usage_error("mesh --lambda 1 --s0 3 --length 5 --out /nonexistent/dir/x.obj");
  expect_usage_error("qform --lambda 2 --length 3");
  expect_usage_error("verify --suite nope");
  expect_usage_error("verify --quad-tol -1");
}

TEST(Cli, VerifySingleTable) {
  const CliRun r = run("verify --suite tables --lambda 0.25");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out, "[PASS] tables"), 1);
  EXPECT_NE(r.out.find("lambda=0.25"), std::string::npos);
}

TEST(Cli, VerifyLoosenedToleranceFails) {
  const CliRun r = run("verify --suite tables --quad-tol 1e-2");
  EXPECT_EQ(r.code, 2);
  EXPECT_GE(count_lines(r.out, "[FAIL] tables"), 1);
}

TEST(Cli, VerifyFullSuite) {
  const CliRun r = run("verify");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(count_lines(r.out, "[FAIL]"), 0);
  EXPECT_GE(count_lines(r.out, "[INFO] errata"), 2);
}
