#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kac/builders.hpp"
#include "kac/cli.hpp"
#include "kac/io.hpp"

using namespace kac;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("kac_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);) out.push_back(l);
  return out;
}

RunConfig config(const std::string& algebra, const fs::path& out) {
  RunConfig c;
  c.algebra = algebra;
  c.out = out.string();
  c.samples = 200;
  return c;
}

}  // namespace

TEST(LoadAlgebra, Sources) {
  EXPECT_EQ(load_algebra("zn:5").dims().size(), 5u);
  EXPECT_EQ(load_algebra("zn-group:4").dims().size(), 4u);
  EXPECT_EQ(load_algebra("s3-function").dims().size(), 6u);
  EXPECT_EQ(load_algebra("q8-group").dims().size(), 5u);
  const auto dir = scratch("load");
  write_json_file((dir / "d4.json").string(), group_table_to_json(builtin_group("d4")));
  EXPECT_EQ(load_algebra("table:" + (dir / "d4.json").string()).dims().size(), 8u);
  EXPECT_EQ(load_algebra("table-group:" + (dir / "d4.json").string()).dims().size(), 5u);
  write_json_file((dir / "alg.json").string(), algebra_to_json(group_algebra(builtin_group("s3"))));
  EXPECT_EQ(load_algebra("file:" + (dir / "alg.json").string()).dims().size(), 3u);
  for (const char* bad : {"a5", "zn:x", "zn:0", "nope:1"}) EXPECT_THROW(load_algebra(bad), Error) << bad;
}

TEST(Verify, PassingAlgebras) {
  for (const char* src : {"zn:6", "s3-function", "q8-group"}) {
    const auto dir = scratch(std::string("verify_") + src);
    std::ostringstream log;
    EXPECT_EQ(cmd_verify(config(src, dir), log), 0) << src << log.str();
    const auto report = read_json_file((dir / "report.json").string());
    EXPECT_TRUE(report["passed"].get<bool>());
    EXPECT_TRUE(report.contains("dual_axioms"));
    EXPECT_TRUE(report.contains("inequalities"));
    const auto csv = lines(slurp(dir / "violations.csv"));
    ASSERT_FALSE(csv.empty());
    EXPECT_EQ(csv.front(), "algebra,sample_id,inequality_name,lhs,rhs,violation");
    EXPECT_TRUE(fs::exists(dir / "ds_histogram.csv"));
  }
}

TEST(Verify, SuiteSelection) {
  const auto dir = scratch("verify_suite");
  auto c = config("zn:4", dir);
  c.suite = "axioms";
  std::ostringstream log;
  EXPECT_EQ(cmd_verify(c, log), 0);
  const auto report = read_json_file((dir / "report.json").string());
  EXPECT_TRUE(report.contains("axioms"));
  EXPECT_FALSE(report.contains("inequalities"));
}

TEST(Verify, BrokenComultiplication) {
  const auto dir = scratch("verify_broken");
  auto j = algebra_to_json(function_algebra(cyclic_group(4)));
  auto& e = j["comul"][0];
  e[3] = e[3].get<double>() + 1e-3;
  write_json_file((dir / "broken.json").string(), j);
  std::ostringstream log;
  EXPECT_EQ(cmd_verify(config("file:" + (dir / "broken.json").string(), dir), log), 1);
  bool coassoc = false;
  for (const auto& l : lines(slurp(dir / "violations.csv")))
    if (l.find(",coassociativity,") != std::string::npos) {
      coassoc = true;
      EXPECT_GT(std::stod(l.substr(l.rfind(',') + 1)), 1e-4) << l;
    }
  EXPECT_TRUE(coassoc);
}

TEST(Verify, LoadFailures) {
  const auto dir = scratch("verify_load");
  std::ostringstream log;
  EXPECT_EQ(cmd_verify(config("bogus", dir), log), 2);
  EXPECT_EQ(cmd_verify(config("file:/nonexistent/alg.json", dir), log), 2);
  auto c = config("zn:4", dir);
  c.elements = {"/nonexistent/x.json"};
  EXPECT_EQ(cmd_verify(c, log), 2);
  EXPECT_EQ(cmd_minimizers(config("bogus", dir), log), 2);
}

TEST(Verify, ElementReports) {
  const auto dir = scratch("verify_elements");
  const auto k = function_algebra(cyclic_group(4));
  write_json_file((dir / "x.json").string(), element_to_json(indicator(k, {1, 3})));
  auto c = config("zn:4", dir);
  c.elements = {(dir / "x.json").string()};
  c.suite = "axioms";
  std::ostringstream log;
  ASSERT_EQ(cmd_verify(c, log), 0) << log.str();
  const auto report = read_json_file((dir / "report.json").string());
  ASSERT_EQ(report["elements"].size(), 1u);
  EXPECT_NEAR(report["elements"][0]["report"]["ds_product"].get<double>(), 1, 1e-9);
}

TEST(Verify, DeterministicUnderSeed) {
  const auto a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream log;
  ASSERT_EQ(cmd_verify(config("s3-function", a), log), 0);
  ASSERT_EQ(cmd_verify(config("s3-function", b), log), 0);
  EXPECT_EQ(slurp(a / "violations.csv"), slurp(b / "violations.csv"));
  EXPECT_EQ(slurp(a / "ds_histogram.csv"), slurp(b / "ds_histogram.csv"));
}

TEST(Minimizers, Z4) {
  const auto dir = scratch("min_z4");
  std::ostringstream log;
  ASSERT_EQ(cmd_minimizers(config("zn:4", dir), log), 0) << log.str();
  const auto report = read_json_file((dir / "report.json").string());
  EXPECT_EQ(report["biprojections"].size(), 3u);
  EXPECT_EQ(report["alarms"].get<int>(), 0);
  const auto csv = lines(slurp(dir / "minimizers.csv"));
  ASSERT_GT(csv.size(), 1u);
  EXPECT_EQ(csv.front().rfind("algebra,candidate_id,kind,description,entropy_equality", 0), 0u);
  for (std::size_t i = 1; i < csv.size(); ++i) EXPECT_NE(csv[i].find(",true,true,true,true,true,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "certs" / "bishift_000.json"));
  // the modulated coset (0, 1, 0, -1) is among the certificates, up to scale
  bool found = false;
  for (const auto& f : fs::directory_iterator(dir / "certs")) {
    const auto x = element_from_json(read_json_file(f.path().string())["x"]);
    const VectorXc v = x.coefficients();
    if (std::abs(v(0)) < 1e-9 && std::abs(v(2)) < 1e-9 && std::abs(v(1) + v(3)) < 1e-9 && std::abs(v(1)) > 1e-3)
      found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Minimizers, Z5Randoms) {
  const auto dir = scratch("min_z5");
  auto c = config("zn:5", dir);
  c.random = 1000;
  std::ostringstream log;
  ASSERT_EQ(cmd_minimizers(c, log), 0) << log.str();
  const auto report = read_json_file((dir / "report.json").string());
  EXPECT_EQ(report["biprojections"].size(), 2u);
  EXPECT_EQ(report["minimal_random"].get<int>(), 0);
  int randoms = 0;
  for (const auto& l : lines(slurp(dir / "minimizers.csv")))
    if (l.find(",random,") != std::string::npos) {
      ++randoms;
      EXPECT_NE(l.find(",false,false,false,false,true,"), std::string::npos) << l;
    }
  EXPECT_EQ(randoms, 1000);
}

TEST(Minimizers, S3FunctionAndDeterminism) {
  const auto a = scratch("min_s3_a"), b = scratch("min_s3_b");
  auto ca = config("s3-function", a), cb = config("s3-function", b);
  ca.random = cb.random = 50;
  std::ostringstream log;
  ASSERT_EQ(cmd_minimizers(ca, log), 0) << log.str();
  ASSERT_EQ(cmd_minimizers(cb, log), 0);
  EXPECT_EQ(read_json_file((a / "report.json").string())["biprojections"].size(), 6u);
  EXPECT_EQ(slurp(a / "minimizers.csv"), slurp(b / "minimizers.csv"));
}
