#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "diskweyl/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "diskweyl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = diskweyl::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("diskweyl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_;
};

}  // namespace

TEST(Cli, CountAtFour) {
  const Result r = invoke({"count", "--mu", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n_disk"], 3);
  EXPECT_EQ(j["n_lattice"], 3);
  EXPECT_EQ(j["weyl2"], 2.0);
  EXPECT_EQ(j["remainder"], 1.0);
  EXPECT_EQ(j["diff"], 0);
}

TEST(Cli, CountAtTwo) {
  const Result r = invoke({"count", "--mu", "2"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n_disk"], 0);
  EXPECT_EQ(j["remainder"], 0.0);
}

TEST(Cli, ArgumentErrorsExitTwoWithRecord) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"count"}, {"count", "--mu", "-1"}, {"bogus"}, {"verify", "--suite", "nope"},
           {"scan", "--mu-min", "5", "--mu-max", "4", "--step", "1"}}) {
    const Result r = invoke(args);
    EXPECT_EQ(r.code, 2) << args[0];
    const auto j = nlohmann::json::parse(r.err);
    EXPECT_TRUE(j.contains("error"));
    EXPECT_TRUE(j.contains("message"));
  }
}

TEST(Cli, CostGuardIsArgumentError) {
  diskweyl::cli::RunConfig cfg;
  cfg.command = diskweyl::cli::Command::verify;
  cfg.suite = diskweyl::verify::Suite::lattice;
  cfg.suite_mu = {5000.0};
  std::ostringstream out, err;
  EXPECT_EQ(diskweyl::cli::run(cfg, out, err), 2);
  EXPECT_NE(err.str().find("invalid_input"), std::string::npos);
}

TEST_F(CliFiles, ZerosCsv) {
  const Result r = invoke({"zeros", "--n-max", "3", "--mu", "12", "--out", path("z.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(path("z.csv")));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,k,x,residual");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0,1,2.4048255576957", 0), 0u) << line;
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  // Zeros below 12: J0 4, J1 3, J2 3, J3 2.
  EXPECT_EQ(rows, 12);
  EXPECT_EQ(slurp(path("z.csv")).find('\r'), std::string::npos);
}

TEST_F(CliFiles, ScanThenFitRoundTrip) {
  const Result s = invoke({"scan", "--mu-min", "50", "--mu-max", "250", "--step", "1",
                           "--out", path("scan.csv")});
  ASSERT_EQ(s.code, 0) << s.err;
  const std::string csv = slurp(path("scan.csv"));
  EXPECT_EQ(csv.rfind("mu,n_disk,n_lattice,weyl2,remainder,diff\n", 0), 0u);

  const Result f = invoke({"fit", "--in", path("scan.csv"), "--block", "20"});
  ASSERT_EQ(f.code, 0) << f.err;
  const auto j = nlohmann::json::parse(f.out);
  EXPECT_EQ(j["block_size"], 20);
  EXPECT_EQ(j["sample_count"], 200);
  EXPECT_LT(j["exponent"].get<double>(), 1.0);

  const Result d = invoke({"fit", "--in", path("scan.csv"), "--field", "diff"});
  EXPECT_EQ(d.code, 0) << d.err;
}

TEST_F(CliFiles, ScanDeterministicAcrossThreads) {
  ASSERT_EQ(invoke({"scan", "--mu-min", "10", "--mu-max", "120", "--step", "0.5", "--threads", "1",
                    "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(invoke({"scan", "--mu-min", "10", "--mu-max", "120", "--step", "0.5", "--threads", "3",
                    "--out", path("b.csv")}).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliFiles, FitPlantedPowerLaw) {
  {
    std::ofstream out(path("p.csv"), std::ios::binary);
    out << "mu,remainder\n";
    for (int i = 0; i < 400; ++i) {
      const double mu = 10.0 + i;
      out << diskweyl::cli::detail::g17(mu) << ','
          << diskweyl::cli::detail::g17(std::pow(mu, 2.0 / 3.0)) << '\n';
    }
  }
  const Result f = invoke({"fit", "--in", path("p.csv"), "--out", path("fit.json")});
  ASSERT_EQ(f.code, 0) << f.err;
  const auto j = nlohmann::json::parse(slurp(path("fit.json")));
  EXPECT_NEAR(j["exponent"].get<double>(), 2.0 / 3.0, 0.01);
}

TEST_F(CliFiles, FitRejectsMalformedCsv) {
  {
    std::ofstream out(path("bad.csv"), std::ios::binary);
    out << "mu,remainder\n1,2\nx,3\n";
  }
  EXPECT_EQ(invoke({"fit", "--in", path("bad.csv")}).code, 2);
  EXPECT_EQ(invoke({"fit", "--in", path("missing.csv")}).code, 2);
}

TEST_F(CliFiles, DegenerateFitIsNumericalFailure) {
  {
    std::ofstream out(path("flat.csv"), std::ios::binary);
    out << "mu,remainder\n";
    for (int i = 0; i < 200; ++i) out << 10 + i << ",0\n";
  }
  const Result r = invoke({"fit", "--in", path("flat.csv")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "numerical_failure");
}

TEST_F(CliFiles, MollifyJson) {
  const Result r = invoke({"mollify", "--mu", "10", "--out", path("m.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("m.json")));
  EXPECT_TRUE(j["ordered"].get<bool>());
  EXPECT_LE(j["n_minus"].get<double>(), j["n_exact"].get<double>());
  EXPECT_LE(j["n_exact"].get<double>(), j["n_plus"].get<double>());
}

TEST(Cli, VerifySuitesPass) {
  for (const char* suite : {"special", "geometry", "lattice", "sandwich"}) {
    const Result r = invoke({"verify", "--suite", suite});
    EXPECT_EQ(r.code, 0) << suite << "\n" << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  }
}

TEST(Cli, VerifyOscillatorySuite) {
  const Result r = invoke({"verify", "--suite", "appendix"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}
