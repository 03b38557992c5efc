#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

using nlohmann::json;
namespace cli = isingff::cli;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "isingff");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv(cli::kToleranceEnv); }
  void TearDown() override { unsetenv(cli::kToleranceEnv); }
};

TEST_F(CliTest, TwoBraParticleFormFactor) {
  const auto r = invoke({"ff", "--kx", "0.4", "--ky", "0.7", "--n", "4", "--site", "0", "--bra", "0,1", "--ket", ""});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "ff");
  ASSERT_EQ(j["results"].size(), 1u);
  const auto& res = j["results"][0];
  EXPECT_EQ(res["bra"], json::array({0, 1}));
  EXPECT_EQ(res["ket"], json::array());
  for (const char* key : {"re", "im", "abs"}) {
    EXPECT_TRUE(res["ff_closed"].contains(key));
  }
  EXPECT_TRUE(res["agreement"]["closed_vs_pfaffian"]["passed"].get<bool>());
  EXPECT_TRUE(res["agreement"]["closed_vs_oracle"]["passed"].get<bool>());
  EXPECT_NEAR(res["oracle_abs"].get<double>(), res["ff_closed"]["abs"].get<double>(), 1e-8);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST_F(CliTest, VerifyAllSucceeds) {
  const auto r = invoke({"verify", "all", "--kx", "0.3", "--ky", "0.9", "--n", "6"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.out;
  const json j = json::parse(r.out);
  EXPECT_LT(j["max_residual"].get<double>(), 1e-10);
  EXPECT_FALSE(j["checks"].empty());
}

TEST_F(CliTest, ParamsReportsDerivedScalars) {
  const auto r = invoke({"params", "--kx", "0.5", "--ky", "0.5"});
  ASSERT_EQ(r.code, cli::kExitOk);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["ferromagnetic"].get<bool>());
  for (const char* key : {"kx_star", "k", "kprime", "K", "Kprime", "eta", "xi", "nome"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_LT(j["kx_star"].get<double>(), 0.5);
}

TEST_F(CliTest, SpectrumListsBothSectors) {
  const auto r = invoke({"spectrum", "--kx", "0.5", "--ky", "0.5", "--n", "3"});
  ASSERT_EQ(r.code, cli::kExitOk);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["points"].size(), 6u);
}

TEST_F(CliTest, CorrelationMatchesOracle) {
  const auto r = invoke({"corr", "--kx", "0.4", "--ky", "0.7", "--n", "4", "--m", "4", "--dx", "1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.out;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), j["oracle"].get<double>(), 1e-8);
}

TEST_F(CliTest, ParseErrors) {
  EXPECT_EQ(invoke({"ff", "--kx", "0.4"}).code, cli::kExitParse);
  EXPECT_EQ(invoke({"bogus"}).code, cli::kExitParse);
  EXPECT_EQ(invoke({"ff", "--kx", "0.4", "--ky", "0.7", "--bra", "1,0", "--ket", ""}).code, cli::kExitParse);
  EXPECT_EQ(invoke({"ff", "--kx", "0.4", "--ky", "0.7", "--bra", "0", "--ket", "9"}).code, cli::kExitParse);
  EXPECT_EQ(invoke({"verify", "nothing", "--kx", "0.4", "--ky", "0.7"}).code, cli::kExitParse);
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, DomainErrorForParamagneticCouplings) {
  const auto r = invoke({"params", "--kx", "0.2", "--ky", "0.2"});
  EXPECT_EQ(r.code, cli::kExitDomain);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["error"]["kind"], "domain");
}

TEST_F(CliTest, ResourceErrorForHugeCorrelationSum) {
  const auto r = invoke({"corr", "--kx", "0.5", "--ky", "0.5", "--n", "40", "--m", "4", "--dx", "1", "--cutoff", "8"});
  EXPECT_EQ(r.code, cli::kExitResource);
}

TEST_F(CliTest, CsvHasOneRowPerPair) {
  const auto r = invoke({"ff", "--kx", "0.7", "--ky", "0.8", "--n", "3", "--bra", "", "--bra", "0,2", "--ket", "",
                         "--ket", "1,2", "--output", "csv"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("site,bra,ket", 0), 0u);
  int rows = 0;
  while (std::getline(lines, line)) {
    rows += !line.empty();
  }
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, ToleranceFromEnvironment) {
  setenv(cli::kToleranceEnv, "1e-300", 1);
  EXPECT_EQ(invoke({"verify", "elliptic", "--kx", "0.5", "--ky", "0.5", "--n", "3"}).code, cli::kExitVerification);
  setenv(cli::kToleranceEnv, "0", 1);
  EXPECT_EQ(invoke({"verify", "elliptic", "--kx", "0.5", "--ky", "0.5", "--n", "3"}).code, cli::kExitParse);
  setenv(cli::kToleranceEnv, "1e-9", 1);
  const auto ok = invoke({"verify", "elliptic", "--kx", "0.5", "--ky", "0.5", "--n", "3"});
  EXPECT_EQ(ok.code, cli::kExitOk);
  EXPECT_EQ(json::parse(ok.out)["tolerance"].get<double>(), 1e-9);
  setenv(cli::kToleranceEnv, "tight", 1);
  EXPECT_EQ(invoke({"verify", "elliptic", "--kx", "0.5", "--ky", "0.5", "--n", "3"}).code, cli::kExitParse);
}

TEST_F(CliTest, RerunsAreBitIdentical) {
  const std::vector<std::string> args{"corr", "--kx", "0.3", "--ky", "0.9", "--n", "6", "--m", "5", "--dx", "2",
                                      "--dy", "3", "--eps-x", "-1"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

}  // namespace
