#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "nosol/serialization.hpp"

using namespace nosol;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nosol_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, VerifyExitCodes) {
  EXPECT_EQ(run({"verify", "--sym", "1,2", "--set", "0,1"}).code, 0);
  const auto witness = run({"verify", "--sym", "1,1", "--set", "1,2,3,4"});
  EXPECT_EQ(witness.code, 1);
  EXPECT_EQ(witness.json()["status"], "witness");
  EXPECT_EQ(witness.json()["witness"].size(), 4u);
  EXPECT_EQ(run({"verify", "--sym", "1,1", "--set", "1,2,3,4", "--mode", "distinct"}).code, 1);
  EXPECT_EQ(run({"verify", "--sym", "1,2,4,8", "--set", "3,17,40,41,58,77,90,99,120", "--budget", "5"}).code, 2);
}

TEST_F(CliTest, VerifyMalformedInput) {
  EXPECT_EQ(run({"verify", "--sym", "1,2"}).code, 64);
  EXPECT_EQ(run({"verify", "--sym", "1,x", "--set", "0,1"}).code, 64);
  EXPECT_EQ(run({"verify", "--eq", "1,2,-2", "--set", "0,1"}).code, 64);
  EXPECT_EQ(run({"verify", "--sym", "1,2", "--set", "0,1", "--mode", "odd"}).code, 64);
  EXPECT_EQ(run({"verify", "--set-file", path("missing.txt"), "--sym", "1,2"}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  write_file_atomic(path("broken.json"), "{ nope");
  EXPECT_EQ(run({"verify", "--cert", path("broken.json")}).code, 64);
}

TEST_F(CliTest, VerifySetFile) {
  write_file_atomic(path("set.txt"), "1\n2\n5\n11\n");
  EXPECT_EQ(run({"verify", "--sym", "1,1", "--set-file", path("set.txt")}).code, 0);
}

TEST_F(CliTest, ConstructWritesCertificateManifestAndSet) {
  const auto r = run({"construct", "geometric", "--m", "2", "--k", "3", "--N", "4096", "--out", path("geo.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json summary = r.json();
  EXPECT_EQ(summary["lifted"]["size"], "16");
  EXPECT_NEAR(summary["rate"]["decimal"].get<double>(), 1.0 / 3, 1e-12);
  const auto set = parse_integer_lines(read_file(path("geo.json.set.txt")));
  EXPECT_EQ(set.size(), 16u);
  const Json manifest = Json::parse(read_file(path("geo.json.manifest.json")));
  EXPECT_EQ(manifest["certificates"], Json::array({path("geo.json")}));
  EXPECT_EQ(manifest["tool_version"], cli::kToolVersion);
  EXPECT_EQ(run({"verify", "--cert", path("geo.json")}).code, 0);
  EXPECT_EQ(run({"verify", "--sym", "1,2,4", "--set-file", path("geo.json.set.txt")}).code, 0);
}

TEST_F(CliTest, EveryRecipeRoundTrips) {
  const std::vector<std::vector<std::string>> recipes{
      {"construct", "two-var", "--a", "5", "--b", "6"},
      {"construct", "coprime-power", "--a", "2", "--b", "3", "--k", "3"},
      {"construct", "spaced", "--gens", "2,17,167", "--s", "8"},
      {"construct", "three-gen", "--a", "10", "--b", "11", "--c", "31"},
      {"construct", "ap-free", "--d", "5"},
      {"construct", "distinct-var", "--m", "5"},
      {"construct", "window", "--sym", "1,1", "--set", "1,2,5,11", "--L", "24"},
  };
  int n = 0;
  for (auto args : recipes) {
    const std::string out = path("c" + std::to_string(n++) + ".json");
    args.insert(args.end(), {"--out", out});
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << args[1] << ": " << r.err;
    EXPECT_EQ(run({"verify", "--cert", out}).code, 0) << args[1];
    EXPECT_EQ(run({"rate", "--cert", out}).code, 0) << args[1];
  }
  const auto three = Json::parse(read_file(path("c3.json")));
  EXPECT_EQ(three["digits"], Json::array({"0", "1", "4", "5"}));
  const auto af = Json::parse(read_file(path("c4.json")));
  EXPECT_EQ(af["base"], "23");
}

TEST_F(CliTest, ShiftFromACertificate) {
  ASSERT_EQ(run({"construct", "two-var", "--a", "1", "--b", "2", "--out", path("tv.json")}).code, 0);
  const auto r = run({"construct", "shift", "--cert", path("tv.json"), "--i", "1,0", "--j", "0,1", "--out",
                      path("shift.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"verify", "--cert", path("shift.json")}).code, 0);
}

TEST_F(CliTest, ConstructPreconditionFailures) {
  EXPECT_EQ(run({"construct", "two-var", "--a", "2", "--b", "4", "--out", path("x.json")}).code, 65);
  EXPECT_EQ(run({"construct", "three-gen", "--a", "10", "--b", "11", "--c", "21", "--out", path("x.json")}).code, 65);
  EXPECT_EQ(run({"construct", "distinct-var", "--m", "2", "--out", path("x.json")}).code, 65);
  EXPECT_FALSE(fs::exists(path("x.json")));
  EXPECT_EQ(run({"construct", "geometric", "--m", "2"}).code, 64);
}

TEST_F(CliTest, TamperedCertificateFailsVerification) {
  ASSERT_EQ(run({"construct", "two-var", "--a", "1", "--b", "2", "--out", path("tv.json")}).code, 0);
  Json j = Json::parse(read_file(path("tv.json")));
  j["digits"] = Json::array({"0", "1", "2"});
  j["base"] = "100";
  write_file_atomic(path("bad.json"), j.dump());
  const auto r = run({"verify", "--cert", path("bad.json")});
  EXPECT_EQ(r.code, 1);
  j = Json::parse(read_file(path("tv.json")));
  j["base"] = "3";
  write_file_atomic(path("carry.json"), j.dump());
  const auto c = run({"verify", "--cert", path("carry.json")});
  EXPECT_EQ(c.code, 1);
  EXPECT_EQ(c.json()["status"], "no_carry_violated");
}

TEST_F(CliTest, SearchSmallGrids) {
  const auto r = run({"search", "--sym", "1,2", "--L", "4", "--exact", "--out", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["best"]["digits"], Json::array({"0", "1"}));
  EXPECT_EQ(run({"verify", "--cert", path("s.json")}).code, 0);

  const auto eq = run({"search", "--eq", "2,2,-3,-1", "--L", "40", "--exact", "--out", path("e.json")});
  ASSERT_EQ(eq.code, 0) << eq.err;
  EXPECT_TRUE(eq.json()["table"][0]["exhausted"].get<bool>());
  EXPECT_EQ(run({"verify", "--cert", path("e.json")}).code, 0);

  const auto loose = run({"search", "--sym", "1,1,2", "--L", "41", "--exact", "--out", path("n.json")});
  ASSERT_EQ(loose.code, 0) << loose.err;
  EXPECT_TRUE(loose.json()["certificate"].is_null());
}

TEST_F(CliTest, SearchAutoGridAndProgress) {
  const auto r = run({"search", "--sym", "10,11,31", "--L-grid", "auto", "--budget", "200000", "--progress",
                      "--progress-interval", "10000", "--out", path("a.json")});
  ASSERT_TRUE(r.code == 0 || r.code == 3) << r.err;
  const Json report = r.json();
  EXPECT_EQ(report["table"].size(), 6u);
  EXPECT_EQ(report["table"][0]["L"], "209");
  EXPECT_NE(r.err.find("\"event\":\"progress\""), std::string::npos);
  EXPECT_EQ(run({"verify", "--cert", path("a.json")}).code, 0);
}

TEST_F(CliTest, SearchBestEffortExit) {
  const auto r = run({"search", "--sym", "43,69,70", "--L", "11649", "--budget", "100", "--out", path("b.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.json()["table"][0]["exhausted"].get<bool>());
}

TEST_F(CliTest, SweepAndAlpha) {
  const auto s = run({"sweep", "--k", "2", "--C", "100", "--eps", "0.3", "--exhaustive", "--out", path("sw.json")});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(s.json()["bound_ok"].get<bool>());
  EXPECT_EQ(s.json()["B"], "2");
  EXPECT_TRUE(fs::exists(path("sw.json.manifest.json")));

  const auto mc = run({"sweep", "--k", "2", "--C", "100", "--eps", "0.3", "--samples", "500", "--seed", "4"});
  ASSERT_EQ(mc.code, 0);
  EXPECT_EQ(mc.json()["seed"], 4);
  EXPECT_EQ(run({"sweep", "--k", "2", "--C", "100", "--eps", "0.3"}).code, 64);
  EXPECT_EQ(run({"sweep", "--k", "2", "--C", "200", "--eps", "0.2", "--exhaustive", "--budget", "10"}).code, 2);

  const auto a = run({"alpha", "--beta", "1.01", "--q", "0.499"});
  ASSERT_EQ(a.code, 0);
  EXPECT_NEAR(a.json()["inverse_rate"].get<double>(), 4.77, 0.005);
  EXPECT_NEAR(run({"alpha", "--beta", "1"}).json()["inverse_rate"].get<double>(), 4.74, 0.005);
}

TEST_F(CliTest, BudgetFromEnvironment) {
  ::setenv("NOSOL_BUDGET", "5", 1);
  const auto r = run({"verify", "--sym", "1,2,4,8", "--set", "3,17,40,41,58,77,90,99,120"});
  ::unsetenv("NOSOL_BUDGET");
  EXPECT_EQ(r.code, 2);
  ::setenv("NOSOL_BUDGET", "lots", 1);
  EXPECT_EQ(run({"verify", "--sym", "1,2", "--set", "0,1"}).code, 64);
  ::unsetenv("NOSOL_BUDGET");
}

TEST_F(CliTest, RateRejectsUnverifiedCertificates) {
  ASSERT_EQ(run({"construct", "two-var", "--a", "1", "--b", "2", "--out", path("tv.json")}).code, 0);
  Json j = Json::parse(read_file(path("tv.json")));
  j["verified"] = false;
  write_file_atomic(path("u.json"), j.dump());
  EXPECT_EQ(run({"rate", "--cert", path("u.json")}).code, 65);
}
