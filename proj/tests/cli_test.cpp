// Copyright 2026 The driftlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "driftlab/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace driftlab::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json invoke_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const Result r = invoke(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("DRIFTLAB_PRECISION");
    dir_ = std::filesystem::temp_directory_path() /
           ("driftlab_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, CountExamples) {
  EXPECT_EQ(invoke({"count", "--q", "2", "--d", "3", "--m", "2", "--a", "0", "--j", "0", "--N", "8",
                    "--algo", "dp"})
                .out,
            "3\n");
  EXPECT_EQ(invoke({"count", "--q", "2", "--d", "3", "--m", "2", "--a", "0", "--j", "0", "--N", "0"})
                .out,
            "0\n");
  EXPECT_EQ(invoke({"count", "--q", "3", "--d", "2", "--m", "3", "--a", "0", "--j", "0", "--N", "9",
                    "--algo", "filter"})
                .out,
            "1\n");
  EXPECT_EQ(invoke({"count", "--q", "10", "--d", "2", "--m", "10", "--a", "0", "--j", "0", "--N",
                    "110", "--algo", "brute", "--show-g"})
                .out,
            "5\n-1/2\n");
}

TEST_F(CliTest, CountAcceptsHugeN) {
  const auto doc = invoke_json({"count", "--q", "10", "--d", "1", "--m", "1", "--a", "0", "--j", "0",
                                "--N", "123456789012345678901234567890"});
  EXPECT_EQ(doc["count"], "123456789012345678901234567890");
  EXPECT_EQ(doc["schema"], 1);
}

TEST_F(CliTest, CountErrors) {
  const std::vector<std::string> base{"count", "--q", "3", "--d", "2", "--m", "3", "--a", "0", "--j", "0"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return invoke(args).code;
  };
  EXPECT_EQ(with({"--N", "10", "--algo", "filter"}), kInputError);
  EXPECT_EQ(with({"--N", "1", "--algo", "filter"}), kInputError);
  EXPECT_EQ(with({"--N", "-5"}), kInputError);
  EXPECT_EQ(with({"--N", "12x"}), kInputError);
  EXPECT_EQ(with({"--N", "2000000", "--algo", "brute"}), kBudget);
  EXPECT_EQ(invoke({"count", "--q", "3", "--d", "2", "--m", "3", "--a", "5", "--j", "0", "--N", "3"}).code,
            kInputError);
  EXPECT_EQ(invoke({"count", "--q", "3"}).code, kInputError);
}

TEST_F(CliTest, Classify) {
  EXPECT_EQ(invoke({"classify", "--q", "10", "--d", "2"}).out, "DIVIDES_Q\n");
  EXPECT_EQ(invoke({"classify", "--q", "3", "--d", "2"}).out, "DIVIDES_Q_MINUS_1\n");
  EXPECT_EQ(invoke({"classify", "--q", "10", "--d", "4"}).out, "UNCOVERED\n");
  EXPECT_EQ(invoke({"classify", "--q", "5", "--d", "1"}).out, "BOTH_TRIVIAL\n");
  EXPECT_EQ(invoke({"classify", "--q", "1", "--d", "1"}).code, kInputError);
}

TEST_F(CliTest, GWithClosedForm) {
  const auto doc =
      invoke_json({"g", "--q", "10", "--d", "2", "--m", "10", "--a", "0", "--j", "0", "--N", "1"});
  EXPECT_EQ(doc["g"], "19/20");
  EXPECT_EQ(doc["closed_form"]["g"], "19/20");
  EXPECT_EQ(doc["case"], "DIVIDES_Q");
}

TEST_F(CliTest, ScanExamples) {
  auto newman = invoke_json(
      {"scan", "--q", "2", "--d", "3", "--m", "2", "--a", "0", "--j", "0", "--n-max", "100000"});
  EXPECT_EQ(newman["sign_changes"], 0);
  EXPECT_EQ(newman["negative_count"], 0);
  EXPECT_EQ(newman["zero_count"], 0);

  auto decimal = invoke_json(
      {"scan", "--q", "10", "--d", "2", "--m", "10", "--a", "0", "--j", "0", "--n-max", "10000"});
  EXPECT_GE(decimal["sign_changes"].get<int>(), 1);
  EXPECT_EQ(decimal["max_g"], "19/20");
  EXPECT_EQ(decimal["min_g"], "-9/10");

  const Result single = invoke({"--format", "csv", "scan", "--q", "7", "--d", "3", "--m", "4", "--a",
                                "2", "--j", "1", "--n-max", "1"});
  EXPECT_EQ(single.out, "N,g_num,g_den,sign\n1,-1,12,-1\n");
}

TEST_F(CliTest, ScanCsvFileAndSpotChecks) {
  const auto csv = (dir_ / "rows.csv").string();
  auto doc = invoke_json({"--seed", "3", "scan", "--q", "3", "--d", "2", "--m", "3", "--a", "1",
                          "--j", "2", "--n-max", "500", "--csv", csv, "--spot-checks", "25"});
  EXPECT_EQ(doc["spot_checks"]["passed"], doc["spot_checks"]["samples"]);
  const std::string rows = slurp(csv);
  EXPECT_EQ(rows.substr(0, 19), "N,g_num,g_den,sign\n");
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 501);
  EXPECT_FALSE(std::filesystem::exists(csv + ".tmp"));
}

TEST_F(CliTest, ScanBudget) {
  EXPECT_EQ(invoke({"--scan-budget", "100", "scan", "--q", "2", "--d", "3", "--m", "2", "--a", "0",
                    "--j", "0", "--n-max", "101"})
                .code,
            kBudget);
}

TEST_F(CliTest, CertifySummaryAndArtifact) {
  const auto path = (dir_ / "cert.json").string();
  const Result r = invoke({"--out", path, "certify", "--q", "3", "--d", "2", "--a", "0", "--j", "0",
                           "--k-check", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("M: 6\n"), std::string::npos);
  EXPECT_NE(r.out.find("k1: 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("k2: 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("k_star: 1\n"), std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_EQ(doc["profile"]["M"], 6);
  EXPECT_EQ(doc["verified_range"].size(), 12u);
  EXPECT_EQ(doc["verified_range"][0]["deviation"], "1/2");
  EXPECT_EQ(doc["profile"]["R"]["bits"], 128);
}

TEST_F(CliTest, CertifyWrongCaseWritesNothing) {
  const auto path = (dir_ / "bad.json").string();
  EXPECT_EQ(invoke({"--out", path, "certify", "--q", "10", "--d", "4", "--a", "0", "--j", "0"}).code,
            kWrongCase);
  EXPECT_FALSE(std::filesystem::exists(path));
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
}

TEST_F(CliTest, Witness) {
  const auto doc =
      invoke_json({"witness", "--q", "10", "--d", "2", "--a", "1", "--j", "0", "--sign", "neg"});
  EXPECT_EQ(doc["g"], "-1/20");
  EXPECT_EQ(doc["members"][0], "1");
  EXPECT_EQ(doc["members"][1], "101");
  EXPECT_EQ(invoke({"witness", "--q", "9", "--d", "2", "--a", "0", "--j", "0", "--sign", "neg"}).code,
            kWrongCase);
  EXPECT_EQ(invoke({"witness", "--q", "10", "--d", "2", "--a", "0", "--j", "0", "--sign", "up"}).code,
            kInputError);
}

TEST_F(CliTest, ProfileAndLambda) {
  const auto prof = invoke_json({"profile", "--q", "3", "--d", "2", "--a", "0", "--j", "0"});
  EXPECT_EQ(prof["h"], 2);
  EXPECT_EQ(prof["k1"], 3);
  EXPECT_EQ(prof["cprime"].size(), 6u);
  const auto lambda = invoke_json({"gelfond-lambda", "--q", "2", "--m", "2"});
  EXPECT_EQ(lambda["lambda"]["mid"].get<std::string>().substr(0, 22), "9.42888325790902993160");
  EXPECT_TRUE(lambda["below_one"].get<bool>());
  EXPECT_EQ(invoke({"gelfond-lambda", "--q", "2", "--m", "1"}).code, kInputError);
}

TEST_F(CliTest, PrecisionFromFlagAndEnvironment) {
  auto bits = [](const nlohmann::json& doc) { return doc["lambda"]["bits"].get<int>(); };
  EXPECT_EQ(bits(invoke_json({"--precision", "256", "gelfond-lambda", "--q", "3", "--m", "2"})), 256);
  setenv("DRIFTLAB_PRECISION", "512", 1);
  EXPECT_EQ(bits(invoke_json({"gelfond-lambda", "--q", "3", "--m", "2"})), 512);
  EXPECT_EQ(bits(invoke_json({"--precision", "192", "gelfond-lambda", "--q", "3", "--m", "2"})), 192);
  setenv("DRIFTLAB_PRECISION", "9999", 1);
  EXPECT_EQ(invoke({"gelfond-lambda", "--q", "3", "--m", "2"}).code, kInputError);
  unsetenv("DRIFTLAB_PRECISION");
  EXPECT_EQ(invoke({"--precision", "32", "gelfond-lambda", "--q", "3", "--m", "2"}).code, kInputError);
}

TEST_F(CliTest, OutputIsDeterministic) {
  const std::vector<std::string> args{"--format", "json", "certify", "--q", "5", "--d", "4",
                                      "--a", "1", "--j", "2", "--k-check", "10"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, HelpAndUnknownCommand) {
  EXPECT_EQ(invoke({"--help"}).code, kOk);
  EXPECT_EQ(invoke({"frobnicate"}).code, kInputError);
  EXPECT_EQ(invoke({}).code, kInputError);
}

TEST_F(CliTest, CsvFormatForOtherCommands) {
  const Result r = invoke({"--format", "csv", "witness", "--q", "10", "--d", "2", "--a", "1", "--j",
                           "0", "--sign", "neg"});
  EXPECT_EQ(r.out.substr(0, 18), "key,value\ng,-1/20\n");
}

}  // namespace
}  // namespace driftlab::cli
