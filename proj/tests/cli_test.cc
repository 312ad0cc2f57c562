// Copyright 2026 The cecsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cecsim/cli.h"
#include "json.hpp"

namespace cecsim {
namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "cecsim");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override { unsetenv("CECSIM_WORKERS"); }
    void TearDown() override { unsetenv("CECSIM_WORKERS"); }
};

TEST_F(CliTest, VerifySteane) {
    CliRun r = run({"verify", "--code", "steane"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.at("passed").get<bool>());
    EXPECT_EQ(j.at("incidence").at("weights"), nlohmann::json::array({4, 4, 4, 4, 4, 4, 4}));
    EXPECT_EQ(j.at("incidence").at("degrees"), nlohmann::json::array({4, 4, 4, 4, 4, 4, 4}));
}

TEST_F(CliTest, SimulateNoiseless) {
    CliRun r = run({"simulate", "--code", "bs", "--config", R"({"p_gate": 0, "p_mem": 0})"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("p_log").get<double>(), 0.0);
    EXPECT_EQ(j.at("code"), "bs");
}

TEST_F(CliTest, FlagsOverrideConfig) {
    CliRun r = run({"--seed", "5", "simulate", "--config", R"({"code": "bf", "p_gate": 0.001, "seed": 2,
                 "n_samples": 300})"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out).at("seed"), 5);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({"simulate", "--code", "surface"}).code, EXIT_USAGE);
    EXPECT_EQ(run({"simulate", "--config", "{p_gate:0}"}).code, EXIT_USAGE);
    EXPECT_EQ(run({"simulate", "--config", R"({"p_gate": 2})"}).code, EXIT_USAGE);
    EXPECT_EQ(run({"frobnicate"}).code, EXIT_USAGE);
    EXPECT_EQ(run({}).code, EXIT_USAGE);
    EXPECT_EQ(run({"simulate", "--workers", "x"}).code, EXIT_USAGE);
}

TEST_F(CliTest, Help) {
    CliRun r = run({"--help"});
    EXPECT_EQ(r.code, EXIT_OK);
    EXPECT_NE(r.out.find("threshold"), std::string::npos);
}

TEST_F(CliTest, BadWorkersEnvironment) {
    setenv("CECSIM_WORKERS", "zero", 1);
    EXPECT_EQ(run({"dump-circuit", "--code", "bf"}).code, EXIT_USAGE);
    setenv("CECSIM_WORKERS", "0", 1);
    EXPECT_EQ(run({"dump-circuit", "--code", "bf"}).code, EXIT_USAGE);
}

TEST_F(CliTest, NoSignChangeIsNumerical) {
    CliRun r = run({"threshold", "--code", "bf", "--config", R"({"bracket": [1e-6, 1e-5], "n_samples": 200})"});
    EXPECT_EQ(r.code, EXIT_NUMERICAL);
    EXPECT_NE(r.err.find("does not change sign"), std::string::npos);
}

TEST_F(CliTest, DumpCircuit) {
    CliRun r = run({"dump-circuit", "--code", "bf"});
    ASSERT_EQ(r.code, EXIT_OK);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("layers"));
}

TEST_F(CliTest, SweepWritesSidecar) {
    auto dir = std::filesystem::temp_directory_path() / "cecsim_cli_test";
    std::filesystem::create_directories(dir);
    auto csv = (dir / "curve.csv").string();
    CliRun r = run({"sweep", "--code", "bf", "--out", csv, "--config",
                 R"({"grid": [0.001, 0.002], "n_samples": 300})"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    std::ifstream main_file(csv);
    std::string header;
    std::getline(main_file, header);
    EXPECT_EQ(header, "p_gate,p_mem,p_log,p_log_stderr,trunc_order,seed");
    EXPECT_TRUE(std::filesystem::exists(dir / "curve_diagonal.csv"));
    std::filesystem::remove_all(dir);
}

TEST_F(CliTest, OutputIndependentOfWorkers) {
    const std::string config = R"({"grid": [0.0005, 0.002], "n_samples": 2000, "p_mem": "tied"})";
    CliRun one = run({"sweep", "--code", "bs", "--workers", "1", "--config", config});
    CliRun four = run({"sweep", "--code", "bs", "--workers", "4", "--config", config});
    ASSERT_EQ(one.code, EXIT_OK) << one.err;
    EXPECT_EQ(one.out, four.out);
    setenv("CECSIM_WORKERS", "3", 1);
    CliRun env = run({"sweep", "--code", "bs", "--config", config});
    EXPECT_EQ(one.out, env.out);
}

}  // namespace
}  // namespace cecsim
