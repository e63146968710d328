// Copyright 2026 The cvcluster Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cvcluster/cli.hpp"
#include "cvcluster/reference.hpp"
#include "json.hpp"

using namespace cvcluster;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cvcluster");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string config(const std::string &name) {
    return std::string(CVCLUSTER_CONFIG_DIR) + "/" + name;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path &p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream f(p);
    std::string line;
    while (std::getline(f, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("cvcluster_cli_") + info->name());
        fs::remove_all(dir);
    }
    void TearDown() override {
        fs::remove_all(dir);
    }

    std::string write(const std::string &name, const std::string &text) {
        fs::create_directories(dir);
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }

    fs::path dir;
};

}  // namespace

TEST_F(CliTest, compile_linear8_writes_unitary_and_sequence) {
    auto r = run({"compile", "--config", config("linear8.json"), "--out", (dir / "o").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    json u = json::parse(slurp(dir / "o" / "unitary.json"));
    auto expected = reference::linear8_unitary();
    ASSERT_EQ(u["unitary"].size(), 8u);
    for (int i = 0; i < 8; i++) {
        for (int j = 0; j < 8; j++) {
            const auto &e = u["unitary"][i][j];
            EXPECT_NEAR(e[0].get<double>(), expected(i, j).real(), 1e-12);
            EXPECT_NEAR(e[1].get<double>(), expected(i, j).imag(), 1e-12);
        }
    }
    json seq = json::parse(slurp(dir / "o" / "sequence.json"));
    EXPECT_EQ(seq["elements"].size(), 19u);
    EXPECT_LT(seq["residual"].get<double>(), 1e-12);
    EXPECT_TRUE(fs::exists(dir / "o" / "gram_factor.json"));
}

TEST_F(CliTest, compile_diamond8) {
    auto r = run({"compile", "--config", config("diamond8.json"), "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    json u = json::parse(slurp(dir / "unitary.json"));
    auto expected = reference::diamond8_unitary();
    EXPECT_NEAR(u["unitary"][0][0][1].get<double>(), expected(0, 0).imag(), 1e-12);
    EXPECT_NEAR(u["unitary"][7][6][0].get<double>(), expected(7, 6).real(), 1e-12);
    EXPECT_FALSE(fs::exists(dir / "sequence.json"));
}

TEST_F(CliTest, user_errors_exit_2) {
    auto malformed = write("bad.json", "{\"graph\": \"linear8\", ");
    EXPECT_EQ(run({"compile", "--config", malformed, "--out", dir.string()}).code, 2);
    EXPECT_EQ(run({"compile", "--config", (dir / "missing.json").string()}).code, 2);
    auto invalid = write("invalid.json", R"({"graph": "linear8"})");
    auto r = run({"simulate", "--config", invalid, "--out", dir.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("effective_r"), std::string::npos);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"transmogrify"}).code, 2);
    EXPECT_EQ(run({"compile"}).code, 2);
    EXPECT_EQ(run({"criteria", "--config", config("linear8.json"), "--gains", "best", "--out", dir.string()}).code, 2);
}

TEST_F(CliTest, help_exits_0) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

TEST_F(CliTest, criteria_linear8) {
    auto r = run({"criteria", "--config", config("linear8.json"), "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(slurp(dir / "criteria.json"));
    const std::vector<double> expected{1.25, 1.5, 1.5, 1.5, 1.5, 1.5, 1.25};
    ASSERT_EQ(j["criteria"].size(), 7u);
    for (size_t k = 0; k < 7; k++) {
        EXPECT_NEAR(j["criteria"][k]["lhs"].get<double>(), expected[k] * std::exp(-0.6), 1e-12);
        EXPECT_TRUE(j["criteria"][k]["satisfied"].get<bool>());
        EXPECT_NEAR(j["criteria"][k]["dB_u"].get<double>(), -2.606, 1e-3);
    }
    EXPECT_TRUE(j["all_satisfied"].get<bool>());
    EXPECT_NE(r.out.find("3a"), std::string::npos);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST_F(CliTest, criteria_without_squeezing_all_fail) {
    auto cfg = write("zero.json", R"({"graph": "diamond8", "effective_r": 0.0})");
    auto r = run({"criteria", "--config", cfg, "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find("PASS"), std::string::npos);
    json j = json::parse(slurp(dir / "criteria.json"));
    for (const auto &c : j["criteria"]) {
        EXPECT_FALSE(c["satisfied"].get<bool>());
    }
}

TEST_F(CliTest, criteria_gain_file) {
    auto gains = write("gains.json", R"({"g_D6": 0.5})");
    auto r = run({"criteria", "--config", config("diamond8.json"), "--gains", gains, "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(slurp(dir / "criteria.json"));
    EXPECT_EQ(j["criteria"][4]["gains"]["g_D6"].get<double>(), 0.5);
    auto wrong = write("wrong.json", R"({"g_L1": 0.5})");
    EXPECT_EQ(run({"criteria", "--config", config("diamond8.json"), "--gains", wrong, "--out", dir.string()}).code, 2);
}

TEST_F(CliTest, criteria_rejects_custom_graph) {
    auto cfg = write("tri.json", R"({"graph": {"nodes": 3, "edges": [[1,2],[2,3],[1,3]]}, "effective_r": 0.3})");
    EXPECT_EQ(run({"criteria", "--config", cfg, "--out", dir.string()}).code, 2);
    EXPECT_EQ(run({"simulate", "--config", cfg, "--out", dir.string()}).code, 0);
}

TEST_F(CliTest, sweep_csv) {
    auto r = run({"sweep", "--config", config("linear8.json"), "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(dir / "sweep.csv").substr(0, 39), "r,criterion,lhs_unit,lhs_optimal,bound\n");
    auto rows = csv_rows(dir / "sweep.csv");
    ASSERT_EQ(rows.size(), 1u + 101 * 7);
    double below = 0, above = 0;
    for (size_t i = 1; i < rows.size(); i++) {
        double rr = std::stod(rows[i][0]);
        if (rr > 0) {
            EXPECT_LT(std::stod(rows[i][3]), std::stod(rows[i][4])) << rows[i][0] << " " << rows[i][1];
        }
        if (rows[i][1] == "3a" && std::abs(rr - 0.11) < 1e-9) {
            below = std::stod(rows[i][2]);
        }
        if (rows[i][1] == "3a" && std::abs(rr - 0.12) < 1e-9) {
            above = std::stod(rows[i][2]);
        }
    }
    EXPECT_GT(below, 1.0);
    EXPECT_LT(above, 1.0);
    auto thresholds = csv_rows(dir / "thresholds.csv");
    ASSERT_EQ(thresholds[1][0], "3a");
    EXPECT_NEAR(std::stod(thresholds[1][3]), 0.5 * std::log(1.25), 1e-4);
    EXPECT_NE(r.out.find("3c"), std::string::npos);
    EXPECT_NE(r.out.find("0.24"), std::string::npos);
}

TEST_F(CliTest, sweep_single_step) {
    auto cfg = write("one.json", R"({"graph": "diamond8", "effective_r": 0.3,
                                     "sweep": {"r_min": 0.3, "r_max": 0.3, "steps": 1}})");
    ASSERT_EQ(run({"sweep", "--config", cfg, "--out", dir.string()}).code, 0);
    auto rows = csv_rows(dir / "sweep.csv");
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[1][0], "0.3");
    EXPECT_EQ(rows[9][1], "4i");
}

TEST_F(CliTest, sample_reports) {
    auto a = run({"sample", "--config", config("linear8.json"), "--n", "100000", "--seed", "9", "--out",
                  (dir / "a").string()});
    auto b = run({"sample", "--config", config("linear8.json"), "--n", "100000", "--seed", "9", "--out",
                  (dir / "b").string()});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(slurp(dir / "a" / "sample.json"), slurp(dir / "b" / "sample.json"));
    json j = json::parse(slurp(dir / "a" / "sample.json"));
    EXPECT_EQ(j["nullifiers"].size(), 8u);
    EXPECT_LT(j["max_abs_z"].get<double>(), 4.0);
}

TEST_F(CliTest, sample_needs_two_shots) {
    EXPECT_EQ(run({"sample", "--config", config("linear8.json"), "--n", "1", "--out", dir.string()}).code, 2);
    EXPECT_EQ(run({"sample", "--config", config("linear8.json"), "--n", "abc", "--out", dir.string()}).code, 2);
}

TEST_F(CliTest, outputs_are_byte_identical) {
    for (const char *cmd : {"compile", "simulate", "criteria"}) {
        ASSERT_EQ(run({cmd, "--config", config("diamond8_loss.json"), "--out", (dir / "1").string()}).code, 0);
        ASSERT_EQ(run({cmd, "--config", config("diamond8_loss.json"), "--out", (dir / "2").string()}).code, 0);
    }
    for (const char *file : {"unitary.json", "gram_factor.json", "simulate.json", "criteria.json"}) {
        EXPECT_EQ(slurp(dir / "1" / file), slurp(dir / "2" / file)) << file;
        EXPECT_EQ(slurp(dir / "1" / file).find("time"), std::string::npos) << file;
    }
}

TEST_F(CliTest, simulate_loss_model) {
    auto r = run({"simulate", "--config", config("linear8_loss.json"), "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(slurp(dir / "simulate.json"));
    EXPECT_NEAR(j["model"]["equivalent_r"].get<double>(), 0.3415, 1e-4);
    for (const auto &n : j["nullifiers"]) {
        EXPECT_NEAR(n["ratio"].get<double>(), 0.783 * std::exp(-1.0) + 0.217, 1e-12);
        EXPECT_EQ(n["excess_noise"]["anti_squeezed"].size(), 0u);
        EXPECT_TRUE(n.contains("measured_dB"));
    }
}
