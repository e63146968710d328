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

#include "cvcluster/config.hpp"

using namespace cvcluster;
using nlohmann::json;

namespace {

json base() {
    return json::parse(R"({"graph": "linear8", "effective_r": 0.3})");
}

}  // namespace

TEST(config, shipped_configs_parse) {
    for (const char *name : {"linear8.json", "diamond8.json", "linear8_loss.json", "diamond8_loss.json"}) {
        auto cfg = load_config(std::string(CVCLUSTER_CONFIG_DIR) + "/" + name);
        EXPECT_NE(cfg.builtin, BuiltinGraph::None) << name;
        EXPECT_EQ(cfg.x_squeezed(), (std::set<int>{1, 3, 5, 7})) << name;
        ASSERT_TRUE(cfg.sweep.has_value());
        EXPECT_EQ(cfg.sweep->steps, 101);
    }
    auto loss = load_config(std::string(CVCLUSTER_CONFIG_DIR) + "/diamond8_loss.json");
    ASSERT_TRUE(loss.efficiency.has_value());
    EXPECT_NEAR(loss.efficiency->at(0), 0.87 * 0.90, 1e-15);
    EXPECT_EQ(loss.model_r(), 0.5);
    EXPECT_EQ(loss.gains.kind, GainSpec::Kind::Explicit);
    EXPECT_EQ(loss.gains.values.at("g_D6"), 0.6);
}

TEST(config, effective_r_shortcut) {
    auto cfg = parse_config(base());
    EXPECT_EQ(cfg.builtin, BuiltinGraph::Linear8);
    EXPECT_EQ(cfg.model_r(), 0.3);
    EXPECT_EQ(cfg.pattern().r(4), 0.3);
    EXPECT_TRUE(cfg.loss().lossless());
    EXPECT_EQ(cfg.gains.kind, GainSpec::Kind::Unit);
}

TEST(config, explicit_graph) {
    auto cfg = parse_config(json::parse(R"({"graph": {"nodes": 3, "edges": [[1, 2], [2, 3]]},
                                           "squeezing": {"r": 0.4, "orientation": ["x", "p", "x"]},
                                           "loss": {"efficiency": [1, 0.9, 0.8]}})"));
    EXPECT_EQ(cfg.builtin, BuiltinGraph::None);
    EXPECT_EQ(cfg.graph_name, "custom");
    EXPECT_EQ(cfg.x_squeezed(), (std::set<int>{1, 3}));
    EXPECT_EQ(cfg.loss().efficiency(3), 0.8);
    EXPECT_THROW(criteria_for(cfg), ConfigError);
    auto net = compile_for(cfg);
    EXPECT_LT(unitarity_residual(net.unitary), 1e-12);
}

TEST(config, explicit_graph_equal_to_builtin) {
    json j = base();
    j["graph"] = json::parse(R"({"nodes": 8, "edges": [[1,2],[2,3],[3,4],[4,5],[5,6],[6,7],[7,8]]})");
    auto cfg = parse_config(j);
    EXPECT_EQ(cfg.builtin, BuiltinGraph::Linear8);
    EXPECT_EQ(criteria_for(cfg).size(), 7u);
}

TEST(config, rejects_invalid) {
    auto bad = [](const char *text) { return json::parse(text); };
    EXPECT_THROW(parse_config(bad(R"({"effective_r": 0.3})")), ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "ring8", "effective_r": 0.3})")), ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8"})")), ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "effective_r": 0.3, "loss": {"efficiency": 0.9},
                                      "squeezing": {"r": 0.5}})")),
                 ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "effective_r": -0.3})")), ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "effective_r": 0.3, "colour": 1})")), ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "loss": {"efficiency": 0.9}})")), ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "loss": {"efficiency": 1.5}, "squeezing": {"r": 0.5}})")),
                 ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "effective_r": 0.3, "squeezing": {"r": [0.1, 0.2]}})")),
                 ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "effective_r": 0.3, "squeezing": {"x_squeezed": [2]}})")),
                 ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": {"nodes": 3, "edges": [[1, 1]]}, "effective_r": 0.3})")),
                 ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": {"nodes": 2}, "effective_r": 0.3,
                                      "squeezing": {"orientation": ["x"]}})")),
                 ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "effective_r": 0.3, "gains": "best"})")), ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "effective_r": 0.3, "sweep": {"steps": 0}})")),
                 ConfigError);
    EXPECT_THROW(parse_config(bad(R"({"graph": "linear8", "effective_r": "0.3"})")), ConfigError);
    EXPECT_THROW(parse_config(bad(R"([1, 2])")), ConfigError);
}

TEST(config, gain_names_are_checked) {
    json j = base();
    j["gains"] = {{"g_D6", 0.6}};
    EXPECT_THROW(criteria_for(parse_config(j)), ConfigError);
}

TEST(config, gains_for_criterion) {
    json j = base();
    j["graph"] = "diamond8";
    j["gains"] = {{"g_D6", 0.6}};
    auto cfg = parse_config(j);
    auto net = compile_for(cfg);
    auto state = state_for(cfg, net);
    auto set = criteria_for(cfg);
    GainSet e = gains_for(cfg, set[4], state);
    EXPECT_EQ(e.at("g_D6"), 0.6);
    GainSet a = gains_for(cfg, set[0], state);
    EXPECT_EQ(a.at("g_D1"), 1.0);
    cfg.gains = parse_gain_option("optimal");
    GainSet o = gains_for(cfg, set[4], state);
    EXPECT_NEAR(o.at("g_D6"), optimal_gains_analytic_diamond(0.3).at("g_D6"), 1e-6);
    EXPECT_THROW(parse_gain_option("/nonexistent/gains.json"), ConfigError);
}

TEST(config, sweep_grid) {
    EXPECT_EQ((SweepSpec{0.0, 1.0, 1}.grid()), std::vector<double>{0.0});
    auto g = SweepSpec{0.0, 1.0, 101}.grid();
    ASSERT_EQ(g.size(), 101u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_NEAR(g[11], 0.11, 1e-15);
}

TEST(config, loss_builder_matches_state) {
    auto cfg = load_config(std::string(CVCLUSTER_CONFIG_DIR) + "/linear8_loss.json");
    auto net = compile_for(cfg);
    auto direct = state_for(cfg, net);
    auto built = builder_for(cfg, net)(cfg.model_r());
    EXPECT_LT((direct.covariance() - built.covariance()).cwiseAbs().maxCoeff(), 1e-15);
}
