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

#include "cvcluster/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace cvcluster {

using nlohmann::json;

namespace {

const std::set<int> kBuiltinXSqueezed{1, 3, 5, 7};

void require_keys(const json &j, const std::string &where, std::initializer_list<const char *> allowed) {
    if (!j.is_object()) {
        throw ConfigError(where + " must be a JSON object");
    }
    for (const auto &[key, _] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; })) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

double number(const json &j, const std::string &what) {
    if (!j.is_number()) {
        throw ConfigError(what + " must be a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(what + " must be finite");
    }
    return v;
}

std::vector<double> per_mode(const json &j, int n, const std::string &what) {
    if (j.is_number()) {
        return std::vector<double>(static_cast<size_t>(n), number(j, what));
    }
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw ConfigError(what + " must be a number or an array of " + std::to_string(n) + " numbers");
    }
    std::vector<double> out;
    for (const auto &v : j) {
        out.push_back(number(v, what));
    }
    return out;
}

void parse_graph(const json &j, ExperimentConfig &cfg) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "linear8") {
            cfg.graph = build_linear_chain(8);
        } else if (name == "diamond8") {
            cfg.graph = build_two_diamond();
        } else {
            throw ConfigError("unknown builtin graph '" + name + "' (expected linear8 or diamond8)");
        }
        cfg.graph_name = name;
    } else {
        require_keys(j, "graph", {"nodes", "edges"});
        if (!j.contains("nodes") || !j["nodes"].is_number_integer()) {
            throw ConfigError("graph.nodes must be an integer");
        }
        std::vector<Edge> edges;
        if (j.contains("edges")) {
            if (!j["edges"].is_array()) {
                throw ConfigError("graph.edges must be an array of [a, b] pairs");
            }
            for (const auto &e : j["edges"]) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                    throw ConfigError("graph.edges must be an array of [a, b] integer pairs");
                }
                edges.push_back({e[0].get<int>(), e[1].get<int>()});
            }
        }
        cfg.graph = Graph(j["nodes"].get<int>(), std::move(edges));
        cfg.graph_name = "custom";
    }
    if (cfg.graph == build_linear_chain(8)) {
        cfg.builtin = BuiltinGraph::Linear8;
        cfg.graph_name = "linear8";
    } else if (cfg.graph == build_two_diamond()) {
        cfg.builtin = BuiltinGraph::Diamond8;
        cfg.graph_name = "diamond8";
    }
}

GainSpec parse_gain_json(const json &j) {
    GainSpec spec;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "unit") {
            spec.kind = GainSpec::Kind::Unit;
        } else if (s == "optimal") {
            spec.kind = GainSpec::Kind::Optimal;
        } else {
            throw ConfigError("gains must be \"unit\", \"optimal\" or an object of named gains");
        }
        return spec;
    }
    if (!j.is_object()) {
        throw ConfigError("gains must be \"unit\", \"optimal\" or an object of named gains");
    }
    spec.kind = GainSpec::Kind::Explicit;
    for (const auto &[k, v] : j.items()) {
        spec.values.set(k, number(v, "gain " + k));
    }
    return spec;
}

ExperimentConfig parse_config_impl(const json &j) {
    require_keys(j, "config", {"description", "graph", "squeezing", "loss", "effective_r", "gains", "sweep"});
    ExperimentConfig cfg;
    if (!j.contains("graph")) {
        throw ConfigError("config needs a 'graph'");
    }
    parse_graph(j["graph"], cfg);
    const int n = cfg.modes();

    json sq = j.value("squeezing", json::object());
    require_keys(sq, "squeezing", {"r", "x_squeezed", "orientation"});
    std::set<int> xs = cfg.builtin != BuiltinGraph::None ? kBuiltinXSqueezed : std::set<int>{};
    if (sq.contains("x_squeezed") && sq.contains("orientation")) {
        throw ConfigError("squeezing: give either x_squeezed or orientation, not both");
    }
    if (sq.contains("x_squeezed")) {
        if (!sq["x_squeezed"].is_array()) {
            throw ConfigError("squeezing.x_squeezed must be an array of modes");
        }
        xs.clear();
        for (const auto &m : sq["x_squeezed"]) {
            if (!m.is_number_integer() || m.get<int>() < 1 || m.get<int>() > n) {
                throw ConfigError("squeezing.x_squeezed entries must be modes 1.." + std::to_string(n));
            }
            xs.insert(m.get<int>());
        }
    }
    if (sq.contains("orientation")) {
        const auto &o = sq["orientation"];
        if (!o.is_array() || static_cast<int>(o.size()) != n) {
            throw ConfigError("squeezing.orientation must list \"x\" or \"p\" for each of " + std::to_string(n) +
                              " modes");
        }
        xs.clear();
        for (int m = 1; m <= n; m++) {
            const auto &v = o[static_cast<size_t>(m - 1)];
            if (v == "x") {
                xs.insert(m);
            } else if (v != "p") {
                throw ConfigError("squeezing.orientation entries must be \"x\" or \"p\"");
            }
        }
    }
    if (cfg.builtin != BuiltinGraph::None && xs != kBuiltinXSqueezed) {
        throw ConfigError(cfg.graph_name + " network is built for x-squeezed inputs 1, 3, 5, 7");
    }
    cfg.axes.assign(static_cast<size_t>(n), SqueezeAxis::P);
    for (int m : xs) {
        cfg.axes[static_cast<size_t>(m - 1)] = SqueezeAxis::X;
    }

    const bool has_loss = j.contains("loss");
    const bool has_re = j.contains("effective_r");
    if (has_loss == has_re) {
        throw ConfigError("config needs exactly one of 'loss' or 'effective_r'");
    }
    if (has_re) {
        cfg.effective_r = number(j["effective_r"], "effective_r");
        if (*cfg.effective_r < 0) {
            throw ConfigError("effective_r must be non-negative");
        }
    }
    if (sq.contains("r")) {
        cfg.squeeze_r = per_mode(sq["r"], n, "squeezing.r");
    } else if (has_re) {
        cfg.squeeze_r.assign(static_cast<size_t>(n), *cfg.effective_r);
    } else {
        throw ConfigError("squeezing.r is required when 'loss' is given");
    }
    for (double r : cfg.squeeze_r) {
        if (r < 0) {
            throw ConfigError("squeezing.r must be non-negative");
        }
    }
    if (has_loss) {
        const auto &l = j["loss"];
        require_keys(l, "loss", {"efficiency", "transmission", "detection"});
        if (l.contains("efficiency")) {
            if (l.contains("transmission") || l.contains("detection")) {
                throw ConfigError("loss: give either efficiency or transmission/detection");
            }
            cfg.efficiency = per_mode(l["efficiency"], n, "loss.efficiency");
        } else {
            auto t = per_mode(l.value("transmission", json(1.0)), n, "loss.transmission");
            auto d = per_mode(l.value("detection", json(1.0)), n, "loss.detection");
            std::vector<double> eta;
            for (int m = 0; m < n; m++) {
                eta.push_back(t[static_cast<size_t>(m)] * d[static_cast<size_t>(m)]);
            }
            cfg.efficiency = std::move(eta);
        }
        LossModel check(*cfg.efficiency);
    }

    if (j.contains("gains")) {
        cfg.gains = parse_gain_json(j["gains"]);
    }
    if (j.contains("sweep")) {
        const auto &s = j["sweep"];
        require_keys(s, "sweep", {"r_min", "r_max", "steps"});
        SweepSpec sw{number(s.value("r_min", json(0.0)), "sweep.r_min"), number(s.value("r_max", json(1.0)), "sweep.r_max"),
                     0};
        if (!s.value("steps", json(101)).is_number_integer()) {
            throw ConfigError("sweep.steps must be an integer");
        }
        sw.steps = s.value("steps", 101);
        if (sw.r_min < 0 || sw.r_max < sw.r_min || sw.steps < 1) {
            throw ConfigError("sweep needs 0 <= r_min <= r_max and steps >= 1");
        }
        cfg.sweep = sw;
    }
    return cfg;
}

}  // namespace

std::vector<double> SweepSpec::grid() const {
    std::vector<double> out;
    if (steps == 1) {
        return {r_min};
    }
    for (int k = 0; k < steps; k++) {
        out.push_back(r_min + (r_max - r_min) * k / (steps - 1));
    }
    return out;
}

std::set<int> ExperimentConfig::x_squeezed() const {
    std::set<int> out;
    for (int m = 1; m <= modes(); m++) {
        if (axes[static_cast<size_t>(m - 1)] == SqueezeAxis::X) {
            out.insert(m);
        }
    }
    return out;
}

SqueezePattern ExperimentConfig::pattern() const {
    if (effective_r) {
        return pattern_at(*effective_r);
    }
    return SqueezePattern(axes, squeeze_r);
}

SqueezePattern ExperimentConfig::pattern_at(double r) const {
    return SqueezePattern(axes, std::vector<double>(static_cast<size_t>(modes()), r));
}

LossModel ExperimentConfig::loss() const {
    if (efficiency) {
        return LossModel(*efficiency);
    }
    return LossModel::uniform(modes(), 1.0);
}

double ExperimentConfig::model_r() const {
    if (effective_r) {
        return *effective_r;
    }
    if (std::adjacent_find(squeeze_r.begin(), squeeze_r.end(), std::not_equal_to<>()) != squeeze_r.end()) {
        throw ConfigError("this command needs the same squeezing r on every mode");
    }
    return squeeze_r.front();
}

ExperimentConfig parse_config(const json &j) {
    try {
        return parse_config_impl(j);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

GainSpec parse_gain_option(const std::string &value) {
    if (value == "unit" || value == "optimal") {
        return parse_gain_json(json(value));
    }
    std::ifstream in(value);
    if (!in) {
        throw ConfigError("--gains: expected unit, optimal or a readable JSON file, got '" + value + "'");
    }
    try {
        return parse_gain_json(json::parse(in));
    } catch (const json::exception &e) {
        throw ConfigError("--gains: " + std::string(e.what()));
    } catch (const std::invalid_argument &e) {
        throw ConfigError("--gains: " + std::string(e.what()));
    }
}

CompiledNetwork compile_for(const ExperimentConfig &config) {
    switch (config.builtin) {
        case BuiltinGraph::Linear8:
            return compile_linear8();
        case BuiltinGraph::Diamond8:
            return compile_diamond8();
        case BuiltinGraph::None:
            break;
    }
    return compile_graph(config.graph, config.x_squeezed());
}

std::vector<Criterion> criteria_for(const ExperimentConfig &config) {
    std::vector<Criterion> set;
    switch (config.builtin) {
        case BuiltinGraph::Linear8:
            set = criterion_set_linear();
            break;
        case BuiltinGraph::Diamond8:
            set = criterion_set_diamond();
            break;
        case BuiltinGraph::None:
            throw ConfigError("inseparability criteria are only defined for linear8 and diamond8");
    }
    if (config.gains.kind == GainSpec::Kind::Explicit) {
        GainSet known = GainSet::unit(set);
        for (const auto &[k, _] : config.gains.values.values()) {
            if (!known.contains(k)) {
                throw ConfigError("gain '" + k + "' is not a slot of the " + config.graph_name + " criteria");
            }
        }
    }
    return set;
}

GaussianState state_for(const ExperimentConfig &config, const CompiledNetwork &network) {
    return prepare_state(network.unitary, config.pattern(), config.loss());
}

StateBuilder builder_for(const ExperimentConfig &config, const CompiledNetwork &network) {
    std::optional<LossModel> loss;
    if (config.efficiency) {
        loss = config.loss();
    }
    return make_state_builder(network.unitary, config.x_squeezed(), loss);
}

GainSet gains_for(const ExperimentConfig &config, const Criterion &c, const GaussianState &state) {
    const auto slots = c.gain_slots();
    switch (config.gains.kind) {
        case GainSpec::Kind::Unit:
            return GainSet::unit(slots);
        case GainSpec::Kind::Optimal:
            return optimal_gains_numeric(c, state);
        case GainSpec::Kind::Explicit:
            break;
    }
    GainSet g = GainSet::unit(slots);
    for (const auto &s : slots) {
        if (config.gains.values.contains(s)) {
            g.set(s, config.gains.values.at(s));
        }
    }
    return g;
}

}  // namespace cvcluster
