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

#ifndef CVCLUSTER_CONFIG_HPP
#define CVCLUSTER_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvcluster/criteria.hpp"
#include "cvcluster/gaussian.hpp"
#include "cvcluster/graph.hpp"
#include "cvcluster/network.hpp"
#include "json.hpp"

namespace cvcluster {

/// User-facing configuration problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class BuiltinGraph { None, Linear8, Diamond8 };

struct SweepSpec {
    double r_min;
    double r_max;
    int steps;

    std::vector<double> grid() const;
};

struct GainSpec {
    enum class Kind { Unit, Optimal, Explicit };
    Kind kind = Kind::Unit;
    /// Explicit values; slots not listed default to 1.
    GainSet values;
};

/// Parsed and validated experiment description.
///
/// Schema (all keys optional unless noted):
///   graph        "linear8" | "diamond8" | {"nodes": n, "edges": [[a, b], ...]}  (required)
///   squeezing    {"r": number | [n numbers], "x_squeezed": [modes]}
///                or {"r": ..., "orientation": ["x" | "p", ...]}
///   loss         {"efficiency": number | [n numbers]} or {"transmission": t, "detection": d}
///   effective_r  number; exactly one of `loss` / `effective_r` must be present
///   gains        "unit" | "optimal" | {"g_D6": 0.6, ...}
///   sweep        {"r_min": a, "r_max": b, "steps": k}
struct ExperimentConfig {
    std::string graph_name;
    Graph graph{1, {}};
    BuiltinGraph builtin = BuiltinGraph::None;
    std::vector<SqueezeAxis> axes;
    std::vector<double> squeeze_r;
    std::optional<std::vector<double>> efficiency;
    std::optional<double> effective_r;
    GainSpec gains;
    std::optional<SweepSpec> sweep;

    int modes() const {
        return graph.modes();
    }
    std::set<int> x_squeezed() const;
    /// Squeezing actually simulated: r_e on every mode, or the configured r.
    SqueezePattern pattern() const;
    /// Same orientation with a uniform r (used by sweeps).
    SqueezePattern pattern_at(double r) const;
    LossModel loss() const;
    /// Uniform squeezing of the simulated model (r_e, or the common configured r).
    double model_r() const;
};

ExperimentConfig parse_config(const nlohmann::json &j);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Parses a --gains value: "unit", "optimal", or the path of a JSON object of gains.
GainSpec parse_gain_option(const std::string &value);

/// Builtins use the fixed eight-mode networks; other graphs go through the
/// generic compiler with the configured x-squeezed inputs.
CompiledNetwork compile_for(const ExperimentConfig &config);

/// Criterion set of a builtin graph; throws ConfigError for other graphs.
std::vector<Criterion> criteria_for(const ExperimentConfig &config);

GaussianState state_for(const ExperimentConfig &config, const CompiledNetwork &network);

/// r ↦ state with the configured orientation and loss.
StateBuilder builder_for(const ExperimentConfig &config, const CompiledNetwork &network);

/// Gains for one criterion under the config's gain spec.
GainSet gains_for(const ExperimentConfig &config, const Criterion &c, const GaussianState &state);

}  // namespace cvcluster

#endif
