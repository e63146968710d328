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

#include "cvcluster/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <thread>

#include "CLI11.hpp"
#include "cvcluster/config.hpp"
#include "cvcluster/criteria.hpp"
#include "cvcluster/gaussian.hpp"
#include "cvcluster/measurement.hpp"
#include "cvcluster/network.hpp"
#include "cvcluster/reference.hpp"
#include "json.hpp"

namespace cvcluster {

using nlohmann::json;

namespace {

/// Problems with the output location are the caller's to fix.
class OutputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config;
    std::string out = "cvcluster_out";
    std::string gains;
    long long n = 1000000;
    std::uint64_t seed = 1;
};

std::string fmt(double v, const char *spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

json real_json(const RealMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json complex_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json measured_json(const reference::Measured &m) {
    return {{"value", m.value}, {"uncertainty", m.uncertainty}};
}

std::filesystem::path prepare_out(const Options &opt) {
    std::filesystem::path dir(opt.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw OutputError("cannot create output directory " + dir.string());
    }
    return dir;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw OutputError("cannot write " + path.string());
    }
}

void write_json(const std::filesystem::path &path, const json &j) {
    write_text(path, j.dump(2) + "\n");
}

/// Runs f(0..count-1) on a few threads; results come back in index order.
template <typename F>
auto ordered_parallel_map(size_t count, F f) -> std::vector<decltype(f(size_t{0}))> {
    std::vector<decltype(f(size_t{0}))> out(count);
    size_t workers = std::max<size_t>(1, std::min<size_t>(std::thread::hardware_concurrency(), count));
    std::vector<std::future<void>> jobs;
    for (size_t w = 0; w < workers; w++) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (size_t i = w; i < count; i += workers) {
                out[i] = f(i);
            }
        }));
    }
    for (auto &j : jobs) {
        j.get();
    }
    return out;
}

struct Context {
    ExperimentConfig config;
    CompiledNetwork network;
};

Context load(const Options &opt) {
    ExperimentConfig config = load_config(opt.config);
    if (!opt.gains.empty()) {
        config.gains = parse_gain_option(opt.gains);
    }
    CompiledNetwork network = compile_for(config);
    return {std::move(config), std::move(network)};
}

std::optional<std::vector<reference::Measured>> reference_nullifiers(const ExperimentConfig &c) {
    switch (c.builtin) {
        case BuiltinGraph::Linear8:
            return reference::linear8_nullifier_dB();
        case BuiltinGraph::Diamond8:
            return reference::diamond8_nullifier_dB();
        case BuiltinGraph::None:
            break;
    }
    return std::nullopt;
}

std::optional<std::vector<reference::Measured>> reference_lhs(const ExperimentConfig &c) {
    switch (c.builtin) {
        case BuiltinGraph::Linear8:
            return reference::linear8_lhs();
        case BuiltinGraph::Diamond8:
            return reference::diamond8_lhs();
        case BuiltinGraph::None:
            break;
    }
    return std::nullopt;
}

json model_json(const ExperimentConfig &c) {
    json m = {{"graph", c.graph_name}, {"modes", c.modes()}, {"x_squeezed", c.x_squeezed()}};
    if (c.effective_r) {
        m["effective_r"] = *c.effective_r;
    } else {
        m["r"] = c.squeeze_r;
        m["efficiency"] = *c.efficiency;
        bool uniform = std::adjacent_find(c.efficiency->begin(), c.efficiency->end(), std::not_equal_to<>()) ==
                       c.efficiency->end();
        try {
            if (uniform) {
                m["equivalent_r"] = equivalent_squeezing(c.model_r(), c.efficiency->front());
            }
        } catch (const ConfigError &) {
        }
    }
    return m;
}

json terms_json(const std::vector<ExcessNoiseTerm> &terms) {
    json out = json::array();
    for (const auto &t : terms) {
        if (std::abs(t.coefficient) > 1e-12) {
            out.push_back({{"mode", t.mode}, {"quadrature", std::string(1, to_char(t.quadrature))},
                           {"coefficient", t.coefficient}});
        }
    }
    return out;
}

int cmd_compile(const Options &opt, std::ostream &out) {
    Context ctx = load(opt);
    auto dir = prepare_out(opt);
    const auto &net = ctx.network;
    const int n = ctx.config.modes();

    write_json(dir / "unitary.json", {{"graph", ctx.config.graph_name},
                                      {"modes", n},
                                      {"x_squeezed", net.x_squeezed},
                                      {"unitary", complex_json(net.unitary)},
                                      {"unitarity_residual", unitarity_residual(net.unitary)}});
    RealMatrix gram_check = net.gram_factor * net.gram_factor.transpose() - net.inverse_gram;
    write_json(dir / "gram_factor.json", {{"adjacency", real_json(net.adjacency)},
                                          {"inverse_gram", real_json(net.inverse_gram)},
                                          {"gram_factor", real_json(net.gram_factor)},
                                          {"gram_residual", gram_check.cwiseAbs().maxCoeff()}});
    out << "compiled " << ctx.config.graph_name << " (" << n << " modes), unitarity residual "
        << fmt(unitarity_residual(net.unitary), "%.3g") << "\n";

    if (ctx.config.builtin == BuiltinGraph::Linear8) {
        auto seq = linear8_decomposition();
        json elements = json::array();
        for (size_t i = 0; i < seq.size(); i++) {
            const auto &e = seq[i];
            json el = {{"index", i + 1}, {"label", e.label()}, {"kind", to_string(e.kind)}, {"mode", e.mode}};
            if (e.kind == ElementKind::BeamSplitter) {
                el["second_mode"] = e.second_mode;
                el["transmission"] = e.transmission;
                el["sign"] = e.sign;
            }
            el["matrix"] = complex_json(element_matrix(e, n));
            elements.push_back(std::move(el));
        }
        ComplexMatrix product = compose_sequence(seq, n);
        double residual = (product - net.unitary).cwiseAbs().maxCoeff();
        write_json(dir / "sequence.json", {{"order", "U = E_1 E_2 ... E_19 (E_19 acts first)"},
                                           {"elements", elements},
                                           {"product", complex_json(product)},
                                           {"residual", residual}});
        out << "element sequence: " << seq.size() << " elements, max |product - U| = " << fmt(residual, "%.3g")
            << "\n";
    }
    out << "wrote " << dir.string() << "\n";
    return kExitOk;
}

int cmd_simulate(const Options &opt, std::ostream &out) {
    Context ctx = load(opt);
    auto dir = prepare_out(opt);
    const auto &cfg = ctx.config;
    const int n = cfg.modes();
    GaussianState state = state_for(cfg, ctx.network);
    SqueezePattern pattern = cfg.pattern();
    auto specs = nullifier_coefficients(cfg.graph);
    auto refs = reference_nullifiers(cfg);

    json rows = json::array();
    out << "mode  nullifier                               variance/QNL   dB       measured dB\n";
    for (size_t k = 0; k < specs.size(); k++) {
        RealVector c = nullifier_vector(specs[k], n);
        double var = quadrature_variance(state, c);
        double qnl = qnl_variance(c);
        auto noise = excess_noise_of(ctx.network.unitary, pattern, c);
        json row = {{"mode", specs[k].mode},
                    {"nullifier", specs[k].to_string()},
                    {"variance", var},
                    {"qnl", qnl},
                    {"ratio", var / qnl},
                    {"dB", variance_dB(var, qnl)},
                    {"excess_noise",
                     {{"squeezed", terms_json(noise.squeezed)},
                      {"anti_squeezed", terms_json(noise.anti_squeezed)},
                      {"max_anti_squeezed", noise.max_anti_squeezed()}}}};
        std::string measured = "-";
        if (refs) {
            row["measured_dB"] = measured_json((*refs)[k]);
            measured = fmt((*refs)[k].value, "%.2f") + " +- " + fmt((*refs)[k].uncertainty, "%.2f");
        }
        rows.push_back(std::move(row));
        char line[200];
        std::snprintf(line, sizeof(line), "%-5d %-40s %-14.6f %-8.3f %s\n", specs[k].mode, specs[k].to_string().c_str(),
                      var / qnl, variance_dB(var, qnl), measured.c_str());
        out << line;
    }
    write_json(dir / "simulate.json", {{"model", model_json(cfg)}, {"nullifiers", rows}});
    out << "wrote " << (dir / "simulate.json").string() << "\n";
    return kExitOk;
}

int cmd_criteria(const Options &opt, std::ostream &out) {
    Context ctx = load(opt);
    const auto &cfg = ctx.config;
    auto criteria = criteria_for(cfg);
    auto dir = prepare_out(opt);
    const int n = cfg.modes();
    GaussianState state = state_for(cfg, ctx.network);
    auto refs = reference_lhs(cfg);

    json rows = json::array();
    bool all = true;
    out << "id   lhs      bound    result  dB(u)    dB(v)    measured\n";
    for (size_t k = 0; k < criteria.size(); k++) {
        const auto &c = criteria[k];
        GainSet gains = gains_for(cfg, c, state);
        Evaluation ev = evaluate(c, state, gains);
        double db_u = variance_dB(ev.variance_u, qnl_variance(instantiate(c.u, gains, n)));
        double db_v = variance_dB(ev.variance_v, qnl_variance(instantiate(c.v, gains, n)));
        all = all && ev.satisfied;
        json row = {{"id", c.id},
                    {"bipartition", {c.bipartition.first, c.bipartition.second}},
                    {"gains", gains.values()},
                    {"variance_u", ev.variance_u},
                    {"variance_v", ev.variance_v},
                    {"dB_u", db_u},
                    {"dB_v", db_v},
                    {"lhs", ev.lhs},
                    {"bound", ev.bound},
                    {"satisfied", ev.satisfied}};
        std::string measured = "-";
        if (refs) {
            row["measured_lhs"] = measured_json((*refs)[k]);
            measured = fmt((*refs)[k].value, "%.2f") + " +- " + fmt((*refs)[k].uncertainty, "%.2f");
        }
        rows.push_back(std::move(row));
        char line[200];
        std::snprintf(line, sizeof(line), "%-4s %-8.4f %-8.4f %-7s %-8.3f %-8.3f %s\n", c.id.c_str(), ev.lhs, ev.bound,
                      ev.satisfied ? "PASS" : "FAIL", db_u, db_v, measured.c_str());
        out << line;
    }
    write_json(dir / "criteria.json", {{"model", model_json(cfg)}, {"criteria", rows}, {"all_satisfied", all}});
    out << (all ? "all inequalities satisfied" : "not all inequalities satisfied") << "\n";
    out << "wrote " << (dir / "criteria.json").string() << "\n";
    return kExitOk;
}

std::string status_name(ThresholdStatus s) {
    switch (s) {
        case ThresholdStatus::Crossing:
            return "crossing";
        case ThresholdStatus::AlwaysSatisfied:
            return "always_satisfied";
        case ThresholdStatus::NeverSatisfied:
            return "never_satisfied";
    }
    return "?";
}

int cmd_sweep(const Options &opt, std::ostream &out) {
    Context ctx = load(opt);
    const auto &cfg = ctx.config;
    auto criteria = criteria_for(cfg);
    auto dir = prepare_out(opt);
    SweepSpec spec = cfg.sweep.value_or(SweepSpec{0.0, 1.0, 101});
    auto grid = spec.grid();
    StateBuilder builder = builder_for(cfg, ctx.network);

    auto blocks = ordered_parallel_map(grid.size(), [&](size_t i) {
        GaussianState state = builder(grid[i]);
        std::string block;
        for (const auto &c : criteria) {
            Evaluation unit = evaluate(c, state, GainSet::unit(c.gain_slots()));
            Evaluation best = evaluate(c, state, optimal_gains_numeric(c, state));
            block += fmt(grid[i]) + "," + c.id + "," + fmt(unit.lhs) + "," + fmt(best.lhs) + "," + fmt(unit.bound) +
                     "\n";
        }
        return block;
    });
    std::string csv = "r,criterion,lhs_unit,lhs_optimal,bound\n";
    for (const auto &b : blocks) {
        csv += b;
    }
    write_text(dir / "sweep.csv", csv);

    const auto quoted = reference::unit_gain_thresholds();
    auto results = ordered_parallel_map(criteria.size() * 2, [&](size_t i) {
        return threshold_r(criteria[i / 2], i % 2 == 0 ? GainMode::Unit : GainMode::Optimal, builder, 1e-9);
    });
    std::string tcsv = "criterion,gain_mode,status,r_threshold,quoted\n";
    out << "squeezing thresholds (lhs < bound for r above):\n";
    for (size_t i = 0; i < results.size(); i++) {
        const auto &c = criteria[i / 2];
        const bool unit = i % 2 == 0;
        const auto &res = results[i];
        auto q = quoted.find(c.id);
        bool has_quote = unit && q != quoted.end() && cfg.effective_r;
        tcsv += c.id + "," + (unit ? "unit" : "optimal") + "," + status_name(res.status) + "," +
                (res.value() ? fmt(res.r) : "") + "," + (has_quote ? fmt(q->second) : "") + "\n";
        out << "  " << c.id << " " << (unit ? "unit   " : "optimal") << "  ";
        if (res.value()) {
            out << "r > " << fmt(res.r, "%.4f");
        } else {
            out << status_name(res.status);
        }
        if (has_quote) {
            out << "  (quoted " << fmt(q->second, "%.2f") << ")";
        }
        out << "\n";
    }
    write_text(dir / "thresholds.csv", tcsv);
    if (cfg.builtin == BuiltinGraph::Linear8 && cfg.effective_r) {
        out << "note: 3c and 3d are quoted at 0.24 and 0.27; the covariance simulation gives the same\n"
               "      threshold as 3b (1/2 ln 1.5 = 0.2027) and is taken as ground truth.\n";
    }
    out << "wrote " << (dir / "sweep.csv").string() << " and " << (dir / "thresholds.csv").string() << "\n";
    return kExitOk;
}

int cmd_sample(const Options &opt, std::ostream &out) {
    if (opt.n < 2) {
        throw ConfigError("--n must be at least 2 for a variance estimate");
    }
    Context ctx = load(opt);
    auto dir = prepare_out(opt);
    const auto &cfg = ctx.config;
    const int n = cfg.modes();
    GaussianState state = state_for(cfg, ctx.network);
    SampleBatch batch = sample_quadratures(state, opt.n, opt.seed);

    json rows = json::array();
    double max_z = 0;
    out << "mode  analytic      estimate      std_error     z\n";
    for (const auto &spec : nullifier_coefficients(cfg.graph)) {
        RealVector c = nullifier_vector(spec, n);
        double analytic = quadrature_variance(state, c);
        VarianceEstimate est = estimate_variance(batch, c);
        double z = (est.estimate - analytic) / est.std_error;
        max_z = std::max(max_z, std::abs(z));
        rows.push_back({{"mode", spec.mode},
                        {"nullifier", spec.to_string()},
                        {"analytic", analytic},
                        {"estimate", est.estimate},
                        {"std_error", est.std_error},
                        {"z", z}});
        char line[160];
        std::snprintf(line, sizeof(line), "%-5d %-13.8f %-13.8f %-13.8f %+.3f\n", spec.mode, analytic, est.estimate,
                      est.std_error, z);
        out << line;
    }
    write_json(dir / "sample.json", {{"model", model_json(cfg)},
                                     {"n", opt.n},
                                     {"seed", opt.seed},
                                     {"nullifiers", rows},
                                     {"max_abs_z", max_z},
                                     {"within_3_sigma", max_z < 3.0}});
    out << "max |z| = " << fmt(max_z, "%.3f") << "\n";
    out << "wrote " << (dir / "sample.json").string() << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Continuous-variable cluster state compiler and simulator", "cvcluster"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", opt.config, "Experiment config (JSON)")->required();
        sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
        sub->add_option("--gains", opt.gains, "unit | optimal | path to a JSON object of gains");
        return sub;
    };
    auto *compile = add_common(app.add_subcommand("compile", "Write the network unitary and its factors"));
    auto *simulate = add_common(app.add_subcommand("simulate", "Nullifier variances and excess noise"));
    auto *criteria = add_common(app.add_subcommand("criteria", "Evaluate the inseparability inequalities"));
    auto *sweep = add_common(app.add_subcommand("sweep", "Sweep squeezing and locate thresholds"));
    auto *sample = add_common(app.add_subcommand("sample", "Monte Carlo homodyne samples against analytic values"));
    sample->add_option("--n", opt.n, "Number of shots")->capture_default_str();
    sample->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUser;
    }

    try {
        if (compile->parsed()) {
            return cmd_compile(opt, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(opt, out);
        }
        if (criteria->parsed()) {
            return cmd_criteria(opt, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(opt, out);
        }
        if (sample->parsed()) {
            return cmd_sample(opt, out);
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUser;
    } catch (const OutputError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUser;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUser;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    err << "internal error: no subcommand ran\n";
    return kExitInternal;
}

}  // namespace cvcluster
