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

#include "cvcluster/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvcluster {

namespace {

CriterionTerm p(int mode) {
    return {mode, Quadrature::P, 1.0, ""};
}
CriterionTerm x(int mode, std::string gain = "") {
    return {mode, Quadrature::X, -1.0, std::move(gain)};
}

Criterion make(std::string id, std::vector<CriterionTerm> u, std::vector<CriterionTerm> v, int m, int n) {
    return {std::move(id), 8, std::move(u), std::move(v), {m, n}};
}

double lhs_with(const Criterion &c, const GaussianState &state, const GainSet &gains) {
    return quadrature_variance(state, instantiate(c.u, gains, c.modes)) +
           quadrature_variance(state, instantiate(c.v, gains, c.modes));
}

}  // namespace

std::vector<std::string> Criterion::gain_slots() const {
    std::vector<std::string> out;
    for (const auto *side : {&u, &v}) {
        for (const auto &t : *side) {
            if (!t.gain.empty() && std::find(out.begin(), out.end(), t.gain) == out.end()) {
                out.push_back(t.gain);
            }
        }
    }
    return out;
}

GainSet::GainSet(std::map<std::string, double> values) {
    for (const auto &[k, v] : values) {
        set(k, v);
    }
}

GainSet GainSet::unit(std::span<const std::string> slots) {
    GainSet g;
    for (const auto &s : slots) {
        g.set(s, 1.0);
    }
    return g;
}

GainSet GainSet::unit(std::span<const Criterion> criteria) {
    GainSet g;
    for (const auto &c : criteria) {
        for (const auto &s : c.gain_slots()) {
            g.set(s, 1.0);
        }
    }
    return g;
}

double GainSet::at(const std::string &slot) const {
    auto it = values_.find(slot);
    if (it == values_.end()) {
        throw std::invalid_argument("missing gain '" + slot + "'");
    }
    return it->second;
}

void GainSet::set(const std::string &slot, double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("gain '" + slot + "' must be finite");
    }
    values_[slot] = value;
}

GainSet &GainSet::merge(const GainSet &other) {
    for (const auto &[k, v] : other.values_) {
        values_[k] = v;
    }
    return *this;
}

RealVector instantiate(std::span<const CriterionTerm> terms, const GainSet &gains, int modes) {
    std::vector<QuadratureTerm> q;
    q.reserve(terms.size());
    for (const auto &t : terms) {
        double c = t.gain.empty() ? t.coeff : t.coeff * gains.at(t.gain);
        q.push_back({t.mode, t.quadrature, c});
    }
    return combination_vector(q, modes);
}

double vlf_bound(const Criterion &c, const GainSet &gains) {
    const int n = c.modes;
    RealVector u = instantiate(c.u, gains, n);
    RealVector v = instantiate(c.v, gains, n);
    auto weight = [&](int mode) {
        const int j = mode - 1;
        return u(j) * v(n + j) - u(n + j) * v(j);
    };
    const auto [m, k] = c.bipartition;
    std::vector<double> others;
    for (int j = 1; j <= n; j++) {
        if (j != m && j != k && weight(j) != 0.0) {
            others.push_back(weight(j));
        }
    }
    if (others.size() > 20) {
        throw std::invalid_argument("vlf_bound: too many contributing modes to enumerate");
    }
    double best = std::numeric_limits<double>::infinity();
    const unsigned long combos = 1ul << others.size();
    for (unsigned long mask = 0; mask < combos; mask++) {
        double side_m = weight(m);
        double side_n = weight(k);
        for (size_t i = 0; i < others.size(); i++) {
            ((mask >> i) & 1 ? side_n : side_m) += others[i];
        }
        best = std::min(best, 0.5 * (std::abs(side_m) + std::abs(side_n)));
    }
    return best;
}

std::vector<Criterion> criterion_set_linear() {
    return {
        make("3a", {p(1), x(2)}, {p(2), x(1), x(3, "g_L3")}, 1, 2),
        make("3b", {p(2), x(1, "g_L1"), x(3)}, {p(3), x(2), x(4, "g_L4")}, 2, 3),
        make("3c", {p(3), x(2, "g_L2"), x(4)}, {p(4), x(3), x(5, "g_L5")}, 3, 4),
        make("3d", {p(4), x(3, "g_L3"), x(5)}, {p(5), x(4), x(6, "g_L6")}, 4, 5),
        make("3e", {p(5), x(4, "g_L4"), x(6)}, {p(6), x(5), x(7, "g_L7")}, 5, 6),
        make("3f", {p(6), x(5, "g_L5"), x(7)}, {p(7), x(6), x(8, "g_L8")}, 6, 7),
        make("3g", {p(7), x(6, "g_L6"), x(8)}, {p(8), x(7)}, 7, 8),
    };
}

std::vector<Criterion> criterion_set_diamond() {
    return {
        make("4a", {p(1), x(3), x(4, "g_D1")}, {p(3), x(1), x(2, "g_D2")}, 1, 3),
        make("4b", {p(2), x(3), x(4, "g_D1")}, {p(3), x(2), x(1, "g_D2")}, 2, 3),
        make("4c", {p(1), x(3, "g_D3"), x(4)}, {p(4), x(1), x(2, "g_D4"), x(5, "g_D5")}, 1, 4),
        make("4d", {p(2), x(3, "g_D3"), x(4)}, {p(4), x(1, "g_D4"), x(2), x(5, "g_D5")}, 2, 4),
        make("4e", {p(4), x(1, "g_D6"), x(2, "g_D6"), x(5)}, {p(5), x(4), x(7, "g_D6"), x(8, "g_D6")}, 4, 5),
        make("4f", {p(5), x(4, "g_D5"), x(7), x(8, "g_D4")}, {p(7), x(5), x(6, "g_D3")}, 5, 7),
        make("4g", {p(5), x(4, "g_D5"), x(7, "g_D4"), x(8)}, {p(8), x(5), x(6, "g_D3")}, 5, 8),
        make("4h", {p(6), x(7), x(8, "g_D2")}, {p(7), x(5, "g_D1"), x(6)}, 6, 7),
        make("4i", {p(6), x(7, "g_D2"), x(8)}, {p(8), x(5, "g_D1"), x(6)}, 6, 8),
    };
}

std::pair<int, int> unit_gain_nullifier_modes(const Criterion &c) {
    auto p_mode = [](const std::vector<CriterionTerm> &side) {
        for (const auto &t : side) {
            if (t.quadrature == Quadrature::P) {
                return t.mode;
            }
        }
        throw std::invalid_argument("criterion side has no p term");
    };
    return {p_mode(c.u), p_mode(c.v)};
}

Evaluation evaluate(const Criterion &c, const GaussianState &state, const GainSet &gains) {
    if (state.modes() != c.modes) {
        throw std::invalid_argument("evaluate: state has " + std::to_string(state.modes()) + " modes, criterion " +
                                    c.id + " needs " + std::to_string(c.modes));
    }
    Evaluation e{};
    e.variance_u = quadrature_variance(state, instantiate(c.u, gains, c.modes));
    e.variance_v = quadrature_variance(state, instantiate(c.v, gains, c.modes));
    e.lhs = e.variance_u + e.variance_v;
    e.bound = vlf_bound(c, gains);
    e.satisfied = e.lhs < e.bound;
    return e;
}

namespace {

// a·(e^{4r} − 1) / (b + a·e^{4r})
double ratio_gain(double a, double b, double r) {
    const double e = std::exp(4.0 * r);
    return a * (e - 1.0) / (b + a * e);
}

void require_non_negative(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("squeezing parameter must be finite and non-negative");
    }
}

}  // namespace

GainSet optimal_gains_analytic_linear(double r) {
    require_non_negative(r);
    const double g18 = ratio_gain(21, 13, r);
    const double g27 = ratio_gain(13, 21, r);
    const double g36 = ratio_gain(8, 9, r);
    const double g45 = ratio_gain(15, 19, r);
    return GainSet({
        {"g_L1", g18},
        {"g_L2", g27},
        {"g_L3", g36},
        {"g_L4", g45},
        {"g_L5", g45},
        {"g_L6", g36},
        {"g_L7", g27},
        {"g_L8", g18},
    });
}

GainSet optimal_gains_analytic_diamond(double r) {
    require_non_negative(r);
    const double e4 = std::exp(4.0 * r);
    const double e8 = std::exp(8.0 * r);
    const double denom = 7.0 + 18.0 * e4 + 9.0 * e8;
    return GainSet({
        {"g_D1", ratio_gain(15, 19, r)},
        {"g_D2", ratio_gain(21, 13, r)},
        {"g_D3", ratio_gain(9, 8, r)},
        {"g_D4", 9.0 * (e8 - 1.0) / denom},
        {"g_D5", 3.0 * (3.0 * e8 - 2.0 * e4 - 1.0) / denom},
        {"g_D6", ratio_gain(4, 13, r)},
    });
}

GainSet optimal_gains_analytic(double r) {
    GainSet g = optimal_gains_analytic_linear(r);
    return g.merge(optimal_gains_analytic_diamond(r));
}

StateBuilder make_state_builder(ComplexMatrix u, std::set<int> x_squeezed, std::optional<LossModel> loss) {
    const int n = static_cast<int>(u.rows());
    LossModel l = loss ? *loss : LossModel::uniform(n, 1.0);
    if (l.modes() != n) {
        throw std::invalid_argument("make_state_builder: loss model has wrong number of modes");
    }
    return [u = std::move(u), x_squeezed = std::move(x_squeezed), l, n](double r) {
        return prepare_state(u, SqueezePattern::uniform(n, r, x_squeezed), l);
    };
}

GainSet optimal_gains_numeric(const Criterion &c, const GaussianState &state) {
    const auto slots = c.gain_slots();
    GainSet gains = GainSet::unit(slots);
    for (const auto &s : slots) {
        gains.set(s, 0.0);
    }
    constexpr double kStep = 1.0;
    constexpr double kConverged = 1e-10;
    constexpr int kMaxSweeps = 10000;
    for (int sweep = 0; sweep < kMaxSweeps; sweep++) {
        double largest_move = 0.0;
        for (const auto &s : slots) {
            const double g = gains.at(s);
            gains.set(s, g - kStep);
            const double lo = lhs_with(c, state, gains);
            gains.set(s, g + kStep);
            const double hi = lhs_with(c, state, gains);
            gains.set(s, g);
            const double mid = lhs_with(c, state, gains);
            if (!std::isfinite(lo) || !std::isfinite(mid) || !std::isfinite(hi)) {
                throw std::runtime_error("optimal_gains_numeric: non-finite variance for criterion " + c.id);
            }
            const double curvature = lo + hi - 2.0 * mid;
            if (!(curvature > 0.0)) {
                continue;  // lhs does not depend on this slot
            }
            const double next = g - kStep * (hi - lo) / (2.0 * curvature);
            gains.set(s, next);
            largest_move = std::max(largest_move, std::abs(next - g));
        }
        if (largest_move < kConverged) {
            return gains;
        }
    }
    throw std::runtime_error("optimal_gains_numeric: no convergence for criterion " + c.id);
}

GainSet optimal_gains_numeric(const Criterion &c, const StateBuilder &builder, double r) {
    return optimal_gains_numeric(c, builder(r));
}

double criterion_margin(const Criterion &c, GainMode mode, const StateBuilder &builder, double r) {
    GaussianState state = builder(r);
    GainSet gains = mode == GainMode::Unit ? GainSet::unit(c.gain_slots()) : optimal_gains_numeric(c, state);
    Evaluation e = evaluate(c, state, gains);
    return e.lhs - e.bound;
}

ThresholdResult threshold_r(const Criterion &c, GainMode mode, const StateBuilder &builder, double tolerance) {
    constexpr double kMaxR = 3.0;
    constexpr int kGridSteps = 300;
    std::vector<double> grid{1e-3};
    for (int k = 1; k <= kGridSteps; k++) {
        grid.push_back(kMaxR * k / kGridSteps);
    }
    int last_unsatisfied = -1;
    for (int i = 0; i < static_cast<int>(grid.size()); i++) {
        if (criterion_margin(c, mode, builder, grid[i]) >= 0.0) {
            last_unsatisfied = i;
        }
    }
    if (last_unsatisfied < 0) {
        return {ThresholdStatus::AlwaysSatisfied, 0.0};
    }
    if (last_unsatisfied == static_cast<int>(grid.size()) - 1) {
        return {ThresholdStatus::NeverSatisfied, kMaxR};
    }
    double lo = grid[last_unsatisfied];
    double hi = grid[last_unsatisfied + 1];
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (criterion_margin(c, mode, builder, mid) >= 0.0 ? lo : hi) = mid;
    }
    return {ThresholdStatus::Crossing, 0.5 * (lo + hi)};
}

InseparabilityReport full_inseparability_report(
    std::span<const Criterion> criteria, const GaussianState &state, const GainSet &gains) {
    InseparabilityReport report{{}, true};
    for (const auto &c : criteria) {
        Evaluation e = evaluate(c, state, gains);
        report.all_satisfied = report.all_satisfied && e.satisfied;
        report.outcomes.push_back({c, e});
    }
    return report;
}

}  // namespace cvcluster
