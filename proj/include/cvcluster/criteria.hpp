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

#ifndef CVCLUSTER_CRITERIA_HPP
#define CVCLUSTER_CRITERIA_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvcluster/gaussian.hpp"

// Variance-sum inseparability inequalities V(u) + V(v) < bound for the
// eight-mode linear and two-diamond cluster states.
namespace cvcluster {

/// One term of a criterion combination. A non-empty `gain` names the gain
/// slot that multiplies `coeff`.
struct CriterionTerm {
    int mode;
    Quadrature quadrature;
    double coeff;
    std::string gain;
};

struct Criterion {
    std::string id;
    int modes = 8;
    std::vector<CriterionTerm> u;
    std::vector<CriterionTerm> v;
    /// The pair of modes whose separation the criterion refutes.
    std::pair<int, int> bipartition;

    /// Distinct gain slots in first-appearance order.
    std::vector<std::string> gain_slots() const;
};

class GainSet {
   public:
    GainSet() = default;
    explicit GainSet(std::map<std::string, double> values);

    /// Every slot in `slots` set to 1.
    static GainSet unit(std::span<const std::string> slots);
    static GainSet unit(std::span<const Criterion> criteria);

    /// Throws std::invalid_argument if the slot is missing.
    double at(const std::string &slot) const;
    bool contains(const std::string &slot) const {
        return values_.count(slot) != 0;
    }
    void set(const std::string &slot, double value);
    /// Copies every entry of `other` over this set.
    GainSet &merge(const GainSet &other);

    const std::map<std::string, double> &values() const {
        return values_;
    }

   private:
    std::map<std::string, double> values_;
};

/// Coefficient vector of one side of a criterion with gains substituted.
RealVector instantiate(std::span<const CriterionTerm> terms, const GainSet &gains, int modes);

/// ½(|c_m + Σ_K c_k| + |c_n + Σ_L c_l|), where c_j = u_x,j·v_p,j − u_p,j·v_x,j is
/// mode j's commutator weight and the other modes are split between the two
/// sides in the way that gives the smallest value.
double vlf_bound(const Criterion &c, const GainSet &gains);

/// Inequalities (a)-(g) for the linear chain of eight.
std::vector<Criterion> criterion_set_linear();

/// Inequalities (a)-(i) for the two-diamond of eight.
std::vector<Criterion> criterion_set_diamond();

/// Modes whose unit-gain nullifiers make up u and v.
std::pair<int, int> unit_gain_nullifier_modes(const Criterion &c);

struct Evaluation {
    double variance_u;
    double variance_v;
    double lhs;
    double bound;
    bool satisfied;
};

Evaluation evaluate(const Criterion &c, const GaussianState &state, const GainSet &gains);

GainSet optimal_gains_analytic_linear(double r);
GainSet optimal_gains_analytic_diamond(double r);
/// Both families together (slots g_L1..g_L8 and g_D1..g_D6).
GainSet optimal_gains_analytic(double r);

using StateBuilder = std::function<GaussianState(double r)>;

/// Builds r ↦ state for a fixed network, squeeze orientation and loss.
StateBuilder make_state_builder(ComplexMatrix u, std::set<int> x_squeezed, std::optional<LossModel> loss = std::nullopt);

/// Minimizes the criterion's lhs over its gain slots by coordinate descent,
/// each step the exact vertex of the parabola through three evaluations.
/// Throws std::runtime_error on a non-finite variance or non-convergence.
GainSet optimal_gains_numeric(const Criterion &c, const GaussianState &state);
GainSet optimal_gains_numeric(const Criterion &c, const StateBuilder &builder, double r);

enum class GainMode { Unit, Optimal };

enum class ThresholdStatus {
    Crossing,         // satisfied exactly for r above `r`
    AlwaysSatisfied,  // satisfied for every r > 0 on the scan
    NeverSatisfied,   // not satisfied anywhere on (0, 3]
};

struct ThresholdResult {
    ThresholdStatus status;
    double r = 0.0;

    std::optional<double> value() const {
        return status == ThresholdStatus::Crossing ? std::optional<double>(r) : std::nullopt;
    }
};

/// Smallest squeezing above which lhs < bound, by a grid scan of (0, 3]
/// followed by bisection to `tolerance`. Optimal mode re-optimizes the gains
/// numerically at every r.
ThresholdResult threshold_r(
    const Criterion &c, GainMode mode, const StateBuilder &builder, double tolerance = 1e-9);

/// lhs − bound at squeezing r, with unit or re-optimized gains.
double criterion_margin(const Criterion &c, GainMode mode, const StateBuilder &builder, double r);

struct CriterionOutcome {
    Criterion criterion;
    Evaluation evaluation;
};

struct InseparabilityReport {
    std::vector<CriterionOutcome> outcomes;
    bool all_satisfied;
};

InseparabilityReport full_inseparability_report(
    std::span<const Criterion> criteria, const GaussianState &state, const GainSet &gains);

}  // namespace cvcluster

#endif
