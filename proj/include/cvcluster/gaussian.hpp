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

#ifndef CVCLUSTER_GAUSSIAN_HPP
#define CVCLUSTER_GAUSSIAN_HPP

#include <set>
#include <span>
#include <string>
#include <vector>

#include "cvcluster/graph.hpp"
#include "cvcluster/linalg.hpp"

// Zero-mean Gaussian states in the quadrature convention x̂ = (â + â†)/2,
// p̂ = (â − â†)/2i, so the vacuum covariance is I/4. Covariance matrices use
// the ordering (x_1..x_n, p_1..p_n).
namespace cvcluster {

enum class Quadrature { X, P };

char to_char(Quadrature q);

/// Which quadrature of an input mode carries the e^{−r} squeezing.
enum class SqueezeAxis { X, P };

class SqueezePattern {
   public:
    SqueezePattern(std::vector<SqueezeAxis> axes, std::vector<double> r);

    /// Same r on every mode; modes listed in `x_squeezed` are x-squeezed, the rest p-squeezed.
    static SqueezePattern uniform(int modes, double r, const std::set<int> &x_squeezed);

    int modes() const {
        return static_cast<int>(axes_.size());
    }
    SqueezeAxis axis(int mode) const {
        return axes_.at(mode - 1);
    }
    double r(int mode) const {
        return r_.at(mode - 1);
    }

   private:
    std::vector<SqueezeAxis> axes_;
    std::vector<double> r_;
};

/// Per-mode power efficiency η ∈ [0, 1] of a pure-loss channel.
class LossModel {
   public:
    explicit LossModel(std::vector<double> efficiency);
    static LossModel uniform(int modes, double efficiency);

    int modes() const {
        return static_cast<int>(efficiency_.size());
    }
    double efficiency(int mode) const {
        return efficiency_.at(mode - 1);
    }
    bool lossless() const;

   private:
    std::vector<double> efficiency_;
};

/// Quadrature covariance matrix of a zero-mean Gaussian state.
///
/// Construction checks symmetry, positive definiteness and the uncertainty
/// relation cov + (i/4)Ω ⪰ 0 (smallest eigenvalue ≥ −1e-10).
class GaussianState {
   public:
    explicit GaussianState(RealMatrix covariance);
    static GaussianState vacuum(int modes);

    int modes() const {
        return static_cast<int>(cov_.rows() / 2);
    }
    const RealMatrix &covariance() const {
        return cov_;
    }
    /// Smallest eigenvalue of cov + (i/4)Ω.
    double uncertainty_margin() const;

   private:
    RealMatrix cov_;
};

GaussianState input_covariance(const SqueezePattern &pattern);

/// S = [[Re U, −Im U], [Im U, Re U]], the quadrature map of b = U a.
RealMatrix symplectic_from_unitary(const ComplexMatrix &u);

/// S·cov·Sᵀ.
GaussianState evolve(const GaussianState &state, const RealMatrix &s);

/// D·cov·D + (I − D²)/4 with D = diag(√η) on both quadratures of each mode.
GaussianState apply_loss(const GaussianState &state, const LossModel &loss);

/// Squeezed inputs → passive network → loss.
GaussianState prepare_state(const ComplexMatrix &u, const SqueezePattern &pattern, const LossModel &loss);

/// cᵀ·cov·c.
double quadrature_variance(const GaussianState &state, const RealVector &coeffs);

/// cᵀ·(I/4)·c, the vacuum (shot-noise) level of the same combination.
double qnl_variance(const RealVector &coeffs);

/// 10·log10(v / qnl). Both arguments must be positive.
double variance_dB(double v, double qnl);

/// Squeezing parameter of a pure squeezed state with the same squeezed-quadrature
/// variance as squeezing r followed by loss η: −½·ln(η e^{−2r} + 1 − η).
double equivalent_squeezing(double r, double efficiency);

struct QuadratureTerm {
    int mode;
    Quadrature quadrature;
    double coeff;
};

/// Dense coefficient vector over (x_1..x_n, p_1..p_n); repeated terms add up.
RealVector combination_vector(std::span<const QuadratureTerm> terms, int modes);

RealVector nullifier_vector(const NullifierSpec &spec, int modes);

/// Renders a coefficient vector as e.g. "p1 - x2 - 0.6*x3".
std::string combination_to_string(const RealVector &coeffs);

/// Coefficient of one input vacuum quadrature in an output combination.
struct ExcessNoiseTerm {
    int mode;
    Quadrature quadrature;  // of the vacuum operator x̂⁽⁰⁾ / p̂⁽⁰⁾
    double coefficient;
};

/// One output combination rewritten in input vacuum operators.
///
/// `squeezed` holds the coefficients of e^{−r}-scaled vacuum quadratures,
/// `anti_squeezed` those of e^{+r}-scaled ones (ideally all zero).
struct NullifierExcessNoise {
    int mode;
    std::vector<ExcessNoiseTerm> squeezed;
    std::vector<ExcessNoiseTerm> anti_squeezed;

    double max_anti_squeezed() const;
    double squeezed_weight() const;  // Σ coefficient²
    /// Variance rebuilt from the coefficients: Σ c²·e^{∓2r}/4.
    double variance(const SqueezePattern &pattern) const;
    /// Squeezed terms with |coefficient| > tolerance.
    std::vector<ExcessNoiseTerm> significant_terms(double tolerance = 1e-12) const;
};

NullifierExcessNoise excess_noise_of(const ComplexMatrix &u, const SqueezePattern &pattern, const RealVector &coeffs);

std::vector<NullifierExcessNoise> excess_noise_decomposition(
    const ComplexMatrix &u, const SqueezePattern &pattern, std::span<const NullifierSpec> nullifiers);

}  // namespace cvcluster

#endif
