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

#include "cvcluster/gaussian.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace cvcluster {

char to_char(Quadrature q) {
    return q == Quadrature::X ? 'x' : 'p';
}

SqueezePattern::SqueezePattern(std::vector<SqueezeAxis> axes, std::vector<double> r)
    : axes_(std::move(axes)), r_(std::move(r)) {
    if (axes_.empty() || axes_.size() != r_.size()) {
        throw std::invalid_argument("squeeze pattern needs one axis and one r per mode");
    }
    for (double v : r_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("squeezing parameter must be finite and non-negative");
        }
    }
}

SqueezePattern SqueezePattern::uniform(int modes, double r, const std::set<int> &x_squeezed) {
    if (modes < 1) {
        throw std::invalid_argument("squeeze pattern needs at least one mode");
    }
    std::vector<SqueezeAxis> axes(static_cast<size_t>(modes), SqueezeAxis::P);
    for (int m : x_squeezed) {
        if (m < 1 || m > modes) {
            throw std::invalid_argument("x-squeezed mode " + std::to_string(m) + " out of range");
        }
        axes[static_cast<size_t>(m - 1)] = SqueezeAxis::X;
    }
    return SqueezePattern(std::move(axes), std::vector<double>(static_cast<size_t>(modes), r));
}

LossModel::LossModel(std::vector<double> efficiency) : efficiency_(std::move(efficiency)) {
    for (double eta : efficiency_) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw std::invalid_argument("loss efficiency must lie in [0, 1]");
        }
    }
}

LossModel LossModel::uniform(int modes, double efficiency) {
    return LossModel(std::vector<double>(static_cast<size_t>(modes), efficiency));
}

bool LossModel::lossless() const {
    for (double eta : efficiency_) {
        if (eta != 1.0) {
            return false;
        }
    }
    return true;
}

GaussianState::GaussianState(RealMatrix covariance) : cov_(std::move(covariance)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() == 0 || cov_.rows() % 2 != 0) {
        throw std::invalid_argument("covariance must be a non-empty 2n x 2n matrix");
    }
    if (!all_finite(cov_)) {
        throw std::invalid_argument("covariance has non-finite entries");
    }
    const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
    if (asymmetry(cov_) > 1e-12 * scale) {
        throw std::invalid_argument("covariance is not symmetric");
    }
    cov_ = (cov_ + cov_.transpose()) / 2.0;
    if (cov_.llt().info() != Eigen::Success) {
        throw std::invalid_argument("covariance is not positive definite");
    }
    if (uncertainty_margin() < -1e-10) {
        throw std::invalid_argument("covariance violates the uncertainty relation");
    }
}

GaussianState GaussianState::vacuum(int modes) {
    return GaussianState(RealMatrix::Identity(2 * modes, 2 * modes) / 4.0);
}

double GaussianState::uncertainty_margin() const {
    using C = std::complex<double>;
    Eigen::MatrixXcd h = cov_.cast<C>() + C(0.0, 0.25) * symplectic_form(modes()).cast<C>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

GaussianState input_covariance(const SqueezePattern &pattern) {
    const int n = pattern.modes();
    RealVector diag(2 * n);
    for (int j = 1; j <= n; j++) {
        const double lo = std::exp(-2.0 * pattern.r(j)) / 4.0;
        const double hi = std::exp(2.0 * pattern.r(j)) / 4.0;
        const bool x_sq = pattern.axis(j) == SqueezeAxis::X;
        diag(j - 1) = x_sq ? lo : hi;
        diag(n + j - 1) = x_sq ? hi : lo;
    }
    return GaussianState(diag.asDiagonal().toDenseMatrix());
}

RealMatrix symplectic_from_unitary(const ComplexMatrix &u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw std::invalid_argument("symplectic_from_unitary: expected a square matrix");
    }
    if (!(unitarity_residual(u) <= 1e-10)) {
        throw std::invalid_argument("symplectic_from_unitary: matrix is not unitary");
    }
    const auto n = u.rows();
    RealMatrix s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = u.real();
    s.topRightCorner(n, n) = -u.imag();
    s.bottomLeftCorner(n, n) = u.imag();
    s.bottomRightCorner(n, n) = u.real();
    return s;
}

GaussianState evolve(const GaussianState &state, const RealMatrix &s) {
    if (s.rows() != state.covariance().rows() || s.cols() != s.rows()) {
        throw std::invalid_argument("evolve: transformation does not match the state dimension");
    }
    RealMatrix out = s * state.covariance() * s.transpose();
    return GaussianState((out + out.transpose()) / 2.0);
}

GaussianState apply_loss(const GaussianState &state, const LossModel &loss) {
    const int n = state.modes();
    if (loss.modes() != n) {
        throw std::invalid_argument("apply_loss: loss model has wrong number of modes");
    }
    RealVector d(2 * n);
    for (int j = 1; j <= n; j++) {
        d(j - 1) = d(n + j - 1) = std::sqrt(loss.efficiency(j));
    }
    RealMatrix out = d.asDiagonal() * state.covariance() * d.asDiagonal();
    for (int k = 0; k < 2 * n; k++) {
        out(k, k) += (1.0 - d(k) * d(k)) / 4.0;
    }
    return GaussianState(std::move(out));
}

GaussianState prepare_state(const ComplexMatrix &u, const SqueezePattern &pattern, const LossModel &loss) {
    GaussianState out = evolve(input_covariance(pattern), symplectic_from_unitary(u));
    return loss.lossless() ? out : apply_loss(out, loss);
}

double quadrature_variance(const GaussianState &state, const RealVector &coeffs) {
    if (coeffs.size() != state.covariance().rows()) {
        throw std::invalid_argument("quadrature_variance: coefficient vector has wrong length");
    }
    return coeffs.dot(state.covariance() * coeffs);
}

double qnl_variance(const RealVector &coeffs) {
    return coeffs.squaredNorm() / 4.0;
}

double variance_dB(double v, double qnl) {
    if (!(v > 0.0) || !(qnl > 0.0)) {
        throw std::invalid_argument("variance_dB: variances must be positive");
    }
    return 10.0 * std::log10(v / qnl);
}

double equivalent_squeezing(double r, double efficiency) {
    return -0.5 * std::log(efficiency * std::exp(-2.0 * r) + 1.0 - efficiency);
}

RealVector combination_vector(std::span<const QuadratureTerm> terms, int modes) {
    RealVector c = RealVector::Zero(2 * modes);
    for (const auto &t : terms) {
        if (t.mode < 1 || t.mode > modes) {
            throw std::invalid_argument("quadrature term mode " + std::to_string(t.mode) + " out of range");
        }
        c((t.quadrature == Quadrature::X ? 0 : modes) + t.mode - 1) += t.coeff;
    }
    return c;
}

RealVector nullifier_vector(const NullifierSpec &spec, int modes) {
    std::vector<QuadratureTerm> terms{{spec.mode, Quadrature::P, spec.p_coeff}};
    for (const auto &[b, c] : spec.x_coeffs) {
        terms.push_back({b, Quadrature::X, c});
    }
    return combination_vector(terms, modes);
}

std::string combination_to_string(const RealVector &coeffs) {
    const auto n = coeffs.size() / 2;
    std::ostringstream ss;
    bool first = true;
    // p terms first, matching the usual way nullifiers are written.
    for (int block : {1, 0}) {
        for (Eigen::Index j = 0; j < n; j++) {
            double c = coeffs(block * n + j);
            if (c == 0.0) {
                continue;
            }
            if (first) {
                ss << (c < 0 ? "-" : "");
            } else {
                ss << (c < 0 ? " - " : " + ");
            }
            if (std::abs(c) != 1.0) {
                ss << std::abs(c) << "*";
            }
            ss << (block == 0 ? 'x' : 'p') << j + 1;
            first = false;
        }
    }
    return first ? "0" : ss.str();
}

double NullifierExcessNoise::max_anti_squeezed() const {
    double m = 0.0;
    for (const auto &t : anti_squeezed) {
        m = std::max(m, std::abs(t.coefficient));
    }
    return m;
}

double NullifierExcessNoise::squeezed_weight() const {
    double w = 0.0;
    for (const auto &t : squeezed) {
        w += t.coefficient * t.coefficient;
    }
    return w;
}

double NullifierExcessNoise::variance(const SqueezePattern &pattern) const {
    double v = 0.0;
    for (const auto &t : squeezed) {
        v += t.coefficient * t.coefficient * std::exp(-2.0 * pattern.r(t.mode)) / 4.0;
    }
    for (const auto &t : anti_squeezed) {
        v += t.coefficient * t.coefficient * std::exp(2.0 * pattern.r(t.mode)) / 4.0;
    }
    return v;
}

std::vector<ExcessNoiseTerm> NullifierExcessNoise::significant_terms(double tolerance) const {
    std::vector<ExcessNoiseTerm> out;
    for (const auto &t : squeezed) {
        if (std::abs(t.coefficient) > tolerance) {
            out.push_back(t);
        }
    }
    return out;
}

NullifierExcessNoise excess_noise_of(const ComplexMatrix &u, const SqueezePattern &pattern, const RealVector &coeffs) {
    const int n = pattern.modes();
    if (u.rows() != n || coeffs.size() != 2 * n) {
        throw std::invalid_argument("excess_noise_of: dimension mismatch");
    }
    // Output combination cᵀ·(S·q_in) = (Sᵀc)ᵀ·q_in.
    RealVector d = symplectic_from_unitary(u).transpose() * coeffs;
    NullifierExcessNoise out{0, {}, {}};
    for (int j = 1; j <= n; j++) {
        const bool x_sq = pattern.axis(j) == SqueezeAxis::X;
        ExcessNoiseTerm xt{j, Quadrature::X, d(j - 1)};
        ExcessNoiseTerm pt{j, Quadrature::P, d(n + j - 1)};
        (x_sq ? out.squeezed : out.anti_squeezed).push_back(xt);
        (x_sq ? out.anti_squeezed : out.squeezed).push_back(pt);
    }
    return out;
}

std::vector<NullifierExcessNoise> excess_noise_decomposition(
    const ComplexMatrix &u, const SqueezePattern &pattern, std::span<const NullifierSpec> nullifiers) {
    std::vector<NullifierExcessNoise> out;
    for (const auto &spec : nullifiers) {
        auto e = excess_noise_of(u, pattern, nullifier_vector(spec, pattern.modes()));
        e.mode = spec.mode;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace cvcluster
