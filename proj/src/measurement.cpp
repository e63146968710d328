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

#include "cvcluster/measurement.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cvcluster {

SampleBatch sample_quadratures(const GaussianState &state, Eigen::Index n, std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("sample_quadratures: need at least one sample");
    }
    Eigen::LLT<RealMatrix> llt(state.covariance());
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("sample_quadratures: covariance is not positive definite");
    }
    const Eigen::Index dim = state.covariance().rows();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    SampleMatrix z(n, dim);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < dim; j++) {
            z(i, j) = normal(rng);
        }
    }
    // Rows are samples, so q_row = z_row·Lᵀ.
    RealMatrix lt = llt.matrixL().transpose();
    return {seed, z * lt};
}

VarianceEstimate estimate_variance(const SampleBatch &batch, const RealVector &coeffs) {
    const Eigen::Index n = batch.size();
    if (n < 2) {
        throw std::invalid_argument("estimate_variance: need at least two samples");
    }
    if (coeffs.size() != batch.samples.cols()) {
        throw std::invalid_argument("estimate_variance: coefficient vector has wrong length");
    }
    RealVector y = batch.samples * coeffs;
    const double mean = y.mean();
    const double var = (y.array() - mean).square().sum() / static_cast<double>(n - 1);
    return {var, var * std::sqrt(2.0 / static_cast<double>(n - 1))};
}

double estimate_dB(const SampleBatch &batch, const RealVector &coeffs) {
    return variance_dB(estimate_variance(batch, coeffs).estimate, qnl_variance(coeffs));
}

}  // namespace cvcluster
