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

#ifndef CVCLUSTER_MEASUREMENT_HPP
#define CVCLUSTER_MEASUREMENT_HPP

#include <cstdint>

#include "cvcluster/gaussian.hpp"

// Monte Carlo homodyne statistics drawn from a Gaussian state.
//
// Samples are q = L·z with L the lower Cholesky factor of the covariance and
// z i.i.d. standard normals from std::mt19937_64 seeded with `seed`, drawn
// through std::normal_distribution. Batches are reproducible per seed on a
// given standard library; they are not bit-identical across implementations.
namespace cvcluster {

using SampleMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SampleBatch {
    std::uint64_t seed;
    /// One row per shot, columns x_1..x_n, p_1..p_n.
    SampleMatrix samples;

    Eigen::Index size() const {
        return samples.rows();
    }
};

SampleBatch sample_quadratures(const GaussianState &state, Eigen::Index n, std::uint64_t seed);

struct VarianceEstimate {
    double estimate;
    double std_error;  // estimate·√(2/(n−1))
};

/// Unbiased sample variance of the projection cᵀq.
VarianceEstimate estimate_variance(const SampleBatch &batch, const RealVector &coeffs);

/// 10·log10(estimate / QNL).
double estimate_dB(const SampleBatch &batch, const RealVector &coeffs);

}  // namespace cvcluster

#endif
