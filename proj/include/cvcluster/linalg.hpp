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

#ifndef CVCLUSTER_LINALG_HPP
#define CVCLUSTER_LINALG_HPP

#include <Eigen/Dense>

namespace cvcluster {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Absolute tolerance for unitarity, symplecticity and Gram checks on O(1) matrices.
inline constexpr double kMatrixTolerance = 1e-12;

/// Largest absolute entry of (U·U† − I).
double unitarity_residual(const ComplexMatrix &u);

/// Largest absolute entry of (m − mᵀ).
double asymmetry(const RealMatrix &m);

bool is_symmetric(const RealMatrix &m, double tolerance = kMatrixTolerance);

bool all_finite(const RealMatrix &m);

/// Standard symplectic form Ω = [[0, I], [−I, 0]] for the (x_1..x_n, p_1..p_n) ordering.
RealMatrix symplectic_form(int modes);

}  // namespace cvcluster

#endif
