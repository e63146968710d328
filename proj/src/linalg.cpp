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

#include "cvcluster/linalg.hpp"

namespace cvcluster {

double unitarity_residual(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    ComplexMatrix d = u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols());
    return d.size() == 0 ? 0.0 : d.cwiseAbs().maxCoeff();
}

double asymmetry(const RealMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
}

bool is_symmetric(const RealMatrix &m, double tolerance) {
    return asymmetry(m) <= tolerance;
}

bool all_finite(const RealMatrix &m) {
    return m.allFinite();
}

RealMatrix symplectic_form(int modes) {
    RealMatrix omega = RealMatrix::Zero(2 * modes, 2 * modes);
    omega.topRightCorner(modes, modes).setIdentity();
    omega.bottomLeftCorner(modes, modes) = -RealMatrix::Identity(modes, modes);
    return omega;
}

}  // namespace cvcluster
