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

#include "cvcluster/reference.hpp"

#include <cmath>
#include <complex>

namespace cvcluster::reference {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

double s(double v) {
    return std::sqrt(v);
}

ComplexMatrix from_rows(std::initializer_list<std::initializer_list<C>> rows) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto &row : rows) {
        Eigen::Index j = 0;
        for (const auto &v : row) {
            m(i, j++) = v;
        }
        i++;
    }
    return m;
}

ExcessNoiseTerm x(int mode, double c) {
    return {mode, Quadrature::X, c};
}
ExcessNoiseTerm p(int mode, double c) {
    return {mode, Quadrature::P, c};
}

}  // namespace

ComplexMatrix linear8_unitary() {
    return from_rows({
        {kI / s(2), kI / s(3), kI / s(10), s(3. / 170), s(5. / 102), 0, 0, 0},
        {-1 / s(2), 1 / s(3), 1 / s(10), -kI * s(3. / 170), -kI * s(5. / 102), 0, 0, 0},
        {0, kI / s(3), -kI * s(2. / 5), -s(6. / 85), -s(10. / 51), 0, 0, 0},
        {0, 0, s(2. / 5), 3. * kI * s(3. / 170), kI * s(15. / 34), 0, 0, 0},
        {0, 0, 0, s(15. / 34), -3 * s(3. / 170), kI * s(2. / 5), 0, 0},
        {0, 0, 0, kI * s(10. / 51), -kI * s(6. / 85), s(2. / 5), 1 / s(3), 0},
        {0, 0, 0, -s(5. / 102), s(3. / 170), kI / s(10), -kI / s(3), -kI / s(2)},
        {0, 0, 0, -kI * s(5. / 102), kI * s(3. / 170), -1 / s(10), 1 / s(3), -1 / s(2)},
    });
}

ComplexMatrix linear8_p_unitary() {
    return from_rows({
        {1 / s(2), kI / s(3), 1 / s(10), -s(3. / 170), kI * s(5. / 102), 0, 0, 0},
        {kI / s(2), 1 / s(3), -kI / s(10), kI * s(3. / 170), s(5. / 102), 0, 0, 0},
        {0, kI / s(3), -s(2. / 5), s(6. / 85), -kI * s(10. / 51), 0, 0, 0},
        {0, 0, -kI * s(2. / 5), -3. * kI * s(3. / 170), -s(15. / 34), 0, 0, 0},
        {0, 0, 0, -s(15. / 34), -3. * kI * s(3. / 170), kI * s(2. / 5), 0, 0},
        {0, 0, 0, -kI * s(10. / 51), s(6. / 85), s(2. / 5), kI / s(3), 0},
        {0, 0, 0, s(5. / 102), kI * s(3. / 170), kI / s(10), 1 / s(3), -kI / s(2)},
        {0, 0, 0, kI * s(5. / 102), -s(3. / 170), -1 / s(10), kI / s(3), -1 / s(2)},
    });
}

ComplexMatrix diamond8_unitary() {
    return from_rows({
        {-kI / s(2), -kI / s(3), -kI / s(10), -s(3. / 170), -s(5. / 102), 0, 0, 0},
        {kI / s(2), -kI / s(3), -kI / s(10), -s(3. / 170), -s(5. / 102), 0, 0, 0},
        {0, -1 / s(3), s(2. / 5), -kI * s(6. / 85), -kI * s(10. / 51), 0, 0, 0},
        {0, 0, s(2. / 5), 3. * kI * s(3. / 170), kI * s(15. / 34), 0, 0, 0},
        {0, 0, 0, s(15. / 34), -3 * s(3. / 170), kI * s(2. / 5), 0, 0},
        {0, 0, 0, -s(10. / 51), s(6. / 85), kI * s(2. / 5), kI / s(3), 0},
        {0, 0, 0, kI * s(5. / 102), -kI * s(3. / 170), 1 / s(10), -1 / s(3), -1 / s(2)},
        {0, 0, 0, kI * s(5. / 102), -kI * s(3. / 170), 1 / s(10), -1 / s(3), 1 / s(2)},
    });
}

RealMatrix linear8_inverse_gram() {
    RealMatrix m(8, 8);
    m << 21, 0, -8, 0, 3, 0, -1, 0,  //
        0, 13, 0, -5, 0, 2, 0, -1,   //
        -8, 0, 16, 0, -6, 0, 2, 0,   //
        0, -5, 0, 15, 0, -6, 0, 3,   //
        3, 0, -6, 0, 15, 0, -5, 0,   //
        0, 2, 0, -6, 0, 16, 0, -8,   //
        -1, 0, 2, 0, -5, 0, 13, 0,   //
        0, -1, 0, 3, 0, -8, 0, 21;
    return m / 34.0;
}

std::vector<std::vector<ExcessNoiseTerm>> linear8_excess_noise() {
    return {
        {x(1, s(2))},
        {p(2, s(3))},
        {x(1, 1 / s(2)), x(3, -s(5. / 2))},
        {p(2, 1 / s(3)), p(6, s(2. / 5)), x(5, s(34. / 15))},
        {p(4, s(34. / 15)), x(3, -s(2. / 5)), x(7, -1 / s(3))},
        {p(6, s(5. / 2)), p(8, -1 / s(2))},
        {x(7, -s(3))},
        {p(8, -s(2))},
    };
}

std::vector<std::vector<ExcessNoiseTerm>> diamond8_excess_noise() {
    return {
        {x(1, -1 / s(2)), x(3, s(5. / 2))},
        {x(1, 1 / s(2)), x(3, -s(5. / 2))},
        {p(2, -s(3))},
        {p(2, -2 / s(3)), p(6, s(2. / 5)), x(5, s(34. / 15))},
        {p(4, s(34. / 15)), x(3, -s(2. / 5)), x(7, 2 / s(3))},
        {x(7, s(3))},
        {p(6, s(5. / 2)), p(8, -1 / s(2))},
        {p(6, s(5. / 2)), p(8, 1 / s(2))},
    };
}

std::vector<Measured> linear8_nullifier_dB() {
    return {{-2.67, 0.06}, {-2.65, 0.13}, {-2.52, 0.20}, {-2.69, 0.09},
            {-2.68, 0.08}, {-2.56, 0.10}, {-2.22, 0.09}, {-2.21, 0.09}};
}

std::vector<Measured> diamond8_nullifier_dB() {
    return {{-2.61, 0.10}, {-2.57, 0.09}, {-2.39, 0.06}, {-2.58, 0.09},
            {-2.61, 0.09}, {-2.52, 0.10}, {-2.59, 0.09}, {-2.58, 0.10}};
}

std::vector<Measured> diamond8_weighted_dB() {
    return {{-1.57, 0.09}, {-1.53, 0.09}};
}

std::vector<Measured> linear8_lhs() {
    return {{0.68, 0.02}, {0.83, 0.02}, {0.82, 0.02}, {0.81, 0.02}, {0.82, 0.02}, {0.87, 0.02}, {0.75, 0.02}};
}

std::vector<Measured> diamond8_lhs() {
    return {{0.84, 0.02}, {0.85, 0.02}, {0.96, 0.02}, {0.97, 0.02}, {0.95, 0.02},
            {0.96, 0.02}, {0.96, 0.02}, {0.83, 0.02}, {0.83, 0.02}};
}

std::map<std::string, double> unit_gain_thresholds() {
    return {{"3a", 0.11}, {"3b", 0.20}, {"3c", 0.24}, {"3d", 0.27}, {"4a", 0.20}, {"4c", 0.28}, {"4e", 0.35}};
}

}  // namespace cvcluster::reference
