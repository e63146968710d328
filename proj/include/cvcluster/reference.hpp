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

#ifndef CVCLUSTER_REFERENCE_HPP
#define CVCLUSTER_REFERENCE_HPP

#include <map>
#include <string>
#include <vector>

#include "cvcluster/gaussian.hpp"

// Published matrices and experimental figures for the eight-mode linear and
// two-diamond cluster states. Used as comparison targets by the tests and the
// CLI reports; nothing in the library computes from them.
namespace cvcluster::reference {

struct Measured {
    double value;
    double uncertainty;
};

/// Hardware unitary of the linear chain (x-squeezed inputs 1, 3, 5, 7).
ComplexMatrix linear8_unitary();
/// Linear-chain unitary for all-p-squeezed inputs.
ComplexMatrix linear8_p_unitary();
ComplexMatrix diamond8_unitary();
/// (I + A²)⁻¹ of the linear chain of eight.
RealMatrix linear8_inverse_gram();

/// Printed excess-noise expansions, one list per nullifier; coefficients
/// multiply e^{−r}-scaled vacuum quadratures.
std::vector<std::vector<ExcessNoiseTerm>> linear8_excess_noise();
std::vector<std::vector<ExcessNoiseTerm>> diamond8_excess_noise();

/// Nullifier noise powers relative to shot noise, in dB (modes 1..8).
std::vector<Measured> linear8_nullifier_dB();
std::vector<Measured> diamond8_nullifier_dB();
/// The two gain-weighted combinations of inequality 4e at g_D6 = 0.60, in dB.
std::vector<Measured> diamond8_weighted_dB();

/// Left-hand sides of 3a..3g and 4a..4i.
std::vector<Measured> linear8_lhs();
std::vector<Measured> diamond8_lhs();

/// Unit-gain squeezing thresholds quoted for the plotted inequalities.
std::map<std::string, double> unit_gain_thresholds();

inline constexpr Measured kInitialSqueezingDb{4.30, 0.07};
inline constexpr Measured kInitialSqueezingR{0.50, 0.02};
inline constexpr Measured kOptimalGainD6{0.60, 0.02};
inline constexpr double kTransmissionEfficiency = 0.87;
inline constexpr double kDetectionEfficiency = 0.90;
inline constexpr double kEffectiveSqueezingR = 0.30;

}  // namespace cvcluster::reference

#endif
