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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cvcluster/network.hpp"
#include "cvcluster/reference.hpp"

using namespace cvcluster;

namespace {

const std::complex<double> kI{0.0, 1.0};

double max_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

RealMatrix linear8_gram() {
    return inverse_gram(adjacency(build_linear_chain(8)));
}

}  // namespace

TEST(network, inverse_gram_linear8_entries) {
    RealMatrix m = linear8_gram();
    EXPECT_NEAR(m(0, 0), 21.0 / 34, 1e-14);
    EXPECT_NEAR(m(0, 2), -4.0 / 17, 1e-14);
    EXPECT_NEAR(m(3, 4), 0.0, 1e-14);
    EXPECT_LT((m - reference::linear8_inverse_gram()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(network, inverse_gram_identity_and_two_chain) {
    EXPECT_TRUE(inverse_gram(RealMatrix::Zero(4, 4)).isApprox(RealMatrix::Identity(4, 4)));
    RealMatrix a = adjacency(build_linear_chain(2));
    RealMatrix m = inverse_gram(a);
    RealMatrix back = (RealMatrix::Identity(2, 2) + a * a) * m;
    EXPECT_LT((back - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(network, inverse_gram_rejects_asymmetric) {
    RealMatrix a = RealMatrix::Zero(3, 3);
    a(0, 1) = 1;
    EXPECT_THROW(inverse_gram(a), std::invalid_argument);
}

TEST(network, gram_orders) {
    EXPECT_EQ(gram_row_order(8), (std::vector<int>{4, 5, 3, 6, 2, 7, 1, 8}));
    EXPECT_EQ(gram_column_order(8), (std::vector<int>{5, 4, 3, 6, 2, 7, 1, 8}));
    EXPECT_EQ(gram_row_order(5), (std::vector<int>{3, 4, 2, 5, 1}));
    EXPECT_EQ(gram_row_order(1), (std::vector<int>{1}));
    EXPECT_EQ(gram_column_order(1), (std::vector<int>{1}));
}

TEST(network, gram_factor_alpha45) {
    RealMatrix f = gram_factor_sequential(linear8_gram());
    EXPECT_NEAR(f(3, 4), -std::sqrt(15.0 / 34), 1e-14);
    EXPECT_LT((f * f.transpose() - linear8_gram()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(network, gram_factor_identity_is_signed_permutation) {
    RealMatrix f = gram_factor_sequential(RealMatrix::Identity(5, 5));
    EXPECT_TRUE(f.cwiseAbs().colwise().sum().isApprox(RealVector::Ones(5).transpose()));
    EXPECT_TRUE(f.cwiseAbs().rowwise().sum().isApprox(RealVector::Ones(5)));
    EXPECT_TRUE((f * f.transpose()).isApprox(RealMatrix::Identity(5, 5)));
}

TEST(network, gram_factor_random_spd) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; trial++) {
        RealMatrix b(4, 4);
        for (int i = 0; i < 16; i++) {
            b(i / 4, i % 4) = normal(rng);
        }
        RealMatrix m = b * b.transpose() + 0.1 * RealMatrix::Identity(4, 4);
        RealMatrix f = gram_factor_sequential(m);
        EXPECT_LT((f * f.transpose() - m).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(network, gram_factor_rejects_indefinite) {
    RealMatrix m = RealMatrix::Identity(3, 3);
    m(1, 1) = -1;
    EXPECT_THROW(gram_factor_sequential(m), std::invalid_argument);
}

TEST(network, gram_factor_sign_gauge) {
    RealMatrix m = linear8_gram();
    PivotSigns plus(8, +1);
    RealMatrix fp = gram_factor_sequential(m, plus);
    auto signs = linear8_hardware_signs();
    RealMatrix fs = gram_factor_sequential(m, signs);
    RealVector d(8);
    for (int j = 0; j < 8; j++) {
        d(j) = signs[static_cast<size_t>(j)];
    }
    EXPECT_LT((fs - fp * d.asDiagonal()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(network, p_basis_unitary) {
    RealMatrix a = adjacency(build_linear_chain(8));
    ComplexMatrix up = assemble_unitary(a, gram_factor_sequential(inverse_gram(a)));
    EXPECT_NEAR(std::abs(up(0, 0) - 1 / std::sqrt(2.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(up(1, 0) - kI / std::sqrt(2.0)), 0.0, 1e-14);
    EXPECT_LT(max_diff(up, reference::linear8_p_unitary()), 1e-12);
    EXPECT_LT(unitarity_residual(up), 1e-12);
}

TEST(network, assemble_identity) {
    RealMatrix z = RealMatrix::Zero(3, 3);
    EXPECT_LT(max_diff(assemble_unitary(z, RealMatrix::Identity(3, 3)), ComplexMatrix::Identity(3, 3)), 1e-15);
}

TEST(network, assemble_rejects_wrong_factor) {
    RealMatrix a = adjacency(build_linear_chain(3));
    EXPECT_THROW(assemble_unitary(a, RealMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST(network, input_basis_convert_linear8) {
    CompiledNetwork net = compile_linear8();
    EXPECT_NEAR(std::abs(net.unitary(0, 0) - kI / std::sqrt(2.0)), 0.0, 1e-14);
    EXPECT_LT(max_diff(net.unitary, reference::linear8_unitary()), 1e-12);
}

TEST(network, input_basis_convert_properties) {
    ComplexMatrix u = reference::linear8_p_unitary();
    EXPECT_EQ(input_basis_convert(u, {}), u);
    ComplexMatrix twice = input_basis_convert(input_basis_convert(u, {2, 5}), {2, 5});
    EXPECT_LT(max_diff(twice.col(1), -u.col(1)), 1e-15);
    EXPECT_LT(max_diff(twice.col(4), -u.col(4)), 1e-15);
    EXPECT_LT(max_diff(twice.col(0), u.col(0)), 1e-15);
    EXPECT_LT((twice.cwiseAbs() - u.cwiseAbs()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(input_basis_convert(u, {9}), std::invalid_argument);
}

TEST(network, diamond_from_linear) {
    ComplexMatrix ud = diamond_from_linear(reference::linear8_unitary());
    EXPECT_NEAR(std::abs(ud(0, 0) + kI / std::sqrt(2.0)), 0.0, 1e-14);
    EXPECT_LT((ud.cwiseAbs() - reference::linear8_unitary().cwiseAbs()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(unitarity_residual(ud), 1e-12);
    EXPECT_LT(max_diff(ud, reference::diamond8_unitary()), 1e-12);
    EXPECT_THROW(diamond_from_linear(ComplexMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST(network, compiled_diamond_gram_factor) {
    CompiledNetwork net = compile_diamond8();
    EXPECT_LT(max_diff(net.unitary, reference::diamond8_unitary()), 1e-12);
    RealMatrix m = inverse_gram(adjacency(build_two_diamond()));
    EXPECT_LT((net.gram_factor * net.gram_factor.transpose() - m).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(network, beam_splitter_matrix) {
    ComplexMatrix b = element_matrix(NetworkElement::beam_splitter(7, 8, 0.5, -1), 8);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(b(6, 6).real(), h, 1e-15);
    EXPECT_NEAR(b(6, 7).real(), h, 1e-15);
    EXPECT_NEAR(b(7, 6).real(), -h, 1e-15);
    EXPECT_NEAR(b(7, 7).real(), h, 1e-15);
    EXPECT_EQ(b(0, 0), std::complex<double>(1.0));
}

TEST(network, phase_elements) {
    ComplexMatrix f = element_matrix(NetworkElement::fourier(3), 4);
    ComplexMatrix fi = element_matrix(NetworkElement::inverse_fourier(3), 4);
    ComplexMatrix pi = element_matrix(NetworkElement::pi_rotation(2), 4);
    EXPECT_EQ(f(2, 2), kI);
    EXPECT_LT(max_diff(f * fi, ComplexMatrix::Identity(4, 4)), 1e-15);
    EXPECT_LT(max_diff(pi * pi, ComplexMatrix::Identity(4, 4)), 1e-15);
}

TEST(network, element_validation) {
    EXPECT_THROW(element_matrix(NetworkElement::beam_splitter(1, 2, 1.5, 1), 3), std::invalid_argument);
    EXPECT_THROW(element_matrix(NetworkElement::beam_splitter(1, 1, 0.5, 1), 3), std::invalid_argument);
    EXPECT_THROW(element_matrix(NetworkElement::fourier(4), 3), std::invalid_argument);
}

TEST(network, beam_splitters_unitary_for_all_t) {
    for (int k = 0; k <= 100; k++) {
        for (int sign : {-1, 1}) {
            auto e = NetworkElement::beam_splitter(2, 4, k / 100.0, sign);
            EXPECT_LT(unitarity_residual(element_matrix(e, 5)), 1e-12);
        }
    }
}

TEST(network, compose_sequence_basics) {
    EXPECT_EQ(compose_sequence({}, 3), ComplexMatrix::Identity(3, 3));
    auto e = NetworkElement::beam_splitter(1, 3, 0.3, 1);
    EXPECT_LT(max_diff(compose_sequence({e}, 3), element_matrix(e, 3)), 1e-15);
    auto f = NetworkElement::fourier(1);
    EXPECT_LT(max_diff(compose_sequence({e, f}, 3), element_matrix(e, 3) * element_matrix(f, 3)), 1e-15);
}

TEST(network, linear8_decomposition_matches) {
    auto seq = linear8_decomposition();
    EXPECT_EQ(seq.size(), 19u);
    EXPECT_LT(max_diff(compose_sequence(seq, 8), reference::linear8_unitary()), 1e-12);
}

TEST(network, linear8_decomposition_reversed_differs) {
    auto seq = linear8_decomposition();
    std::reverse(seq.begin(), seq.end());
    EXPECT_GT(max_diff(compose_sequence(seq, 8), reference::linear8_unitary()), 0.1);
}

TEST(network, transmissions) {
    auto t = reference_transmissions();
    ASSERT_EQ(t.size(), 7u);
    EXPECT_DOUBLE_EQ(t.at("T1"), 25.0 / 34);
    EXPECT_DOUBLE_EQ(t.at("T2"), 2.0 / 5);
    EXPECT_DOUBLE_EQ(t.at("T3"), 2.0 / 5);
    EXPECT_DOUBLE_EQ(t.at("T4"), 1.0 / 3);
    EXPECT_DOUBLE_EQ(t.at("T6"), 0.5);
    for (const auto &[name, v] : t) {
        EXPECT_GT(v, 0.0) << name;
        EXPECT_LT(v, 1.0) << name;
    }
}

TEST(network, element_labels) {
    EXPECT_FALSE(NetworkElement::beam_splitter(1, 2, 0.5, 1).label().empty());
    EXPECT_EQ(to_string(ElementKind::Fourier), "fourier");
}
