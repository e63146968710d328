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

#include "cvcluster/network.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace cvcluster {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_square(const RealMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) + " must be a non-empty square matrix");
    }
}

}  // namespace

RealMatrix inverse_gram(const RealMatrix &adjacency) {
    require_square(adjacency, "adjacency");
    if (!all_finite(adjacency) || !is_symmetric(adjacency)) {
        throw std::invalid_argument("inverse_gram: adjacency matrix must be symmetric");
    }
    const auto n = adjacency.rows();
    RealMatrix g = RealMatrix::Identity(n, n) + adjacency * adjacency;
    // I + A² is symmetric with eigenvalues ≥ 1.
    RealMatrix inv = g.llt().solve(RealMatrix::Identity(n, n));
    return (inv + inv.transpose()) / 2.0;
}

std::vector<int> gram_row_order(int n) {
    if (n < 1) {
        throw std::invalid_argument("gram_row_order: n must be positive");
    }
    int middle = (n + 1) / 2;
    std::vector<int> order{middle};
    for (int d = 1; static_cast<int>(order.size()) < n; d++) {
        if (middle + d <= n) {
            order.push_back(middle + d);
        }
        if (middle - d >= 1) {
            order.push_back(middle - d);
        }
    }
    return order;
}

std::vector<int> gram_column_order(int n) {
    auto order = gram_row_order(n);
    if (n >= 2) {
        std::swap(order[0], order[1]);
    }
    return order;
}

PivotSigns linear8_gram_signs() {
    return {+1, +1, -1, -1, -1, +1, +1, -1};
}

PivotSigns linear8_hardware_signs() {
    return {+1, +1, -1, +1, +1, +1, -1, -1};
}

PivotSigns default_pivot_signs(const RealMatrix &gram) {
    PivotSigns plus(static_cast<size_t>(gram.rows()), +1);
    if (gram.rows() != 8 || gram.cols() != 8) {
        return plus;
    }
    RealMatrix linear = inverse_gram(adjacency(build_linear_chain(8)));
    if ((gram - linear).cwiseAbs().maxCoeff() <= kMatrixTolerance) {
        return linear8_gram_signs();
    }
    return plus;
}

RealMatrix gram_factor_sequential(const RealMatrix &gram) {
    return gram_factor_sequential(gram, default_pivot_signs(gram));
}

RealMatrix gram_factor_sequential(const RealMatrix &gram, std::span<const int> pivot_signs) {
    require_square(gram, "gram matrix");
    const int n = static_cast<int>(gram.rows());
    if (!all_finite(gram) || !is_symmetric(gram)) {
        throw std::invalid_argument("gram_factor_sequential: matrix must be finite and symmetric");
    }
    if (static_cast<int>(pivot_signs.size()) != n) {
        throw std::invalid_argument("gram_factor_sequential: need one pivot sign per column");
    }
    for (int s : pivot_signs) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("gram_factor_sequential: pivot signs must be +1 or -1");
        }
    }

    std::vector<int> rows = gram_row_order(n);
    std::vector<int> cols = gram_column_order(n);
    for (auto &r : rows) {
        r -= 1;
    }
    for (auto &c : cols) {
        c -= 1;
    }

    RealMatrix re_u = RealMatrix::Zero(n, n);
    for (int k = 0; k < n; k++) {
        const int row = rows[k];
        // Overlap with every row solved so far fixes one more unknown each.
        for (int j = 0; j < k; j++) {
            double rhs = gram(row, rows[j]);
            for (int t = 0; t < j; t++) {
                rhs -= re_u(row, cols[t]) * re_u(rows[j], cols[t]);
            }
            re_u(row, cols[j]) = rhs / re_u(rows[j], cols[j]);
        }
        double norm_left = gram(row, row);
        for (int t = 0; t < k; t++) {
            norm_left -= re_u(row, cols[t]) * re_u(row, cols[t]);
        }
        if (!(norm_left > 0.0)) {
            std::ostringstream ss;
            ss << "gram_factor_sequential: matrix is not positive definite (pivot " << norm_left
               << " at row " << row + 1 << ")";
            throw std::invalid_argument(ss.str());
        }
        re_u(row, cols[k]) = pivot_signs[cols[k]] * std::sqrt(norm_left);
    }
    return re_u;
}

ComplexMatrix assemble_unitary(const RealMatrix &adjacency, const RealMatrix &re_u) {
    require_square(adjacency, "adjacency");
    if (re_u.rows() != adjacency.rows() || re_u.cols() != adjacency.cols()) {
        throw std::invalid_argument("assemble_unitary: dimension mismatch");
    }
    if (!is_symmetric(adjacency)) {
        throw std::invalid_argument("assemble_unitary: adjacency must be symmetric");
    }
    RealMatrix residual = re_u * re_u.transpose() - inverse_gram(adjacency);
    if (!(residual.cwiseAbs().maxCoeff() <= 1e-10)) {
        throw std::invalid_argument("assemble_unitary: ReU·ReUᵀ does not equal (I + A²)⁻¹");
    }
    const auto n = adjacency.rows();
    ComplexMatrix lift = ComplexMatrix::Identity(n, n) + kI * adjacency.cast<std::complex<double>>();
    return lift * re_u.cast<std::complex<double>>();
}

ComplexMatrix input_basis_convert(const ComplexMatrix &u, const std::set<int> &x_squeezed_inputs) {
    ComplexMatrix out = u;
    for (int j : x_squeezed_inputs) {
        if (j < 1 || j > u.cols()) {
            throw std::invalid_argument("input_basis_convert: mode " + std::to_string(j) + " out of range");
        }
        out.col(j - 1) *= kI;
    }
    return out;
}

ComplexMatrix diamond_phase_matrix() {
    Eigen::VectorXcd d(8);
    d << -1.0, -kI, kI, 1.0, 1.0, kI, -kI, -1.0;
    return d.asDiagonal();
}

ComplexMatrix diamond_from_linear(const ComplexMatrix &u_linear) {
    if (u_linear.rows() != 8 || u_linear.cols() != 8) {
        throw std::invalid_argument("diamond_from_linear: expected an 8x8 unitary");
    }
    return diamond_phase_matrix() * u_linear;
}

std::string to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::BeamSplitter:
            return "beamsplitter";
        case ElementKind::Fourier:
            return "fourier";
        case ElementKind::InverseFourier:
            return "inverse_fourier";
        case ElementKind::PiRotation:
            return "pi_rotation";
    }
    return "unknown";
}

NetworkElement NetworkElement::beam_splitter(int k, int l, double transmission, int sign) {
    return {ElementKind::BeamSplitter, k, l, transmission, sign};
}
NetworkElement NetworkElement::fourier(int k) {
    return {ElementKind::Fourier, k};
}
NetworkElement NetworkElement::inverse_fourier(int k) {
    return {ElementKind::InverseFourier, k};
}
NetworkElement NetworkElement::pi_rotation(int k) {
    return {ElementKind::PiRotation, k};
}

std::string NetworkElement::label() const {
    std::ostringstream ss;
    switch (kind) {
        case ElementKind::BeamSplitter:
            ss << "B" << mode << second_mode << (sign > 0 ? "+" : "-") << "(" << transmission << ")";
            break;
        case ElementKind::Fourier:
            ss << "F" << mode;
            break;
        case ElementKind::InverseFourier:
            ss << "F" << mode << "^dag";
            break;
        case ElementKind::PiRotation:
            ss << "I" << mode << "(-1)";
            break;
    }
    return ss.str();
}

ComplexMatrix element_matrix(const NetworkElement &e, int n) {
    auto in_range = [n](int k) { return k >= 1 && k <= n; };
    if (!in_range(e.mode)) {
        throw std::invalid_argument("element_matrix: mode " + std::to_string(e.mode) + " out of range");
    }
    ComplexMatrix m = ComplexMatrix::Identity(n, n);
    const int k = e.mode - 1;
    switch (e.kind) {
        case ElementKind::BeamSplitter: {
            if (!in_range(e.second_mode) || e.second_mode == e.mode) {
                throw std::invalid_argument("element_matrix: beam splitter needs two distinct modes in range");
            }
            if (!(e.transmission >= 0.0 && e.transmission <= 1.0)) {
                throw std::invalid_argument("element_matrix: transmission must lie in [0, 1]");
            }
            if (e.sign != 1 && e.sign != -1) {
                throw std::invalid_argument("element_matrix: beam splitter sign must be +1 or -1");
            }
            const int l = e.second_mode - 1;
            const double t = std::sqrt(e.transmission);
            const double r = std::sqrt(1.0 - e.transmission);
            m(k, k) = r;
            m(k, l) = t;
            m(l, k) = e.sign * t;
            m(l, l) = -e.sign * r;
            break;
        }
        case ElementKind::Fourier:
            m(k, k) = kI;
            break;
        case ElementKind::InverseFourier:
            m(k, k) = -kI;
            break;
        case ElementKind::PiRotation:
            m(k, k) = -1.0;
            break;
    }
    return m;
}

ComplexMatrix compose_sequence(const ElementSequence &seq, int n) {
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    for (const auto &e : seq) {
        u = u * element_matrix(e, n);
    }
    return u;
}

std::map<std::string, double> reference_transmissions() {
    return {
        {"T1", 25.0 / 34.0},
        {"T2", 2.0 / 5.0},
        {"T3", 2.0 / 5.0},
        {"T4", 1.0 / 3.0},
        {"T5", 1.0 / 3.0},
        {"T6", 1.0 / 2.0},
        {"T7", 1.0 / 2.0},
    };
}

ElementSequence linear8_decomposition() {
    auto t = reference_transmissions();
    using E = NetworkElement;
    return {
        E::fourier(8),
        E::pi_rotation(7),
        E::inverse_fourier(6),
        E::fourier(4),
        E::pi_rotation(3),
        E::inverse_fourier(2),
        E::beam_splitter(7, 8, t["T7"], -1),
        E::fourier(8),
        E::beam_splitter(1, 2, t["T6"], -1),
        E::fourier(1),
        E::beam_splitter(6, 7, t["T5"], -1),
        E::fourier(7),
        E::beam_splitter(2, 3, t["T4"], -1),
        E::fourier(2),
        E::beam_splitter(5, 6, t["T3"], -1),
        E::fourier(6),
        E::beam_splitter(3, 4, t["T2"], -1),
        E::fourier(3),
        E::beam_splitter(4, 5, t["T1"], +1),
    };
}

CompiledNetwork compile_graph(const Graph &g, const std::set<int> &x_squeezed, std::optional<PivotSigns> signs) {
    RealMatrix a = adjacency(g);
    RealMatrix m = inverse_gram(a);
    PivotSigns s = signs ? *signs : default_pivot_signs(m);
    RealMatrix re_u = gram_factor_sequential(m, s);
    ComplexMatrix u = input_basis_convert(assemble_unitary(a, re_u), x_squeezed);
    return {g, x_squeezed, std::move(a), std::move(m), std::move(re_u), std::move(u)};
}

CompiledNetwork compile_linear8() {
    return compile_graph(build_linear_chain(8), {1, 3, 5, 7}, linear8_hardware_signs());
}

CompiledNetwork compile_diamond8() {
    CompiledNetwork linear = compile_linear8();
    Graph g = build_two_diamond();
    RealMatrix a = adjacency(g);
    ComplexMatrix u = diamond_from_linear(linear.unitary);
    // Undo the x-squeezing phases to expose the p-basis Gram factor.
    ComplexMatrix u_p = u;
    for (int j : linear.x_squeezed) {
        u_p.col(j - 1) *= -kI;
    }
    RealMatrix re_u = u_p.real();
    return {g, linear.x_squeezed, a, inverse_gram(a), std::move(re_u), std::move(u)};
}

}  // namespace cvcluster
