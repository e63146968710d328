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

#ifndef CVCLUSTER_NETWORK_HPP
#define CVCLUSTER_NETWORK_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cvcluster/graph.hpp"
#include "cvcluster/linalg.hpp"

// Compilation of a cluster graph into the passive linear-optics unitary that
// turns squeezed vacua into the cluster state, plus the beam-splitter
// primitives used to realize it.
//
// Conventions:
//  * Output modes are b_k = Σ_l U_kl a_l (rows are outputs, columns inputs).
//  * For p-squeezed inputs the unitary has the form U = (I + iA)·ReU with
//    ReU·ReUᵀ = (I + A²)⁻¹. Inputs that are x-squeezed instead have their
//    column multiplied by i.
//  * An ElementSequence is a product in listed order: the last-listed element
//    acts on the input first. The eight-mode linear decomposition reproduces
//    the hardware unitary only in this order.
namespace cvcluster {

/// (I + A²)⁻¹ for a symmetric adjacency matrix.
RealMatrix inverse_gram(const RealMatrix &adjacency);

/// Row order of the sequential Gram solve: ⌈n/2⌉, ⌈n/2⌉+1, ⌈n/2⌉−1, ... (1-indexed).
std::vector<int> gram_row_order(int n);

/// Column introduced as the pivot of each solved row: the row order with its
/// first two entries swapped (1-indexed).
std::vector<int> gram_column_order(int n);

/// Pivot signs indexed by ReU column (entry j-1 for column j), each ±1.
using PivotSigns = std::vector<int>;

/// Signs reproducing the published p-squeezed-basis Gram factor for the
/// eight-mode linear chain (α₄₅ = −√(15/34)).
PivotSigns linear8_gram_signs();

/// Signs for which the eight-mode linear pipeline yields the hardware
/// unitary realized by `linear8_decomposition()`. Differs from
/// `linear8_gram_signs()` by a π phase on input columns 4, 5 and 7.
PivotSigns linear8_hardware_signs();

/// `linear8_gram_signs()` when `gram` is the linear-chain-8 matrix, else all +1.
PivotSigns default_pivot_signs(const RealMatrix &gram);

/// Solves ReU·ReUᵀ = gram row by row, starting from the middle row.
///
/// The k-th solved row (order `gram_row_order`) has nonzero entries only in
/// the first k columns of `gram_column_order`; all other unknowns are fixed to
/// zero. Each row is obtained by forward substitution against the rows
/// already solved, and its pivot by the norm condition. Throws
/// std::invalid_argument if `gram` is not symmetric positive definite.
RealMatrix gram_factor_sequential(const RealMatrix &gram);
RealMatrix gram_factor_sequential(const RealMatrix &gram, std::span<const int> pivot_signs);

/// (I + iA)·ReU. Requires ReU·ReUᵀ = (I + A²)⁻¹ within 1e-10.
ComplexMatrix assemble_unitary(const RealMatrix &adjacency, const RealMatrix &re_u);

/// Multiplies column j of `u` by i for each 1-indexed j in `x_squeezed_inputs`.
ComplexMatrix input_basis_convert(const ComplexMatrix &u, const std::set<int> &x_squeezed_inputs);

/// diag{−1, −i, i, 1, 1, i, −i, −1}: local phases taking the linear-8 cluster to the two-diamond.
ComplexMatrix diamond_phase_matrix();

/// diamond_phase_matrix()·u_linear; u_linear must be 8×8.
ComplexMatrix diamond_from_linear(const ComplexMatrix &u_linear);

enum class ElementKind { BeamSplitter, Fourier, InverseFourier, PiRotation };

std::string to_string(ElementKind kind);

/// One primitive of a beam-splitter network.
///
/// BeamSplitter B_kl^±(T): (k,k)=√(1−T), (k,l)=√T, (l,k)=±√T, (l,l)=∓√(1−T).
/// Fourier multiplies mode k by i, InverseFourier by −i, PiRotation by −1.
struct NetworkElement {
    ElementKind kind;
    int mode;                 // k
    int second_mode = 0;      // l, beam splitters only
    double transmission = 0;  // T, beam splitters only
    int sign = +1;            // ±, beam splitters only

    static NetworkElement beam_splitter(int k, int l, double transmission, int sign);
    static NetworkElement fourier(int k);
    static NetworkElement inverse_fourier(int k);
    static NetworkElement pi_rotation(int k);

    std::string label() const;
};

using ElementSequence = std::vector<NetworkElement>;

ComplexMatrix element_matrix(const NetworkElement &e, int n);

/// Product of element matrices in listed order (last-listed acts first).
ComplexMatrix compose_sequence(const ElementSequence &seq, int n);

/// Beam-splitter transmissions T1..T7 of the eight-mode network.
std::map<std::string, double> reference_transmissions();

/// The 19-element realization of the eight-mode linear cluster unitary.
ElementSequence linear8_decomposition();

struct CompiledNetwork {
    Graph graph;
    std::set<int> x_squeezed;
    RealMatrix adjacency;
    RealMatrix inverse_gram;
    RealMatrix gram_factor;    // ReU in the all-p-squeezed basis
    ComplexMatrix unitary;     // after the input-basis conversion
};

/// Full pipeline adjacency → inverse_gram → gram_factor_sequential →
/// assemble_unitary → input_basis_convert.
CompiledNetwork compile_graph(
    const Graph &g, const std::set<int> &x_squeezed, std::optional<PivotSigns> signs = std::nullopt);

/// Linear chain of eight with x-squeezed inputs 1, 3, 5, 7 in the hardware gauge.
CompiledNetwork compile_linear8();

/// Two-diamond obtained from the linear-8 network by local phases.
CompiledNetwork compile_diamond8();

}  // namespace cvcluster

#endif
