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

#ifndef CVCLUSTER_GRAPH_HPP
#define CVCLUSTER_GRAPH_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "cvcluster/linalg.hpp"

namespace cvcluster {

/// Undirected edge between two 1-indexed modes, stored with a < b.
struct Edge {
    int a;
    int b;
    auto operator<=>(const Edge &) const = default;
};

/// Unweighted cluster graph over modes 1..n.
///
/// Edges are normalized to a < b and kept sorted. Self-loops, out-of-range
/// endpoints and duplicate edges are rejected with std::invalid_argument.
class Graph {
   public:
    Graph(int modes, std::vector<Edge> edges);

    int modes() const {
        return modes_;
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    bool has_edge(int a, int b) const;
    /// Neighbors of `mode` in increasing order.
    std::vector<int> neighbors(int mode) const;
    int degree(int mode) const;

    bool operator==(const Graph &) const = default;

   private:
    int modes_;
    std::vector<Edge> edges_;
};

Graph build_linear_chain(int modes);

/// Eight-mode two-diamond graph: diamonds {1,2,3,4} and {5,6,7,8} joined by edge (4,5).
Graph build_two_diamond();

/// n×n symmetric 0/1 adjacency matrix with zero diagonal.
RealMatrix adjacency(const Graph &g);

/// Nullifier p̂_a − Σ_{b∈N(a)} x̂_b of one mode.
struct NullifierSpec {
    int mode;
    double p_coeff = 1.0;
    std::map<int, double> x_coeffs;  // neighbor -> -1

    std::string to_string() const;
};

std::vector<NullifierSpec> nullifier_coefficients(const Graph &g);

}  // namespace cvcluster

#endif
