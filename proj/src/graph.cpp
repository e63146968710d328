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

#include "cvcluster/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cvcluster {

Graph::Graph(int modes, std::vector<Edge> edges) : modes_(modes), edges_(std::move(edges)) {
    if (modes_ < 1) {
        throw std::invalid_argument("graph needs at least one mode, got " + std::to_string(modes_));
    }
    for (auto &e : edges_) {
        if (e.a == e.b) {
            throw std::invalid_argument("self-loop on mode " + std::to_string(e.a));
        }
        if (e.a > e.b) {
            std::swap(e.a, e.b);
        }
        if (e.a < 1 || e.b > modes_) {
            throw std::invalid_argument(
                "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") outside modes 1.." +
                std::to_string(modes_));
        }
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw std::invalid_argument(
            "duplicate edge (" + std::to_string(dup->a) + "," + std::to_string(dup->b) + ")");
    }
}

bool Graph::has_edge(int a, int b) const {
    Edge e{std::min(a, b), std::max(a, b)};
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> Graph::neighbors(int mode) const {
    if (mode < 1 || mode > modes_) {
        throw std::invalid_argument("mode " + std::to_string(mode) + " out of range");
    }
    std::vector<int> out;
    for (const auto &e : edges_) {
        if (e.a == mode) {
            out.push_back(e.b);
        } else if (e.b == mode) {
            out.push_back(e.a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int Graph::degree(int mode) const {
    return static_cast<int>(neighbors(mode).size());
}

Graph build_linear_chain(int modes) {
    if (modes < 1) {
        throw std::invalid_argument("linear chain needs n >= 1, got " + std::to_string(modes));
    }
    std::vector<Edge> edges;
    for (int i = 1; i < modes; i++) {
        edges.push_back({i, i + 1});
    }
    return Graph(modes, std::move(edges));
}

Graph build_two_diamond() {
    return Graph(8, {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {4, 5}, {5, 7}, {5, 8}, {6, 7}, {6, 8}});
}

RealMatrix adjacency(const Graph &g) {
    RealMatrix a = RealMatrix::Zero(g.modes(), g.modes());
    for (const auto &e : g.edges()) {
        a(e.a - 1, e.b - 1) = 1.0;
        a(e.b - 1, e.a - 1) = 1.0;
    }
    return a;
}

std::vector<NullifierSpec> nullifier_coefficients(const Graph &g) {
    std::vector<NullifierSpec> out;
    out.reserve(g.modes());
    for (int a = 1; a <= g.modes(); a++) {
        NullifierSpec spec{a, 1.0, {}};
        for (int b : g.neighbors(a)) {
            spec.x_coeffs[b] = -1.0;
        }
        out.push_back(std::move(spec));
    }
    return out;
}

std::string NullifierSpec::to_string() const {
    std::ostringstream ss;
    ss << "p" << mode;
    for (const auto &[b, c] : x_coeffs) {
        ss << (c < 0 ? " - " : " + ");
        if (std::abs(c) != 1.0) {
            ss << std::abs(c) << "*";
        }
        ss << "x" << b;
    }
    return ss.str();
}

}  // namespace cvcluster
