// Copyright 2026 The rlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rlab/building.hpp"
#include "rlab/complex.hpp"

namespace rlab {

SimplicialComplex cycle_graph(std::size_t n);
SimplicialComplex path_graph(std::size_t n);
/// K_n as a graph (edges only).
SimplicialComplex complete_graph(std::size_t n);
/// The full simplex on n vertices.
SimplicialComplex full_simplex(std::size_t n);
SimplicialComplex petersen_graph();
SimplicialComplex complete_bipartite(std::size_t a, std::size_t b);
/// K_{a,b} with the two sides colored 0 and 1 (d = 2).
ColoredComplex colored_bipartite(std::size_t a, std::size_t b);

/// Uniform simple connected k-regular graph from the pairing model with
/// rejection. Throws InvalidParams when n·k is odd or k >= n.
SimplicialComplex random_regular_graph(std::size_t n, std::size_t k, std::uint64_t seed);
/// Connected graph: a random spanning tree plus `extra` random edges.
SimplicialComplex random_connected_graph(std::size_t n, std::size_t extra, std::uint64_t seed);
/// Connected complex on n vertices with random cells of dimension <= max_dim.
SimplicialComplex random_complex(std::size_t n, int max_dim, std::size_t cells, std::uint64_t seed);

/// Ball of radius `radius` in the k-regular tree, vertices in BFS order.
SimplicialComplex regular_tree_ball(std::size_t k, std::size_t radius);

/// Triangulated n × m torus, vertex (i, j) = i·m + j, colored (i + j) mod 3.
/// Requires n and m divisible by 3.
ColoredComplex triangulated_torus(std::size_t n, std::size_t m);
/// Translation (i, j) -> (i + di, j + dj) of the n × m torus.
Permutation torus_translation(std::size_t n, std::size_t m, std::size_t di, std::size_t dj);

/// K_{s,s,s} with every triangle filled, parts colored 0, 1, 2 (d = 3).
ColoredComplex complete_tripartite(std::size_t s);

struct CyclicLift {
  SimplicialComplex cover;
  /// (v, s) -> (v, s + 1); vertex (v, s) has id v·r + s.
  Permutation rotation;
  std::vector<std::size_t> voltages;  // per base edge
};

/// Z/r voltage cover of a graph with uniform voltages, redrawn until connected.
CyclicLift cyclic_voltage_lift(const SimplicialComplex& base, std::size_t r, std::uint64_t seed);

/// g^power.
Permutation permutation_power(const Permutation& g, std::size_t power);

}  // namespace rlab
