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

#include "rlab/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rlab/error.hpp"
#include "rlab/random.hpp"

namespace rlab {

namespace {

using Cells = std::vector<std::vector<VertexId>>;

VertexId vid(std::size_t v) { return static_cast<VertexId>(v); }

}  // namespace

SimplicialComplex cycle_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::kInvalidParams, "cycles need n >= 3");
  Cells cells;
  for (std::size_t i = 0; i < n; ++i) cells.push_back({vid(i), vid((i + 1) % n)});
  return SimplicialComplex::build(cells);
}

SimplicialComplex path_graph(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidParams, "paths need n >= 1");
  if (n == 1) return SimplicialComplex::build(Cells{{0}});
  Cells cells;
  for (std::size_t i = 0; i + 1 < n; ++i) cells.push_back({vid(i), vid(i + 1)});
  return SimplicialComplex::build(cells);
}

SimplicialComplex complete_graph(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidParams, "complete graphs need n >= 2");
  Cells cells;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) cells.push_back({vid(i), vid(j)});
  }
  return SimplicialComplex::build(cells);
}

SimplicialComplex full_simplex(std::size_t n) {
  if (n < 1 || n > 20) throw Error(ErrorCode::kInvalidParams, "simplex size must lie in [1, 20]");
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), 0);
  return SimplicialComplex::build(Cells{all});
}

SimplicialComplex petersen_graph() {
  Cells cells;
  for (VertexId i = 0; i < 5; ++i) {
    cells.push_back({i, (i + 1) % 5});
    cells.push_back({i, i + 5});
    cells.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return SimplicialComplex::build(cells);
}

SimplicialComplex complete_bipartite(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::kInvalidParams, "both sides must be nonempty");
  Cells cells;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) cells.push_back({vid(i), vid(a + j)});
  }
  return SimplicialComplex::build(cells);
}

ColoredComplex colored_bipartite(std::size_t a, std::size_t b) {
  std::vector<int> colors(a + b, 0);
  std::fill(colors.begin() + static_cast<std::ptrdiff_t>(a), colors.end(), 1);
  return make_colored(complete_bipartite(a, b), 2, colors);
}

SimplicialComplex random_regular_graph(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 1 || k >= n) throw Error(ErrorCode::kInvalidParams, "need 1 <= k < n");
  if ((n * k) % 2 != 0) throw Error(ErrorCode::kInvalidParams, "n*k must be even");
  Rng rng(seed);
  std::vector<VertexId> points;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t c = 0; c < k; ++c) points.push_back(vid(v));
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    shuffle_in_place(points, rng);
    std::set<std::pair<VertexId, VertexId>> edges;
    bool simple = true;
    for (std::size_t p = 0; p < points.size(); p += 2) {
      VertexId u = points[p];
      VertexId v = points[p + 1];
      if (u == v) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!edges.emplace(u, v).second) {
        simple = false;
        break;
      }
    }
    if (!simple) continue;
    Cells cells;
    for (const auto& [u, v] : edges) cells.push_back({u, v});
    SimplicialComplex g = SimplicialComplex::build(cells, BuildOptions{false});
    if (g.is_connected()) return g;
  }
  throw Error(ErrorCode::kInvalidParams, "no simple connected regular graph found");
}

SimplicialComplex random_connected_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kInvalidParams, "need n >= 2");
  Rng rng(seed);
  std::set<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle_in_place(order, rng);
  for (std::size_t i = 1; i < n; ++i) {
    const VertexId u = order[i];
    const VertexId v = order[uniform_below(rng, i)];
    edges.emplace(std::min(u, v), std::max(u, v));
  }
  const std::size_t max_edges = n * (n - 1) / 2;
  const std::size_t target = std::min(max_edges, edges.size() + extra);
  while (edges.size() < target) {
    const auto u = vid(uniform_below(rng, n));
    const auto v = vid(uniform_below(rng, n));
    if (u != v) edges.emplace(std::min(u, v), std::max(u, v));
  }
  Cells cells;
  for (const auto& [u, v] : edges) cells.push_back({u, v});
  return SimplicialComplex::build(cells);
}

SimplicialComplex random_complex(std::size_t n, int max_dim, std::size_t cells, std::uint64_t seed) {
  if (n < 1 || max_dim < 0) throw Error(ErrorCode::kInvalidParams, "need n >= 1 and max_dim >= 0");
  Rng rng(seed);
  Cells out;
  if (n == 1) return SimplicialComplex::build(Cells{{0}});
  if (max_dim == 0) throw Error(ErrorCode::kInvalidParams, "a connected complex on n > 1 vertices has edges");
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle_in_place(order, rng);
  for (std::size_t i = 1; i < n; ++i) out.push_back({order[i], order[uniform_below(rng, i)]});
  const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(max_dim) + 1, n);
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t size = 2 + uniform_below(rng, top - 1);
    std::vector<VertexId> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    shuffle_in_place(pool, rng);
    pool.resize(size);
    out.push_back(pool);
  }
  return SimplicialComplex::build(out);
}

SimplicialComplex regular_tree_ball(std::size_t k, std::size_t radius) {
  if (k < 2) throw Error(ErrorCode::kInvalidParams, "tree degree must be >= 2");
  if (radius == 0) return SimplicialComplex::build(Cells{{0}});
  Cells cells;
  std::vector<VertexId> level{0};
  VertexId next_id = 1;
  for (std::size_t depth = 1; depth <= radius; ++depth) {
    std::vector<VertexId> next;
    for (VertexId parent : level) {
      const std::size_t children = depth == 1 ? k : k - 1;
      for (std::size_t c = 0; c < children; ++c) {
        cells.push_back({parent, next_id});
        next.push_back(next_id++);
      }
    }
    level = std::move(next);
  }
  return SimplicialComplex::build(cells);
}

ColoredComplex triangulated_torus(std::size_t n, std::size_t m) {
  if (n < 3 || m < 3 || n % 3 != 0 || m % 3 != 0) {
    throw Error(ErrorCode::kInvalidParams, "torus sides must be positive multiples of 3");
  }
  auto id = [m](std::size_t i, std::size_t j) { return vid(i * m + j); };
  Cells cells;
  std::vector<int> colors(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t i1 = (i + 1) % n;
      const std::size_t j1 = (j + 1) % m;
      cells.push_back({id(i, j), id(i1, j), id(i1, j1)});
      cells.push_back({id(i, j), id(i, j1), id(i1, j1)});
      colors[i * m + j] = static_cast<int>((i + j) % 3);
    }
  }
  return make_colored(SimplicialComplex::build(cells), 3, colors);
}

Permutation torus_translation(std::size_t n, std::size_t m, std::size_t di, std::size_t dj) {
  Permutation p(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) p[i * m + j] = vid(((i + di) % n) * m + (j + dj) % m);
  }
  return p;
}

ColoredComplex complete_tripartite(std::size_t s) {
  if (s < 1) throw Error(ErrorCode::kInvalidParams, "parts must be nonempty");
  Cells cells;
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      for (std::size_t c = 0; c < s; ++c) cells.push_back({vid(a), vid(s + b), vid(2 * s + c)});
    }
  }
  std::vector<int> colors(3 * s);
  for (std::size_t v = 0; v < 3 * s; ++v) colors[v] = static_cast<int>(v / s);
  return make_colored(SimplicialComplex::build(cells), 3, colors);
}

CyclicLift cyclic_voltage_lift(const SimplicialComplex& base, std::size_t r, std::uint64_t seed) {
  if (base.dimension() != 1) throw Error(ErrorCode::kDimensionUnsupported, "voltage lifts need a graph");
  if (r < 1) throw Error(ErrorCode::kInvalidParams, "lift degree must be >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CyclicLift lift;
    Cells cells;
    for (const Cell& e : base.cells(1)) {
      const std::size_t volt = uniform_below(rng, r);
      lift.voltages.push_back(volt);
      for (std::size_t s = 0; s < r; ++s) cells.push_back({vid(e[0] * r + s), vid(e[1] * r + (s + volt) % r)});
    }
    SimplicialComplex cover = SimplicialComplex::build(cells, BuildOptions{false});
    if (!cover.is_connected()) continue;
    lift.cover = std::move(cover);
    lift.rotation.resize(base.num_vertices() * r);
    for (std::size_t v = 0; v < base.num_vertices(); ++v) {
      for (std::size_t s = 0; s < r; ++s) lift.rotation[v * r + s] = vid(v * r + (s + 1) % r);
    }
    return lift;
  }
  throw Error(ErrorCode::kInvalidParams, "no connected voltage lift found");
}

Permutation permutation_power(const Permutation& g, std::size_t power) {
  Permutation out(g.size());
  std::iota(out.begin(), out.end(), 0);
  for (std::size_t k = 0; k < power; ++k) {
    for (auto& v : out) v = g[v];
  }
  return out;
}

}  // namespace rlab
