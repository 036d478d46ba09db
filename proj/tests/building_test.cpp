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

#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "rlab/building.hpp"
#include "rlab/error.hpp"
#include "rlab/generators.hpp"

using namespace rlab;
using oracle::error_of;

namespace {

LaurentMatrix diagonal(const std::vector<int>& valuations) {
  const std::size_t d = valuations.size();
  LaurentMatrix g(d, std::vector<LaurentPolynomial>(d));
  for (std::size_t i = 0; i < d; ++i) g[i][i] = LaurentPolynomial{valuations[i], {1}};
  return g;
}

std::vector<std::size_t> level_counts(const BuildingBall& b) {
  std::vector<std::size_t> out(static_cast<std::size_t>(b.radius) + 1, 0);
  for (std::size_t dist : b.distance) ++out[dist];
  return out;
}

}  // namespace

TEST_CASE("prime powers and Gaussian binomials") {
  CHECK(prime_power_base(8) == 2);
  CHECK(prime_power_base(9) == 3);
  CHECK(prime_power_base(6) == std::nullopt);
  CHECK(prime_power_base(1) == std::nullopt);
  CHECK(gaussian_binomial(3, 1, 2) == 7);
  CHECK(gaussian_binomial(3, 2, 2) == 7);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(3, 1, 3) == 13);
  CHECK(gaussian_binomial(5, 0, 7) == 1);
}

TEST_CASE("finite field arithmetic") {
  for (int q : {2, 3, 4, 8, 9, 25}) {
    const GaloisField f(q);
    CHECK(f.order() == q);
    for (int a = 0; a < q; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.mul(a, 1) == a);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < q; c += 3) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
  CHECK(error_of([] { GaloisField f(12); }) == ErrorCode::kInvalidParams);
}

TEST_CASE("lattice classes") {
  const GaloisField f(2);
  SUBCASE("identity is the base class") {
    const auto base = canonicalize(diagonal({0, 0, 0}), f);
    CHECK(base.color() == 0);
    CHECK(base.pivots == std::vector<int>{0, 0, 0});
  }
  SUBCASE("one elementary step has color 1 and neighbors the base") {
    const auto base = canonicalize(diagonal({0, 0, 0}), f);
    const auto step = canonicalize(diagonal({1, 0, 0}), f);
    CHECK(step.color() == 1);
    bool adjacent = false;
    for (const auto& [nb, color] : lattice_neighbors(base, f, 4)) adjacent = adjacent || nb == step;
    CHECK(adjacent);
  }
  SUBCASE("homotheties collapse") {
    CHECK(canonicalize(diagonal({1, 1}), f) == canonicalize(diagonal({0, 0}), f));
    CHECK(canonicalize(diagonal({-2, -2, -2}), f) == canonicalize(diagonal({0, 0, 0}), f));
  }
  SUBCASE("singular input") {
    LaurentMatrix g(2, std::vector<LaurentPolynomial>(2));
    g[0][0] = LaurentPolynomial{0, {1}};
    g[1][0] = LaurentPolynomial{0, {1}};
    CHECK(error_of([&] { canonicalize(g, f); }) == ErrorCode::kSingularMatrix);
  }
  SUBCASE("neighbor count and colors") {
    const auto base = canonicalize(diagonal({0, 0, 0}), f);
    std::map<int, int> by_color;
    for (const auto& [nb, color] : lattice_neighbors(base, f, 4)) {
      ++by_color[color];
      CHECK((nb.color() - base.color() - color) % 3 == 0);
    }
    CHECK(by_color[1] == 7);
    CHECK(by_color[2] == 7);
  }
}

TEST_CASE("colored complexes") {
  SUBCASE("bipartite 2-coloring") {
    const auto x = colored_bipartite(3, 3);
    CHECK(x.d == 2);
    for (const Cell& e : x.complex.cells(1)) CHECK(x.edge_color(e[0], e[1]) == 1);
  }
  SUBCASE("antisymmetry violated") {
    const auto x = cycle_graph(3);
    const auto what = error_of([&] { make_colored(x, 3, std::nullopt, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {0, 2, 2}}); });
    CHECK(what == ErrorCode::kColoringInconsistent);
    try {
      make_colored(x, 3, std::nullopt, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {0, 2, 2}});
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("edge 0") != std::string::npos);
    }
  }
  SUBCASE("colors derived from vertex colors") {
    const auto x = make_colored(cycle_graph(3), 3, std::vector<int>{0, 1, 2});
    CHECK(x.edge_color(0, 1) == 1);
    CHECK(x.edge_color(1, 0) == 2);
    CHECK(x.edge_color(0, 2) == 2);
  }
  SUBCASE("missing colors for d = 3") {
    CHECK(error_of([] { make_colored(cycle_graph(3), 3, std::nullopt); }) ==
          ErrorCode::kColoringInconsistent);
  }
  SUBCASE("color 0") {
    CHECK(error_of([] { make_colored(cycle_graph(4), 2, std::vector<int>{0, 1, 1, 1}); }) ==
          ErrorCode::kColoringInconsistent);
  }
  SUBCASE("shipped constructions are valid") {
    CHECK_NOTHROW(triangulated_torus(6, 9));
    CHECK_NOTHROW(complete_tripartite(7));
  }
}

TEST_CASE("building balls") {
  SUBCASE("radius 0") {
    const auto b = building_ball({2, 3, 1}, 0);
    CHECK(b.colored.complex.num_vertices() == 1);
    CHECK(b.colored.complex.dimension() == 0);
  }
  SUBCASE("trees") {
    for (int q : {2, 3, 4}) {
      const auto b = building_ball({q, 2, 1}, 3);
      const auto levels = level_counts(b);
      CHECK(levels == std::vector<std::size_t>{1, static_cast<std::size_t>(q + 1),
                                               static_cast<std::size_t>((q + 1) * q),
                                               static_cast<std::size_t>((q + 1) * q * q)});
      const auto& x = b.colored.complex;
      CHECK(x.num_cells(1) + 1 == x.num_vertices());
    }
  }
  SUBCASE("division algebra tree") {
    const auto b = building_ball({2, 2, 2}, 2);
    CHECK(level_counts(b) == std::vector<std::size_t>{1, 5, 20});
    CHECK(error_of([] { building_ball({2, 3, 2}, 1); }) == ErrorCode::kInvalidParams);
  }
  SUBCASE("q = 2, d = 3, radius 1") {
    const auto b = building_ball({2, 3, 1}, 1);
    const auto& x = b.colored.complex;
    CHECK(x.num_vertices() == 15);
    CHECK(x.degree(0) == 14);
    CHECK(x.num_cells(1) == 35);
    CHECK(x.num_cells(2) == 21);
  }
  SUBCASE("q = 2, d = 3, radius 2 interior") {
    const auto b = building_ball({2, 3, 1}, 2);
    const auto& x = b.colored;
    for (VertexId v = 0; v < x.complex.num_vertices(); ++v) {
      if (!b.is_interior(v)) continue;
      CHECK(x.complex.degree(v) == 14);
      int ones = 0;
      for (VertexId w : x.complex.neighbors(v)) ones += x.edge_color(v, w) == 1 ? 1 : 0;
      CHECK(ones == 7);
    }
  }
  SUBCASE("budget") {
    CHECK(error_of([] { building_ball({2, 3, 1}, 3, BallOptions{50}); }) ==
          ErrorCode::kBudgetExceeded);
  }
  SUBCASE("invalid parameters") {
    CHECK(error_of([] { building_ball({6, 3, 1}, 1); }) == ErrorCode::kInvalidParams);
    CHECK(error_of([] { building_ball({2, 9, 1}, 1); }) == ErrorCode::kInvalidParams);
  }
}

TEST_CASE("Hecke operators") {
  SUBCASE("d = 2 is the vertex adjacency") {
    const auto b = building_ball({3, 2, 1}, 2);
    const auto h = hecke_family(b.colored, &b);
    REQUIRE(h.operators.size() == 1);
    const auto a = oracle::adjacency_matrix(b.colored.complex);
    const DenseMatrix m = h.operators[0].dense();
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) CHECK(m(i, j).real() == a[i][j]);
    }
  }
  SUBCASE("q = 2, d = 3") {
    const auto b = building_ball({2, 3, 1}, 2);
    const auto h = hecke_family(b.colored, &b);
    REQUIRE(h.operators.size() == 2);
    CHECK(h.adjoint_pairing);
    CHECK(h.commuting);
    CHECK(h.max_commutator <= 1e-10);
    CHECK(h.rows_checked > 0);
    const DenseMatrix a1 = h.operators[0].dense();
    for (VertexId v = 0; v < b.colored.complex.num_vertices(); ++v) {
      if (b.is_interior(v)) CHECK(a1.row(v).sum().real() == 7.0);
    }
  }
  SUBCASE("finite colored complexes commute everywhere") {
    const auto h = hecke_family(triangulated_torus(6, 6));
    CHECK(h.adjoint_pairing);
    CHECK(h.commuting);
    CHECK(h.max_commutator == 0.0);
  }
}
