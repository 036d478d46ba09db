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

#include <filesystem>
#include <set>

#include "oracles.hpp"
#include "rlab/error.hpp"
#include "rlab/generators.hpp"
#include "rlab/io.hpp"
#include "rlab/operators.hpp"
#include "rlab/spectra.hpp"

using namespace rlab;
using oracle::error_of;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "rlab_unit_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

bool is_regular(const SimplicialComplex& x, std::size_t k) {
  for (VertexId v = 0; v < x.num_vertices(); ++v) {
    if (x.degree(v) != k) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("fixed generators") {
  CHECK(cycle_graph(6).num_cells(1) == 6);
  CHECK(path_graph(4).num_cells(1) == 3);
  CHECK(complete_graph(5).num_cells(1) == 10);
  CHECK(full_simplex(4).num_cells(3) == 1);
  const auto p = petersen_graph();
  CHECK(p.num_vertices() == 10);
  CHECK(is_regular(p, 3));
  CHECK(complete_bipartite(2, 3).num_cells(1) == 6);
  const auto torus = triangulated_torus(3, 6);
  CHECK(torus.complex.num_vertices() == 18);
  CHECK(torus.complex.num_cells(2) == 36);
  CHECK(is_regular(torus.complex, 6));
  CHECK(error_of([] { triangulated_torus(4, 6); }) == ErrorCode::kInvalidParams);
  const auto k777 = complete_tripartite(7);
  CHECK(k777.complex.num_cells(2) == 343);
  CHECK(is_regular(k777.complex, 14));
}

TEST_CASE("random regular graphs") {
  const auto a = random_regular_graph(10, 3, 7);
  const auto b = random_regular_graph(10, 3, 7);
  CHECK(a.cells(1) == b.cells(1));
  CHECK(is_regular(a, 3));
  CHECK(a.is_connected());
  CHECK(random_regular_graph(10, 3, 8).cells(1) != a.cells(1));
  CHECK(error_of([] { random_regular_graph(5, 3, 1); }) == ErrorCode::kInvalidParams);
  CHECK(error_of([] { random_regular_graph(4, 4, 1); }) == ErrorCode::kInvalidParams);
  CHECK(is_regular(random_regular_graph(200, 4, 3), 4));
}

TEST_CASE("random complexes") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = random_complex(8, 3, 6, seed);
    CHECK(x.is_connected());
    CHECK(x.num_vertices() == 8);
    CHECK(x.dimension() <= 3);
  }
  const auto g = random_connected_graph(12, 5, 4);
  CHECK(g.num_cells(1) == 16);
}

TEST_CASE("tree balls") {
  const auto t = regular_tree_ball(3, 2);
  CHECK(t.num_vertices() == 10);
  CHECK(t.num_cells(1) == 9);
  CHECK(t.degree(0) == 3);
}

TEST_CASE("cyclic voltage lifts") {
  const auto base = complete_graph(4);
  const auto lift = cyclic_voltage_lift(base, 6, 3);
  CHECK(lift.cover.num_vertices() == 24);
  CHECK(lift.cover.is_connected());
  CHECK(lift.voltages.size() == 6);
  const auto id = permutation_power(lift.rotation, 6);
  for (VertexId v = 0; v < id.size(); ++v) CHECK(id[v] == v);
  const auto q = quotient_by_action(lift.cover, GroupAction{{lift.rotation}});
  CHECK(q.quotient.num_vertices() == 4);
  CHECK(q.group_order == 6);
}

TEST_CASE("complex files") {
  SUBCASE("round trip") {
    const auto x = triangulated_torus(3, 3);
    const auto back = parse_complex(colored_to_json(x));
    REQUIRE(back.has_coloring());
    const auto y = back.colored();
    CHECK(y.complex.cells(2) == x.complex.cells(2));
    CHECK(y.edge_colors == x.edge_colors);
    CHECK(y.vertex_colors == x.vertex_colors);
    CHECK(colored_to_json(y) == colored_to_json(x));
    CHECK(parse_complex(complex_to_json(petersen_graph())).complex.cells(1) == petersen_graph().cells(1));
  }
  SUBCASE("uncolored files become d = 2") {
    const auto f = parse_complex(R"({"maximal_cells": [[0, 1], [1, 2], [2, 0]]})");
    CHECK_FALSE(f.has_coloring());
    CHECK(f.colored().d == 2);
  }
  SUBCASE("malformed input") {
    CHECK(error_of([] { parse_complex("{"); }) == ErrorCode::kInvalidParams);
    CHECK(error_of([] { parse_complex(R"({"cells": []})"); }) == ErrorCode::kInvalidParams);
    CHECK(error_of([] { parse_complex(R"({"maximal_cells": [[0, "a"]]})"); }) == ErrorCode::kInvalidParams);
    CHECK(error_of([] { parse_complex(R"({"maximal_cells": [[0, 0]]})"); }) == ErrorCode::kMalformedCell);
    CHECK(error_of([] { parse_complex(R"({"maximal_cells": [[0, 1], [2, 3]]})"); }) ==
          ErrorCode::kDisconnectedInput);
  }
  SUBCASE("corrupted colors name the edge") {
    const auto f = parse_complex(R"({"maximal_cells": [[0, 1, 2]], "d": 3,
                                     "edge_colors": [[0, 1, 1], [1, 0, 1], [1, 2, 1], [0, 2, 2]]})");
    try {
      f.colored();
      FAIL("expected a coloring error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kColoringInconsistent);
      CHECK(std::string(e.what()).find("edge 0 {0,1}") != std::string::npos);
    }
  }
  SUBCASE("files on disk") {
    const auto path = scratch("c6.json").string();
    write_text(path, complex_to_json(cycle_graph(6)));
    CHECK(load_complex(path).complex.num_cells(1) == 6);
    const auto what = error_of([] { load_complex("/nonexistent/rlab.json"); });
    CHECK(what == ErrorCode::kIo);
  }
}

TEST_CASE("group files") {
  const GroupAction g{{{1, 2, 0}, {0, 2, 1}}};
  const auto back = parse_group(group_to_json(g));
  CHECK(back.generators == g.generators);
  CHECK(error_of([] { parse_group(R"({"gens": []})"); }) == ErrorCode::kInvalidParams);
}

TEST_CASE("operator export") {
  const auto x = full_simplex(3);
  const auto op = boundary(x, 2);
  const auto mtx = scratch("boundary.mtx").string();
  const auto manifest = scratch("boundary.json").string();
  export_operator(op, mtx, manifest);
  const SparseMatrix back = load_matrix_market(mtx);
  CHECK(max_abs(back - op.matrix()) == 0.0);
  const auto text = read_text(manifest);
  CHECK(text.find("\"label\":\"boundary2\"") != std::string::npos);
  CHECK(text.find("\"kind\":\"forms\"") != std::string::npos);
}

TEST_CASE("spectral tables") {
  const auto s = joint_spectrum({adjacency(cycle_graph(4), 0, 1)});
  const auto csv = spectrum_csv(s);
  CHECK(csv.rfind("index,re_adjacency0;1,im_adjacency0;1,provenance\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const auto v = ramanujan_verdict(s, tree_trivial_spectrum(2), ReferenceSpectrum::tree(2));
  const auto table = verdict_csv(v, s.coordinates);
  CHECK(table.find(",trivial,") != std::string::npos);
  CHECK(table.find(",covered,") != std::string::npos);
}
