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

#include <random>

#include "oracles.hpp"
#include "rlab/complex.hpp"
#include "rlab/error.hpp"
#include "rlab/generators.hpp"
#include "rlab/operators.hpp"

using namespace rlab;
using oracle::error_of;

namespace {

std::vector<double> real_eigenvalues(const ChainOperator& op) {
  const DenseMatrix m = op.dense();
  std::vector<std::vector<double>> a(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).real();
  }
  return oracle::jacobi_eigenvalues(a);
}

DenseVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  DenseVector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(i) = Scalar(gauss(rng), gauss(rng));
  return v;
}

}  // namespace

TEST_CASE("chain bases") {
  const auto x = full_simplex(3);
  const auto forms = ChainBasis::make(x, 1, ChainKind::kForms);
  const auto full = ChainBasis::make(x, 1, ChainKind::kOrientedFull);
  const auto vertices = ChainBasis::make(x, 0, ChainKind::kOrientedFull);
  CHECK(forms->size() == 3);
  CHECK(full->size() == 6);
  CHECK(forms->weight() == 2.0);
  CHECK(full->weight() == 1.0);
  CHECK(vertices->weight() == 2.0);
  CHECK(error_of([&] { ChainBasis::make(x, 3, ChainKind::kForms); }) ==
        ErrorCode::kDimensionOutOfRange);
  CHECK(parse_chain_kind("antiforms") == ChainKind::kAntiforms);
  CHECK(error_of([] { parse_chain_kind("spinors"); }) == ErrorCode::kInvalidParams);
}

TEST_CASE("boundary and coboundary") {
  SUBCASE("single edge") {
    const auto x = path_graph(2);
    const DenseMatrix d = boundary(x, 1).dense();
    REQUIRE(d.rows() == 2);
    REQUIRE(d.cols() == 1);
    CHECK(d(0, 0) == Scalar(-1.0));
    CHECK(d(1, 0) == Scalar(1.0));
  }
  SUBCASE("boundary squares to zero on the 2-simplex") {
    const auto x = full_simplex(3);
    const auto dd = boundary(x, 1).compose(boundary(x, 2));
    CHECK(max_abs(dd.matrix()) == 0.0);
    REQUIRE(dd.integer_matrix().has_value());
  }
  SUBCASE("no edges") {
    const auto x = SimplicialComplex::build(std::vector<std::vector<VertexId>>{{0}});
    CHECK(error_of([&] { boundary(x, 1); }) == ErrorCode::kDimensionOutOfRange);
  }
  SUBCASE("coboundary on C3 is the signed incidence matrix") {
    const auto x = cycle_graph(3);
    const DenseMatrix d = coboundary(x, 0).dense();
    REQUIRE(d.rows() == 3);
    REQUIRE(d.cols() == 3);
    for (std::size_t e = 0; e < 3; ++e) {
      const Cell& edge = x.cell(1, e);
      for (VertexId v = 0; v < 3; ++v) {
        const double expected = v == edge[1] ? 1.0 : (v == edge[0] ? -1.0 : 0.0);
        CHECK(d(e, v).real() == expected);
      }
    }
  }
  SUBCASE("coboundary squares to zero on the tetrahedron") {
    const auto x = full_simplex(4);
    CHECK(max_abs(coboundary(x, 1).compose(coboundary(x, 0)).matrix()) == 0.0);
    CHECK(max_abs(coboundary(x, 2).compose(coboundary(x, 1)).matrix()) == 0.0);
  }
  SUBCASE("coboundary is adjoint to boundary") {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto x = random_complex(7, 3, 5, seed);
      for (int i = 0; i < x.dimension(); ++i) {
        const auto delta = coboundary(x, i);
        const auto del = boundary(x, i + 1);
        const DenseVector phi = random_vector(delta.source().size(), rng);
        const DenseVector psi = random_vector(delta.target().size(), rng);
        const DenseVector dphi = delta.matrix() * phi;
        const DenseVector dpsi = del.matrix() * psi;
        const Scalar lhs = delta.target().inner(dphi, psi);
        const Scalar rhs = delta.source().inner(phi, dpsi);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("Laplacians") {
  SUBCASE("K3") {
    const auto x = cycle_graph(3);
    CHECK(oracle::same_sorted(real_eigenvalues(laplacian(x, 0)), {0.0, 3.0, 3.0}, 1e-12));
  }
  SUBCASE("single edge") {
    CHECK(oracle::same_sorted(real_eigenvalues(laplacian(path_graph(2), 0)), {0.0, 2.0}, 1e-12));
  }
  SUBCASE("down Laplacian vanishes on vertices") {
    CHECK(max_abs(laplacian(petersen_graph(), 0, LaplacianVariant::kDown).matrix()) == 0.0);
  }
  SUBCASE("graph Laplacian is degree minus adjacency") {
    const auto x = random_connected_graph(9, 6, 3);
    const DenseMatrix l = laplacian(x, 0).dense();
    const auto a = oracle::adjacency_matrix(x);
    for (VertexId u = 0; u < x.num_vertices(); ++u) {
      for (VertexId v = 0; v < x.num_vertices(); ++v) {
        const double expected = (u == v ? static_cast<double>(x.degree(u)) : 0.0) - a[u][v];
        CHECK(l(u, v).real() == expected);
      }
    }
  }
  SUBCASE("total is up plus down") {
    const auto x = full_simplex(4);
    const auto total = laplacian(x, 1);
    const auto sum = laplacian(x, 1, LaplacianVariant::kUp).plus(laplacian(x, 1, LaplacianVariant::kDown));
    CHECK(max_abs(total.matrix() - sum.matrix()) == 0.0);
  }
  CHECK(parse_laplacian_variant("up") == LaplacianVariant::kUp);
}

TEST_CASE("cell adjacency operators") {
  SUBCASE("K4 vertices") {
    const auto op = adjacency(complete_graph(4), 0, 1);
    CHECK(oracle::same_sorted(real_eigenvalues(op), oracle::complete_spectrum(4), 1e-12));
  }
  SUBCASE("C6 vertices") {
    CHECK(oracle::same_sorted(real_eigenvalues(adjacency(cycle_graph(6), 0, 1)),
                              oracle::cycle_spectrum(6), 1e-12));
  }
  SUBCASE("edges of the 2-simplex") {
    CHECK(oracle::same_sorted(real_eigenvalues(adjacency(full_simplex(3), 1, 2)), {-1.0, -1.0, 2.0},
                              1e-12));
  }
  SUBCASE("index constraints") {
    const auto x = full_simplex(4);
    CHECK(error_of([&] { adjacency(x, 1, 1); }) == ErrorCode::kIndexConstraintViolated);
    CHECK(error_of([&] { adjacency(x, 0, 2); }) == ErrorCode::kIndexConstraintViolated);
    CHECK(error_of([&] { adjacency(x, 1, 4); }) != std::nullopt);
  }
  SUBCASE("face adjacency on a graph is the line graph") {
    const auto x = random_regular_graph(12, 3, 5);
    const DenseMatrix m = face_adjacency(x, 1).dense();
    const auto line = oracle::line_graph_matrix(x);
    for (std::size_t i = 0; i < line.size(); ++i) {
      for (std::size_t j = 0; j < line.size(); ++j) CHECK(m(i, j).real() == line[i][j]);
    }
  }
}

TEST_CASE("pushforward and naturality") {
  const auto c6 = cycle_graph(6);
  const auto c3 = cycle_graph(3);
  const std::vector<VertexId> mod3{0, 1, 2, 0, 1, 2};

  SUBCASE("column sums are one") {
    const DenseMatrix f = pushforward(mod3, c6, c3, 0, ChainKind::kForms).dense();
    for (Eigen::Index j = 0; j < f.cols(); ++j) CHECK(f.col(j).sum() == Scalar(1.0));
  }
  SUBCASE("identity cover") {
    const std::vector<VertexId> id{0, 1, 2, 3, 4, 5};
    const DenseMatrix f = pushforward(id, c6, c6, 1, ChainKind::kForms).dense();
    CHECK(f.isApprox(DenseMatrix::Identity(6, 6)));
  }
  SUBCASE("Laplacian commutes with the double cover") {
    const auto make = [](const SimplicialComplex& x) { return laplacian(x, 0); };
    CHECK(verify_naturality(make, mod3, c6, c3).natural);
  }
  SUBCASE("edge operators commute with the double cover") {
    const auto make = [](const SimplicialComplex& x) { return laplacian(x, 1); };
    CHECK(verify_naturality(make, mod3, c6, c3).natural);
  }
  SUBCASE("corrupted operator") {
    const auto make = [&](const SimplicialComplex& x) {
      auto op = adjacency(x, 0, 1);
      if (x.num_vertices() == 6) op = op.plus(laplacian(x, 0).scaled(0.5));
      return op;
    };
    const auto report = verify_naturality(make, mod3, c6, c3);
    CHECK_FALSE(report.natural);
    CHECK(report.defect > 0.1);
  }
  SUBCASE("not a cover") {
    const std::vector<VertexId> bad{0, 1, 2, 2};
    CHECK(error_of([&] {
            pushforward(bad, complete_graph(4), complete_graph(3), 0, ChainKind::kForms);
          }) == ErrorCode::kNotACover);
  }
}

TEST_CASE("oriented full space") {
  const auto x = full_simplex(3);
  const auto up = adjacency(x, 1, 2);
  const auto down = laplacian(x, 1);
  const auto sum = oriented_direct_sum(x, up, down);
  CHECK(sum.source().kind() == ChainKind::kOrientedFull);
  const auto embed_plus = oriented_embedding(x, 1, ChainKind::kAntiforms);
  const auto embed_minus = oriented_embedding(x, 1, ChainKind::kForms);
  CHECK(max_abs(sum.compose(embed_plus).matrix() - embed_plus.compose(up).matrix()) < 1e-14);
  CHECK(max_abs(sum.compose(embed_minus).matrix() - embed_minus.compose(down).matrix()) < 1e-14);
}

TEST_CASE("adjoints respect the Gram weights") {
  const auto x = full_simplex(4);
  const auto delta = coboundary(x, 0);
  CHECK(max_abs(delta.adjoint().matrix() - boundary(x, 1).matrix()) < 1e-14);
  const auto lap = laplacian(x, 1);
  CHECK(max_abs(lap.adjoint().matrix() - lap.matrix()) < 1e-14);
}

TEST_CASE("operator families") {
  const auto x = petersen_graph();
  const auto fam = make_family("pair", {adjacency(x, 0, 1), laplacian(x, 0)});
  CHECK(fam.verified);
  CHECK(fam.commuting);
  CHECK(fam.normal);
  const auto y = full_simplex(3);
  CHECK(error_of([&] { make_family("mixed", {adjacency(x, 0, 1), laplacian(y, 0)}); }) ==
        ErrorCode::kInvalidParams);
  CHECK(error_of([] { make_family("none", {}); }) == ErrorCode::kInvalidParams);
}
