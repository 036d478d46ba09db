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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rlab/complex.hpp"
#include "rlab/operators.hpp"

namespace rlab {

/// Finite field GF(q), q = p^m, with elements encoded as integers 0..q-1
/// (base-p digits are polynomial coefficients modulo a fixed irreducible).
class GaloisField {
 public:
  explicit GaloisField(int q);

  int order() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;

 private:
  int q_ = 0;
  int p_ = 0;
  std::vector<int> add_;
  std::vector<int> mul_;
  std::vector<int> neg_;
  std::vector<int> inv_;
};

/// Returns the prime p with q = p^m, or nullopt.
std::optional<int> prime_power_base(int q);

/// Number of k-dimensional subspaces of F_q^n.
long long gaussian_binomial(int n, int k, long long q);

struct LocalFieldParams {
  int q = 2;
  int d = 2;
  // Degree r of a division algebra D over F; only r = 1 (D = F) has a lattice
  // model, and r > 1 is supported for d = 2 as the (q^r+1)-regular tree.
  int division_degree = 1;
};

void validate(const LocalFieldParams& params);

/// A finite Laurent polynomial Σ_k coeffs[k] t^(low + k) over GF(q).
struct LaurentPolynomial {
  int low = 0;
  std::vector<int> coeffs;
};

using LaurentMatrix = std::vector<std::vector<LaurentPolynomial>>;

/// Homothety class of an O-lattice in F^d, O = F_q[[t]], in column-style
/// Hermite normal form: the representative lattice lies in O^d but not in
/// tO^d, its basis matrix is lower triangular with diagonal t^pivots[i], and
/// entry (i, j), j < i, is a polynomial of degree < pivots[i].
struct LatticeClass {
  int d = 0;
  std::vector<int> pivots;
  // Row-major lower entries: for i, for j < i, pivots[i] coefficients.
  std::vector<int> lower;
  // Power of t applied to the input to reach the representative.
  int valuation_offset = 0;

  int color() const;
  /// Coefficients of entry (i, j), j < i.
  std::vector<int> entry(int i, int j) const;
  bool operator==(const LatticeClass& other) const {
    return d == other.d && pivots == other.pivots && lower == other.lower;
  }
};

struct LatticeClassHash {
  std::size_t operator()(const LatticeClass& c) const noexcept;
};

/// Canonical class of g·O^d. Throws SingularMatrix.
LatticeClass canonicalize(const LaurentMatrix& g, const GaloisField& field);

/// Simplicial complex with Z/d vertex colors (optional) and directed-edge
/// colors in Z/d \ {0}.
struct ColoredComplex {
  SimplicialComplex complex;
  int d = 2;
  std::optional<std::vector<int>> vertex_colors;
  // Color of the edge in the direction lower id -> higher id, per edge index.
  std::vector<int> edge_colors;

  int edge_color(VertexId from, VertexId to) const;
};

struct DirectedEdgeColor {
  VertexId from = 0;
  VertexId to = 0;
  int color = 0;
};

/// Validates and assembles the coloring. Edge colors missing from the list are
/// derived from vertex colors, or default to 1 when d = 2. Throws
/// ColoringInconsistent naming the failing edge.
ColoredComplex make_colored(SimplicialComplex complex, int d,
                            std::optional<std::vector<int>> vertex_colors,
                            const std::vector<DirectedEdgeColor>& edge_colors = {});

struct BallOptions {
  std::size_t max_vertices = 500'000;
};

/// Ball around the base class [O^d] in the building of PGL_d(F_q((t))).
struct BuildingBall {
  ColoredComplex colored;
  LocalFieldParams params;
  int radius = 0;
  std::vector<std::size_t> distance;  // graph distance from the base vertex
  std::vector<bool> frontier;         // distance == radius
  std::vector<LatticeClass> lattices; // empty for division-algebra trees
  int precision = 0;                  // t-adic truncation used for lattice entries

  bool is_interior(VertexId v, int depth = 1) const {
    return distance[v] + static_cast<std::size_t>(depth) <= static_cast<std::size_t>(radius);
  }
};

/// Throws BudgetExceeded.
BuildingBall building_ball(const LocalFieldParams& params, int radius, BallOptions options = {});

/// Neighbors of a lattice class, one per proper nonzero subspace of L/tL,
/// paired with the directed edge color.
std::vector<std::pair<LatticeClass, int>> lattice_neighbors(const LatticeClass& lattice,
                                                            const GaloisField& field,
                                                            int precision);

struct HeckeFamily {
  int d = 2;
  std::vector<ChainOperator> operators;  // a_1 .. a_{d-1}
  bool adjoint_pairing = false;          // a_i^T == a_{d-i} exactly
  bool commuting = false;
  double max_commutator = 0.0;
  std::size_t rows_checked = 0;
  bool boundary_affected = false;
};

/// Colored adjacency operators. When `ball` is given, commutators are only
/// checked on rows at depth >= 2 inside the ball.
HeckeFamily hecke_family(const ColoredComplex& x, const BuildingBall* ball = nullptr,
                         double tolerance = 1e-10);

}  // namespace rlab
