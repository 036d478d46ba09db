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

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "rlab/complex.hpp"

namespace rlab {

using Scalar = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
using IntSparseMatrix = Eigen::SparseMatrix<long long, Eigen::RowMajor>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

// Oriented-full is Ω^±, forms Ω^- (odd under orientation reversal), antiforms
// Ω^+ (even). Forms and antiforms use the sorted-order orientation of each cell
// as the basis representative.
enum class ChainKind { kOrientedFull, kForms, kAntiforms };

const char* chain_kind_name(ChainKind kind);
ChainKind parse_chain_kind(const std::string& name);

struct OrientedCell {
  std::size_t cell = 0;  // index into the complex's cells of this dimension
  int sign = 1;          // relative to the sorted vertex order
};

class ChainBasis;
using BasisPtr = std::shared_ptr<const ChainBasis>;

/// Ordered basis of a chain space together with the diagonal Gram weights of
/// its inner product: ‖e‖² = 2 for forms and antiforms (both orientations
/// contribute, and dimension 0 carries the factor 2 convention), and for the
/// oriented-full space 1 in positive dimension, 2 in dimension 0.
class ChainBasis {
 public:
  static BasisPtr make(const SimplicialComplex& x, int dim, ChainKind kind);

  ChainKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const OrientedCell& element(std::size_t k) const { return elements_.at(k); }
  const Cell& cell_of(std::size_t k) const { return cells_.at(elements_.at(k).cell); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  double weight() const noexcept { return weight_; }

  std::optional<std::size_t> index_of(std::size_t cell, int sign) const;

  /// Σ_k w φ_k conj(ψ_k).
  Scalar inner(const DenseVector& phi, const DenseVector& psi) const;

  bool same_space(const ChainBasis& other) const;

 private:
  ChainKind kind_ = ChainKind::kForms;
  int dim_ = 0;
  double weight_ = 2.0;
  std::vector<Cell> cells_;
  std::vector<OrientedCell> elements_;
};

/// A linear map between two chain spaces, stored as a sparse complex matrix in
/// row-major order. Operators assembled from integer data keep that data so
/// exact identities can be checked before casting.
class ChainOperator {
 public:
  ChainOperator(std::string label, BasisPtr source, BasisPtr target, SparseMatrix matrix,
                std::optional<IntSparseMatrix> integer = std::nullopt);

  const std::string& label() const noexcept { return label_; }
  const ChainBasis& source() const noexcept { return *source_; }
  const ChainBasis& target() const noexcept { return *target_; }
  const BasisPtr& source_ptr() const noexcept { return source_; }
  const BasisPtr& target_ptr() const noexcept { return target_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  const std::optional<IntSparseMatrix>& integer_matrix() const noexcept { return integer_; }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }

  /// Dual with respect to the Gram weights of source and target.
  ChainOperator adjoint() const;
  /// this ∘ rhs.
  ChainOperator compose(const ChainOperator& rhs, std::string label = {}) const;
  ChainOperator plus(const ChainOperator& rhs, std::string label = {}) const;
  ChainOperator scaled(Scalar s, std::string label = {}) const;
  ChainOperator relabeled(std::string label) const;

  bool is_square() const noexcept { return source_->same_space(*target_); }

 private:
  std::string label_;
  BasisPtr source_;
  BasisPtr target_;
  SparseMatrix matrix_;
  std::optional<IntSparseMatrix> integer_;
};

using OperatorConstructor = std::function<ChainOperator(const SimplicialComplex&)>;

/// Largest absolute entry.
double max_abs(const SparseMatrix& m);

/// ∂_{i+1}: Ω_{i+1}^- → Ω_i^-, with (∂ψ)[v_0..v_i] = Σ_v ψ[v v_0..v_i].
ChainOperator boundary(const SimplicialComplex& x, int top_dim);
/// δ_i: Ω_i^- → Ω_{i+1}^-, alternating sum over omitted vertices.
ChainOperator coboundary(const SimplicialComplex& x, int dim);

enum class LaplacianVariant { kUp, kDown, kTotal };
LaplacianVariant parse_laplacian_variant(const std::string& name);

/// Δ_i^+ = ∂_{i+1}δ_i, Δ_i^- = δ_{i-1}∂_i (zero for i = 0), Δ_i their sum.
ChainOperator laplacian(const SimplicialComplex& x, int dim,
                        LaplacianVariant variant = LaplacianVariant::kTotal);

/// a_{i;j} on Ω_i^+: sums φ over i-cells y with x ∪ y a j-cell.
/// Requires 0 <= i < j <= 2i + 1 and j <= dim X.
ChainOperator adjacency(const SimplicialComplex& x, int i, int j);

/// Lower adjacency on Ω_i^+ (i >= 1): sums φ over the other i-cells sharing an
/// (i-1)-face with x. On a graph this is the line-graph adjacency.
ChainOperator face_adjacency(const SimplicialComplex& x, int i);

/// f_* e_x = e_{f(x)} on the chosen basis kind. Throws NotACover.
ChainOperator pushforward(std::span<const VertexId> f, const SimplicialComplex& x,
                          const SimplicialComplex& y, int dim, ChainKind kind);

/// Inclusion of Ω_i^- (kForms) or Ω_i^+ (kAntiforms) into Ω_i^±.
ChainOperator oriented_embedding(const SimplicialComplex& x, int dim, ChainKind kind);

/// The operator on Ω_i^± = Ω_i^+ ⊕ Ω_i^- acting as `on_antiforms` ⊕ `on_forms`.
ChainOperator oriented_direct_sum(const SimplicialComplex& x, const ChainOperator& on_antiforms,
                                  const ChainOperator& on_forms);

struct NaturalityReport {
  bool natural = false;
  double defect = 0.0;
};

inline constexpr double kNaturalityTolerance = 1e-10;

/// Checks f_* ∘ a_X = a_Y ∘ f_*.
NaturalityReport verify_naturality(const OperatorConstructor& make, std::span<const VertexId> f,
                                   const SimplicialComplex& x, const SimplicialComplex& y,
                                   double tolerance = kNaturalityTolerance);

/// A list of operators on one basis. The flags record verified facts only.
struct OperatorFamily {
  std::string label;
  std::vector<ChainOperator> operators;
  bool verified = false;
  bool commuting = false;
  bool normal = false;
  double max_commutator = 0.0;
  double max_normality_defect = 0.0;
  std::string worst_pair;
};

OperatorFamily make_family(std::string label, std::vector<ChainOperator> operators,
                           double tolerance = 1e-8);

}  // namespace rlab
