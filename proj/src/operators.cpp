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

#include "rlab/operators.hpp"

#include <algorithm>
#include <cmath>

#include "rlab/error.hpp"

namespace rlab {

namespace {

using Triplet = Eigen::Triplet<Scalar>;
using IntTriplet = Eigen::Triplet<long long>;

ChainOperator from_integer_triplets(std::string label, BasisPtr source, BasisPtr target,
                                    const std::vector<IntTriplet>& entries) {
  IntSparseMatrix exact(static_cast<Eigen::Index>(target->size()),
                        static_cast<Eigen::Index>(source->size()));
  exact.setFromTriplets(entries.begin(), entries.end());
  SparseMatrix m = exact.cast<Scalar>();
  return ChainOperator(std::move(label), std::move(source), std::move(target), std::move(m),
                       std::move(exact));
}

// Parity of the permutation sorting `values` (distinct entries).
int sort_sign(const std::vector<VertexId>& values) {
  int inversions = 0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      if (values[a] > values[b]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

void require_dim(const SimplicialComplex& x, int dim, const char* what) {
  if (dim < 0 || dim > x.dimension()) {
    throw Error(ErrorCode::kDimensionOutOfRange,
                std::string(what) + ": dimension " + std::to_string(dim) +
                    " outside [0, " + std::to_string(x.dimension()) + "]");
  }
}

}  // namespace

const char* chain_kind_name(ChainKind kind) {
  switch (kind) {
    case ChainKind::kOrientedFull: return "oriented";
    case ChainKind::kForms: return "forms";
    case ChainKind::kAntiforms: return "antiforms";
  }
  return "?";
}

ChainKind parse_chain_kind(const std::string& name) {
  if (name == "oriented") return ChainKind::kOrientedFull;
  if (name == "forms") return ChainKind::kForms;
  if (name == "antiforms") return ChainKind::kAntiforms;
  throw Error(ErrorCode::kInvalidParams, "unknown chain kind '" + name + "'");
}

BasisPtr ChainBasis::make(const SimplicialComplex& x, int dim, ChainKind kind) {
  require_dim(x, dim, "chain basis");
  auto basis = std::make_shared<ChainBasis>();
  basis->kind_ = kind;
  basis->dim_ = dim;
  basis->cells_ = x.cells(dim);
  const bool both = kind == ChainKind::kOrientedFull && dim > 0;
  basis->weight_ = (kind == ChainKind::kOrientedFull && dim > 0) ? 1.0 : 2.0;
  basis->elements_.reserve(basis->cells_.size() * (both ? 2 : 1));
  for (std::size_t c = 0; c < basis->cells_.size(); ++c) {
    basis->elements_.push_back({c, 1});
    if (both) basis->elements_.push_back({c, -1});
  }
  return basis;
}

std::optional<std::size_t> ChainBasis::index_of(std::size_t cell, int sign) const {
  if (cell >= cells_.size()) return std::nullopt;
  if (kind_ == ChainKind::kOrientedFull && dim_ > 0) return 2 * cell + (sign < 0 ? 1 : 0);
  return cell;
}

Scalar ChainBasis::inner(const DenseVector& phi, const DenseVector& psi) const {
  // Eigen's dot conjugates its first argument.
  return weight_ * psi.dot(phi);
}

bool ChainBasis::same_space(const ChainBasis& other) const {
  // A vertex has one orientation, so all three kinds coincide in dimension 0.
  return (kind_ == other.kind_ || dim_ == 0) && dim_ == other.dim_ && cells_ == other.cells_;
}

ChainOperator::ChainOperator(std::string label, BasisPtr source, BasisPtr target,
                             SparseMatrix matrix, std::optional<IntSparseMatrix> integer)
    : label_(std::move(label)),
      source_(std::move(source)),
      target_(std::move(target)),
      matrix_(std::move(matrix)),
      integer_(std::move(integer)) {
  if (static_cast<std::size_t>(matrix_.rows()) != target_->size() ||
      static_cast<std::size_t>(matrix_.cols()) != source_->size()) {
    throw Error(ErrorCode::kInvalidParams, "operator '" + label_ + "' does not match its bases");
  }
  matrix_.makeCompressed();
}

ChainOperator ChainOperator::adjoint() const {
  const double scale = target_->weight() / source_->weight();
  SparseMatrix adj = SparseMatrix(matrix_.adjoint()) * Scalar(scale);
  std::optional<IntSparseMatrix> exact;
  if (integer_ && scale == 1.0) exact = IntSparseMatrix(integer_->transpose());
  return ChainOperator(label_ + "*", target_, source_, std::move(adj), std::move(exact));
}

ChainOperator ChainOperator::compose(const ChainOperator& rhs, std::string label) const {
  if (!source_->same_space(rhs.target())) {
    throw Error(ErrorCode::kInvalidParams, "cannot compose '" + label_ + "' after '" +
                                               rhs.label_ + "': spaces differ");
  }
  std::optional<IntSparseMatrix> exact;
  if (integer_ && rhs.integer_) exact = IntSparseMatrix(*integer_ * *rhs.integer_);
  if (label.empty()) label = label_ + "∘" + rhs.label_;
  return ChainOperator(std::move(label), rhs.source_, target_, SparseMatrix(matrix_ * rhs.matrix_),
                       std::move(exact));
}

ChainOperator ChainOperator::plus(const ChainOperator& rhs, std::string label) const {
  if (!source_->same_space(rhs.source()) || !target_->same_space(rhs.target())) {
    throw Error(ErrorCode::kInvalidParams, "cannot add operators on different spaces");
  }
  std::optional<IntSparseMatrix> exact;
  if (integer_ && rhs.integer_) exact = IntSparseMatrix(*integer_ + *rhs.integer_);
  if (label.empty()) label = label_ + "+" + rhs.label_;
  return ChainOperator(std::move(label), source_, target_, SparseMatrix(matrix_ + rhs.matrix_),
                       std::move(exact));
}

ChainOperator ChainOperator::scaled(Scalar s, std::string label) const {
  if (label.empty()) label = label_;
  return ChainOperator(std::move(label), source_, target_, SparseMatrix(matrix_ * s));
}

ChainOperator ChainOperator::relabeled(std::string label) const {
  ChainOperator copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

double max_abs(const SparseMatrix& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

ChainOperator boundary(const SimplicialComplex& x, int top_dim) {
  if (top_dim < 1 || top_dim > x.dimension()) {
    throw Error(ErrorCode::kDimensionOutOfRange,
                "boundary of " + std::to_string(top_dim) + "-chains on a " +
                    std::to_string(x.dimension()) + "-dimensional complex");
  }
  auto source = ChainBasis::make(x, top_dim, ChainKind::kForms);
  auto target = ChainBasis::make(x, top_dim - 1, ChainKind::kForms);
  std::vector<IntTriplet> entries;
  const auto& cells = x.cells(top_dim);
  for (std::size_t s = 0; s < cells.size(); ++s) {
    for (std::size_t p = 0; p < cells[s].size(); ++p) {
      const auto row = x.index_of(cells[s].without(p));
      entries.emplace_back(static_cast<int>(row), static_cast<int>(s), p % 2 == 0 ? 1 : -1);
    }
  }
  return from_integer_triplets("boundary" + std::to_string(top_dim), source, target, entries);
}

ChainOperator coboundary(const SimplicialComplex& x, int dim) {
  if (dim < 0 || dim + 1 > x.dimension()) {
    throw Error(ErrorCode::kDimensionOutOfRange,
                "coboundary of " + std::to_string(dim) + "-chains on a " +
                    std::to_string(x.dimension()) + "-dimensional complex");
  }
  auto source = ChainBasis::make(x, dim, ChainKind::kForms);
  auto target = ChainBasis::make(x, dim + 1, ChainKind::kForms);
  std::vector<IntTriplet> entries;
  const auto& cells = x.cells(dim + 1);
  for (std::size_t s = 0; s < cells.size(); ++s) {
    for (std::size_t p = 0; p < cells[s].size(); ++p) {
      const auto col = x.index_of(cells[s].without(p));
      entries.emplace_back(static_cast<int>(s), static_cast<int>(col), p % 2 == 0 ? 1 : -1);
    }
  }
  return from_integer_triplets("coboundary" + std::to_string(dim), source, target, entries);
}

LaplacianVariant parse_laplacian_variant(const std::string& name) {
  if (name == "up") return LaplacianVariant::kUp;
  if (name == "down") return LaplacianVariant::kDown;
  if (name == "total") return LaplacianVariant::kTotal;
  throw Error(ErrorCode::kInvalidParams, "unknown Laplacian variant '" + name + "'");
}

ChainOperator laplacian(const SimplicialComplex& x, int dim, LaplacianVariant variant) {
  require_dim(x, dim, "laplacian");
  auto basis = ChainBasis::make(x, dim, ChainKind::kForms);
  const auto n = static_cast<Eigen::Index>(basis->size());
  const ChainOperator zero("zero", basis, basis, SparseMatrix(n, n), IntSparseMatrix(n, n));
  auto up = [&] {
    if (dim + 1 > x.dimension()) return zero;
    return boundary(x, dim + 1).compose(coboundary(x, dim));
  };
  auto down = [&] {
    if (dim == 0) return zero;
    return coboundary(x, dim - 1).compose(boundary(x, dim));
  };
  const std::string suffix = std::to_string(dim);
  switch (variant) {
    case LaplacianVariant::kUp: return up().relabeled("laplacian_up" + suffix);
    case LaplacianVariant::kDown: return down().relabeled("laplacian_down" + suffix);
    case LaplacianVariant::kTotal: return up().plus(down(), "laplacian" + suffix);
  }
  return zero;
}

ChainOperator adjacency(const SimplicialComplex& x, int i, int j) {
  if (i < 0 || j <= i || j > 2 * i + 1) {
    throw Error(ErrorCode::kIndexConstraintViolated,
                "a_{" + std::to_string(i) + ";" + std::to_string(j) + "} needs 0 <= i < j <= 2i+1");
  }
  require_dim(x, j, "adjacency");
  auto basis = ChainBasis::make(x, i, ChainKind::kAntiforms);
  const auto& cells = x.cells(i);
  const std::size_t overlap = static_cast<std::size_t>(2 * i + 1 - j);
  std::vector<IntTriplet> entries;
  for (std::size_t a = 0; a < cells.size(); ++a) {
    const Cell& c = cells[a];
    for (CellRef r : x.star(c[0])) {
      if (r.dim != j) continue;
      const Cell& z = x.cell(r);
      if (!c.is_subset_of(z)) continue;
      std::vector<VertexId> outside;
      std::set_difference(z.vertices().begin(), z.vertices().end(), c.vertices().begin(),
                          c.vertices().end(), std::back_inserter(outside));
      // y = (z \ c) ∪ S for every S ⊆ c with |S| = overlap.
      const std::uint32_t subsets = 1u << c.size();
      for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != overlap) continue;
        std::vector<VertexId> ys = outside;
        for (std::size_t b = 0; b < c.size(); ++b) {
          if (mask & (1u << b)) ys.push_back(c[b]);
        }
        const auto col = x.index_of(Cell::from_vertices(std::move(ys)));
        entries.emplace_back(static_cast<int>(a), static_cast<int>(col), 1);
      }
    }
  }
  return from_integer_triplets("adjacency" + std::to_string(i) + ";" + std::to_string(j), basis,
                               basis, entries);
}

ChainOperator face_adjacency(const SimplicialComplex& x, int i) {
  if (i < 1) throw Error(ErrorCode::kDimensionOutOfRange, "face adjacency needs i >= 1");
  require_dim(x, i, "face adjacency");
  auto basis = ChainBasis::make(x, i, ChainKind::kAntiforms);
  const auto& cells = x.cells(i);
  std::vector<IntTriplet> entries;
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t p = 0; p < cells[a].size(); ++p) {
      const auto face = x.index_of(cells[a].without(p));
      for (std::size_t b : x.cofaces(i - 1, face)) {
        if (b != a) entries.emplace_back(static_cast<int>(a), static_cast<int>(b), 1);
      }
    }
  }
  return from_integer_triplets("face_adjacency" + std::to_string(i), basis, basis, entries);
}

ChainOperator pushforward(std::span<const VertexId> f, const SimplicialComplex& x,
                          const SimplicialComplex& y, int dim, ChainKind kind) {
  auto cover = check_cover_map(f, x, y);
  if (!cover) throw Error(ErrorCode::kNotACover, cover.reason);
  auto source = ChainBasis::make(x, dim, kind);
  auto target = ChainBasis::make(y, dim, kind);
  std::vector<IntTriplet> entries;
  for (std::size_t k = 0; k < source->size(); ++k) {
    const OrientedCell& e = source->element(k);
    const Cell& c = source->cell_of(k);
    std::vector<VertexId> image;
    for (VertexId v : c.vertices()) image.push_back(f[v]);
    const int parity = sort_sign(image);
    const auto cell = y.index_of(Cell::from_vertices(image));
    int coefficient = 1;
    int sign = 1;
    switch (kind) {
      case ChainKind::kForms: coefficient = parity * e.sign; break;
      case ChainKind::kAntiforms: break;
      case ChainKind::kOrientedFull: sign = parity * e.sign; break;
    }
    const auto row = *target->index_of(cell, sign);
    entries.emplace_back(static_cast<int>(row), static_cast<int>(k), coefficient);
  }
  return from_integer_triplets("pushforward" + std::to_string(dim), source, target, entries);
}

ChainOperator oriented_embedding(const SimplicialComplex& x, int dim, ChainKind kind) {
  if (kind == ChainKind::kOrientedFull) {
    throw Error(ErrorCode::kInvalidParams, "embedding source must be forms or antiforms");
  }
  auto source = ChainBasis::make(x, dim, kind);
  auto target = ChainBasis::make(x, dim, ChainKind::kOrientedFull);
  std::vector<IntTriplet> entries;
  for (std::size_t c = 0; c < source->size(); ++c) {
    entries.emplace_back(static_cast<int>(*target->index_of(c, 1)), static_cast<int>(c), 1);
    if (dim > 0) {
      entries.emplace_back(static_cast<int>(*target->index_of(c, -1)), static_cast<int>(c),
                           kind == ChainKind::kForms ? -1 : 1);
    }
  }
  return from_integer_triplets(std::string("embed_") + chain_kind_name(kind), source, target,
                               entries);
}

ChainOperator oriented_direct_sum(const SimplicialComplex& x, const ChainOperator& on_antiforms,
                                  const ChainOperator& on_forms) {
  const int dim = on_forms.source().dim();
  if (dim < 1) {
    throw Error(ErrorCode::kDimensionOutOfRange,
                "in dimension 0 the three chain spaces coincide; no direct sum");
  }
  const auto plus = oriented_embedding(x, dim, ChainKind::kAntiforms);
  const auto minus = oriented_embedding(x, dim, ChainKind::kForms);
  if (!on_antiforms.is_square() || !on_antiforms.source().same_space(plus.source()) ||
      !on_forms.is_square() || !on_forms.source().same_space(minus.source())) {
    throw Error(ErrorCode::kInvalidParams, "direct sum summands must act on Ω^+ and Ω^-");
  }
  const auto a = plus.compose(on_antiforms).compose(plus.adjoint());
  const auto b = minus.compose(on_forms).compose(minus.adjoint());
  return a.plus(b, on_antiforms.label() + "⊕" + on_forms.label());
}

NaturalityReport verify_naturality(const OperatorConstructor& make, std::span<const VertexId> f,
                                   const SimplicialComplex& x, const SimplicialComplex& y,
                                   double tolerance) {
  const ChainOperator ax = make(x);
  const ChainOperator ay = make(y);
  const auto push_src =
      pushforward(f, x, y, ax.source().dim(), ax.source().kind());
  const auto push_tgt =
      pushforward(f, x, y, ax.target().dim(), ax.target().kind());
  const SparseMatrix lhs = push_tgt.matrix() * ax.matrix();
  const SparseMatrix rhs = ay.matrix() * push_src.matrix();
  NaturalityReport report;
  report.defect = max_abs(SparseMatrix(lhs - rhs));
  report.natural = report.defect <= tolerance;
  return report;
}

OperatorFamily make_family(std::string label, std::vector<ChainOperator> operators,
                           double tolerance) {
  OperatorFamily family;
  family.label = std::move(label);
  if (operators.empty()) throw Error(ErrorCode::kInvalidParams, "empty operator family");
  for (const auto& op : operators) {
    if (!op.is_square() || !op.source().same_space(operators.front().source())) {
      throw Error(ErrorCode::kInvalidParams, "family operators must share one basis");
    }
  }
  std::vector<SparseMatrix> adjoints;
  for (const auto& op : operators) adjoints.push_back(op.adjoint().matrix());
  for (std::size_t a = 0; a < operators.size(); ++a) {
    const auto& m = operators[a].matrix();
    const double defect = max_abs(SparseMatrix(m * adjoints[a] - adjoints[a] * m));
    family.max_normality_defect = std::max(family.max_normality_defect, defect);
    for (std::size_t b = a + 1; b < operators.size(); ++b) {
      const auto& n = operators[b].matrix();
      const double c = max_abs(SparseMatrix(m * n - n * m));
      if (c > family.max_commutator) {
        family.max_commutator = c;
        family.worst_pair = operators[a].label() + "," + operators[b].label();
      }
    }
  }
  family.operators = std::move(operators);
  family.verified = true;
  family.commuting = family.max_commutator <= tolerance;
  family.normal = family.max_normality_defect <= tolerance;
  return family;
}

}  // namespace rlab
