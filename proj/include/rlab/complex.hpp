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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rlab {

using VertexId = std::uint32_t;

/// A finite nonempty set of vertices, stored strictly sorted.
class Cell {
 public:
  Cell() = default;
  Cell(std::initializer_list<VertexId> vertices);

  /// Sorts the input; throws MalformedCell on repeated vertices or empty input.
  static Cell from_vertices(std::vector<VertexId> vertices);

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }

  bool contains(VertexId v) const;
  bool is_subset_of(const Cell& other) const;
  Cell united(const Cell& other) const;
  bool intersects(const Cell& other) const;
  /// The cell with the vertex at `position` removed.
  Cell without(std::size_t position) const;

  auto operator<=>(const Cell&) const = default;
  bool operator==(const Cell&) const = default;

 private:
  std::vector<VertexId> vertices_;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept;
};

std::string to_string(const Cell& c);

struct CellRef {
  int dim = 0;
  std::size_t index = 0;
  auto operator<=>(const CellRef&) const = default;
};

struct BuildOptions {
  // Disjoint unions are only built internally for direct-sum checks.
  bool require_connected = true;
};

/// Finite simplicial complex with per-dimension cell lists (lexicographically
/// sorted, so indices are reproducible), immediate coface lists, vertex stars
/// and vertex adjacency. Immutable after construction.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Downward closure of `maximal_cells`. Vertex ids must be exactly 0..n-1.
  static SimplicialComplex build(const std::vector<std::vector<VertexId>>& maximal_cells,
                                 BuildOptions options = {});
  static SimplicialComplex build(const std::vector<Cell>& cells, BuildOptions options = {});

  int dimension() const noexcept { return static_cast<int>(cells_.size()) - 1; }
  std::size_t num_vertices() const noexcept { return cells_.empty() ? 0 : cells_[0].size(); }
  std::size_t num_cells(int dim) const;
  std::size_t total_cells() const;

  const std::vector<Cell>& cells(int dim) const;
  const Cell& cell(int dim, std::size_t index) const { return cells_.at(dim).at(index); }
  const Cell& cell(CellRef ref) const { return cell(ref.dim, ref.index); }

  std::optional<std::size_t> find(const Cell& c) const;
  /// Throws CellNotFound.
  std::size_t index_of(const Cell& c) const;
  bool contains(const Cell& c) const { return find(c).has_value(); }

  /// Indices of the (dim+1)-cells containing cell (dim, index).
  const std::vector<std::size_t>& cofaces(int dim, std::size_t index) const;
  /// All cells containing v, ordered by (dim, index).
  const std::vector<CellRef>& star(VertexId v) const { return stars_.at(v); }
  const std::vector<VertexId>& neighbors(VertexId v) const { return neighbors_.at(v); }
  std::size_t degree(VertexId v) const { return neighbors_.at(v).size(); }

  std::vector<Cell> maximal_cells() const;
  bool is_connected() const;

 private:
  void index_cells(BuildOptions options);

  std::vector<std::vector<Cell>> cells_;
  std::vector<std::unordered_map<Cell, std::size_t, CellHash>> lookup_;
  std::vector<std::vector<std::vector<std::size_t>>> cofaces_;
  std::vector<std::vector<CellRef>> stars_;
  std::vector<std::vector<VertexId>> neighbors_;
};

inline constexpr std::size_t kInfiniteDistance = std::numeric_limits<std::size_t>::max();

/// Graph distances in the 1-skeleton from a set of sources, capped at `limit`
/// (vertices farther away get kInfiniteDistance).
std::vector<std::size_t> vertex_distances(const SimplicialComplex& x,
                                          std::span<const VertexId> sources,
                                          std::size_t limit = kInfiniteDistance);

/// Combinatorial distance: the least t admitting cells y_1..y_t with
/// x ⊆ y_1, x' ⊆ y_t and consecutive cells intersecting; dist(x, x) = 0.
std::size_t dist(const SimplicialComplex& x, const Cell& a, const Cell& b);

/// All cells within distance n of `center`, ordered by (dim, index).
std::vector<Cell> ball(const SimplicialComplex& x, const Cell& center, std::size_t n);

struct CoverCheck {
  bool ok = false;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

/// `f[v]` is the image of vertex v of `x` in `y`.
CoverCheck check_cover_map(std::span<const VertexId> f, const SimplicialComplex& x,
                           const SimplicialComplex& y);

using Permutation = std::vector<VertexId>;

struct GroupAction {
  std::vector<Permutation> generators;
};

inline constexpr std::size_t kDefaultMaxGroupOrder = 1'000'000;

/// Breadth-first closure of the generators. Throws GroupTooLarge past the cap
/// and InvalidParams when a generator is not an automorphism of `x`.
std::vector<Permutation> enumerate_group(const SimplicialComplex& x, const GroupAction& action,
                                         std::size_t max_order = kDefaultMaxGroupOrder);

struct AdmissibilityOptions {
  std::size_t max_order = kDefaultMaxGroupOrder;
  // When set, only these vertices are tested (e.g. the sound interior of a
  // generated ball); everything else is reported as unchecked.
  std::optional<std::vector<bool>> checked_vertices;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::size_t group_order = 1;
  std::size_t vertices_checked = 0;
  std::string reason;
};

/// dist(v, γv) > 2 for every non-identity γ and every (checked) vertex v.
AdmissibilityReport is_admissible_subgroup(const SimplicialComplex& x, const GroupAction& action,
                                           const AdmissibilityOptions& options = {});

struct QuotientResult {
  SimplicialComplex quotient;
  std::vector<VertexId> projection;
  /// orbits[k] lists the cover vertices over quotient vertex k, sorted.
  std::vector<std::vector<VertexId>> orbits;
  std::size_t group_order = 1;
};

/// Throws NotAdmissible when the action violates C1 or C2.
QuotientResult quotient_by_action(const SimplicialComplex& x, const GroupAction& action,
                                  std::size_t max_order = kDefaultMaxGroupOrder);

/// Vertex ids of `b` are shifted by |V(a)|. The result is not connected.
SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b);

}  // namespace rlab
