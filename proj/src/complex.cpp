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

#include "rlab/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "rlab/error.hpp"

namespace rlab {

Cell::Cell(std::initializer_list<VertexId> vertices) : Cell(from_vertices(vertices)) {}

Cell Cell::from_vertices(std::vector<VertexId> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kMalformedCell, "empty cell");
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw Error(ErrorCode::kMalformedCell, "repeated vertex in cell");
  }
  Cell c;
  c.vertices_ = std::move(vertices);
  return c;
}

bool Cell::contains(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Cell::is_subset_of(const Cell& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

Cell Cell::united(const Cell& other) const {
  Cell c;
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                 other.vertices_.end(), std::back_inserter(c.vertices_));
  return c;
}

bool Cell::intersects(const Cell& other) const {
  auto i = vertices_.begin();
  auto j = other.vertices_.begin();
  while (i != vertices_.end() && j != other.vertices_.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

Cell Cell::without(std::size_t position) const {
  Cell c;
  c.vertices_ = vertices_;
  c.vertices_.erase(c.vertices_.begin() + static_cast<std::ptrdiff_t>(position));
  return c;
}

std::size_t CellHash::operator()(const Cell& c) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (VertexId v : c.vertices()) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string to_string(const Cell& c) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << '}';
  return os.str();
}

SimplicialComplex SimplicialComplex::build(const std::vector<std::vector<VertexId>>& maximal_cells,
                                           BuildOptions options) {
  std::vector<Cell> cells;
  cells.reserve(maximal_cells.size());
  for (const auto& m : maximal_cells) cells.push_back(Cell::from_vertices(m));
  return build(cells, options);
}

SimplicialComplex SimplicialComplex::build(const std::vector<Cell>& maximal_cells,
                                           BuildOptions options) {
  if (maximal_cells.empty()) throw Error(ErrorCode::kInvalidParams, "no cells given");
  std::vector<std::unordered_set<Cell, CellHash>> closure;
  for (const Cell& m : maximal_cells) {
    if (m.size() == 0) throw Error(ErrorCode::kMalformedCell, "empty cell");
    if (m.size() > 20) throw Error(ErrorCode::kInvalidParams, "cell too large: " + to_string(m));
    if (closure.size() < m.size()) closure.resize(m.size());
    if (closure[m.size() - 1].contains(m)) continue;
    const std::uint32_t subsets = 1u << m.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      std::vector<VertexId> vs;
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (mask & (1u << b)) vs.push_back(m[b]);
      }
      Cell face = Cell::from_vertices(std::move(vs));
      closure[face.size() - 1].insert(std::move(face));
    }
  }
  SimplicialComplex x;
  x.cells_.resize(closure.size());
  for (std::size_t d = 0; d < closure.size(); ++d) {
    x.cells_[d].assign(closure[d].begin(), closure[d].end());
    std::sort(x.cells_[d].begin(), x.cells_[d].end());
  }
  const auto& verts = x.cells_[0];
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i][0] != i) {
      throw Error(ErrorCode::kInvalidParams, "vertex ids must be contiguous from 0");
    }
  }
  x.index_cells(options);
  return x;
}

void SimplicialComplex::index_cells(BuildOptions options) {
  const std::size_t dims = cells_.size();
  lookup_.assign(dims, {});
  cofaces_.assign(dims, {});
  for (std::size_t d = 0; d < dims; ++d) {
    lookup_[d].reserve(cells_[d].size());
    for (std::size_t i = 0; i < cells_[d].size(); ++i) lookup_[d].emplace(cells_[d][i], i);
    cofaces_[d].assign(cells_[d].size(), {});
  }
  for (std::size_t d = 1; d < dims; ++d) {
    for (std::size_t i = 0; i < cells_[d].size(); ++i) {
      const Cell& c = cells_[d][i];
      for (std::size_t p = 0; p < c.size(); ++p) {
        cofaces_[d - 1][lookup_[d - 1].at(c.without(p))].push_back(i);
      }
    }
  }
  const std::size_t n = num_vertices();
  stars_.assign(n, {});
  neighbors_.assign(n, {});
  for (std::size_t d = 0; d < dims; ++d) {
    for (std::size_t i = 0; i < cells_[d].size(); ++i) {
      for (VertexId v : cells_[d][i].vertices()) stars_[v].push_back({static_cast<int>(d), i});
    }
  }
  if (dims > 1) {
    for (const Cell& e : cells_[1]) {
      neighbors_[e[0]].push_back(e[1]);
      neighbors_[e[1]].push_back(e[0]);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
  }
  if (options.require_connected && !is_connected()) {
    throw Error(ErrorCode::kDisconnectedInput, "complex is not connected");
  }
}

std::size_t SimplicialComplex::num_cells(int dim) const {
  if (dim < 0 || dim > dimension()) return 0;
  return cells_[static_cast<std::size_t>(dim)].size();
}

std::size_t SimplicialComplex::total_cells() const {
  std::size_t total = 0;
  for (const auto& c : cells_) total += c.size();
  return total;
}

const std::vector<Cell>& SimplicialComplex::cells(int dim) const {
  static const std::vector<Cell> kEmpty;
  if (dim < 0 || dim > dimension()) return kEmpty;
  return cells_[static_cast<std::size_t>(dim)];
}

std::optional<std::size_t> SimplicialComplex::find(const Cell& c) const {
  const int d = c.dimension();
  if (d < 0 || d > dimension()) return std::nullopt;
  const auto& table = lookup_[static_cast<std::size_t>(d)];
  auto it = table.find(c);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::index_of(const Cell& c) const {
  auto idx = find(c);
  if (!idx) throw Error(ErrorCode::kCellNotFound, to_string(c));
  return *idx;
}

const std::vector<std::size_t>& SimplicialComplex::cofaces(int dim, std::size_t index) const {
  return cofaces_.at(static_cast<std::size_t>(dim)).at(index);
}

std::vector<Cell> SimplicialComplex::maximal_cells() const {
  std::vector<Cell> out;
  for (int d = 0; d <= dimension(); ++d) {
    for (std::size_t i = 0; i < cells_[d].size(); ++i) {
      if (cofaces_[d][i].empty()) out.push_back(cells_[d][i]);
    }
  }
  return out;
}

bool SimplicialComplex::is_connected() const {
  const std::size_t n = num_vertices();
  if (n == 0) return false;
  const VertexId start = 0;
  auto d = vertex_distances(*this, std::span<const VertexId>(&start, 1));
  return std::none_of(d.begin(), d.end(), [](std::size_t v) { return v == kInfiniteDistance; });
}

std::vector<std::size_t> vertex_distances(const SimplicialComplex& x,
                                          std::span<const VertexId> sources, std::size_t limit) {
  std::vector<std::size_t> d(x.num_vertices(), kInfiniteDistance);
  std::deque<VertexId> queue;
  for (VertexId s : sources) {
    if (d.at(s) != 0) {
      d[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    if (d[u] >= limit) continue;
    for (VertexId w : x.neighbors(u)) {
      if (d[w] == kInfiniteDistance) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return d;
}

namespace {

// Vertices v with c ∪ {v} a cell (this includes the vertices of c).
std::vector<VertexId> extension_vertices(const SimplicialComplex& x, const Cell& c,
                                         std::size_t index) {
  std::vector<VertexId> out = c.vertices();
  if (c.dimension() < x.dimension()) {
    for (std::size_t co : x.cofaces(c.dimension(), index)) {
      for (VertexId v : x.cell(c.dimension() + 1, co).vertices()) {
        if (!c.contains(v)) out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::size_t dist(const SimplicialComplex& x, const Cell& a, const Cell& b) {
  const std::size_t ia = x.index_of(a);
  const std::size_t ib = x.index_of(b);
  if (a == b) return 0;
  if (x.contains(a.united(b))) return 1;
  const auto sa = extension_vertices(x, a, ia);
  const auto sb = extension_vertices(x, b, ib);
  const auto d = vertex_distances(x, sa);
  std::size_t best = kInfiniteDistance;
  for (VertexId w : sb) best = std::min(best, d[w]);
  return best == kInfiniteDistance ? kInfiniteDistance : best + 2;
}

std::vector<Cell> ball(const SimplicialComplex& x, const Cell& center, std::size_t n) {
  const std::size_t ic = x.index_of(center);
  if (n == 0) return {center};
  std::set<CellRef> found;
  found.insert({center.dimension(), ic});
  // Distance 1: faces of cells containing the center.
  auto add_faces = [&](const Cell& z) {
    const std::uint32_t subsets = 1u << z.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      std::vector<VertexId> vs;
      for (std::size_t b = 0; b < z.size(); ++b) {
        if (mask & (1u << b)) vs.push_back(z[b]);
      }
      Cell f = Cell::from_vertices(std::move(vs));
      found.insert({f.dimension(), x.index_of(f)});
    }
  };
  for (CellRef r : x.star(center[0])) {
    const Cell& z = x.cell(r);
    if (center.is_subset_of(z)) add_faces(z);
  }
  if (n >= 2) {
    const auto sources = extension_vertices(x, center, ic);
    const auto d = vertex_distances(x, sources, n - 2);
    for (VertexId w = 0; w < x.num_vertices(); ++w) {
      if (d[w] > n - 2) continue;
      for (CellRef r : x.star(w)) {
        found.insert(r);
        const Cell& z = x.cell(r);
        if (z.size() > 1) {
          const auto pos = static_cast<std::size_t>(
              std::lower_bound(z.vertices().begin(), z.vertices().end(), w) - z.vertices().begin());
          Cell f = z.without(pos);
          found.insert({f.dimension(), x.index_of(f)});
        }
      }
    }
  }
  std::vector<Cell> out;
  out.reserve(found.size());
  for (CellRef r : found) out.push_back(x.cell(r));
  return out;
}

CoverCheck check_cover_map(std::span<const VertexId> f, const SimplicialComplex& x,
                           const SimplicialComplex& y) {
  auto fail = [](std::string why) { return CoverCheck{false, std::move(why)}; };
  if (f.size() != x.num_vertices()) return fail("map size does not match vertex count");
  std::vector<bool> hit(y.num_vertices(), false);
  for (VertexId v = 0; v < f.size(); ++v) {
    if (f[v] >= y.num_vertices()) return fail("vertex " + std::to_string(v) + " maps outside target");
    hit[f[v]] = true;
  }
  for (std::size_t w = 0; w < hit.size(); ++w) {
    if (!hit[w]) return fail("not surjective: vertex " + std::to_string(w) + " has no preimage");
  }
  auto image = [&](const Cell& c) -> std::optional<Cell> {
    std::vector<VertexId> vs;
    vs.reserve(c.size());
    for (VertexId v : c.vertices()) vs.push_back(f[v]);
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return std::nullopt;
    return Cell::from_vertices(std::move(vs));
  };
  for (int d = 0; d <= x.dimension(); ++d) {
    for (const Cell& c : x.cells(d)) {
      auto img = image(c);
      if (!img) return fail("cell " + to_string(c) + " collapses under the map");
      if (!y.contains(*img)) return fail("image of " + to_string(c) + " is not a cell");
    }
  }
  for (VertexId v = 0; v < x.num_vertices(); ++v) {
    const auto& sx = x.star(v);
    const auto& sy = y.star(f[v]);
    if (sx.size() != sy.size()) {
      return fail("star of vertex " + std::to_string(v) + " has " + std::to_string(sx.size()) +
                  " cells but its image star has " + std::to_string(sy.size()));
    }
    std::set<Cell> images;
    for (CellRef r : sx) images.insert(*image(x.cell(r)));
    if (images.size() != sx.size()) {
      return fail("not locally injective at vertex " + std::to_string(v));
    }
  }
  return {true, {}};
}

namespace {

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (VertexId v : p) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

void validate_automorphism(const SimplicialComplex& x, const Permutation& g) {
  const std::size_t n = x.num_vertices();
  if (g.size() != n) throw Error(ErrorCode::kInvalidParams, "generator has wrong length");
  std::vector<bool> seen(n, false);
  for (VertexId v : g) {
    if (v >= n || seen[v]) throw Error(ErrorCode::kInvalidParams, "generator is not a permutation");
    seen[v] = true;
  }
  for (const Cell& c : x.maximal_cells()) {
    std::vector<VertexId> vs;
    for (VertexId v : c.vertices()) vs.push_back(g[v]);
    if (!x.contains(Cell::from_vertices(std::move(vs)))) {
      throw Error(ErrorCode::kInvalidParams,
                  "generator is not an automorphism: image of " + to_string(c) + " is not a cell");
    }
  }
}

}  // namespace

std::vector<Permutation> enumerate_group(const SimplicialComplex& x, const GroupAction& action,
                                         std::size_t max_order) {
  for (const auto& g : action.generators) validate_automorphism(x, g);
  Permutation identity(x.num_vertices());
  std::iota(identity.begin(), identity.end(), VertexId{0});
  std::vector<Permutation> elements{identity};
  std::unordered_set<Permutation, PermutationHash> seen{identity};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : action.generators) {
      Permutation h(identity.size());
      for (std::size_t v = 0; v < h.size(); ++v) h[v] = s[elements[head][v]];
      if (seen.insert(h).second) {
        if (elements.size() >= max_order) {
          throw Error(ErrorCode::kGroupTooLarge,
                      "group exceeds " + std::to_string(max_order) + " elements");
        }
        elements.push_back(std::move(h));
      }
    }
  }
  return elements;
}

AdmissibilityReport is_admissible_subgroup(const SimplicialComplex& x, const GroupAction& action,
                                           const AdmissibilityOptions& options) {
  const auto group = enumerate_group(x, action, options.max_order);
  AdmissibilityReport report;
  report.group_order = group.size();
  const std::size_t n = x.num_vertices();
  std::vector<std::vector<VertexId>> near(n);
  for (VertexId v = 0; v < n; ++v) {
    if (options.checked_vertices && !(*options.checked_vertices)[v]) continue;
    ++report.vertices_checked;
    const auto d = vertex_distances(x, std::span<const VertexId>(&v, 1), 2);
    for (VertexId w = 0; w < n; ++w) {
      if (d[w] <= 2) near[v].push_back(w);
    }
  }
  for (std::size_t k = 1; k < group.size(); ++k) {
    const auto& g = group[k];
    for (VertexId v = 0; v < n; ++v) {
      if (near[v].empty()) continue;
      if (!std::binary_search(near[v].begin(), near[v].end(), g[v])) continue;
      report.admissible = false;
      if (g[v] == v) {
        report.reason = "a non-identity element fixes vertex " + std::to_string(v) + " (C2 fails)";
      } else {
        const auto d = vertex_distances(x, std::span<const VertexId>(&v, 1), 2);
        report.reason = "dist(" + std::to_string(v) + ", " + std::to_string(g[v]) +
                        ") = " + std::to_string(d[g[v]]) + " <= 2";
      }
      return report;
    }
  }
  return report;
}

QuotientResult quotient_by_action(const SimplicialComplex& x, const GroupAction& action,
                                  std::size_t max_order) {
  AdmissibilityOptions opts;
  opts.max_order = max_order;
  const auto report = is_admissible_subgroup(x, action, opts);
  if (!report.admissible) throw Error(ErrorCode::kNotAdmissible, report.reason);
  const auto group = enumerate_group(x, action, max_order);

  const std::size_t n = x.num_vertices();
  constexpr VertexId kUnset = std::numeric_limits<VertexId>::max();
  QuotientResult result;
  result.group_order = group.size();
  result.projection.assign(n, kUnset);
  // Scanning vertices in increasing order labels each orbit by its least vertex.
  for (VertexId v = 0; v < n; ++v) {
    if (result.projection[v] != kUnset) continue;
    const auto id = static_cast<VertexId>(result.orbits.size());
    std::vector<VertexId> orbit;
    for (const auto& g : group) orbit.push_back(g[v]);
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    for (VertexId w : orbit) result.projection[w] = id;
    result.orbits.push_back(std::move(orbit));
  }
  std::set<Cell> images;
  for (const Cell& c : x.maximal_cells()) {
    std::vector<VertexId> vs;
    for (VertexId v : c.vertices()) vs.push_back(result.projection[v]);
    images.insert(Cell::from_vertices(std::move(vs)));
  }
  result.quotient = SimplicialComplex::build(std::vector<Cell>(images.begin(), images.end()));
  if (result.quotient.dimension() != x.dimension()) {
    throw Error(ErrorCode::kNotAdmissible, "quotient dimension differs from cover");
  }
  auto cover = check_cover_map(result.projection, x, result.quotient);
  if (!cover) throw Error(ErrorCode::kNotAdmissible, "projection is not a cover: " + cover.reason);
  return result;
}

SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<Cell> cells = a.maximal_cells();
  const auto shift = static_cast<VertexId>(a.num_vertices());
  for (const Cell& c : b.maximal_cells()) {
    std::vector<VertexId> vs = c.vertices();
    for (auto& v : vs) v += shift;
    cells.push_back(Cell::from_vertices(std::move(vs)));
  }
  return SimplicialComplex::build(cells, BuildOptions{.require_connected = false});
}

}  // namespace rlab
