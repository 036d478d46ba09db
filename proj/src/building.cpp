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

#include "rlab/building.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "rlab/error.hpp"

namespace rlab {

// ---------------------------------------------------------------------------
// Finite fields

std::optional<int> prime_power_base(int q) {
  if (q < 2) return std::nullopt;
  int p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  int r = q;
  while (r % p == 0) r /= p;
  if (r != 1) return std::nullopt;
  return p;
}

namespace {

using Poly = std::vector<int>;  // coefficients mod p, lowest degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int mod_inverse(int a, int p) {
  for (int x = 1; x < p; ++x) {
    if ((a * x) % p == 1) return x;
  }
  return 0;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int lead_inv = mod_inverse(m.back(), p);
  while (a.size() >= m.size()) {
    const int factor = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t k = 0; k < m.size(); ++k) {
      a[shift + k] = ((a[shift + k] - factor * m[k]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly digits(int value, int p, int len) {
  Poly out(static_cast<std::size_t>(len), 0);
  for (int k = 0; k < len; ++k) {
    out[k] = value % p;
    value /= p;
  }
  return out;
}

bool is_irreducible(const Poly& f, int p) {
  const int m = static_cast<int>(f.size()) - 1;
  for (int deg = 1; deg <= m / 2; ++deg) {
    int count = 1;
    for (int k = 0; k < deg; ++k) count *= p;
    for (int low = 0; low < count; ++low) {
      Poly g = digits(low, p, deg);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

GaloisField::GaloisField(int q) : q_(q) {
  auto base = prime_power_base(q);
  if (!base) throw Error(ErrorCode::kInvalidParams, "q = " + std::to_string(q) + " is not a prime power");
  if (q > 256) throw Error(ErrorCode::kInvalidParams, "q > 256 is not supported");
  p_ = *base;
  int m = 0;
  for (int r = q; r > 1; r /= p_) ++m;

  Poly modulus;
  if (m > 1) {
    for (int low = 0; low < q; ++low) {
      Poly f = digits(low, p_, m);
      f.push_back(1);
      if (f[0] != 0 && is_irreducible(f, p_)) {
        modulus = f;
        break;
      }
    }
  }
  const auto n = static_cast<std::size_t>(q);
  add_.assign(n * n, 0);
  mul_.assign(n * n, 0);
  neg_.assign(n, 0);
  inv_.assign(n, 0);
  for (int a = 0; a < q; ++a) {
    const Poly da = digits(a, p_, m);
    for (int b = 0; b < q; ++b) {
      const Poly db = digits(b, p_, m);
      int sum = 0;
      for (int k = m - 1; k >= 0; --k) sum = sum * p_ + (da[k] + db[k]) % p_;
      add_[a * q + b] = sum;
      Poly prod(static_cast<std::size_t>(2 * m), 0);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      }
      if (m > 1) prod = poly_mod(prod, modulus, p_);
      prod.resize(static_cast<std::size_t>(m), 0);
      int value = 0;
      for (int k = m - 1; k >= 0; --k) value = value * p_ + prod[k];
      mul_[a * q + b] = value;
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (add_[a * q + b] == 0) neg_[a] = b;
      if (mul_[a * q + b] == 1) inv_[a] = b;
    }
  }
}

int GaloisField::inv(int a) const {
  if (a == 0) throw Error(ErrorCode::kNumerical, "division by zero in GF(q)");
  return inv_[a];
}

long long gaussian_binomial(int n, int k, long long q) {
  if (k < 0 || k > n) return 0;
  long long num = 1;
  long long den = 1;
  for (int i = 0; i < k; ++i) {
    long long a = 1;
    long long b = 1;
    for (int e = 0; e < n - i; ++e) a *= q;
    for (int e = 0; e < i + 1; ++e) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

void validate(const LocalFieldParams& params) {
  if (!prime_power_base(params.q)) {
    throw Error(ErrorCode::kInvalidParams, "q = " + std::to_string(params.q) + " is not a prime power");
  }
  if (params.d < 2 || params.d > 8) throw Error(ErrorCode::kInvalidParams, "d must lie in [2, 8]");
  if (params.division_degree < 1) throw Error(ErrorCode::kInvalidParams, "division degree must be >= 1");
  if (params.division_degree > 1 && params.d != 2) {
    throw Error(ErrorCode::kInvalidParams, "division algebras are only supported for d = 2");
  }
}

// ---------------------------------------------------------------------------
// Truncated power series over GF(q) and Hermite normal forms

namespace {

using Series = std::vector<int>;
using SeriesMatrix = std::vector<std::vector<Series>>;  // [row][col]

class SeriesRing {
 public:
  SeriesRing(const GaloisField& field, int precision) : f_(field), prec_(precision) {}

  int precision() const { return prec_; }
  Series zero() const { return Series(static_cast<std::size_t>(prec_), 0); }
  Series monomial(int exponent, int coeff = 1) const {
    Series s = zero();
    if (exponent < prec_) s[exponent] = coeff;
    return s;
  }

  int valuation(const Series& s) const {
    for (int k = 0; k < prec_; ++k) {
      if (s[k] != 0) return k;
    }
    return prec_;
  }

  Series mul(const Series& a, const Series& b) const {
    Series out = zero();
    for (int i = 0; i < prec_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j < prec_; ++j) {
        if (b[j] != 0) out[i + j] = f_.add(out[i + j], f_.mul(a[i], b[j]));
      }
    }
    return out;
  }

  // y -= a * x
  void sub_mul(Series& y, const Series& a, const Series& x) const {
    const Series ax = mul(a, x);
    for (int k = 0; k < prec_; ++k) y[k] = f_.sub(y[k], ax[k]);
  }

  Series inverse_unit(const Series& u) const {
    Series inv = zero();
    const int c0 = f_.inv(u[0]);
    inv[0] = c0;
    for (int n = 1; n < prec_; ++n) {
      int acc = 0;
      for (int k = 1; k <= n; ++k) acc = f_.add(acc, f_.mul(u[k], inv[n - k]));
      inv[n] = f_.neg(f_.mul(acc, c0));
    }
    return inv;
  }

  Series shift_down(const Series& s, int k) const {
    Series out = zero();
    for (int i = k; i < prec_; ++i) out[i - k] = s[i];
    return out;
  }

 private:
  const GaloisField& f_;
  int prec_;
};

LatticeClass hermite_normal_form(SeriesMatrix b, const SeriesRing& ring, int valuation_offset) {
  const int d = static_cast<int>(b.size());
  const int prec = ring.precision();
  for (int r = 0; r < d; ++r) {
    int best = r;
    int best_val = ring.valuation(b[r][r]);
    for (int c = r + 1; c < d; ++c) {
      const int v = ring.valuation(b[r][c]);
      if (v < best_val) {
        best_val = v;
        best = c;
      }
    }
    if (best_val >= prec) throw Error(ErrorCode::kSingularMatrix, "lattice matrix is singular");
    if (best != r) {
      for (int i = 0; i < d; ++i) std::swap(b[i][r], b[i][best]);
    }
    const Series unit_inv = ring.inverse_unit(ring.shift_down(b[r][r], best_val));
    for (int i = 0; i < d; ++i) b[i][r] = ring.mul(b[i][r], unit_inv);
    for (int c = 0; c < d; ++c) {
      if (c == r) continue;
      // Columns right of the pivot are cleared; columns left of it are reduced
      // modulo t^pivot.
      const Series factor = ring.shift_down(b[r][c], best_val);
      if (ring.valuation(factor) >= prec) continue;
      for (int i = 0; i < d; ++i) ring.sub_mul(b[i][c], factor, b[i][r]);
    }
  }
  LatticeClass out;
  out.d = d;
  out.valuation_offset = valuation_offset;
  for (int i = 0; i < d; ++i) out.pivots.push_back(ring.valuation(b[i][i]));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      for (int k = 0; k < out.pivots[i]; ++k) out.lower.push_back(b[i][j][k]);
    }
  }
  return out;
}

SeriesMatrix lattice_matrix(const LatticeClass& lattice, const SeriesRing& ring) {
  const int d = lattice.d;
  SeriesMatrix b(d, std::vector<Series>(d, ring.zero()));
  std::size_t pos = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      for (int k = 0; k < lattice.pivots[i]; ++k) {
        if (k < ring.precision()) b[i][j][k] = lattice.lower[pos];
        ++pos;
      }
    }
    b[i][i] = ring.monomial(lattice.pivots[i]);
  }
  return b;
}

// Proper nonzero subspace of F_q^d in reduced row echelon form.
struct Subspace {
  std::vector<std::vector<int>> rows;
  std::vector<int> pivots;
};

std::vector<Subspace> proper_subspaces(const GaloisField& field, int d) {
  std::vector<Subspace> out;
  const int q = field.order();
  for (int k = 1; k < d; ++k) {
    std::vector<bool> select(static_cast<std::size_t>(d), false);
    std::fill(select.begin(), select.begin() + k, true);
    do {
      std::vector<int> pivots;
      for (int c = 0; c < d; ++c) {
        if (select[c]) pivots.push_back(c);
      }
      // Free slots: row r, column c > pivots[r], c not a pivot column.
      std::vector<std::pair<int, int>> free;
      for (int r = 0; r < k; ++r) {
        for (int c = pivots[r] + 1; c < d; ++c) {
          if (!select[c]) free.emplace_back(r, c);
        }
      }
      std::vector<int> values(free.size(), 0);
      while (true) {
        Subspace s;
        s.pivots = pivots;
        s.rows.assign(k, std::vector<int>(static_cast<std::size_t>(d), 0));
        for (int r = 0; r < k; ++r) s.rows[r][pivots[r]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f) s.rows[free[f].first][free[f].second] = values[f];
        out.push_back(std::move(s));
        std::size_t pos = 0;
        while (pos < values.size() && ++values[pos] == q) values[pos++] = 0;
        if (pos == values.size()) break;
      }
    } while (std::prev_permutation(select.begin(), select.end()));
  }
  return out;
}

std::vector<std::pair<LatticeClass, int>> neighbors_with(const LatticeClass& lattice,
                                                         const GaloisField& field, int precision,
                                                         const std::vector<Subspace>& subspaces) {
  const int d = lattice.d;
  const SeriesRing ring(field, precision);
  const SeriesMatrix b = lattice_matrix(lattice, ring);
  std::vector<std::pair<LatticeClass, int>> out;
  out.reserve(subspaces.size());
  for (const Subspace& s : subspaces) {
    const int k = static_cast<int>(s.rows.size());
    // Columns: the subspace basis, then t·e_j for the non-pivot coordinates.
    SeriesMatrix m(d, std::vector<Series>(d, ring.zero()));
    int col = 0;
    for (int r = 0; r < k; ++r, ++col) {
      for (int i = 0; i < d; ++i) m[i][col] = ring.monomial(0, s.rows[r][i]);
    }
    for (int j = 0; j < d; ++j) {
      if (std::find(s.pivots.begin(), s.pivots.end(), j) != s.pivots.end()) continue;
      m[j][col++] = ring.monomial(1);
    }
    SeriesMatrix prod(d, std::vector<Series>(d, ring.zero()));
    int shift = precision;
    for (int i = 0; i < d; ++i) {
      for (int c = 0; c < d; ++c) {
        Series acc = ring.zero();
        for (int l = 0; l < d; ++l) {
          const Series term = ring.mul(b[i][l], m[l][c]);
          for (int e = 0; e < precision; ++e) acc[e] = field.add(acc[e], term[e]);
        }
        shift = std::min(shift, ring.valuation(acc));
        prod[i][c] = std::move(acc);
      }
    }
    const SeriesRing reduced(field, precision - shift);
    for (auto& row : prod) {
      for (auto& entry : row) {
        Series shifted(static_cast<std::size_t>(precision - shift), 0);
        for (int e = shift; e < precision; ++e) shifted[e - shift] = entry[e];
        entry = std::move(shifted);
      }
    }
    out.emplace_back(hermite_normal_form(std::move(prod), reduced, 0), (d - k) % d);
  }
  return out;
}

}  // namespace

int LatticeClass::color() const {
  return std::accumulate(pivots.begin(), pivots.end(), 0) % d;
}

std::vector<int> LatticeClass::entry(int i, int j) const {
  if (j >= i || i >= d) return {};
  std::size_t pos = 0;
  for (int r = 0; r < i; ++r) pos += static_cast<std::size_t>(r) * pivots[r];
  pos += static_cast<std::size_t>(j) * pivots[i];
  return {lower.begin() + static_cast<std::ptrdiff_t>(pos),
          lower.begin() + static_cast<std::ptrdiff_t>(pos + pivots[i])};
}

std::size_t LatticeClassHash::operator()(const LatticeClass& c) const noexcept {
  std::size_t h = static_cast<std::size_t>(c.d);
  auto mix = [&h](int v) { h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int v : c.pivots) mix(v);
  for (int v : c.lower) mix(v);
  return h;
}

LatticeClass canonicalize(const LaurentMatrix& g, const GaloisField& field) {
  const int d = static_cast<int>(g.size());
  if (d == 0) throw Error(ErrorCode::kInvalidParams, "empty lattice matrix");
  int low = std::numeric_limits<int>::max();
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) != d) throw Error(ErrorCode::kInvalidParams, "lattice matrix is not square");
    for (const auto& e : row) {
      for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
        if (e.coeffs[k] < 0 || e.coeffs[k] >= field.order()) {
          throw Error(ErrorCode::kInvalidParams, "coefficient outside GF(q)");
        }
        if (e.coeffs[k] != 0) low = std::min(low, e.low + static_cast<int>(k));
      }
    }
  }
  if (low == std::numeric_limits<int>::max()) throw Error(ErrorCode::kSingularMatrix, "zero matrix");
  // v(det) is at most the sum of the column degrees, which bounds every pivot.
  int degree_sum = 0;
  for (int c = 0; c < d; ++c) {
    int top = 0;
    for (int r = 0; r < d; ++r) {
      const auto& e = g[r][c];
      for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
        if (e.coeffs[k] != 0) top = std::max(top, e.low + static_cast<int>(k) - low);
      }
    }
    degree_sum += top;
  }
  const int precision = degree_sum + 2;
  const SeriesRing ring(field, precision);
  SeriesMatrix b(d, std::vector<Series>(d, ring.zero()));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const auto& e = g[r][c];
      for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
        const int exponent = e.low + static_cast<int>(k) - low;
        if (exponent < precision) b[r][c][exponent] = e.coeffs[k];
      }
    }
  }
  return hermite_normal_form(std::move(b), ring, -low);
}

std::vector<std::pair<LatticeClass, int>> lattice_neighbors(const LatticeClass& lattice,
                                                            const GaloisField& field,
                                                            int precision) {
  return neighbors_with(lattice, field, precision, proper_subspaces(field, lattice.d));
}

// ---------------------------------------------------------------------------
// Colored complexes

int ColoredComplex::edge_color(VertexId from, VertexId to) const {
  const auto e = complex.index_of(Cell{from, to});
  const int c = edge_colors.at(e);
  return from < to ? c : (d - c) % d;
}

ColoredComplex make_colored(SimplicialComplex complex, int d,
                            std::optional<std::vector<int>> vertex_colors,
                            const std::vector<DirectedEdgeColor>& edge_colors) {
  if (d < 2) throw Error(ErrorCode::kInvalidParams, "d must be >= 2");
  auto mod = [d](long long v) { return static_cast<int>(((v % d) + d) % d); };
  const std::size_t n = complex.num_vertices();
  if (vertex_colors) {
    if (vertex_colors->size() != n) {
      throw Error(ErrorCode::kColoringInconsistent, "vertex_colors has wrong length");
    }
    for (int& c : *vertex_colors) c = mod(c);
  }
  const auto& edges = complex.cells(1);
  // given[e][0]: color lower->higher, given[e][1]: higher->lower; -1 unset.
  std::vector<std::array<int, 2>> given(edges.size(), {-1, -1});
  auto edge_name = [&](std::size_t e) {
    return "edge " + std::to_string(e) + " " + to_string(edges[e]);
  };
  for (const auto& ec : edge_colors) {
    if (ec.from == ec.to || ec.from >= n || ec.to >= n) {
      throw Error(ErrorCode::kColoringInconsistent, "colored pair (" + std::to_string(ec.from) +
                                                        "," + std::to_string(ec.to) + ") is not an edge");
    }
    auto e = complex.find(Cell{ec.from, ec.to});
    if (!e) {
      throw Error(ErrorCode::kColoringInconsistent, "colored pair (" + std::to_string(ec.from) +
                                                        "," + std::to_string(ec.to) + ") is not an edge");
    }
    const int slot = ec.from < ec.to ? 0 : 1;
    const int c = mod(ec.color);
    if (given[*e][slot] != -1 && given[*e][slot] != c) {
      throw Error(ErrorCode::kColoringInconsistent, edge_name(*e) + " colored twice");
    }
    given[*e][slot] = c;
  }
  ColoredComplex out;
  out.d = d;
  out.edge_colors.assign(edges.size(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const VertexId u = edges[e][0];
    const VertexId v = edges[e][1];
    int c = -1;
    if (given[e][0] != -1 && given[e][1] != -1 && mod(given[e][0] + given[e][1]) != 0) {
      throw Error(ErrorCode::kColoringInconsistent,
                  edge_name(e) + ": colors " + std::to_string(given[e][0]) + " and " +
                      std::to_string(given[e][1]) + " do not sum to 0 mod " + std::to_string(d));
    }
    if (given[e][0] != -1) {
      c = given[e][0];
    } else if (given[e][1] != -1) {
      c = mod(-given[e][1]);
    } else if (vertex_colors) {
      c = mod((*vertex_colors)[v] - (*vertex_colors)[u]);
    } else if (d == 2) {
      c = 1;
    } else {
      throw Error(ErrorCode::kColoringInconsistent, edge_name(e) + " has no color");
    }
    if (c == 0) throw Error(ErrorCode::kColoringInconsistent, edge_name(e) + " has color 0");
    if (vertex_colors && c != mod((*vertex_colors)[v] - (*vertex_colors)[u])) {
      throw Error(ErrorCode::kColoringInconsistent,
                  edge_name(e) + ": color " + std::to_string(c) +
                      " disagrees with vertex colors " + std::to_string((*vertex_colors)[u]) +
                      " -> " + std::to_string((*vertex_colors)[v]));
    }
    out.edge_colors[e] = c;
  }
  out.complex = std::move(complex);
  out.vertex_colors = std::move(vertex_colors);
  return out;
}

// ---------------------------------------------------------------------------
// Building balls

namespace {

std::vector<Cell> cliques(const std::vector<std::vector<VertexId>>& adjacency, int max_size) {
  std::vector<Cell> out;
  std::vector<VertexId> current;
  std::function<void(const std::vector<VertexId>&)> extend = [&](const std::vector<VertexId>& candidates) {
    out.push_back(Cell::from_vertices(current));
    if (static_cast<int>(current.size()) == max_size) return;
    for (VertexId w : candidates) {
      std::vector<VertexId> next;
      for (VertexId z : candidates) {
        if (z > w && std::binary_search(adjacency[w].begin(), adjacency[w].end(), z)) next.push_back(z);
      }
      current.push_back(w);
      extend(next);
      current.pop_back();
    }
  };
  for (VertexId v = 0; v < adjacency.size(); ++v) {
    std::vector<VertexId> higher;
    for (VertexId w : adjacency[v]) {
      if (w > v) higher.push_back(w);
    }
    current = {v};
    extend(higher);
  }
  return out;
}

BuildingBall tree_ball(const LocalFieldParams& params, int radius, const BallOptions& options) {
  long long k = 1;
  for (int e = 0; e < params.division_degree; ++e) k *= params.q;
  k += 1;
  BuildingBall ball;
  ball.params = params;
  ball.radius = radius;
  ball.distance = {0};
  std::vector<std::vector<VertexId>> cells;
  std::vector<VertexId> level{0};
  for (int depth = 1; depth <= radius; ++depth) {
    std::vector<VertexId> next;
    for (VertexId parent : level) {
      const long long children = depth == 1 ? k : k - 1;
      for (long long c = 0; c < children; ++c) {
        const auto id = static_cast<VertexId>(ball.distance.size());
        if (ball.distance.size() >= options.max_vertices) {
          throw Error(ErrorCode::kBudgetExceeded, "tree ball exceeds vertex budget");
        }
        ball.distance.push_back(static_cast<std::size_t>(depth));
        cells.push_back({parent, id});
        next.push_back(id);
      }
    }
    level = std::move(next);
  }
  if (cells.empty()) cells.push_back({0});
  std::vector<int> colors;
  for (std::size_t dd : ball.distance) colors.push_back(static_cast<int>(dd % 2));
  ball.colored = make_colored(SimplicialComplex::build(cells), 2, colors);
  for (std::size_t dd : ball.distance) ball.frontier.push_back(dd == static_cast<std::size_t>(radius));
  return ball;
}

}  // namespace

BuildingBall building_ball(const LocalFieldParams& params, int radius, BallOptions options) {
  validate(params);
  if (radius < 0) throw Error(ErrorCode::kInvalidParams, "radius must be >= 0");
  if (params.division_degree > 1) return tree_ball(params, radius, options);

  const GaloisField field(params.q);
  const int d = params.d;
  long long degree = 0;
  for (int k = 1; k < d; ++k) degree += gaussian_binomial(d, k, params.q);
  // Crude growth bound; the exact count is checked during the search.
  double estimate = 1.0;
  for (int r = 0; r < radius; ++r) estimate *= static_cast<double>(degree);
  if (estimate > 1000.0 * static_cast<double>(options.max_vertices)) {
    throw Error(ErrorCode::kBudgetExceeded, "ball of radius " + std::to_string(radius) +
                                                " is far beyond the vertex budget");
  }

  const auto subspaces = proper_subspaces(field, d);
  BuildingBall ball;
  ball.params = params;
  ball.radius = radius;
  ball.precision = radius + 3;

  LaurentMatrix identity(d, std::vector<LaurentPolynomial>(d));
  for (int i = 0; i < d; ++i) identity[i][i] = {0, {1}};
  std::unordered_map<LatticeClass, VertexId, LatticeClassHash> ids;
  ball.lattices.push_back(canonicalize(identity, field));
  ball.distance.push_back(0);
  ids.emplace(ball.lattices[0], 0);

  std::vector<std::vector<VertexId>> adjacency(1);
  std::vector<DirectedEdgeColor> colors;
  for (VertexId u = 0; u < ball.lattices.size(); ++u) {
    const bool expand = ball.distance[u] < static_cast<std::size_t>(radius);
    const auto nbrs = neighbors_with(ball.lattices[u], field, ball.precision, subspaces);
    for (const auto& [lattice, color] : nbrs) {
      auto it = ids.find(lattice);
      if (it == ids.end()) {
        if (!expand) continue;
        if (ball.lattices.size() >= options.max_vertices) {
          throw Error(ErrorCode::kBudgetExceeded, "building ball exceeds vertex budget");
        }
        const auto id = static_cast<VertexId>(ball.lattices.size());
        it = ids.emplace(lattice, id).first;
        ball.lattices.push_back(lattice);
        ball.distance.push_back(ball.distance[u] + 1);
        adjacency.emplace_back();
      }
      const VertexId v = it->second;
      if (u < v) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
        colors.push_back({u, v, color});
      } else {
        colors.push_back({u, v, color});
      }
    }
  }
  for (auto& a : adjacency) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::vector<int> vertex_colors;
  for (const auto& l : ball.lattices) vertex_colors.push_back(l.color());
  ball.colored = make_colored(SimplicialComplex::build(cliques(adjacency, d)), d,
                              std::move(vertex_colors), colors);
  for (std::size_t dd : ball.distance) ball.frontier.push_back(dd == static_cast<std::size_t>(radius));
  return ball;
}

// ---------------------------------------------------------------------------
// Hecke operators

HeckeFamily hecke_family(const ColoredComplex& x, const BuildingBall* ball, double tolerance) {
  const int d = x.d;
  const auto& complex = x.complex;
  if (x.edge_colors.size() != complex.num_cells(1)) {
    throw Error(ErrorCode::kColoringInconsistent, "edge color table does not match the complex");
  }
  auto basis = ChainBasis::make(complex, 0, ChainKind::kAntiforms);
  std::vector<std::vector<Eigen::Triplet<long long>>> entries(static_cast<std::size_t>(d));
  const auto& edges = complex.cells(1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int c = x.edge_colors[e];
    if (c <= 0 || c >= d) throw Error(ErrorCode::kColoringInconsistent, "edge " + to_string(edges[e]) + " has invalid color");
    const auto u = static_cast<int>(edges[e][0]);
    const auto v = static_cast<int>(edges[e][1]);
    entries[c].emplace_back(u, v, 1);
    entries[d - c].emplace_back(v, u, 1);
  }
  HeckeFamily family;
  family.d = d;
  const auto n = static_cast<Eigen::Index>(basis->size());
  for (int i = 1; i < d; ++i) {
    IntSparseMatrix exact(n, n);
    exact.setFromTriplets(entries[i].begin(), entries[i].end());
    SparseMatrix m = exact.cast<Scalar>();
    family.operators.emplace_back("hecke" + std::to_string(i), basis, basis, std::move(m), std::move(exact));
  }
  family.adjoint_pairing = true;
  for (int i = 1; i < d; ++i) {
    const IntSparseMatrix diff =
        IntSparseMatrix(family.operators[i - 1].integer_matrix()->transpose()) -
        *family.operators[d - i - 1].integer_matrix();
    for (int k = 0; k < diff.outerSize(); ++k) {
      for (IntSparseMatrix::InnerIterator it(diff, k); it; ++it) {
        if (it.value() != 0) family.adjoint_pairing = false;
      }
    }
  }
  std::vector<bool> rows(static_cast<std::size_t>(n), true);
  if (ball != nullptr) {
    family.boundary_affected = std::any_of(ball->frontier.begin(), ball->frontier.end(), [](bool b) { return b; });
    for (VertexId v = 0; v < rows.size(); ++v) rows[v] = ball->is_interior(v, 2);
  }
  family.rows_checked = static_cast<std::size_t>(std::count(rows.begin(), rows.end(), true));
  for (int i = 0; i + 1 < d; ++i) {
    for (int j = i + 1; j + 1 < d; ++j) {
      const auto& a = family.operators[i].matrix();
      const auto& b = family.operators[j].matrix();
      const SparseMatrix comm = a * b - b * a;
      for (int r = 0; r < comm.outerSize(); ++r) {
        if (!rows[r]) continue;
        for (SparseMatrix::InnerIterator it(comm, r); it; ++it) {
          family.max_commutator = std::max(family.max_commutator, std::abs(it.value()));
        }
      }
    }
  }
  family.commuting = family.max_commutator <= tolerance;
  return family;
}

}  // namespace rlab
