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

// Acceptance suite. Usage: rlab_acceptance [criterion ...]; with no
// arguments every criterion runs. Prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <array>
#include <optional>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rlab/building.hpp"
#include "rlab/complex.hpp"
#include "rlab/error.hpp"
#include "rlab/generators.hpp"
#include "rlab/io.hpp"
#include "rlab/operators.hpp"
#include "rlab/pipeline.hpp"
#include "rlab/spectra.hpp"

using namespace rlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<ChainOperator> vertex_adjacency(const SimplicialComplex& x) { return {adjacency(x, 0, 1)}; }

std::vector<double> sorted_reals(const SpectrumSet& s) {
  std::vector<double> out;
  for (const auto& p : s.points) out.push_back(p[0].real());
  std::sort(out.begin(), out.end());
  return out;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

bool is_zero(const IntSparseMatrix& m) {
  for (int r = 0; r < m.outerSize(); ++r) {
    for (IntSparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.value() != 0) return false;
    }
  }
  return true;
}

std::string fixture(const std::string& name) { return std::string(RLAB_FIXTURE_DIR) + "/" + name; }

// Colored fixtures shipped with the repository (corrupted files excluded).
std::vector<std::pair<std::string, ColoredComplex>> colored_fixtures() {
  std::vector<std::pair<std::string, ColoredComplex>> out;
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(RLAB_FIXTURE_DIR)) paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    const std::string name = p.filename().string();
    if (p.extension() != ".json" || name.find("group") != std::string::npos ||
        name.find("corrupted") != std::string::npos) {
      continue;
    }
    const ComplexFile file = load_complex(p.string());
    if (file.has_coloring()) out.emplace_back(name, file.colored());
  }
  return out;
}

RamanujanVerdict graph_verdict(const SimplicialComplex& x, int k) {
  const auto colored = make_colored(x, 2, std::nullopt);
  const auto family = vertex_adjacency(x);
  const auto trivial = trivial_spectrum(colored, family).merged(tree_trivial_spectrum(k));
  return ramanujan_verdict(joint_spectrum(family), trivial, ReferenceSpectrum::tree(k), 1e-6);
}

DenseVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  DenseVector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = Scalar(gauss(rng), gauss(rng));
  return v;
}

// 1 ---------------------------------------------------------------------------

Outcome chain_identities() {
  Outcome o;
  std::mt19937_64 rng(20260101);
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const auto x = random_complex(n, 3, 2 + seed % 6, seed);
    for (int i = 0; i + 1 <= x.dimension(); ++i) {
      const auto del = boundary(x, i + 1);
      const auto delta = coboundary(x, i);
      if (i + 2 <= x.dimension()) {
        const IntSparseMatrix dd = *del.integer_matrix() * *boundary(x, i + 2).integer_matrix();
        o.require(is_zero(dd), "boundary squared is nonzero on complex " + std::to_string(seed));
        const IntSparseMatrix cc = *coboundary(x, i + 1).integer_matrix() * *delta.integer_matrix();
        o.require(is_zero(cc), "coboundary squared is nonzero on complex " + std::to_string(seed));
      }
      const DenseVector phi = random_vector(delta.source().size(), rng);
      const DenseVector psi = random_vector(delta.target().size(), rng);
      const DenseVector dphi = delta.matrix() * phi;
      const DenseVector dpsi = del.matrix() * psi;
      const double gap = std::abs(delta.target().inner(dphi, psi) - delta.source().inner(phi, dpsi));
      worst = std::max(worst, gap);
      ++checks;
    }
  }
  o.require(worst <= 1e-12, "adjoint identity off by " + num(worst));
  if (o.pass) o.detail = std::to_string(checks) + " adjoint checks, worst gap " + num(worst);
  return o;
}

// 2 ---------------------------------------------------------------------------

Outcome closed_form_spectra() {
  Outcome o;
  double worst = 0.0;
  auto compare = [&](const SimplicialComplex& x, std::vector<double> expected, const std::string& name) {
    std::sort(expected.begin(), expected.end());
    const double gap = max_gap(sorted_reals(joint_spectrum(vertex_adjacency(x))), expected);
    worst = std::max(worst, gap);
    o.require(gap <= 1e-8, name + " spectrum off by " + num(gap));
    const DenseMatrix lap = laplacian(x, 0).dense();
    const DenseMatrix adj = adjacency(x, 0, 1).dense();
    for (VertexId u = 0; u < x.num_vertices(); ++u) {
      for (VertexId v = 0; v < x.num_vertices(); ++v) {
        const Scalar want = (u == v ? Scalar(static_cast<double>(x.degree(u))) : Scalar(0.0)) - adj(u, v);
        o.require(lap(u, v) == want, name + " Laplacian differs from degree minus adjacency");
      }
    }
  };
  for (std::size_t k : {2, 3, 4}) {
    std::vector<double> expected(k, -1.0);
    expected.push_back(static_cast<double>(k));
    compare(complete_graph(k + 1), expected, "K" + std::to_string(k + 1));
  }
  for (std::size_t n = 3; n <= 64; ++n) {
    std::vector<double> expected;
    for (std::size_t j = 0; j < n; ++j) expected.push_back(2.0 * std::cos(2.0 * std::numbers::pi * j / n));
    compare(cycle_graph(n), expected, "C" + std::to_string(n));
  }
  compare(petersen_graph(), {3, 1, 1, 1, 1, 1, -2, -2, -2, -2}, "Petersen");
  if (o.pass) o.detail = "worst eigenvalue gap " + num(worst);
  return o;
}

// 3 ---------------------------------------------------------------------------

Outcome ramanujan_verdicts() {
  Outcome o;
  o.require(graph_verdict(complete_graph(4), 3).ramanujan, "K4 not Ramanujan");
  o.require(graph_verdict(petersen_graph(), 3).ramanujan, "Petersen not Ramanujan");
  for (std::size_t n = 3; n <= 64; ++n) {
    o.require(graph_verdict(cycle_graph(n), 2).ramanujan, "C" + std::to_string(n) + " not Ramanujan");
  }
  if (!o.pass) return o;
  // Screen seeds of the 2-lift generator for a lift of K4 that violates the
  // tree bound.
  const auto k4 = complete_graph(4);
  const std::uint64_t budget = 3000;
  std::size_t cubes = 0;
  std::size_t others = 0;
  for (std::uint64_t seed = 1; seed <= budget; ++seed) {
    const Lift lift = random_lift(k4, 2, seed);
    const auto v = graph_verdict(lift.cover, 3);
    if (!v.ramanujan) {
      o.detail = "seed " + std::to_string(seed) + " gives a violating 2-lift of K4";
      return o;
    }
    if (girth(lift.cover) == 4 && lift.cover.num_vertices() == 8 && v.points.front().value[0].real() < -2.9) {
      ++cubes;
    } else {
      ++others;
    }
  }
  o.pass = false;
  o.detail = "no violating 2-lift of K4 among " + std::to_string(budget) + " seeds (" + std::to_string(cubes) +
             " cubes, " + std::to_string(others) + " with new eigenvalues within 2*sqrt(2))";
  return o;
}

// 4 ---------------------------------------------------------------------------

Outcome trivial_spectra() {
  Outcome o;
  const auto k33 = colored_bipartite(3, 3);
  const auto t = trivial_spectrum(k33, vertex_adjacency(k33.complex));
  std::vector<double> got;
  for (const auto& p : t.points) got.push_back(p[0].real());
  std::sort(got.begin(), got.end());
  o.require(got == std::vector<double>{-3.0, 3.0}, "K_{3,3} trivial points are not exactly {-3, 3}");
  for (const auto& p : t.points) o.require(p[0].imag() == 0.0, "K_{3,3} trivial point has an imaginary part");

  const auto k777 = complete_tripartite(7);
  const auto hecke = hecke_family(k777).operators;
  const auto t3 = trivial_spectrum(k777, hecke);
  o.require(t3.points.size() == 3, "K_{7,7,7} collapse gives " + std::to_string(t3.points.size()) + " points");
  const Scalar zeta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (int j = 0; j < 3; ++j) {
    const SpectrumTuple want{7.0 * std::pow(zeta, j), 7.0 * std::pow(zeta, 2 * j)};
    o.require(t3.distance(want) <= 1e-10, "missing tuple (7z^" + std::to_string(j) + ", 7z^" + std::to_string(2 * j) + ")");
  }

  std::size_t fixtures = 0;
  for (const auto& [name, x] : colored_fixtures()) {
    const auto family = x.d == 2 ? vertex_adjacency(x.complex) : hecke_family(x).operators;
    const auto trivial = trivial_spectrum(x, family);
    const auto s = joint_spectrum(family);
    for (const auto& p : trivial.points) {
      double best = INFINITY;
      for (const auto& q : s.points) best = std::min(best, tuple_distance(p, q));
      o.require(best <= 1e-8, name + ": trivial point outside the spectrum");
    }
    ++fixtures;
  }
  o.require(fixtures >= 4, "too few colored fixtures found");
  if (o.pass) o.detail = "containment holds on " + std::to_string(fixtures) + " colored fixtures";
  return o;
}

// 5 ---------------------------------------------------------------------------

Outcome building_combinatorics() {
  Outcome o;
  {
    const auto b = building_ball({2, 3, 1}, 2);
    std::size_t interior = 0;
    for (VertexId v = 0; v < b.colored.complex.num_vertices(); ++v) {
      if (!b.is_interior(v)) continue;
      ++interior;
      std::size_t ones = 0;
      std::size_t twos = 0;
      for (VertexId w : b.colored.complex.neighbors(v)) {
        (b.colored.edge_color(v, w) == 1 ? ones : twos) += 1;
      }
      o.require(ones + twos == 14 && ones == 7, "interior vertex " + std::to_string(v) + " has split " +
                                                    std::to_string(ones) + "/" + std::to_string(twos));
    }
    o.require(interior > 1, "no interior vertices");
  }
  for (int q : {2, 3, 4, 5}) {
    const auto b = building_ball({q, 2, 1}, 4);
    const auto& x = b.colored.complex;
    o.require(x.num_cells(1) + 1 == x.num_vertices() && x.is_connected(), "tree ball has a cycle");
    std::vector<std::size_t> levels(5, 0);
    for (auto dd : b.distance) ++levels[dd];
    std::size_t want = 1;
    for (int r = 0; r <= 4; ++r) {
      o.require(levels[r] == want, "level " + std::to_string(r) + " of the q=" + std::to_string(q) + " tree");
      want = r == 0 ? static_cast<std::size_t>(q + 1) : want * static_cast<std::size_t>(q);
    }
  }
  double worst = 0.0;
  for (const auto& [q, d, r] : std::vector<std::array<int, 3>>{{2, 2, 4}, {2, 3, 2}, {3, 3, 2}, {2, 3, 3}}) {
    const auto b = building_ball({q, d, 1}, r);
    const auto h = hecke_family(b.colored, &b);
    o.require(h.adjoint_pairing, "adjoint pairing fails for q=" + std::to_string(q) + ", d=" + std::to_string(d));
    o.require(h.max_commutator <= 1e-10, "interior commutator " + num(h.max_commutator));
    o.require(d == 2 || h.rows_checked > 0, "no interior rows checked");
    worst = std::max(worst, h.max_commutator);
  }
  if (o.pass) o.detail = "max interior commutator " + num(worst);
  return o;
}

// 6 ---------------------------------------------------------------------------

struct Pair {
  SimplicialComplex cover;
  SimplicialComplex base;
  std::vector<VertexId> projection;
};

std::size_t order_of(const Permutation& g) {
  std::size_t k = 1;
  Permutation power = g;
  for (;; ++k) {
    bool identity = true;
    for (VertexId v = 0; v < power.size(); ++v) identity = identity && power[v] == v;
    if (identity) return k;
    for (auto& w : power) w = g[w];
  }
}

// X / <g^m> over X / <g>.
std::optional<Pair> nested_pair(const SimplicialComplex& x, const Permutation& g, std::size_t m) {
  const GroupAction outer{{g}};
  const GroupAction inner{{permutation_power(g, m)}};
  if (!is_admissible_subgroup(x, outer).admissible) return std::nullopt;
  QuotientResult fine;
  QuotientResult coarse;
  try {
    fine = quotient_by_action(x, inner);
    coarse = quotient_by_action(x, outer);
  } catch (const Error&) {
    return std::nullopt;
  }
  Pair p{fine.quotient, coarse.quotient, std::vector<VertexId>(fine.quotient.num_vertices())};
  for (VertexId k = 0; k < fine.orbits.size(); ++k) p.projection[k] = coarse.projection[fine.orbits[k].front()];
  return p;
}

Outcome naturality_and_monotonicity() {
  Outcome o;
  std::vector<std::pair<std::string, Pair>> pairs;
  for (std::size_t rows : {12, 18}) {
    for (std::size_t cols : {3, 6, 9}) {
      for (std::size_t shift : {0, 3}) {
        const auto torus = triangulated_torus(rows, cols);
        const auto g = torus_translation(rows, cols, 3, shift % cols);
        const std::size_t m = order_of(g) % 2 == 0 ? 2 : 3;
        if (auto p = nested_pair(torus.complex, g, m)) {
          pairs.emplace_back("torus " + std::to_string(rows) + "x" + std::to_string(cols) + " shift " +
                                 std::to_string(shift),
                             *p);
        }
      }
    }
  }
  for (std::uint64_t seed = 1; pairs.size() < 50 && seed < 1000; ++seed) {
    const std::size_t n = 6 + 2 * (seed % 3);
    const auto base = random_regular_graph(n, 3, seed);
    const std::size_t r = seed % 2 == 0 ? 4 : 6;
    const auto lift = cyclic_voltage_lift(base, r, seed);
    if (auto p = nested_pair(lift.cover, lift.rotation, 2)) pairs.emplace_back("voltage lift " + std::to_string(seed), *p);
  }
  o.require(pairs.size() == 50, "only " + std::to_string(pairs.size()) + " admissible quotient pairs");

  std::vector<std::pair<std::string, Pair>> lifts;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto base = seed % 2 == 0 ? random_regular_graph(8, 3, seed) : random_connected_graph(7, 4, seed);
    const Lift l = random_lift(base, 2 + static_cast<int>(seed % 3), seed);
    lifts.emplace_back("random lift " + std::to_string(seed), Pair{l.cover, base, l.projection});
  }

  double naturality = 0.0;
  double containment = 0.0;
  auto check = [&](const std::string& name, const Pair& p) {
    std::vector<OperatorConstructor> makers{[](const SimplicialComplex& x) { return adjacency(x, 0, 1); },
                                            [](const SimplicialComplex& x) { return laplacian(x, 0); }};
    std::vector<FamilyConstructor> families{vertex_adjacency};
    if (p.base.dimension() >= 2) {
      makers.push_back([](const SimplicialComplex& x) { return adjacency(x, 1, 2); });
      makers.push_back([](const SimplicialComplex& x) { return laplacian(x, 1); });
      families.push_back([](const SimplicialComplex& x) { return std::vector<ChainOperator>{laplacian(x, 1)}; });
    }
    for (const auto& make : makers) {
      const auto r = verify_naturality(make, p.projection, p.cover, p.base, 1e-10);
      naturality = std::max(naturality, r.defect);
      o.require(r.natural, name + ": naturality defect " + num(r.defect));
    }
    for (const auto& family : families) {
      const auto m = cover_monotonicity_check(p.projection, p.cover, p.base, family, 1e-8);
      containment = std::max(containment, m.max_distance);
      o.require(m.contained, name + ": base spectrum not contained, gap " + num(m.max_distance));
    }
  };
  for (const auto& [name, p] : pairs) check(name, p);
  for (const auto& [name, p] : lifts) check(name, p);
  if (o.pass) {
    const auto tori = std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.first.rfind("torus", 0) == 0; });
    o.detail = std::to_string(pairs.size()) + " quotient pairs (" + std::to_string(tori) + " of 2-dimensional tori) and " + std::to_string(lifts.size()) +
               " lifts, naturality defect " + num(naturality) + ", containment gap " +
               num(containment);
  }
  return o;
}

// 7 ---------------------------------------------------------------------------

Outcome direct_sum_law() {
  Outcome o;
  std::vector<std::pair<std::string, SimplicialComplex>> pool;
  for (const auto& [name, x] : colored_fixtures()) pool.emplace_back(name, x.complex);
  for (const std::string name : {"petersen.json", "k4.json", "c6.json"}) pool.emplace_back(name, load_complex(fixture(name)).complex);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) pool.emplace_back("random complex " + std::to_string(seed), random_complex(8, 3, 6, seed));
  std::mt19937_64 rng(77);
  const FamilyConstructor lap0 = [](const SimplicialComplex& x) { return std::vector<ChainOperator>{laplacian(x, 0)}; };
  for (int trial = 0; trial < 20; ++trial) {
    const auto& [na, a] = pool[rng() % pool.size()];
    const auto& [nb, b] = pool[rng() % pool.size()];
    const auto family = trial % 2 == 0 ? FamilyConstructor(vertex_adjacency) : lap0;
    const auto r = direct_sum_spectrum_check(a, b, family, family, 1e-8);
    o.require(r.equal && r.sum_size == r.union_size, na + " + " + nb + ": multisets differ");
  }
  if (o.pass) o.detail = "20 pairs from a pool of " + std::to_string(pool.size());
  return o;
}

// 8 ---------------------------------------------------------------------------

Outcome alon_boppana() {
  Outcome o;
  std::vector<std::pair<std::string, SimplicialComplex>> family;
  for (std::size_t n : {100, 400, 1600}) {
    family.emplace_back("n=" + std::to_string(n), random_regular_graph(n, 4, 1000003ULL + n));
  }
  const auto r = alon_boppana_scan(family, vertex_adjacency, ReferenceSpectrum::tree(4), 2001, thread_cap());
  std::ostringstream eps;
  for (const auto& m : r.members) eps << m.name << ": " << m.epsilon << "  ";
  o.require(r.epsilon_strictly_decreasing, "epsilon not strictly decreasing (" + eps.str() + ")");
  o.require(r.members.back().epsilon <= 0.3, "epsilon(1600) above 0.3 (" + eps.str() + ")");
  if (o.pass) o.detail = eps.str();
  return o;
}

// 9 ---------------------------------------------------------------------------

Outcome torus_membership_soundness() {
  Outcome o;
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (const int q : {2, 3}) {
    const auto reference = ReferenceSpectrum::building(q, 3);
    double worst_in = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const std::vector<double> theta{angle(rng), angle(rng)};
      const Membership m = reference.contains(torus_point(q, 3, theta), 1e-6);
      worst_in = std::max(worst_in, m.distance);
      o.require(m.member, "sampled torus point rejected for q=" + std::to_string(q));
    }
    const int grid = 400;
    std::vector<SpectrumTuple> dense;
    dense.reserve(grid * grid);
    for (int a = 0; a < grid; ++a) {
      for (int b = 0; b < grid; ++b) {
        const std::vector<double> theta{2.0 * std::numbers::pi * a / grid, 2.0 * std::numbers::pi * b / grid};
        dense.push_back(torus_point(q, 3, theta));
      }
    }
    const double box = 3.0 * q + 1.0;
    std::uniform_real_distribution<double> coord(-box, box);
    int rejected = 0;
    int far = 0;
    while (far < 1000) {
      const SpectrumTuple p{Scalar(coord(rng), coord(rng)), Scalar(coord(rng), coord(rng))};
      double nearest = INFINITY;
      for (const auto& s : dense) {
        nearest = std::min(nearest, tuple_distance(p, s));
        if (nearest < 0.5) break;
      }
      if (nearest < 0.5) continue;
      ++far;
      if (!reference.contains(p, 1e-6).member) ++rejected;
    }
    o.require(rejected == 1000, "only " + std::to_string(rejected) + " of 1000 far points rejected for q=" + std::to_string(q));
    if (o.pass) o.detail += "q=" + std::to_string(q) + " worst accepted distance " + num(worst_in) + "  ";
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "exact chain identities", 10, chain_identities},
      {2, "closed-form spectra", 5, closed_form_spectra},
      {3, "Ramanujan verdicts", 5, ramanujan_verdicts},
      {4, "trivial spectrum", 5, trivial_spectra},
      {5, "building combinatorics", 60, building_combinatorics},
      {6, "naturality and cover monotonicity", 30, naturality_and_monotonicity},
      {7, "direct-sum law", 10, direct_sum_law},
      {8, "Alon-Boppana scan", 120, alon_boppana},
      {9, "torus-membership soundness", 60, torus_membership_soundness},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    if (out.pass && elapsed > c.limit_seconds) {
      out.pass = false;
      out.detail = "took " + num(elapsed) + " s, limit " + num(c.limit_seconds) + " s";
    }
    std::printf("criterion %d (%s): %s [%.2f s] %s\n", c.id, c.name, out.pass ? "PASS" : "FAIL", elapsed,
                out.detail.c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
