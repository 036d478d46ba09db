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

#include "rlab/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "rlab/error.hpp"
#include "rlab/random.hpp"

namespace rlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

bool tuple_less(const SpectrumTuple& a, const SpectrumTuple& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return a.size() < b.size();
}

double tuple_distance(const SpectrumTuple& a, const SpectrumTuple& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kArityMismatch, "tuples of arity " + std::to_string(a.size()) + " and " +
                                               std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s);
}

std::vector<SpectrumGroup> SpectrumSet::distinct(double tolerance) const {
  std::vector<SpectrumGroup> groups;
  for (const auto& p : points) {
    bool merged = false;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
      if (tuple_distance(it->value, p) <= tolerance) {
        ++it->multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back({p, 1});
  }
  return groups;
}

SpectrumSet SpectrumSet::projection(std::size_t k) const {
  SpectrumSet out;
  out.coordinates = {coordinates.at(k)};
  for (const auto& p : points) out.points.push_back({p.at(k)});
  std::sort(out.points.begin(), out.points.end(), tuple_less);
  return out;
}

// ---------------------------------------------------------------------------
// Joint diagonalization

namespace {

struct Eigh {
  Eigen::VectorXd values;
  DenseMatrix vectors;
};

Eigh eigh(const DenseMatrix& h, bool real) {
  if (real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
    if (es.info() != Eigen::Success) throw Error(ErrorCode::kNumerical, "eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors().cast<Scalar>()};
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::kNumerical, "eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

template <class Part>
DenseMatrix combine(const std::vector<Part>& parts, Eigen::Index n, Rng& rng) {
  DenseMatrix h = DenseMatrix::Zero(n, n);
  for (const auto& p : parts) {
    const double c = (0.5 + uniform_unit(rng)) * (uniform_below(rng, 2) == 0 ? 1.0 : -1.0);
    h += c * DenseMatrix(p);
  }
  return (h + h.adjoint()) * 0.5;
}

// Orthonormal columns diagonalizing every Hermitian part simultaneously.
template <class Part>
DenseMatrix refine(const std::vector<Part>& parts, Eigen::Index n, bool real, Rng& rng,
                   double gap, int depth) {
  if (n == 1) return DenseMatrix::Identity(1, 1);
  const Eigh e = eigh(combine(parts, n, rng), real);
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  DenseMatrix u = e.vectors;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n && e.values[i] - e.values[i - 1] <= gap * scale) continue;
    const Eigen::Index m = i - start;
    if (m > 1) {
      const DenseMatrix vc = e.vectors.middleCols(start, m);
      std::vector<DenseMatrix> compressed;
      bool split = false;
      for (const auto& p : parts) {
        DenseMatrix b = vc.adjoint() * (p * vc);
        const Scalar mean = b.trace() / static_cast<double>(m);
        const DenseMatrix spread = b - mean * DenseMatrix::Identity(m, m);
        if (spread.cwiseAbs().maxCoeff() > 1e-9 * scale) split = true;
        compressed.push_back(std::move(b));
      }
      if (split) {
        if (depth >= 16) throw Error(ErrorCode::kNumerical, "joint diagonalization did not separate a cluster");
        u.middleCols(start, m) = vc * refine(compressed, m, real, rng, gap, depth + 1);
      }
    }
    start = i;
  }
  return u;
}

bool is_real_symmetric(const SparseMatrix& a) {
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      if (it.value().imag() != 0.0) return false;
    }
  }
  const SparseMatrix t = a.transpose();
  return max_abs(a - t) == 0.0;
}

}  // namespace

SpectrumSet joint_spectrum(const std::vector<SparseMatrix>& family,
                           const std::vector<std::string>& labels,
                           const JointSpectrumOptions& options) {
  if (family.empty()) throw Error(ErrorCode::kInvalidParams, "empty operator family");
  if (labels.size() != family.size()) throw Error(ErrorCode::kInvalidParams, "one label per operator required");
  const Eigen::Index n = family[0].rows();
  for (const auto& a : family) {
    if (a.rows() != n || a.cols() != n) throw Error(ErrorCode::kInvalidParams, "operators must share a square basis");
  }
  SpectrumSet out;
  out.coordinates = labels;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const SparseMatrix ah = family[i].adjoint();
    const double defect = max_abs(SparseMatrix(family[i] * ah) - SparseMatrix(ah * family[i]));
    out.max_normality_defect = std::max(out.max_normality_defect, defect);
    if (defect > options.tolerance) {
      throw Error(ErrorCode::kNotNormal, labels[i] + " has normality defect " + fmt(defect));
    }
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double c = max_abs(SparseMatrix(family[i] * family[j]) - SparseMatrix(family[j] * family[i]));
      out.max_commutator = std::max(out.max_commutator, c);
      if (c > options.tolerance) {
        throw Error(ErrorCode::kNotCommuting, "[" + labels[i] + ", " + labels[j] + "] has norm " + fmt(c));
      }
    }
  }
  if (n == 0) return out;

  std::vector<SparseMatrix> parts;
  bool real = true;
  for (const auto& a : family) {
    real = real && is_real_symmetric(a);
    const SparseMatrix ah = a.adjoint();
    SparseMatrix herm = (a + ah) * Scalar(0.5);
    SparseMatrix anti = (a - ah) * Scalar(0.0, -0.5);
    herm.prune(Scalar(0.0));
    anti.prune(Scalar(0.0));
    if (herm.nonZeros() > 0) parts.push_back(std::move(herm));
    if (anti.nonZeros() > 0) parts.push_back(std::move(anti));
  }
  DenseMatrix u;
  if (parts.empty()) {
    u = DenseMatrix::Identity(n, n);
  } else {
    Rng rng(options.seed);
    u = refine(parts, n, real, rng, options.cluster_gap, 0);
  }

  std::vector<SpectrumTuple> points(static_cast<std::size_t>(n), SpectrumTuple(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k) {
    const DenseMatrix au = family[k] * u;
    for (Eigen::Index c = 0; c < n; ++c) points[c][k] = u.col(c).dot(au.col(c));
    DenseMatrix r = au;
    for (Eigen::Index c = 0; c < n; ++c) r.col(c) -= points[c][k] * u.col(c);
    out.reconstruction_residual = std::max(out.reconstruction_residual, r.cwiseAbs().maxCoeff());
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tuple_less(points[a], points[b]); });
  out.points.reserve(points.size());
  for (std::size_t k : order) out.points.push_back(points[k]);
  if (options.keep_eigenvectors) {
    out.eigenvectors.resize(n, n);
    for (std::size_t c = 0; c < order.size(); ++c) {
      out.eigenvectors.col(static_cast<Eigen::Index>(c)) = u.col(static_cast<Eigen::Index>(order[c]));
    }
  }
  return out;
}

SpectrumSet joint_spectrum(const std::vector<ChainOperator>& family, const JointSpectrumOptions& options) {
  if (family.empty()) throw Error(ErrorCode::kInvalidParams, "empty operator family");
  std::vector<SparseMatrix> mats;
  std::vector<std::string> labels;
  for (const auto& op : family) {
    if (!op.is_square() || !op.source().same_space(family[0].source())) {
      throw Error(ErrorCode::kInvalidParams, op.label() + " does not act on the family's basis");
    }
    mats.push_back(op.matrix());
    labels.push_back(op.label());
  }
  return joint_spectrum(mats, labels, options);
}

bool same_multiset(const SpectrumSet& a, const SpectrumSet& b, double tolerance) {
  if (a.size() != b.size() || a.arity() != b.arity()) return false;
  const auto ga = a.distinct(tolerance);
  auto gb = b.distinct(tolerance);
  std::vector<bool> used(gb.size(), false);
  for (const auto& g : ga) {
    bool found = false;
    for (std::size_t k = 0; k < gb.size(); ++k) {
      if (!used[k] && gb[k].multiplicity == g.multiplicity && tuple_distance(gb[k].value, g.value) <= tolerance) {
        used[k] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

SpectrumSet spectrum_union(const SpectrumSet& a, const SpectrumSet& b) {
  if (a.arity() != b.arity()) throw Error(ErrorCode::kArityMismatch, "spectra of different arity");
  SpectrumSet out;
  out.coordinates = a.coordinates;
  out.points = a.points;
  out.points.insert(out.points.end(), b.points.begin(), b.points.end());
  std::sort(out.points.begin(), out.points.end(), tuple_less);
  out.max_commutator = std::max(a.max_commutator, b.max_commutator);
  out.max_normality_defect = std::max(a.max_normality_defect, b.max_normality_defect);
  out.reconstruction_residual = std::max(a.reconstruction_residual, b.reconstruction_residual);
  return out;
}

DirectSumReport direct_sum_spectrum_check(const SimplicialComplex& x, const SimplicialComplex& y,
                                          const FamilyConstructor& family_x,
                                          const FamilyConstructor& family_y, double tolerance) {
  JointSpectrumOptions opts;
  opts.keep_eigenvectors = false;
  const SimplicialComplex sum = disjoint_union(x, y);
  const SpectrumSet whole = joint_spectrum(family_x(sum), opts);
  const SpectrumSet parts = spectrum_union(joint_spectrum(family_x(x), opts), joint_spectrum(family_y(y), opts));
  DirectSumReport report;
  report.sum_size = whole.size();
  report.union_size = parts.size();
  report.equal = same_multiset(whole, parts, tolerance);
  return report;
}

SpectrumSet direct_sum_family_spectrum(const std::vector<ChainOperator>& on_v,
                                       const std::vector<ChainOperator>& on_w,
                                       const JointSpectrumOptions& options) {
  if (on_v.empty() || on_w.empty()) throw Error(ErrorCode::kInvalidParams, "empty operator family");
  const Eigen::Index n = on_v[0].matrix().rows();
  const Eigen::Index m = on_w[0].matrix().rows();
  auto embed = [&](const SparseMatrix& a, Eigen::Index offset) {
    std::vector<Eigen::Triplet<Scalar>> t;
    for (int r = 0; r < a.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(a, r); it; ++it) t.emplace_back(it.row() + offset, it.col() + offset, it.value());
    }
    SparseMatrix out(n + m, n + m);
    out.setFromTriplets(t.begin(), t.end());
    return out;
  };
  std::vector<SparseMatrix> mats;
  std::vector<std::string> labels;
  for (const auto& op : on_v) {
    if (op.matrix().rows() != n || op.matrix().cols() != n) throw Error(ErrorCode::kInvalidParams, "mixed bases in family");
    mats.push_back(embed(op.matrix(), 0));
    labels.push_back(op.label());
  }
  for (const auto& op : on_w) {
    if (op.matrix().rows() != m || op.matrix().cols() != m) throw Error(ErrorCode::kInvalidParams, "mixed bases in family");
    mats.push_back(embed(op.matrix(), n));
    labels.push_back(op.label());
  }
  SparseMatrix projection(n + m, n + m);
  for (Eigen::Index k = 0; k < n; ++k) projection.insert(k, k) = 1.0;
  mats.push_back(projection);
  labels.push_back("projection");
  SpectrumSet out = joint_spectrum(mats, labels, options);
  for (const auto& p : out.points) out.provenance.push_back(std::abs(p.back() - 1.0) < 0.5 ? "first" : "second");
  return out;
}

// ---------------------------------------------------------------------------
// Trivial spectrum

void TrivialSpectrum::add(SpectrumTuple point, const std::string& source, double tolerance) {
  if (points.empty() && arity == 0) arity = point.size();
  if (point.size() != arity) throw Error(ErrorCode::kArityMismatch, "trivial point of wrong arity");
  for (const auto& p : points) {
    if (tuple_distance(p, point) <= tolerance) return;
  }
  points.push_back(std::move(point));
  sources.push_back(source);
}

TrivialSpectrum TrivialSpectrum::merged(const TrivialSpectrum& other) const {
  TrivialSpectrum out = *this;
  if (out.arity == 0) out.arity = other.arity;
  for (std::size_t k = 0; k < other.points.size(); ++k) out.add(other.points[k], other.sources[k]);
  out.notes.insert(out.notes.end(), other.notes.begin(), other.notes.end());
  return out;
}

double TrivialSpectrum::distance(const SpectrumTuple& point) const {
  double best = kInf;
  for (const auto& p : points) best = std::min(best, tuple_distance(p, point));
  return best;
}

TrivialSpectrum trivial_spectrum(const ColoredComplex& x, const std::vector<ChainOperator>& family,
                                 double tolerance) {
  if (family.empty()) throw Error(ErrorCode::kInvalidParams, "empty operator family");
  const ChainBasis& basis = family[0].source();
  for (const auto& op : family) {
    if (!op.is_square() || !op.source().same_space(basis)) {
      throw Error(ErrorCode::kInvalidParams, op.label() + " does not act on the family's basis");
    }
  }
  const std::size_t n = basis.size();
  const bool colored = basis.dim() == 0 && x.vertex_colors.has_value();
  std::vector<int> moduli;
  if (colored) {
    for (int m = 1; m <= x.d; ++m) {
      if (x.d % m == 0) moduli.push_back(m);
    }
  } else {
    moduli.push_back(1);
  }
  TrivialSpectrum out;
  out.arity = family.size();
  for (int m : moduli) {
    const std::string source = "color mod " + std::to_string(m);
    std::vector<int> cls(n, 0);
    if (colored) {
      for (std::size_t e = 0; e < n; ++e) cls[e] = (*x.vertex_colors)[basis.cell_of(e)[0]] % m;
    }
    // Compact the nonempty classes.
    std::vector<int> remap(static_cast<std::size_t>(m), -1);
    std::vector<std::size_t> sizes;
    for (auto& c : cls) {
      if (remap[c] < 0) {
        remap[c] = static_cast<int>(sizes.size());
        sizes.push_back(0);
      }
      c = remap[c];
      ++sizes[c];
    }
    const auto classes = static_cast<Eigen::Index>(sizes.size());
    std::vector<SparseMatrix> collapsed;
    std::vector<std::string> labels;
    std::string failure;
    bool integral = true;
    for (const auto& op : family) {
      DenseMatrix rows = DenseMatrix::Zero(static_cast<Eigen::Index>(n), classes);
      const SparseMatrix& a = op.matrix();
      for (int r = 0; r < a.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(a, r); it; ++it) rows(r, cls[it.col()]) += it.value();
      }
      DenseMatrix quotient = DenseMatrix::Zero(classes, classes);
      std::vector<bool> seen(sizes.size(), false);
      for (std::size_t e = 0; e < n && failure.empty(); ++e) {
        const int a_cls = cls[e];
        if (!seen[a_cls]) {
          quotient.row(a_cls) = rows.row(static_cast<Eigen::Index>(e));
          seen[a_cls] = true;
          continue;
        }
        for (Eigen::Index b = 0; b < classes; ++b) {
          if (std::abs(rows(static_cast<Eigen::Index>(e), b) - quotient(a_cls, b)) > tolerance) {
            failure = op.label() + ": classes " + std::to_string(a_cls) + " -> " + std::to_string(b) +
                      " have unequal row sums under " + source;
            break;
          }
        }
      }
      if (!failure.empty()) break;
      for (Eigen::Index a = 0; a < classes; ++a) {
        for (Eigen::Index b = 0; b < classes; ++b) {
          const Scalar v = quotient(a, b);
          integral = integral && v.real() == std::round(v.real()) && v.imag() == std::round(v.imag());
        }
      }
      SparseMatrix sym(classes, classes);
      for (Eigen::Index a = 0; a < classes; ++a) {
        for (Eigen::Index b = 0; b < classes; ++b) {
          const Scalar v = quotient(a, b) * std::sqrt(static_cast<double>(sizes[a]) / static_cast<double>(sizes[b]));
          if (v != Scalar(0.0)) sym.insert(a, b) = v;
        }
      }
      collapsed.push_back(std::move(sym));
      labels.push_back(op.label());
    }
    if (!failure.empty()) {
      if (m == moduli.back()) throw Error(ErrorCode::kNotEquitable, failure);
      out.notes.push_back("skipped " + source + ": " + failure);
      continue;
    }
    JointSpectrumOptions opts;
    opts.keep_eigenvectors = false;
    const SpectrumSet s = joint_spectrum(collapsed, labels, opts);
    for (auto p : s.points) {
      // Integer quotients: eigenvalues that are integers up to rounding are
      // integers.
      if (integral) {
        for (auto& v : p) {
          const Scalar r(std::round(v.real()), std::round(v.imag()));
          if (std::abs(v - r) <= 1e-12 * std::max(1.0, std::abs(v))) v = r;
        }
      }
      out.add(p, source);
    }
  }
  return out;
}

TrivialSpectrum tree_trivial_spectrum(int k) {
  TrivialSpectrum t;
  t.arity = 1;
  t.add({Scalar(k)}, "tree");
  t.add({Scalar(-k)}, "tree");
  return t;
}

TrivialSpectrum tree_edge_trivial_spectrum(int k) {
  TrivialSpectrum t;
  t.arity = 1;
  t.add({Scalar(2.0 * k - 2.0)}, "tree");
  t.add({Scalar(-2.0)}, "tree");
  return t;
}

TrivialSpectrum building_trivial_spectrum(int q, int d) {
  if (!prime_power_base(q)) throw Error(ErrorCode::kInvalidParams, "q must be a prime power");
  if (d < 2) throw Error(ErrorCode::kInvalidParams, "d must be >= 2");
  TrivialSpectrum t;
  t.arity = static_cast<std::size_t>(d - 1);
  for (int j = 0; j < d; ++j) {
    SpectrumTuple p;
    for (int i = 1; i < d; ++i) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * j) % d) / d;
      p.push_back(static_cast<double>(gaussian_binomial(d, i, q)) * std::polar(1.0, angle));
    }
    t.add(std::move(p), "building");
  }
  return t;
}

TrivialSpectrum direct_sum_trivial(const TrivialSpectrum& v, const TrivialSpectrum& w) {
  TrivialSpectrum t;
  t.arity = v.arity + w.arity + 1;
  for (std::size_t k = 0; k < v.points.size(); ++k) {
    SpectrumTuple p = v.points[k];
    p.resize(t.arity, Scalar(0.0));
    p.back() = 1.0;
    t.add(std::move(p), v.sources[k]);
  }
  for (std::size_t k = 0; k < w.points.size(); ++k) {
    SpectrumTuple p(v.arity, Scalar(0.0));
    p.insert(p.end(), w.points[k].begin(), w.points[k].end());
    p.push_back(0.0);
    t.add(std::move(p), w.sources[k]);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Reference spectra

const char* reference_kind_name(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::kInterval: return "interval";
    case ReferenceKind::kTorusImage: return "torus-image";
    case ReferenceKind::kTransformedInterval: return "transformed-interval";
    case ReferenceKind::kExplicitSet: return "explicit-set";
    case ReferenceKind::kDirectSum: return "direct-sum";
  }
  return "unknown";
}

namespace {

// Elementary symmetric polynomials e_0..e_n of the values.
std::vector<Scalar> elementary(const std::vector<Scalar>& z) {
  std::vector<Scalar> e(z.size() + 1, Scalar(0.0));
  e[0] = 1.0;
  for (std::size_t m = 0; m < z.size(); ++m) {
    for (std::size_t k = m + 1; k >= 1; --k) e[k] += z[m] * e[k - 1];
  }
  return e;
}

std::vector<Scalar> torus_values(int d, std::span<const double> angles) {
  std::vector<Scalar> z;
  double total = 0.0;
  for (double a : angles) {
    z.push_back(std::polar(1.0, a));
    total += a;
  }
  z.push_back(std::polar(1.0, -total));
  (void)d;
  return z;
}

double weight(int q, int d, int k) {
  return std::pow(static_cast<double>(q), 0.5 * k * (d - k));
}

}  // namespace

SpectrumTuple torus_point(int q, int d, std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != d - 1) throw Error(ErrorCode::kArityMismatch, "need d - 1 angles");
  const auto e = elementary(torus_values(d, angles));
  SpectrumTuple out;
  for (int k = 1; k < d; ++k) out.push_back(weight(q, d, k) * e[k]);
  return out;
}

Membership torus_membership(int q, int d, const SpectrumTuple& lambda, const TorusOptions& options) {
  if (static_cast<int>(lambda.size()) != d - 1) {
    throw Error(ErrorCode::kArityMismatch, "building reference expects " + std::to_string(d - 1) + " coordinates");
  }
  const int free = d - 1;
  const int res = 2 * free;
  auto residual = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    std::vector<double> th(theta.data(), theta.data() + free);
    const auto z = torus_values(d, th);
    const auto e = elementary(z);
    r.resize(res);
    for (int k = 1; k < d; ++k) {
      const Scalar diff = weight(q, d, k) * e[k] - lambda[k - 1];
      r[2 * (k - 1)] = diff.real();
      r[2 * (k - 1) + 1] = diff.imag();
    }
    if (jac == nullptr) return;
    jac->setZero(res, free);
    // ∂e_k/∂z_m = e_{k-1}(z without z_m); dz_m/dθ_m = i z_m, dz_d/dθ_m = -i z_d.
    std::vector<std::vector<Scalar>> without(z.size());
    for (std::size_t m = 0; m < z.size(); ++m) {
      std::vector<Scalar> rest;
      for (std::size_t l = 0; l < z.size(); ++l) {
        if (l != m) rest.push_back(z[l]);
      }
      without[m] = elementary(rest);
    }
    const Scalar i(0.0, 1.0);
    for (int m = 0; m < free; ++m) {
      for (int k = 1; k < d; ++k) {
        const Scalar g = weight(q, d, k) * (i * z[m] * without[m][k - 1] - i * z[free] * without[free][k - 1]);
        (*jac)(2 * (k - 1), m) = g.real();
        (*jac)(2 * (k - 1) + 1, m) = g.imag();
      }
    }
  };

  std::vector<Eigen::VectorXd> starts;
  {
    // Roots of Σ (-1)^k e_k x^{d-k}, pushed onto the unit circle.
    DenseMatrix companion = DenseMatrix::Zero(d, d);
    for (int k = 1; k <= d; ++k) {
      const Scalar ek = k == d ? Scalar(1.0) : lambda[k - 1] / weight(q, d, k);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      companion(0, k - 1) = -sign * ek;
    }
    for (int r = 1; r < d; ++r) companion(r, r - 1) = 1.0;
    Eigen::ComplexEigenSolver<DenseMatrix> es(companion);
    Eigen::VectorXd theta(free);
    for (int m = 0; m < free; ++m) theta[m] = std::arg(es.eigenvalues()[m]);
    starts.push_back(theta);
  }
  Rng rng(options.seed);
  for (int s = 1; s < options.starts; ++s) {
    Eigen::VectorXd theta(free);
    for (int m = 0; m < free; ++m) theta[m] = 2.0 * std::numbers::pi * uniform_unit(rng);
    starts.push_back(theta);
  }

  double best = kInf;
  Eigen::VectorXd r;
  Eigen::VectorXd r_trial;
  Eigen::MatrixXd jac;
  for (auto theta : starts) {
    residual(theta, r, &jac);
    double f = r.squaredNorm();
    double mu = 1e-3;
    for (int it = 0; it < options.iterations; ++it) {
      const Eigen::MatrixXd a = jac.transpose() * jac;
      const Eigen::VectorXd g = jac.transpose() * r;
      Eigen::MatrixXd damped = a;
      damped.diagonal().array() += mu * (1.0 + a.diagonal().array());
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      const Eigen::VectorXd trial = theta + step;
      residual(trial, r_trial, nullptr);
      const double f_trial = r_trial.squaredNorm();
      if (f_trial < f) {
        theta = trial;
        f = f_trial;
        residual(theta, r, &jac);
        mu = std::max(mu / 3.0, 1e-12);
      } else {
        mu *= 4.0;
      }
      if (f < 1e-28 || step.norm() < 1e-15 || mu > 1e12) break;
    }
    best = std::min(best, std::sqrt(f));
    if (best <= 1e-12) break;
  }
  return {best <= options.accept, best};
}

ReferenceSpectrum ReferenceSpectrum::interval(double lo, double hi) {
  if (!(lo <= hi)) throw Error(ErrorCode::kInvalidParams, "interval bounds out of order");
  ReferenceSpectrum r;
  r.kind_ = ReferenceKind::kInterval;
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

ReferenceSpectrum ReferenceSpectrum::tree(int k) {
  if (k < 2) throw Error(ErrorCode::kInvalidParams, "tree degree must be >= 2");
  const double w = 2.0 * std::sqrt(static_cast<double>(k - 1));
  ReferenceSpectrum r = interval(-w, w);
  r.k_ = k;
  return r;
}

ReferenceSpectrum ReferenceSpectrum::tree_edges(int k) {
  ReferenceSpectrum r = tree(k);
  r.kind_ = ReferenceKind::kTransformedInterval;
  r.lo_ += k - 2;
  r.hi_ += k - 2;
  return r;
}

ReferenceSpectrum ReferenceSpectrum::building(int q, int d, TorusOptions options) {
  if (!prime_power_base(q)) throw Error(ErrorCode::kInvalidParams, "q must be a prime power");
  if (d < 2 || d > 8) throw Error(ErrorCode::kInvalidParams, "d must lie in [2, 8]");
  ReferenceSpectrum r;
  r.kind_ = ReferenceKind::kTorusImage;
  r.arity_ = static_cast<std::size_t>(d - 1);
  r.q_ = q;
  r.d_ = d;
  r.torus_ = options;
  return r;
}

ReferenceSpectrum ReferenceSpectrum::explicit_set(std::vector<SpectrumTuple> points, bool empirical) {
  if (points.empty()) throw Error(ErrorCode::kInvalidParams, "explicit reference needs points");
  ReferenceSpectrum r;
  r.kind_ = ReferenceKind::kExplicitSet;
  r.arity_ = points[0].size();
  for (const auto& p : points) {
    if (p.size() != r.arity_) throw Error(ErrorCode::kArityMismatch, "explicit reference of mixed arity");
  }
  r.points_ = std::move(points);
  r.empirical_ = empirical;
  return r;
}

ReferenceSpectrum ReferenceSpectrum::direct_sum(const ReferenceSpectrum& v, const ReferenceSpectrum& w) {
  ReferenceSpectrum r;
  r.kind_ = ReferenceKind::kDirectSum;
  r.arity_ = v.arity_ + w.arity_ + 1;
  r.empirical_ = v.empirical_ || w.empirical_;
  r.parts_ = {v, w};
  return r;
}

ReferenceSpectrum ReferenceSpectrum::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::vector<std::pair<std::string, double>> params;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::kInvalidParams, "malformed reference parameter '" + item + "'");
      try {
        params.emplace_back(item.substr(0, eq), std::stod(item.substr(eq + 1)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidParams, "malformed reference parameter '" + item + "'");
      }
    }
  }
  auto get = [&](const std::string& key) {
    for (const auto& [k, v] : params) {
      if (k == key) return v;
    }
    throw Error(ErrorCode::kInvalidParams, "reference '" + kind + "' needs parameter " + key);
  };
  if (kind == "tree") return tree(static_cast<int>(get("k")));
  if (kind == "tree-edges") return tree_edges(static_cast<int>(get("k")));
  if (kind == "building") return building(static_cast<int>(get("q")), static_cast<int>(get("d")));
  if (kind == "interval") return interval(get("lo"), get("hi"));
  throw Error(ErrorCode::kUnsupportedKind, "unknown reference kind '" + kind + "'");
}

std::string ReferenceSpectrum::describe() const {
  switch (kind_) {
    case ReferenceKind::kInterval:
      if (k_ > 0) return "tree:k=" + std::to_string(k_);
      return "interval:lo=" + fmt(lo_) + ",hi=" + fmt(hi_);
    case ReferenceKind::kTransformedInterval: return "tree-edges:k=" + std::to_string(k_);
    case ReferenceKind::kTorusImage: return "building:q=" + std::to_string(q_) + ",d=" + std::to_string(d_);
    case ReferenceKind::kExplicitSet:
      return std::string(empirical_ ? "empirical" : "explicit") + ":points=" + std::to_string(points_.size());
    case ReferenceKind::kDirectSum: return "sum(" + parts_[0].describe() + "|" + parts_[1].describe() + ")";
  }
  return "unknown";
}

std::pair<double, double> ReferenceSpectrum::bounds() const {
  if (kind_ == ReferenceKind::kInterval || kind_ == ReferenceKind::kTransformedInterval) return {lo_, hi_};
  if (kind_ == ReferenceKind::kTorusImage && d_ == 2) {
    const double w = 2.0 * std::sqrt(static_cast<double>(q_));
    return {-w, w};
  }
  throw Error(ErrorCode::kUnsupportedKind, describe() + " is not an interval");
}

double ReferenceSpectrum::distance(const SpectrumTuple& point) const {
  if (point.size() != arity_) {
    throw Error(ErrorCode::kArityMismatch, describe() + " expects arity " + std::to_string(arity_) + ", got " +
                                               std::to_string(point.size()));
  }
  auto to_interval = [&](Scalar x) { return std::abs(x - Scalar(std::clamp(x.real(), lo_, hi_))); };
  switch (kind_) {
    case ReferenceKind::kInterval: return to_interval(point[0]);
    case ReferenceKind::kTransformedInterval:
      return std::min(to_interval(point[0]), std::abs(point[0] - Scalar(-2.0)));
    case ReferenceKind::kTorusImage: return torus_membership(q_, d_, point, torus_).distance;
    case ReferenceKind::kExplicitSet: {
      double best = kInf;
      for (const auto& p : points_) best = std::min(best, tuple_distance(p, point));
      return best;
    }
    case ReferenceKind::kDirectSum: {
      const std::size_t nv = parts_[0].arity_;
      const std::size_t nw = parts_[1].arity_;
      const SpectrumTuple pv(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(nv));
      const SpectrumTuple pw(point.begin() + static_cast<std::ptrdiff_t>(nv),
                             point.begin() + static_cast<std::ptrdiff_t>(nv + nw));
      const Scalar tag = point.back();
      double zero_v = 0.0;
      double zero_w = 0.0;
      for (const auto& x : pv) zero_v += std::norm(x);
      for (const auto& x : pw) zero_w += std::norm(x);
      const double dv = parts_[0].distance(pv);
      const double dw = parts_[1].distance(pw);
      return std::min(std::sqrt(dv * dv + zero_w + std::norm(tag - 1.0)),
                      std::sqrt(dw * dw + zero_v + std::norm(tag)));
    }
  }
  return kInf;
}

Membership ReferenceSpectrum::contains(const SpectrumTuple& point, double tolerance) const {
  const double d = distance(point);
  return {d <= tolerance, d};
}

TrivialSpectrum ReferenceSpectrum::model_trivial() const {
  switch (kind_) {
    case ReferenceKind::kInterval:
      if (k_ > 0) return tree_trivial_spectrum(k_);
      break;
    case ReferenceKind::kTransformedInterval: return tree_edge_trivial_spectrum(k_);
    case ReferenceKind::kTorusImage: return building_trivial_spectrum(q_, d_);
    case ReferenceKind::kExplicitSet: break;
    case ReferenceKind::kDirectSum:
      return direct_sum_trivial(parts_[0].model_trivial(), parts_[1].model_trivial());
  }
  TrivialSpectrum t;
  t.arity = arity_;
  return t;
}

ReferenceSpectrum empirical_building_reference(const LocalFieldParams& params, int radius,
                                               const OperatorConstructor& make) {
  const BuildingBall b = building_ball(params, radius);
  const ChainOperator op = make(b.colored.complex);
  if (!op.is_square()) throw Error(ErrorCode::kInvalidParams, op.label() + " is not square");
  std::vector<Eigen::Index> inner;
  for (std::size_t e = 0; e < op.source().size(); ++e) {
    const Cell& c = op.source().cell_of(e);
    const bool interior = std::all_of(c.vertices().begin(), c.vertices().end(),
                                      [&](VertexId v) { return b.is_interior(v, 1); });
    if (interior) inner.push_back(static_cast<Eigen::Index>(e));
  }
  if (inner.empty()) throw Error(ErrorCode::kInvalidParams, "ball has no interior cells");
  const DenseMatrix full = op.dense();
  const auto m = static_cast<Eigen::Index>(inner.size());
  DenseMatrix sub(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = full(inner[i], inner[j]);
  }
  std::vector<SpectrumTuple> points;
  Eigen::ComplexEigenSolver<DenseMatrix> es(sub, false);
  for (Eigen::Index i = 0; i < m; ++i) points.push_back({es.eigenvalues()[i]});
  return ReferenceSpectrum::explicit_set(std::move(points), true);
}

// ---------------------------------------------------------------------------
// Verdicts

const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::kTrivial: return "trivial";
    case PointClass::kCovered: return "covered";
    case PointClass::kViolating: return "violating";
  }
  return "unknown";
}

RamanujanVerdict ramanujan_verdict(const SpectrumSet& spectrum, const TrivialSpectrum& trivial,
                                   const ReferenceSpectrum& reference, double tolerance) {
  if (spectrum.arity() != reference.arity() || (!trivial.points.empty() && trivial.arity != spectrum.arity())) {
    throw Error(ErrorCode::kArityMismatch, "spectrum arity " + std::to_string(spectrum.arity()) +
                                               ", trivial arity " + std::to_string(trivial.arity) +
                                               ", reference arity " + std::to_string(reference.arity()));
  }
  RamanujanVerdict v;
  v.tolerance = tolerance;
  v.empirical_reference = reference.empirical();
  for (const auto& g : spectrum.distinct(1e-8)) {
    VerdictPoint p;
    p.value = g.value;
    p.multiplicity = g.multiplicity;
    p.trivial_distance = trivial.distance(g.value);
    p.reference_distance = reference.distance(g.value);
    if (p.trivial_distance <= tolerance) {
      p.classification = PointClass::kTrivial;
    } else if (p.reference_distance <= tolerance) {
      p.classification = PointClass::kCovered;
    } else {
      p.classification = PointClass::kViolating;
      ++v.violating;
    }
    v.points.push_back(std::move(p));
  }
  v.ramanujan = v.violating == 0;
  return v;
}

MonotonicityReport cover_monotonicity_check(std::span<const VertexId> projection,
                                            const SimplicialComplex& cover, const SimplicialComplex& base,
                                            const FamilyConstructor& family, double tolerance) {
  const CoverCheck check = check_cover_map(projection, cover, base);
  if (!check) throw Error(ErrorCode::kNotACover, check.reason);
  JointSpectrumOptions opts;
  opts.keep_eigenvectors = false;
  const auto base_groups = joint_spectrum(family(base), opts).distinct(tolerance);
  const auto cover_groups = joint_spectrum(family(cover), opts).distinct(tolerance);
  MonotonicityReport r;
  r.base_points = base_groups.size();
  r.cover_points = cover_groups.size();
  for (const auto& g : base_groups) {
    double best = kInf;
    for (const auto& h : cover_groups) best = std::min(best, tuple_distance(g.value, h.value));
    r.max_distance = std::max(r.max_distance, best);
  }
  r.contained = r.max_distance <= tolerance;
  return r;
}

Lift random_lift(const SimplicialComplex& x, int degree, std::uint64_t seed) {
  if (x.dimension() != 1) {
    throw Error(ErrorCode::kDimensionUnsupported, "random lifts need a graph, got dimension " +
                                                      std::to_string(x.dimension()));
  }
  if (degree < 1) throw Error(ErrorCode::kInvalidParams, "lift degree must be >= 1");
  const auto r = static_cast<VertexId>(degree);
  Rng rng(seed);
  Lift lift;
  lift.seed = seed;
  for (int attempt = 1; attempt <= 1000; ++attempt) {
    std::vector<std::vector<VertexId>> cells;
    for (const Cell& e : x.cells(1)) {
      std::vector<VertexId> perm(r);
      std::iota(perm.begin(), perm.end(), 0);
      shuffle_in_place(perm, rng);
      for (VertexId s = 0; s < r; ++s) cells.push_back({e[0] * r + s, e[1] * r + perm[s]});
    }
    SimplicialComplex cover = SimplicialComplex::build(cells, BuildOptions{false});
    if (!cover.is_connected()) continue;
    lift.cover = std::move(cover);
    lift.projection.resize(lift.cover.num_vertices());
    for (VertexId v = 0; v < lift.projection.size(); ++v) lift.projection[v] = v / r;
    lift.attempts = attempt;
    return lift;
  }
  throw Error(ErrorCode::kInvalidParams, "no connected lift found in 1000 draws");
}

// ---------------------------------------------------------------------------
// Alon–Boppana scans

std::size_t girth(const SimplicialComplex& x) {
  const std::size_t n = x.num_vertices();
  std::size_t best = kInfiniteDistance;
  std::vector<std::size_t> depth(n);
  std::vector<VertexId> parent(n);
  for (VertexId s = 0; s < n; ++s) {
    std::fill(depth.begin(), depth.end(), kInfiniteDistance);
    depth[s] = 0;
    parent[s] = s;
    std::vector<VertexId> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId a = queue[head];
      if (best != kInfiniteDistance && 2 * depth[a] + 1 >= best) break;
      for (VertexId b : x.neighbors(a)) {
        if (depth[b] == kInfiniteDistance) {
          depth[b] = depth[a] + 1;
          parent[b] = a;
          queue.push_back(b);
        } else if (parent[a] != b) {
          best = std::min(best, depth[a] + depth[b] + 1);
        }
      }
    }
  }
  return best;
}

std::size_t injectivity_radius(const SimplicialComplex& x) {
  const std::size_t g = girth(x);
  return g == kInfiniteDistance ? kInfiniteDistance : (g - 1) / 2;
}

double covering_radius(const std::vector<double>& points, double lo, double hi, std::size_t grid) {
  if (points.empty()) return kInf;
  if (grid < 2) throw Error(ErrorCode::kInvalidParams, "grid needs at least two points");
  std::vector<double> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  double eps = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    double best = kInf;
    if (it != sorted.end()) best = *it - x;
    if (it != sorted.begin()) best = std::min(best, x - *std::prev(it));
    eps = std::max(eps, best);
  }
  return eps;
}

ScanReport alon_boppana_scan(const std::vector<std::pair<std::string, SimplicialComplex>>& family,
                             const FamilyConstructor& make, const ReferenceSpectrum& reference,
                             std::size_t grid, std::size_t threads) {
  if (family.size() < 2) throw Error(ErrorCode::kInvalidParams, "a scan needs at least two members");
  for (const auto& [name, x] : family) {
    if (x.dimension() > 1) throw Error(ErrorCode::kDimensionUnsupported, name + " is not a graph");
  }
  ScanReport report;
  report.reference = reference.describe();
  std::tie(report.lo, report.hi) = reference.bounds();
  report.grid = grid;

  std::vector<std::vector<double>> spectra(family.size());
  std::vector<std::exception_ptr> failures(family.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    JointSpectrumOptions opts;
    opts.keep_eigenvectors = false;
    for (std::size_t k = next++; k < family.size(); k = next++) {
      try {
        const SpectrumSet s = joint_spectrum(make(family[k].second), opts);
        if (s.arity() != 1) throw Error(ErrorCode::kArityMismatch, "scans take one operator");
        for (const auto& p : s.points) spectra[k].push_back(p[0].real());
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const std::size_t pool = std::clamp<std::size_t>(threads, 1, family.size());
  std::vector<std::thread> workers;
  for (std::size_t t = 1; t < pool; ++t) workers.emplace_back(worker);
  worker();
  for (auto& w : workers) w.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<double> cumulative;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& reals = spectra[k];
    cumulative.insert(cumulative.end(), reals.begin(), reals.end());
    ScanMember m;
    m.name = family[k].first;
    m.vertices = family[k].second.num_vertices();
    m.injectivity_radius = injectivity_radius(family[k].second);
    m.spectral_points = reals.size();
    m.epsilon = covering_radius(reals, report.lo, report.hi, grid);
    m.cumulative_epsilon = covering_radius(cumulative, report.lo, report.hi, grid);
    report.members.push_back(std::move(m));
  }
  report.epsilon_non_increasing = true;
  report.epsilon_strictly_decreasing = true;
  for (std::size_t k = 1; k < report.members.size(); ++k) {
    const double prev = report.members[k - 1].epsilon;
    const double cur = report.members[k].epsilon;
    if (cur > prev) report.epsilon_non_increasing = false;
    if (!(cur < prev)) report.epsilon_strictly_decreasing = false;
  }
  return report;
}

}  // namespace rlab
