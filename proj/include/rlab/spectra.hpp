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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rlab/building.hpp"
#include "rlab/complex.hpp"
#include "rlab/operators.hpp"

namespace rlab {

/// One joint eigenvalue: a coordinate per operator of the family.
using SpectrumTuple = std::vector<Scalar>;

/// Lexicographic order by real part, then imaginary part, coordinate by coordinate.
bool tuple_less(const SpectrumTuple& a, const SpectrumTuple& b);
/// Euclidean distance in C^t. Throws ArityMismatch.
double tuple_distance(const SpectrumTuple& a, const SpectrumTuple& b);

struct SpectrumGroup {
  SpectrumTuple value;
  std::size_t multiplicity = 0;
};

/// Joint eigenvalues with multiplicity, one tuple per common eigenvector.
struct SpectrumSet {
  std::vector<std::string> coordinates;  // operator label per tuple entry
  std::vector<SpectrumTuple> points;     // sorted by tuple_less
  std::vector<std::string> provenance;   // optional, parallel to points
  DenseMatrix eigenvectors;              // columns parallel to points; may be empty
  double max_commutator = 0.0;
  double max_normality_defect = 0.0;
  double reconstruction_residual = 0.0;

  std::size_t arity() const noexcept { return coordinates.size(); }
  std::size_t size() const noexcept { return points.size(); }
  /// Points merged within `tolerance`, in sorted order.
  std::vector<SpectrumGroup> distinct(double tolerance = 1e-8) const;
  /// Coordinate `k` of every point, as a one-operator spectrum.
  SpectrumSet projection(std::size_t k) const;
};

struct JointSpectrumOptions {
  double tolerance = 1e-8;      // commutator and normality defects
  double cluster_gap = 1e-6;    // relative to max(1, spectral radius)
  std::uint64_t seed = 0x5eed'1234'abcdULL;
  bool keep_eigenvectors = true;
};

/// Simultaneous unitary diagonalization of commuting normal operators on one
/// basis. Throws NotCommuting, NotNormal, InvalidParams.
SpectrumSet joint_spectrum(const std::vector<ChainOperator>& family,
                           const JointSpectrumOptions& options = {});
/// Same on raw square matrices, in the standard inner product.
SpectrumSet joint_spectrum(const std::vector<SparseMatrix>& family,
                           const std::vector<std::string>& labels,
                           const JointSpectrumOptions& options = {});

/// Multiset equality with points matched within `tolerance`.
bool same_multiset(const SpectrumSet& a, const SpectrumSet& b, double tolerance = 1e-8);
/// Multiset union.
SpectrumSet spectrum_union(const SpectrumSet& a, const SpectrumSet& b);

/// Spectrum of family(X ⊔ Y) against the union of family(X) and family(Y).
struct DirectSumReport {
  bool equal = false;
  std::size_t union_size = 0;
  std::size_t sum_size = 0;
};
using FamilyConstructor = std::function<std::vector<ChainOperator>(const SimplicialComplex&)>;
DirectSumReport direct_sum_spectrum_check(const SimplicialComplex& x, const SimplicialComplex& y,
                                          const FamilyConstructor& family_x,
                                          const FamilyConstructor& family_y,
                                          double tolerance = 1e-8);

/// Joint spectrum of the family (A_k ⊕ 0, 0 ⊕ B_l, 1 ⊕ 0) on V ⊕ W. Points on V
/// are tagged (λ, 0, 1) and points on W are tagged (0, μ, 0).
SpectrumSet direct_sum_family_spectrum(const std::vector<ChainOperator>& on_v,
                                       const std::vector<ChainOperator>& on_w,
                                       const JointSpectrumOptions& options = {});

/// Color-collapse points of a family; `sources` names the collapse per point.
struct TrivialSpectrum {
  std::size_t arity = 0;
  std::vector<SpectrumTuple> points;
  std::vector<std::string> sources;
  std::vector<std::string> notes;

  void add(SpectrumTuple point, const std::string& source, double tolerance = 1e-9);
  TrivialSpectrum merged(const TrivialSpectrum& other) const;
  double distance(const SpectrumTuple& point) const;
};

/// For each m dividing d, collapses the family onto the classes "vertex color
/// mod m" (dimension 0) or onto a single class (higher dimensions), and takes
/// the joint spectrum of the quotient matrices. Collapses that are not
/// equitable are skipped with a note, except the finest one, which throws
/// NotEquitable naming the class pair.
TrivialSpectrum trivial_spectrum(const ColoredComplex& x, const std::vector<ChainOperator>& family,
                                 double tolerance = 1e-9);

/// Trivial points of the universal cover's own color collapse: {±k} for the
/// k-regular tree and (G_1 ζ^j, ..., G_{d-1} ζ^{(d-1)j}) with G_i the Gaussian
/// binomial for the building of PGL_d.
TrivialSpectrum tree_trivial_spectrum(int k);
TrivialSpectrum building_trivial_spectrum(int q, int d);
/// {2k - 2, -2}: the line-graph image of {±k}.
TrivialSpectrum tree_edge_trivial_spectrum(int k);

/// Tagged union for direct-sum families.
TrivialSpectrum direct_sum_trivial(const TrivialSpectrum& v, const TrivialSpectrum& w);

enum class ReferenceKind { kInterval, kTorusImage, kTransformedInterval, kExplicitSet, kDirectSum };
const char* reference_kind_name(ReferenceKind kind);

struct TorusOptions {
  int starts = 64;
  int iterations = 500;
  double accept = 1e-6;
  std::uint64_t seed = 0x7011'05ULL;
};

struct Membership {
  bool member = false;
  double distance = 0.0;
};

/// λ_k = q^{k(d-k)/2} e_k(z_1..z_d) for z_m = exp(i θ_m), m < d, and z_d fixing Π z = 1.
SpectrumTuple torus_point(int q, int d, std::span<const double> angles);

/// Spectrum of the universal cover (or a stand-in) with a membership test.
class ReferenceSpectrum {
 public:
  static ReferenceSpectrum interval(double lo, double hi);
  /// [-2√(k-1), 2√(k-1)].
  static ReferenceSpectrum tree(int k);
  /// {μ + k - 2 : μ in the tree interval} ∪ {-2}, for lower adjacency on edges.
  static ReferenceSpectrum tree_edges(int k);
  static ReferenceSpectrum building(int q, int d, TorusOptions options = {});
  static ReferenceSpectrum explicit_set(std::vector<SpectrumTuple> points, bool empirical);
  static ReferenceSpectrum direct_sum(const ReferenceSpectrum& v, const ReferenceSpectrum& w);
  /// "tree:k=3", "tree-edges:k=3", "building:q=2,d=3", "interval:lo=-2,hi=2".
  static ReferenceSpectrum parse(const std::string& text);

  ReferenceKind kind() const noexcept { return kind_; }
  std::size_t arity() const noexcept { return arity_; }
  bool empirical() const noexcept { return empirical_; }
  std::string describe() const;
  /// Real interval spanned by an interval-like reference. Throws UnsupportedKind.
  std::pair<double, double> bounds() const;
  /// Distance from the point to the reference set (achieved distance for the
  /// torus image).
  double distance(const SpectrumTuple& point) const;
  Membership contains(const SpectrumTuple& point, double tolerance) const;
  /// Trivial points of the same universal cover, when known.
  TrivialSpectrum model_trivial() const;

 private:
  ReferenceKind kind_ = ReferenceKind::kInterval;
  std::size_t arity_ = 1;
  bool empirical_ = false;
  double lo_ = 0.0;
  double hi_ = 0.0;
  int k_ = 0;
  int q_ = 0;
  int d_ = 0;
  TorusOptions torus_;
  std::vector<SpectrumTuple> points_;
  std::vector<ReferenceSpectrum> parts_;
};

/// Distance from λ to the torus image, by multi-start Levenberg–Marquardt over
/// the d - 1 free angles.
Membership torus_membership(int q, int d, const SpectrumTuple& lambda, const TorusOptions& options);

/// Spectrum cloud of the operator restricted to cells at depth <= radius - 1
/// in a building ball, used as a stand-in reference.
ReferenceSpectrum empirical_building_reference(const LocalFieldParams& params, int radius,
                                               const OperatorConstructor& make);

enum class PointClass { kTrivial, kCovered, kViolating };
const char* point_class_name(PointClass c);

struct VerdictPoint {
  SpectrumTuple value;
  std::size_t multiplicity = 0;
  PointClass classification = PointClass::kViolating;
  double trivial_distance = 0.0;
  double reference_distance = 0.0;
};

struct RamanujanVerdict {
  bool ramanujan = false;
  double tolerance = 1e-6;
  bool empirical_reference = false;
  std::vector<VerdictPoint> points;
  std::size_t violating = 0;
};

/// Throws ArityMismatch.
RamanujanVerdict ramanujan_verdict(const SpectrumSet& spectrum, const TrivialSpectrum& trivial,
                                   const ReferenceSpectrum& reference, double tolerance = 1e-6);

struct MonotonicityReport {
  bool contained = false;
  double max_distance = 0.0;
  std::size_t base_points = 0;
  std::size_t cover_points = 0;
};

/// Checks Spec(base) ⊆ Spec(cover) for the family on both. Throws NotACover.
MonotonicityReport cover_monotonicity_check(std::span<const VertexId> projection,
                                            const SimplicialComplex& cover,
                                            const SimplicialComplex& base,
                                            const FamilyConstructor& family,
                                            double tolerance = 1e-8);

struct Lift {
  SimplicialComplex cover;
  std::vector<VertexId> projection;
  std::uint64_t seed = 0;
  int attempts = 0;
};

/// r-fold cover of a graph with an independent uniform permutation per edge.
/// Disconnected draws are redrawn from the same stream. Throws
/// DimensionUnsupported, InvalidParams.
Lift random_lift(const SimplicialComplex& x, int degree, std::uint64_t seed);

/// Length of the shortest cycle of a graph, or kInfiniteDistance for a forest.
std::size_t girth(const SimplicialComplex& x);
/// Largest n such that the covering map from the universal cover is injective
/// on every vertex ball of radius n, i.e. (girth - 1) / 2.
std::size_t injectivity_radius(const SimplicialComplex& x);

struct ScanMember {
  std::string name;
  std::size_t vertices = 0;
  std::size_t injectivity_radius = 0;
  std::size_t spectral_points = 0;
  double epsilon = 0.0;             // covering radius of this member's spectrum
  double cumulative_epsilon = 0.0;  // covering radius of the union so far
};

struct ScanReport {
  std::string reference;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t grid = 0;
  std::vector<ScanMember> members;
  bool epsilon_non_increasing = false;
  bool epsilon_strictly_decreasing = false;
};

/// Covering radius ε = max over a uniform grid of the reference interval of
/// the distance to the nearest spectral point. Throws DimensionUnsupported
/// for members of dimension > 1 and InvalidParams for fewer than two members.
/// Members are solved on up to `threads` threads; results do not depend on it.
ScanReport alon_boppana_scan(const std::vector<std::pair<std::string, SimplicialComplex>>& family,
                             const FamilyConstructor& make, const ReferenceSpectrum& reference,
                             std::size_t grid = 2001, std::size_t threads = 1);

/// Covering radius of a set of reals over [lo, hi].
double covering_radius(const std::vector<double>& points, double lo, double hi, std::size_t grid);

}  // namespace rlab
