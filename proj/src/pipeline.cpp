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

#include "rlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rlab/error.hpp"
#include "rlab/generators.hpp"
#include "rlab/io.hpp"
#include "rlab/spectra.hpp"

namespace rlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidParams, std::string("config: ") + e.what());
  }
  if (!j.is_object() || !j.contains("command") || !j["command"].is_string()) {
    throw Error(ErrorCode::kInvalidParams, "config needs a \"command\" string");
  }
  RunConfig c;
  c.command = j["command"].get<std::string>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw Error(ErrorCode::kInvalidParams, "\"seed\" must be an integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("deterministic")) c.deterministic = j["deterministic"].get<bool>();
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw Error(ErrorCode::kInvalidParams, "\"params\" must be an object");
    for (const auto& [key, value] : j["params"].items()) {
      c.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return c;
}

std::string RunConfig::canonical_json() const {
  json j;
  j["command"] = command;
  j["seed"] = seed;
  j["deterministic"] = deterministic;
  json p = json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  return j.dump();
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string RunConfig::require(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorCode::kInvalidParams, command + " needs parameter '" + key + "'");
  return it->second;
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  try {
    std::size_t used = 0;
    const long long out = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidParams, "parameter '" + key + "' is not an integer: " + v);
  }
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidParams, "parameter '" + key + "' is not a number: " + v);
  }
}

std::size_t thread_cap() {
  if (const char* env = std::getenv("RLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Families

std::vector<ChainOperator> make_family(const ColoredComplex& x, int dim, const std::string& family) {
  const SimplicialComplex& c = x.complex;
  if (dim < 0 || dim > c.dimension()) {
    throw Error(ErrorCode::kDimensionOutOfRange, "dimension " + std::to_string(dim) + " outside [0, " +
                                                     std::to_string(c.dimension()) + "]");
  }
  if (family == "adjacency") {
    if (dim == 0) return {adjacency(c, 0, 1)};
    return {face_adjacency(c, dim)};
  }
  if (family == "laplacian") return {laplacian(c, dim, LaplacianVariant::kTotal)};
  if (family == "laplacian-up") return {laplacian(c, dim, LaplacianVariant::kUp)};
  if (family == "laplacian-down") return {laplacian(c, dim, LaplacianVariant::kDown)};
  if (family == "hecke") {
    if (dim != 0) throw Error(ErrorCode::kUnsupportedKind, "Hecke operators act on vertices only");
    return hecke_family(x).operators;
  }
  if (family.rfind("cell:", 0) == 0) {
    int j = 0;
    try {
      j = std::stoi(family.substr(5));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kUnsupportedKind, "malformed family '" + family + "'");
    }
    return {adjacency(c, dim, j)};
  }
  throw Error(ErrorCode::kUnsupportedKind, "unknown operator family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

json scalar_json(Scalar v) { return json::array({v.real(), v.imag()}); }

json tuple_json(const SpectrumTuple& t) {
  json out = json::array();
  for (const auto& v : t) out.push_back(scalar_json(v));
  return out;
}

json spectrum_json(const SpectrumSet& s) {
  json j;
  j["coordinates"] = s.coordinates;
  j["size"] = s.size();
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back(tuple_json(p));
  j["points"] = pts;
  json groups = json::array();
  for (const auto& g : s.distinct(1e-8)) groups.push_back({{"value", tuple_json(g.value)}, {"multiplicity", g.multiplicity}});
  j["distinct"] = groups;
  j["max_commutator"] = s.max_commutator;
  j["max_normality_defect"] = s.max_normality_defect;
  j["reconstruction_residual"] = s.reconstruction_residual;
  if (!s.provenance.empty()) j["provenance"] = s.provenance;
  return j;
}

json trivial_json(const TrivialSpectrum& t) {
  json j;
  j["arity"] = t.arity;
  json pts = json::array();
  for (std::size_t k = 0; k < t.points.size(); ++k) pts.push_back({{"value", tuple_json(t.points[k])}, {"source", t.sources[k]}});
  j["points"] = pts;
  j["notes"] = t.notes;
  j["scope"] = "color-quotient subset";
  return j;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json verdict_json(const RamanujanVerdict& v) {
  json j;
  j["ramanujan"] = v.ramanujan;
  j["tolerance"] = v.tolerance;
  j["empirical_reference"] = v.empirical_reference;
  j["violating"] = v.violating;
  json pts = json::array();
  for (const auto& p : v.points) {
    pts.push_back({{"value", tuple_json(p.value)},
                   {"multiplicity", p.multiplicity},
                   {"class", point_class_name(p.classification)},
                   {"trivial_distance", finite_or_null(p.trivial_distance)},
                   {"reference_distance", finite_or_null(p.reference_distance)}});
  }
  j["points"] = pts;
  return j;
}

json complex_summary(const SimplicialComplex& x) {
  json cells = json::array();
  for (int k = 0; k <= x.dimension(); ++k) cells.push_back(x.num_cells(k));
  return {{"vertices", x.num_vertices()}, {"dimension", x.dimension()}, {"cells", cells}};
}

struct Context {
  const RunConfig& config;
  json result = json::object();
  std::vector<std::string> warnings;
  std::string csv;
};

void maybe_write(const RunConfig& c, const std::string& key, const std::string& text) {
  if (c.has(key)) write_text(c.get(key), text);
}

int get_dim(const RunConfig& c) {
  return static_cast<int>(c.get_int("dim", 0));
}

std::size_t positive(const RunConfig& c, const std::string& key, long long fallback) {
  const long long v = c.get_int(key, fallback);
  if (v < 0) throw Error(ErrorCode::kInvalidParams, "parameter '" + key + "' must be >= 0");
  return static_cast<std::size_t>(v);
}

// generate -------------------------------------------------------------------

void cmd_generate(Context& ctx) {
  const RunConfig& c = ctx.config;
  const std::string kind = c.require("kind");
  std::optional<ColoredComplex> colored;
  SimplicialComplex x;
  if (kind == "cycle") {
    x = cycle_graph(positive(c, "n", 6));
  } else if (kind == "path") {
    x = path_graph(positive(c, "n", 2));
  } else if (kind == "complete") {
    x = complete_graph(positive(c, "n", 4));
  } else if (kind == "simplex") {
    x = full_simplex(positive(c, "n", 3));
  } else if (kind == "petersen") {
    x = petersen_graph();
  } else if (kind == "bipartite") {
    colored = colored_bipartite(positive(c, "a", 3), positive(c, "b", 3));
  } else if (kind == "regular") {
    x = random_regular_graph(positive(c, "n", 10), positive(c, "k", 3), c.seed);
  } else if (kind == "tree") {
    x = regular_tree_ball(positive(c, "k", 3), positive(c, "radius", 2));
  } else if (kind == "torus") {
    colored = triangulated_torus(positive(c, "n", 6), positive(c, "m", 6));
  } else if (kind == "tripartite") {
    colored = complete_tripartite(positive(c, "s", 7));
  } else if (kind == "random-complex") {
    x = random_complex(positive(c, "n", 8), static_cast<int>(c.get_int("max_dim", 3)), positive(c, "cells", 6), c.seed);
  } else {
    throw Error(ErrorCode::kInvalidParams, "unknown generator '" + kind + "'");
  }
  const SimplicialComplex& out = colored ? colored->complex : x;
  ctx.result["complex"] = complex_summary(out);
  ctx.result["colored"] = colored.has_value();
  maybe_write(c, "out", colored ? colored_to_json(*colored) : complex_to_json(x));
}

// building ball ----------------------------------------------------------------

void cmd_building_ball(Context& ctx) {
  const RunConfig& c = ctx.config;
  LocalFieldParams params;
  params.q = static_cast<int>(c.get_int("q", 2));
  params.d = static_cast<int>(c.get_int("d", 2));
  params.division_degree = static_cast<int>(c.get_int("division_degree", 1));
  const int radius = static_cast<int>(c.get_int("radius", 2));
  BallOptions options;
  options.max_vertices = positive(c, "max_vertices", static_cast<long long>(options.max_vertices));
  const BuildingBall ball = building_ball(params, radius, options);
  const auto& x = ball.colored.complex;
  ctx.result["complex"] = complex_summary(x);
  ctx.result["params"] = {{"q", params.q}, {"d", params.d}, {"division_degree", params.division_degree}, {"radius", radius}};
  ctx.result["precision"] = ball.precision;
  std::vector<std::size_t> levels(static_cast<std::size_t>(radius) + 1, 0);
  for (auto dd : ball.distance) ++levels[dd];
  ctx.result["level_counts"] = levels;
  ctx.result["frontier_vertices"] = std::count(ball.frontier.begin(), ball.frontier.end(), true);
  std::map<int, std::size_t> split;
  for (VertexId w : x.neighbors(0)) ++split[ball.colored.edge_color(0, w)];
  json js = json::object();
  for (const auto& [color, count] : split) js[std::to_string(color)] = count;
  ctx.result["base_degree"] = x.degree(0);
  ctx.result["base_color_split"] = js;
  if (x.dimension() >= 1) {
    const HeckeFamily h = hecke_family(ball.colored, &ball);
    ctx.result["hecke"] = {{"adjoint_pairing", h.adjoint_pairing},
                           {"commuting_on_interior", h.commuting},
                           {"max_commutator", h.max_commutator},
                           {"rows_checked", h.rows_checked},
                           {"boundary_affected", h.boundary_affected}};
    if (h.boundary_affected) ctx.warnings.push_back("boundary-affected: frontier rows excluded from commutator check");
  }
  maybe_write(c, "out", colored_to_json(ball.colored));
}

// quotient / lift ----------------------------------------------------------------

ColoredComplex pull_colors(const ComplexFile& file, const SimplicialComplex& target,
                           std::span<const VertexId> map_to_source, bool target_is_quotient,
                           const ColoredComplex& source) {
  // Vertex colors transfer along the map; edge colors follow from them or
  // from the source edge over each target edge.
  std::optional<std::vector<int>> colors;
  if (source.vertex_colors) {
    colors = std::vector<int>(target.num_vertices(), 0);
    if (target_is_quotient) {
      for (VertexId v = 0; v < map_to_source.size(); ++v) (*colors)[map_to_source[v]] = (*source.vertex_colors)[v];
    } else {
      for (VertexId v = 0; v < target.num_vertices(); ++v) (*colors)[v] = (*source.vertex_colors)[map_to_source[v]];
    }
  }
  std::vector<DirectedEdgeColor> edges;
  if (!colors && file.has_coloring() && target.dimension() >= 1) {
    if (target_is_quotient) {
      for (const Cell& e : source.complex.cells(1)) {
        edges.push_back({map_to_source[e[0]], map_to_source[e[1]], source.edge_color(e[0], e[1])});
      }
    } else {
      for (const Cell& e : target.cells(1)) {
        edges.push_back({e[0], e[1], source.edge_color(map_to_source[e[0]], map_to_source[e[1]])});
      }
    }
  }
  return make_colored(target, source.d, colors, edges);
}

void cmd_quotient(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ComplexFile file = load_complex(c.require("in"));
  const ColoredComplex source = file.colored();
  const GroupAction action = load_group(c.require("group"));
  const QuotientResult q = quotient_by_action(file.complex, action, positive(c, "max_order", kDefaultMaxGroupOrder));
  const ColoredComplex out = pull_colors(file, q.quotient, q.projection, true, source);
  ctx.result["group_order"] = q.group_order;
  ctx.result["complex"] = complex_summary(q.quotient);
  ctx.result["projection"] = q.projection;
  maybe_write(c, "out", file.has_coloring() ? colored_to_json(out) : complex_to_json(q.quotient));
}

void cmd_lift(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ComplexFile file = load_complex(c.require("in"));
  const ColoredComplex source = file.colored();
  const Lift lift = random_lift(file.complex, static_cast<int>(c.get_int("degree", 2)), c.seed);
  const CoverCheck check = check_cover_map(lift.projection, lift.cover, file.complex);
  if (!check) throw Error(ErrorCode::kNotACover, check.reason);
  const ColoredComplex out = pull_colors(file, lift.cover, lift.projection, false, source);
  ctx.result["complex"] = complex_summary(lift.cover);
  ctx.result["projection"] = lift.projection;
  ctx.result["attempts"] = lift.attempts;
  maybe_write(c, "out", file.has_coloring() ? colored_to_json(out) : complex_to_json(lift.cover));
}

// spectra ----------------------------------------------------------------------------

void cmd_spec_compute(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ColoredComplex x = load_complex(c.require("in")).colored();
  const int dim = get_dim(c);
  const auto family = make_family(x, dim, c.get("family", "adjacency"));
  JointSpectrumOptions opts;
  opts.keep_eigenvectors = false;
  opts.seed ^= c.seed;
  try {
    const SpectrumSet s = joint_spectrum(family, opts);
    ctx.result["spectrum"] = spectrum_json(s);
    ctx.csv = spectrum_csv(s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotCommuting) throw;
    ctx.warnings.push_back(std::string("non-commuting family, per-operator spectra reported: ") + e.what());
    json per = json::array();
    for (const auto& op : family) {
      const SpectrumSet s = joint_spectrum(std::vector<ChainOperator>{op}, opts);
      per.push_back(spectrum_json(s));
      ctx.csv += spectrum_csv(s);
    }
    ctx.result["per_operator"] = per;
  }
  maybe_write(c, "csv", ctx.csv);
}

void cmd_spec_verdict(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ColoredComplex x = load_complex(c.require("in")).colored();
  const std::string dim_text = c.get("dim", "0");
  const double tol = c.get_double("tol", 1e-6);
  ReferenceSpectrum reference = ReferenceSpectrum::parse(c.get("ref", "tree:k=3"));
  const std::string family_name = c.get("family", "adjacency");
  JointSpectrumOptions opts;
  opts.keep_eigenvectors = false;

  if (dim_text == "0+1") {
    if (reference.kind() != ReferenceKind::kInterval || reference.describe().rfind("tree:", 0) != 0) {
      throw Error(ErrorCode::kUnsupportedKind, "combined verdicts need a tree reference");
    }
    const int k = std::stoi(reference.describe().substr(7));
    const auto ops0 = make_family(x, 0, "adjacency");
    const auto ops1 = make_family(x, 1, "adjacency");
    const ReferenceSpectrum ref1 = ReferenceSpectrum::tree_edges(k);
    const TrivialSpectrum t0 = trivial_spectrum(x, ops0).merged(reference.model_trivial());
    const TrivialSpectrum t1 = trivial_spectrum(x, ops1).merged(ref1.model_trivial());
    const RamanujanVerdict v0 = ramanujan_verdict(joint_spectrum(ops0, opts), t0, reference, tol);
    const RamanujanVerdict v1 = ramanujan_verdict(joint_spectrum(ops1, opts), t1, ref1, tol);
    const SpectrumSet joint = direct_sum_family_spectrum(ops0, ops1, opts);
    const RamanujanVerdict vj = ramanujan_verdict(joint, direct_sum_trivial(t0, t1),
                                                  ReferenceSpectrum::direct_sum(reference, ref1), tol);
    ctx.result["reference"] = ReferenceSpectrum::direct_sum(reference, ref1).describe();
    ctx.result["dimension0"] = verdict_json(v0);
    ctx.result["dimension1"] = verdict_json(v1);
    ctx.result["combined"] = verdict_json(vj);
    ctx.result["ramanujan"] = vj.ramanujan;
    ctx.result["factors_agree"] = vj.ramanujan == (v0.ramanujan && v1.ramanujan);
    ctx.csv = verdict_csv(vj, joint.coordinates);
    maybe_write(c, "csv", ctx.csv);
    return;
  }

  const int dim = get_dim(c);
  const auto ops = make_family(x, dim, family_name);
  if (reference.kind() == ReferenceKind::kTorusImage && dim >= 1) {
    LocalFieldParams p;
    const auto desc = reference.describe();
    p.q = std::stoi(desc.substr(desc.find("q=") + 2));
    p.d = std::stoi(desc.substr(desc.find("d=") + 2));
    const int radius = static_cast<int>(c.get_int("empirical_radius", 2));
    reference = empirical_building_reference(p, radius, [&](const SimplicialComplex& ball) {
      return make_family(make_colored(ball, p.d, std::nullopt, {}), dim, family_name).at(0);
    });
    ctx.warnings.push_back("empirical reference: spectrum cloud of a generated building ball, interior cells only");
  }
  const SpectrumSet s = joint_spectrum(ops, opts);
  TrivialSpectrum trivial = trivial_spectrum(x, ops);
  const TrivialSpectrum model = reference.model_trivial();
  if (model.arity == trivial.arity) trivial = trivial.merged(model);
  const RamanujanVerdict v = ramanujan_verdict(s, trivial, reference, tol);
  ctx.result["reference"] = reference.describe();
  ctx.result["spectrum"] = spectrum_json(s);
  ctx.result["trivial"] = trivial_json(trivial);
  ctx.result["verdict"] = verdict_json(v);
  ctx.result["ramanujan"] = v.ramanujan;
  for (const auto& n : trivial.notes) ctx.warnings.push_back(n);
  ctx.csv = verdict_csv(v, s.coordinates);
  maybe_write(c, "csv", ctx.csv);
}

void cmd_scan_family(Context& ctx) {
  const RunConfig& c = ctx.config;
  const std::size_t k = positive(c, "k", 4);
  std::vector<std::size_t> sizes;
  {
    std::stringstream ss(c.get("sizes", "100,400,1600"));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        sizes.push_back(std::stoul(item));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidParams, "malformed size '" + item + "'");
      }
    }
  }
  const ReferenceSpectrum reference = ReferenceSpectrum::parse(c.get("ref", "tree:k=" + std::to_string(k)));
  std::vector<std::pair<std::string, SimplicialComplex>> family;
  for (std::size_t n : sizes) {
    family.emplace_back("regular:n=" + std::to_string(n) + ",k=" + std::to_string(k),
                        random_regular_graph(n, k, c.seed * 1000003ULL + n));
  }
  const std::size_t threads = thread_cap();
  const ScanReport r = alon_boppana_scan(
      family, [](const SimplicialComplex& x) { return std::vector<ChainOperator>{adjacency(x, 0, 1)}; }, reference,
      positive(c, "grid", 2001), threads);
  json members = json::array();
  std::ostringstream csv;
  csv << "name,vertices,injectivity_radius,spectral_points,epsilon,cumulative_epsilon\n";
  csv.precision(17);
  for (const auto& m : r.members) {
    members.push_back({{"name", m.name},
                       {"vertices", m.vertices},
                       {"injectivity_radius", m.injectivity_radius},
                       {"spectral_points", m.spectral_points},
                       {"epsilon", m.epsilon},
                       {"cumulative_epsilon", m.cumulative_epsilon}});
    csv << m.name << ',' << m.vertices << ',' << m.injectivity_radius << ',' << m.spectral_points << ','
        << m.epsilon << ',' << m.cumulative_epsilon << '\n';
  }
  ctx.result["reference"] = r.reference;
  ctx.result["interval"] = {r.lo, r.hi};
  ctx.result["grid"] = r.grid;
  ctx.result["members"] = members;
  ctx.result["epsilon_non_increasing"] = r.epsilon_non_increasing;
  ctx.result["epsilon_strictly_decreasing"] = r.epsilon_strictly_decreasing;
  ctx.csv = csv.str();
  maybe_write(c, "csv", ctx.csv);
}

void cmd_export(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ColoredComplex x = load_complex(c.require("in")).colored();
  const auto ops = make_family(x, get_dim(c), c.get("family", "adjacency"));
  const std::string out = c.require("out");
  json files = json::array();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::string suffix = ops.size() == 1 ? "" : "." + std::to_string(k);
    const std::string mtx = out + suffix;
    const std::string manifest = c.get("manifest", out + ".json") + suffix;
    export_operator(ops[k], mtx, manifest);
    files.push_back({{"operator", ops[k].label()}, {"matrix", mtx}, {"manifest", manifest}});
  }
  ctx.result["files"] = files;
}

}  // namespace

Report run(const RunConfig& config) {
  Context ctx{config, json::object(), {}, {}};
  const std::string& cmd = config.command;
  if (cmd == "generate") {
    cmd_generate(ctx);
  } else if (cmd == "building-ball") {
    cmd_building_ball(ctx);
  } else if (cmd == "quotient") {
    cmd_quotient(ctx);
  } else if (cmd == "lift") {
    cmd_lift(ctx);
  } else if (cmd == "spec-compute") {
    cmd_spec_compute(ctx);
  } else if (cmd == "spec-verdict") {
    cmd_spec_verdict(ctx);
  } else if (cmd == "scan-family") {
    cmd_scan_family(ctx);
  } else if (cmd == "export") {
    cmd_export(ctx);
  } else {
    throw Error(ErrorCode::kInvalidParams, "unknown command '" + cmd + "'");
  }
  json j;
  j["tool"] = "rlab";
  j["version"] = kVersion;
  j["command"] = cmd;
  j["config"] = json::parse(config.canonical_json());
  j["config_hash"] = hex64(config.hash());
  j["seed"] = config.seed;
  j["result"] = ctx.result;
  j["warnings"] = ctx.warnings;
  return {j.dump(2) + "\n", ctx.csv};
}

}  // namespace rlab
