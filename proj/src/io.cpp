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

#include "rlab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>
#include <unsupported/Eigen/SparseExtra>

#include "rlab/error.hpp"

namespace rlab {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidParams, what + ": " + e.what());
  }
}

template <class T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kInvalidParams, where + " has the wrong type");
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ColoredComplex ComplexFile::colored() const {
  return make_colored(complex, d.value_or(2), vertex_colors, edge_colors);
}

ComplexFile parse_complex(const std::string& json_text) {
  const json j = parse_json(json_text, "complex file");
  if (!j.is_object() || !j.contains("maximal_cells")) {
    throw Error(ErrorCode::kInvalidParams, "complex file needs a \"maximal_cells\" array");
  }
  const json& mc = j["maximal_cells"];
  if (!mc.is_array() || mc.empty()) throw Error(ErrorCode::kInvalidParams, "\"maximal_cells\" must be a nonempty array");
  std::vector<std::vector<VertexId>> cells;
  for (std::size_t k = 0; k < mc.size(); ++k) {
    const std::string where = "maximal_cells[" + std::to_string(k) + "]";
    const auto raw = get_as<std::vector<long long>>(mc[k], where);
    std::vector<VertexId> cell;
    for (long long v : raw) {
      if (v < 0 || v > 0xffffffffLL) throw Error(ErrorCode::kInvalidParams, where + " has an invalid vertex id");
      cell.push_back(static_cast<VertexId>(v));
    }
    cells.push_back(std::move(cell));
  }
  ComplexFile out;
  out.complex = SimplicialComplex::build(cells);
  if (j.contains("d")) {
    const int d = get_as<int>(j["d"], "\"d\"");
    if (d < 2) throw Error(ErrorCode::kInvalidParams, "\"d\" must be >= 2");
    out.d = d;
  }
  if (j.contains("vertex_colors")) out.vertex_colors = get_as<std::vector<int>>(j["vertex_colors"], "\"vertex_colors\"");
  if (j.contains("edge_colors")) {
    const json& ec = j["edge_colors"];
    if (!ec.is_array()) throw Error(ErrorCode::kInvalidParams, "\"edge_colors\" must be an array");
    for (std::size_t k = 0; k < ec.size(); ++k) {
      const std::string where = "edge_colors[" + std::to_string(k) + "]";
      const auto t = get_as<std::vector<long long>>(ec[k], where);
      if (t.size() != 3 || t[0] < 0 || t[1] < 0) throw Error(ErrorCode::kInvalidParams, where + " must be [u, v, color]");
      out.edge_colors.push_back({static_cast<VertexId>(t[0]), static_cast<VertexId>(t[1]), static_cast<int>(t[2])});
    }
  }
  return out;
}

ComplexFile load_complex(const std::string& path) {
  try {
    return parse_complex(read_text(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(std::string(error_code_name(e.code())).size() + 2));
  }
}

namespace {

json cells_json(const SimplicialComplex& x) {
  json cells = json::array();
  for (const Cell& c : x.maximal_cells()) cells.push_back(c.vertices());
  return cells;
}

}  // namespace

std::string complex_to_json(const SimplicialComplex& x) {
  json j;
  j["maximal_cells"] = cells_json(x);
  return j.dump() + "\n";
}

std::string colored_to_json(const ColoredComplex& x) {
  json j;
  j["maximal_cells"] = cells_json(x.complex);
  j["d"] = x.d;
  if (x.vertex_colors) j["vertex_colors"] = *x.vertex_colors;
  json ec = json::array();
  const auto& edges = x.complex.cells(1 <= x.complex.dimension() ? 1 : 0);
  if (x.complex.dimension() >= 1) {
    for (std::size_t e = 0; e < edges.size(); ++e) ec.push_back({edges[e][0], edges[e][1], x.edge_colors[e]});
  }
  j["edge_colors"] = ec;
  return j.dump() + "\n";
}

GroupAction parse_group(const std::string& json_text) {
  const json j = parse_json(json_text, "group file");
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array()) {
    throw Error(ErrorCode::kInvalidParams, "group file needs a \"generators\" array");
  }
  GroupAction g;
  for (std::size_t k = 0; k < j["generators"].size(); ++k) {
    g.generators.push_back(get_as<Permutation>(j["generators"][k], "generators[" + std::to_string(k) + "]"));
  }
  return g;
}

GroupAction load_group(const std::string& path) { return parse_group(read_text(path)); }

std::string group_to_json(const GroupAction& action) {
  json j;
  j["generators"] = action.generators;
  return j.dump() + "\n";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

std::string basis_manifest(const ChainBasis& basis) {
  json j;
  j["kind"] = chain_kind_name(basis.kind());
  j["dim"] = basis.dim();
  j["weight"] = basis.weight();
  json elems = json::array();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    elems.push_back({{"index", k}, {"cell", basis.cell_of(k).vertices()}, {"sign", basis.element(k).sign}});
  }
  j["elements"] = elems;
  return j.dump() + "\n";
}

void export_operator(const ChainOperator& op, const std::string& matrix_path, const std::string& manifest_path) {
  const Eigen::SparseMatrix<Scalar> col_major = op.matrix();
  if (!Eigen::saveMarket(col_major, matrix_path)) throw Error(ErrorCode::kIo, "cannot write " + matrix_path);
  json j;
  j["label"] = op.label();
  j["rows"] = op.matrix().rows();
  j["cols"] = op.matrix().cols();
  j["source"] = json::parse(basis_manifest(op.source()));
  j["target"] = json::parse(basis_manifest(op.target()));
  write_text(manifest_path, j.dump() + "\n");
}

SparseMatrix load_matrix_market(const std::string& path) {
  Eigen::SparseMatrix<Scalar> m;
  if (!Eigen::loadMarket(m, path)) throw Error(ErrorCode::kIo, "cannot read " + path);
  return m;
}

std::string spectrum_csv(const SpectrumSet& s) {
  std::ostringstream os;
  os << "index";
  for (const auto& c : s.coordinates) os << ",re_" << c << ",im_" << c;
  os << ",provenance\n";
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    os << k;
    for (const auto& v : s.points[k]) os << ',' << format_double(v.real()) << ',' << format_double(v.imag());
    os << ',' << (k < s.provenance.size() ? s.provenance[k] : "") << '\n';
  }
  return os.str();
}

std::string verdict_csv(const RamanujanVerdict& v, const std::vector<std::string>& coordinates) {
  std::ostringstream os;
  for (const auto& c : coordinates) os << "re_" << c << ",im_" << c << ',';
  os << "multiplicity,class,trivial_distance,reference_distance\n";
  for (const auto& p : v.points) {
    for (const auto& x : p.value) os << format_double(x.real()) << ',' << format_double(x.imag()) << ',';
    os << p.multiplicity << ',' << point_class_name(p.classification) << ','
       << format_double(p.trivial_distance) << ',' << format_double(p.reference_distance) << '\n';
  }
  return os.str();
}

}  // namespace rlab
