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

#include <optional>
#include <string>
#include <vector>

#include "rlab/building.hpp"
#include "rlab/complex.hpp"
#include "rlab/operators.hpp"
#include "rlab/spectra.hpp"

namespace rlab {

/// Contents of a complex file. Colors are kept as written; `colored()`
/// validates them.
struct ComplexFile {
  SimplicialComplex complex;
  std::optional<int> d;
  std::optional<std::vector<int>> vertex_colors;
  std::vector<DirectedEdgeColor> edge_colors;

  bool has_coloring() const { return d.has_value() || vertex_colors.has_value() || !edge_colors.empty(); }
  /// Throws ColoringInconsistent. Uncolored files become d = 2 with every
  /// edge colored 1.
  ColoredComplex colored() const;
};

/// {"maximal_cells": [[v...]], "d"?: int, "vertex_colors"?: [c...],
///  "edge_colors"?: [[u, v, c]...]}. Throws InvalidParams with a location.
ComplexFile parse_complex(const std::string& json_text);
ComplexFile load_complex(const std::string& path);

std::string complex_to_json(const SimplicialComplex& x);
std::string colored_to_json(const ColoredComplex& x);

/// {"generators": [[image of 0, image of 1, ...]...]}.
GroupAction parse_group(const std::string& json_text);
GroupAction load_group(const std::string& path);
std::string group_to_json(const GroupAction& action);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Cell <-> index mapping of a chain basis.
std::string basis_manifest(const ChainBasis& basis);
/// MatrixMarket coordinate file plus a JSON manifest for source and target.
void export_operator(const ChainOperator& op, const std::string& matrix_path,
                     const std::string& manifest_path);
SparseMatrix load_matrix_market(const std::string& path);

/// One row per point: index, re/im per coordinate, provenance.
std::string spectrum_csv(const SpectrumSet& s);
/// One row per distinct point with multiplicity and classification.
std::string verdict_csv(const RamanujanVerdict& v, const std::vector<std::string>& coordinates);

}  // namespace rlab
