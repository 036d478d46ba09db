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
#include <map>
#include <string>
#include <vector>

#include "rlab/building.hpp"
#include "rlab/operators.hpp"

namespace rlab {

inline constexpr const char* kVersion = "0.1.0";

/// One pipeline invocation. Parameters are kept as strings in sorted order so
/// the canonical form, and hence the hash, is independent of argument order.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  bool deterministic = true;

  /// {"command": ..., "seed": ..., "deterministic": ..., "params": {...}}.
  static RunConfig from_json(const std::string& text);
  std::string canonical_json() const;
  /// FNV-1a 64 of canonical_json().
  std::uint64_t hash() const;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = {}) const;
  std::string require(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key, double fallback) const;
};

struct Report {
  std::string json;  // deterministic body
  std::string csv;   // spectral table, may be empty
};

/// Commands: generate, building-ball, quotient, lift, spec-compute,
/// spec-verdict, scan-family, export. Files named by "out", "csv" and
/// "manifest" are written as a side effect.
Report run(const RunConfig& config);

/// Operator family by name on dimension `dim`: "adjacency" (a_{0;1} on
/// vertices, lower adjacency on higher cells), "laplacian", "laplacian-up",
/// "laplacian-down", "hecke" (dimension 0), "cell:J" (a_{dim;J}).
/// Throws UnsupportedKind.
std::vector<ChainOperator> make_family(const ColoredComplex& x, int dim, const std::string& family);

/// RLAB_THREADS when set and positive, otherwise the hardware concurrency.
std::size_t thread_cap();

}  // namespace rlab
