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

// rlab: command-line front end over the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlab/rlab.h"

namespace {

struct Param {
  std::string key;
  CLI::Option* option = nullptr;
  std::shared_ptr<std::string> value;
};

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::vector<Param> params;
  std::uint64_t seed = 1;
  std::string report_path;

  void add(const std::string& flag, const std::string& key, const std::string& help) {
    Param p{key, nullptr, std::make_shared<std::string>()};
    p.option = app->add_option(flag, *p.value, help);
    params.push_back(std::move(p));
  }
  void add_required(const std::string& flag, const std::string& key, const std::string& help) {
    add(flag, key, help);
    params.back().option->required();
  }
};

Command& make_command(std::vector<std::unique_ptr<Command>>& all, CLI::App* app, const std::string& name) {
  auto c = std::make_unique<Command>();
  c->name = name;
  c->app = app;
  app->add_option("--seed", c->seed, "seed for every randomized step");
  app->add_option("--report", c->report_path, "write the JSON report here instead of stdout");
  all.push_back(std::move(c));
  return *all.back();
}

int run_command(const Command& c) {
  nlohmann::json config;
  config["command"] = c.name;
  config["seed"] = c.seed;
  config["deterministic"] = true;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& p : c.params) {
    if (p.option->count() > 0) params[p.key] = *p.value;
  }
  config["params"] = params;
  char* report = nullptr;
  const rlab_status status = rlab_run(config.dump().c_str(), &report, nullptr);
  if (status != RLAB_OK) {
    std::cerr << "rlab: " << rlab_last_error() << "\n";
    return rlab_exit_code(status);
  }
  if (c.report_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(c.report_path, std::ios::binary);
    out << report;
    if (!out) {
      std::cerr << "rlab: cannot write " << c.report_path << "\n";
      rlab_string_free(report);
      return 2;
    }
  }
  rlab_string_free(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral verdicts for simplicial complexes, their covers and building quotients"};
  app.set_version_flag("--version", rlab_version());
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;

  {
    auto* sub = app.add_subcommand("generate", "write a generated complex");
    Command& c = make_command(commands, sub, "generate");
    c.add_required("kind", "kind",
                   "cycle | path | complete | simplex | petersen | bipartite | regular | tree | torus | "
                   "tripartite | random-complex");
    c.add("--n", "n", "vertex count (cycle, path, complete, simplex, regular, random-complex) or torus rows");
    c.add("--k", "k", "degree (regular, tree)");
    c.add("--m", "m", "torus columns");
    c.add("--a", "a", "first side (bipartite)");
    c.add("--b", "b", "second side (bipartite)");
    c.add("--s", "s", "part size (tripartite)");
    c.add("--radius", "radius", "tree radius");
    c.add("--max-dim", "max_dim", "largest cell dimension (random-complex)");
    c.add("--cells", "cells", "random cells (random-complex)");
    c.add("--out", "out", "complex file to write");
  }
  {
    auto* building = app.add_subcommand("building", "building balls");
    building->require_subcommand(1);
    auto* sub = building->add_subcommand("ball", "ball around the base lattice class");
    Command& c = make_command(commands, sub, "building-ball");
    c.add("--q", "q", "residue field size (prime power)");
    c.add("--d", "d", "rank");
    c.add_required("--radius", "radius", "ball radius");
    c.add("--division-degree", "division_degree", "degree of the division algebra (d = 2 only)");
    c.add("--max-vertices", "max_vertices", "vertex budget");
    c.add("--out", "out", "colored complex file to write");
  }
  {
    auto* sub = app.add_subcommand("quotient", "quotient by a group action");
    Command& c = make_command(commands, sub, "quotient");
    c.add_required("--in", "in", "complex file");
    c.add_required("--group", "group", "group file");
    c.add("--max-order", "max_order", "group order cap");
    c.add("--out", "out", "quotient file to write");
  }
  {
    auto* sub = app.add_subcommand("lift", "random permutation lift of a graph");
    Command& c = make_command(commands, sub, "lift");
    c.add_required("--in", "in", "graph file");
    c.add("--degree", "degree", "number of sheets");
    c.add("--out", "out", "cover file to write");
  }
  {
    auto* spec = app.add_subcommand("spec", "spectra and verdicts");
    spec->require_subcommand(1);
    auto* compute = spec->add_subcommand("compute", "joint spectrum of an operator family");
    Command& c = make_command(commands, compute, "spec-compute");
    c.add_required("--in", "in", "complex file");
    c.add("--dim", "dim", "cell dimension");
    c.add("--family", "family", "adjacency | laplacian | laplacian-up | laplacian-down | hecke | cell:J");
    c.add("--csv", "csv", "spectral table to write");
    auto* verdict = spec->add_subcommand("verdict", "Ramanujan verdict against a reference spectrum");
    Command& v = make_command(commands, verdict, "spec-verdict");
    v.add_required("--in", "in", "complex file");
    v.add("--dim", "dim", "cell dimension, or 0+1 for the combined vertex and edge family");
    v.add("--family", "family", "operator family");
    v.add("--ref", "ref", "tree:k=K | tree-edges:k=K | building:q=Q,d=D | interval:lo=A,hi=B");
    v.add("--tol", "tol", "verdict tolerance");
    v.add("--empirical-radius", "empirical_radius", "ball radius for empirical references");
    v.add("--csv", "csv", "verdict table to write");
  }
  {
    auto* scan = app.add_subcommand("scan", "family scans");
    scan->require_subcommand(1);
    auto* sub = scan->add_subcommand("family", "covering radius of random regular graph spectra");
    Command& c = make_command(commands, sub, "scan-family");
    c.add("--k", "k", "degree");
    c.add("--sizes", "sizes", "comma-separated vertex counts");
    c.add("--ref", "ref", "reference (default tree:k=K)");
    c.add("--grid", "grid", "grid points over the reference interval");
    c.add("--csv", "csv", "table to write");
  }
  {
    auto* sub = app.add_subcommand("export", "write operators as MatrixMarket files");
    Command& c = make_command(commands, sub, "export");
    c.add_required("--in", "in", "complex file");
    c.add("--dim", "dim", "cell dimension");
    c.add("--family", "family", "operator family");
    c.add_required("--out", "out", "MatrixMarket file");
    c.add("--manifest", "manifest", "basis manifest (default OUT.json)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (const auto& c : commands) {
    if (c->app->parsed()) return run_command(*c);
  }
  return 2;
}
