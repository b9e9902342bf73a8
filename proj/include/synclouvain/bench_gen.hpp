// Copyright 2026 The synclouvain Authors.
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

// LFR-style planted-partition benchmark graphs, directed and weighted.
//
// Out-degrees follow a power law (exponent 2) truncated to [d_min, kmax],
// with d_min chosen so the expected mean is k. Each out-stub is internal
// with probability 1 - mu_t, otherwise it lands on a uniform node outside
// the community. Community sizes follow a power law (exponent 1) and
// nodes are placed largest internal degree first. Each node's out-strength
// equals its out-degree, split so that a fraction mu_w leaves the
// community.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synclouvain/graph.hpp"

namespace synclouvain {

struct BenchSpec {
  NodeId n = 1000;
  double k = 50.0;  // target mean out-degree
  NodeId kmax = 100;
  double mu_t = 0.2;
  double mu_w = 0.1;
  NodeId cmin = 10;
  NodeId cmax = 100;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the violated constraint. Returns
  // warnings for accepted but discouraged settings (mu_t == mu_w).
  std::vector<std::string> validate() const;
  // `key=value` lines describing the parameters and the fixed exponents.
  std::vector<std::string> header() const;
};

struct PlantedGraph {
  Graph graph;
  Partition truth;
  std::vector<std::string> warnings;
};

// Deterministic in the spec. Throws std::invalid_argument when the spec
// is infeasible.
PlantedGraph generate(const BenchSpec& spec);

struct MixingStats {
  double mean_degree = 0.0;        // edges / nodes
  double edge_fraction = 0.0;      // inter-community share of edges
  double strength_fraction = 0.0;  // inter-community share of weight
};

MixingStats measure_mixing(const Graph& graph, const Partition& truth);

}  // namespace synclouvain
