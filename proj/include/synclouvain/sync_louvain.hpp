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

// Synchronized Louvain community detection.
//
// One level:
//   assign     every node points at its best neighbor (or itself)
//   components WCCs of the assignment graph become communities
//   positive   bisect communities until no node has negative local gain
//   repeat { maximal; positive } until a sweep accepts nothing
// then every community is collapsed into a super node and the next level
// runs on the aggregated graph, until a level yields the identity.
//
// Every phase is a read-only parallel map followed by a single-writer
// commit, so results do not depend on the thread count.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "synclouvain/forest.hpp"
#include "synclouvain/graph.hpp"
#include "synclouvain/quality.hpp"

namespace synclouvain {

enum class Phase { kAssign, kComponents, kPositive, kMaximal, kAggregate };
const char* phase_name(Phase phase);

enum class CorrectionKind { kBranchCut, kCycleCut, kIsolate, kMove };

struct CorrectionEvent {
  int level = 0;
  CorrectionKind kind = CorrectionKind::kMove;
  double gain = 0.0;
  const Graph* graph = nullptr;
  const Strengths* strengths = nullptr;
  // Current labeling of the level graph right after the correction. Labels
  // are not dense.
  std::span<const CommunityId> labels;
};

struct PhaseEvent {
  int level = 0;
  Phase phase = Phase::kAssign;
  const Graph* graph = nullptr;
  const Strengths* strengths = nullptr;
  const AssignmentForest* forest = nullptr;  // null for kAggregate
};

// Instrumentation hooks. Installing an observer serializes the positive
// phase so that every correction is reported against a consistent labeling.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_phase(const PhaseEvent&) {}
  virtual void on_correction(const CorrectionEvent&) {}
  virtual void on_warning(const std::string&) {}
};

struct RunConfig {
  int threads = 1;
  std::uint64_t seed = 0;
  // Acceptance probability of a maximal correction, in (0, 1].
  double accept_prob = 0.5;
  int max_outer_iters = 64;
  int max_sweeps = 100;
  // Cycles longer than this skip the O(L^2) pair-cut search.
  std::size_t cycle_cut_cap = 10000;
  // Re-derive incremental state after every phase and throw
  // ContractViolation on mismatch.
  bool verify = false;
  RunObserver* observer = nullptr;

  // Throws std::invalid_argument.
  void validate() const;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct PositiveStats {
  std::size_t communities_checked = 0;
  std::size_t branch_cuts = 0;
  std::size_t cycle_cuts = 0;
  std::size_t isolations = 0;
  std::size_t capped_cycles = 0;
  std::size_t total() const { return branch_cuts + cycle_cuts + isolations; }
};

struct MaximalResult {
  AssignmentForest forest;
  std::size_t candidates = 0;
  std::size_t accepted = 0;
  // Candidates not evaluated this sweep: draw >= p, or a stale premise.
  std::vector<NodeId> deferred;
  bool improved() const { return accepted > 0; }
};

struct PhaseTimes {
  double assign = 0.0;
  double components = 0.0;
  double positive = 0.0;
  double maximal = 0.0;
  double aggregate = 0.0;
};

struct LevelSummary {
  NodeId nodes = 0;
  std::size_t edges = 0;
  CommunityId communities = 0;
  int sweeps = 0;
  std::size_t positive_corrections = 0;
  std::size_t maximal_moves = 0;
  double score = 0.0;
};

struct Hierarchy {
  // levels[t] labels the nodes of the level-t graph; the last entry is the
  // identity partition.
  std::vector<Partition> levels;
  Partition flat;
  std::vector<LevelSummary> summaries;
  PhaseTimes times;
  std::vector<std::string> warnings;
};

// a(i) = neighbor j (out or in, j != i) maximizing the pair gain
// Q({i,j}) - Q({i},{j}); a(i) = i when that maximum is <= 0. Ties go to the
// lowest id. Returns the extracted forest.
AssignmentForest find_assignment(const Graph& graph, const Strengths& strengths,
                                 int threads = 1);

// Splits communities holding a node with negative local gain, always by the
// best single bisection (one branch edge or two cycle edges removed), and
// detaches the worst node alone when no bisection has positive gain.
AssignmentForest positive_correction(const Graph& graph, const Strengths& strengths,
                                     const AssignmentForest& forest, const RunConfig& config,
                                     int level = 0, PositiveStats* stats = nullptr);

// One synchronous sweep of tail moves towards each node's best neighboring
// community.
MaximalResult maximal_correction(const Graph& graph, const Strengths& strengths,
                                 const AssignmentForest& forest, const RunConfig& config,
                                 int level, int sweep);

// Full hierarchical run. Throws std::invalid_argument on an empty graph.
Hierarchy run(const Graph& graph, const RunConfig& config);

}  // namespace synclouvain
