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

#include <algorithm>
#include <chrono>
#include <iterator>
#include <stdexcept>
#include <string>

#include "synclouvain/quality.hpp"
#include "synclouvain/sync_louvain.hpp"

namespace synclouvain {

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::kAssign:
      return "assign";
    case Phase::kComponents:
      return "components";
    case Phase::kPositive:
      return "positive";
    case Phase::kMaximal:
      return "maximal";
    case Phase::kAggregate:
      return "aggregate";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (!(accept_prob > 0.0 && accept_prob <= 1.0)) {
    throw std::invalid_argument("accept_prob must lie in (0, 1]");
  }
  if (max_outer_iters < 1) throw std::invalid_argument("max_outer_iters must be >= 1");
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
  if (cycle_cut_cap < 2) throw std::invalid_argument("cycle_cut_cap must be >= 2");
}

namespace detail {
std::vector<NodeId> assign_targets(const Graph& graph, const Strengths& strengths, int threads);
}  // namespace detail

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class LevelRunner {
 public:
  LevelRunner(const RunConfig& config, Hierarchy& out) : config_(config), out_(out) {}

  // Runs one level on `graph`; returns the final forest.
  AssignmentForest run_level(const Graph& graph, const Strengths& strengths, int level,
                             LevelSummary& summary) {
    auto t0 = Clock::now();
    std::vector<NodeId> targets = detail::assign_targets(graph, strengths, config_.threads);
    out_.times.assign += seconds_since(t0);
    t0 = Clock::now();
    AssignmentForest forest = extract_components(std::move(targets));
    out_.times.components += seconds_since(t0);
    notify(level, Phase::kAssign, graph, strengths, &forest);
    notify(level, Phase::kComponents, graph, strengths, &forest);

    forest = positive(graph, strengths, forest, level, summary);

    std::vector<NodeId> outstanding;
    bool tracking = false;
    for (int sweep = 0;; ++sweep) {
      if (sweep == config_.max_sweeps) {
        warn("level " + std::to_string(level) + ": sweep cap " +
             std::to_string(config_.max_sweeps) + " reached");
        break;
      }
      t0 = Clock::now();
      MaximalResult r = maximal_correction(graph, strengths, forest, config_, level, sweep);
      out_.times.maximal += seconds_since(t0);
      ++summary.sweeps;
      summary.maximal_moves += r.accepted;
      forest = std::move(r.forest);
      notify(level, Phase::kMaximal, graph, strengths, &forest);
      if (r.accepted > 0) {
        forest = positive(graph, strengths, forest, level, summary);
        tracking = false;
        continue;
      }
      // Nothing moved: only candidates that have never been drawn since the
      // last change stay open.
      if (tracking) {
        std::vector<NodeId> still;
        std::set_intersection(outstanding.begin(), outstanding.end(), r.deferred.begin(),
                              r.deferred.end(), std::back_inserter(still));
        outstanding.swap(still);
      } else {
        outstanding = std::move(r.deferred);
        tracking = true;
      }
      if (outstanding.empty()) break;
    }
    return forest;
  }

  void warn(const std::string& message) {
    out_.warnings.push_back(message);
    if (config_.observer != nullptr) config_.observer->on_warning(message);
  }

  void notify(int level, Phase phase, const Graph& graph, const Strengths& strengths,
              const AssignmentForest* forest) {
    if (config_.observer != nullptr) {
      config_.observer->on_phase({level, phase, &graph, &strengths, forest});
    }
  }

 private:
  AssignmentForest positive(const Graph& graph, const Strengths& strengths,
                            const AssignmentForest& forest, int level, LevelSummary& summary) {
    const auto t0 = Clock::now();
    PositiveStats stats;
    AssignmentForest result = positive_correction(graph, strengths, forest, config_, level, &stats);
    out_.times.positive += seconds_since(t0);
    summary.positive_corrections += stats.total();
    if (stats.capped_cycles > 0) {
      warn("level " + std::to_string(level) + ": " + std::to_string(stats.capped_cycles) +
           " cycle(s) above the pair-cut cap");
    }
    notify(level, Phase::kPositive, graph, strengths, &result);
    return result;
  }

  const RunConfig& config_;
  Hierarchy& out_;
};

LevelSummary identity_summary(const Graph& graph, const Strengths& strengths) {
  LevelSummary s;
  s.nodes = graph.num_nodes();
  s.edges = graph.num_edges();
  s.communities = graph.num_nodes();
  const auto identity = Partition::singletons(graph.num_nodes());
  s.score = modularity(graph, strengths, identity.labels());
  return s;
}

}  // namespace

Hierarchy run(const Graph& graph, const RunConfig& config) {
  config.validate();
  if (graph.num_nodes() == 0) throw std::invalid_argument("graph has no nodes");
  Hierarchy out;
  out.flat = Partition::singletons(graph.num_nodes());
  LevelRunner runner(config, out);

  Graph current = graph;
  Strengths strengths = compute_strengths(current);
  double prev_score = modularity(current, strengths, out.flat.labels());
  for (int level = 0;; ++level) {
    if (level == config.max_outer_iters) {
      runner.warn("outer iteration cap " + std::to_string(config.max_outer_iters) + " reached");
      out.levels.push_back(Partition::singletons(current.num_nodes()));
      out.summaries.push_back(identity_summary(current, strengths));
      break;
    }
    LevelSummary summary;
    summary.nodes = current.num_nodes();
    summary.edges = current.num_edges();
    AssignmentForest forest = runner.run_level(current, strengths, level, summary);
    summary.communities = forest.num_communities;
    summary.score = modularity(current, strengths, forest.community);

    if (forest.num_communities == current.num_nodes()) {
      out.levels.push_back(Partition::singletons(current.num_nodes()));
      summary.score = prev_score;
      out.summaries.push_back(summary);
      break;
    }
    if (summary.score < prev_score) {
      runner.warn("level " + std::to_string(level) + " lowered modularity from " +
                  std::to_string(prev_score) + " to " + std::to_string(summary.score) +
                  "; level discarded");
      out.levels.push_back(Partition::singletons(current.num_nodes()));
      out.summaries.push_back(identity_summary(current, strengths));
      break;
    }
    Partition level_partition = forest.partition();
    out.flat = compose(out.flat, level_partition);
    out.summaries.push_back(summary);
    prev_score = summary.score;

    const auto t0 = Clock::now();
    current = aggregate(current, level_partition);
    strengths = compute_strengths(current);
    out.times.aggregate += seconds_since(t0);
    out.levels.push_back(std::move(level_partition));
    runner.notify(level, Phase::kAggregate, current, strengths, nullptr);
  }
  return out;
}

}  // namespace synclouvain
