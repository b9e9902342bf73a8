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

// Maximal corrections: one synchronous sweep.
//
//  1. (parallel, read-only) every node picks the neighboring community
//     with the largest single-node move gain; candidates are nodes whose
//     pick differs from their own community.
//  2. candidates draw u ~ U[0,1) keyed (seed, level, sweep, node); those
//     with u < p get their tail gain evaluated speculatively on the
//     snapshot (parallel).
//  3. (serial, ascending node id) commits. A candidate whose source
//     community already changed this sweep, or whose target lost nodes,
//     is deferred. If the target only gained nodes the gain is recomputed
//     on the live state, so every commit has exact positive gain.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "synclouvain/quality.hpp"
#include "synclouvain/rng.hpp"
#include "synclouvain/sync_louvain.hpp"

namespace synclouvain {
namespace {

struct Accumulator {
  std::vector<double> weight;
  std::vector<CommunityId> touched;
  explicit Accumulator(CommunityId c) : weight(c, 0.0) {}
};

// Best neighbor of `node` inside community `to` under `labels`, by pair gain.
NodeId best_attachment(const Graph& graph, const Strengths& strengths,
                       std::span<const CommunityId> labels, NodeId node, CommunityId to) {
  const double m = strengths.total;
  auto outs = graph.out_neighbors(node);
  auto out_w = graph.out_weights(node);
  auto ins = graph.in_neighbors(node);
  auto in_w = graph.in_weights(node);
  std::size_t a = 0;
  std::size_t b = 0;
  NodeId best = node;
  double best_gain = -std::numeric_limits<double>::infinity();
  while (a < outs.size() || b < ins.size()) {
    NodeId j;
    double link;
    if (b == ins.size() || (a < outs.size() && outs[a] < ins[b])) {
      j = outs[a];
      link = out_w[a++];
    } else if (a == outs.size() || ins[b] < outs[a]) {
      j = ins[b];
      link = in_w[b++];
    } else {
      j = outs[a];
      link = out_w[a++] + in_w[b++];
    }
    if (j == node || labels[j] != to) continue;
    const double gain = insert_gain_from_sums(link, strengths.out[node], strengths.in[node],
                                              strengths.out[j], strengths.in[j], m);
    if (gain > best_gain) {
      best_gain = gain;
      best = j;
    }
  }
  return best;
}

}  // namespace

MaximalResult maximal_correction(const Graph& graph, const Strengths& strengths,
                                 const AssignmentForest& forest, const RunConfig& config,
                                 int level, int sweep) {
  config.validate();
  const NodeId n = forest.size();
  const double m = strengths.total;
  MaximalResult result;
  if (m == 0.0 || n == 0) {
    result.forest = forest;
    return result;
  }
  std::span<const CommunityId> labels = forest.community;
  const CommunityId num_c = forest.num_communities;
  const auto aggregates = CommunityAggregates::build(strengths, labels, num_c);

  // Phase 1: best community per node.
  std::vector<CommunityId> best_target(n);
  detail::parallel_for_scratch(
      n, config.threads, 256, [&] { return Accumulator(num_c); },
      [&](std::size_t idx, Accumulator& acc) {
        const auto i = static_cast<NodeId>(idx);
        const CommunityId own = labels[i];
        auto add = [&](std::span<const NodeId> nbrs, std::span<const double> weights) {
          for (std::size_t k = 0; k < nbrs.size(); ++k) {
            if (nbrs[k] == i) continue;
            const CommunityId c = labels[nbrs[k]];
            if (acc.weight[c] == 0.0) acc.touched.push_back(c);
            acc.weight[c] += weights[k];
          }
        };
        add(graph.out_neighbors(i), graph.out_weights(i));
        add(graph.in_neighbors(i), graph.in_weights(i));
        const double so = strengths.out[i];
        const double si = strengths.in[i];
        const double stay =
            aggregates.size[own] > 1
                ? insert_gain_from_sums(acc.weight[own], so, si, aggregates.out[own] - so,
                                        aggregates.in[own] - si, m)
                : 0.0;
        CommunityId best = own;
        double best_delta = 0.0;
        for (CommunityId c : acc.touched) {
          if (c == own) continue;
          const double delta = insert_gain_from_sums(acc.weight[c], so, si, aggregates.out[c],
                                                     aggregates.in[c], m) -
                               stay;
          if (delta > best_delta || (delta == best_delta && best != own && c < best)) {
            best_delta = delta;
            best = c;
          }
        }
        for (CommunityId c : acc.touched) acc.weight[c] = 0.0;
        acc.touched.clear();
        best_target[i] = best;
      });

  // Phase 2: draws and speculative tail gains.
  std::vector<NodeId> evaluated;
  for (NodeId i = 0; i < n; ++i) {
    if (best_target[i] == labels[i]) continue;
    ++result.candidates;
    if (counter_uniform(config.seed, static_cast<std::uint64_t>(level),
                        static_cast<std::uint64_t>(sweep), i) < config.accept_prob) {
      evaluated.push_back(i);
    } else {
      result.deferred.push_back(i);
    }
  }

  // Tree children of the snapshot forest.
  std::vector<std::size_t> child_offsets(std::size_t{n} + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (!forest.on_cycle[v]) ++child_offsets[std::size_t{forest.target[v]} + 1];
  }
  for (NodeId v = 0; v < n; ++v) child_offsets[v + 1] += child_offsets[v];
  std::vector<NodeId> children(child_offsets[n]);
  {
    std::vector<std::size_t> cursor(child_offsets.begin(), child_offsets.end() - 1);
    for (NodeId v = 0; v < n; ++v) {
      if (!forest.on_cycle[v]) children[cursor[forest.target[v]]++] = v;
    }
  }

  // Cycle nodes move their whole community: one evaluation per
  // (from, to) pair.
  std::vector<std::pair<CommunityId, CommunityId>> merges;
  for (NodeId i : evaluated) {
    if (forest.on_cycle[i]) merges.emplace_back(labels[i], best_target[i]);
  }
  std::sort(merges.begin(), merges.end());
  merges.erase(std::unique(merges.begin(), merges.end()), merges.end());
  std::vector<double> merge_gain(merges.size());
  detail::parallel_for(merges.size(), config.threads, [&](std::size_t t) {
    const auto [from, to] = merges[t];
    merge_gain[t] = gain_switch_with(graph, strengths, aggregates, labels, forest.members_of(from),
                                     from, to, [](NodeId) { return true; });
  });
  auto merge_index = [&](CommunityId from, CommunityId to) {
    return static_cast<std::size_t>(
        std::lower_bound(merges.begin(), merges.end(), std::make_pair(from, to)) - merges.begin());
  };

  std::vector<std::vector<NodeId>> tails(evaluated.size());
  std::vector<double> spec_gain(evaluated.size());
  struct Marks {
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch = 0;
  };
  detail::parallel_for_scratch(
      evaluated.size(), config.threads, 64, [&] { return Marks{std::vector<std::uint32_t>(n, 0), 0}; },
      [&](std::size_t t, Marks& marks) {
        const NodeId i = evaluated[t];
        if (forest.on_cycle[i]) {
          spec_gain[t] = merge_gain[merge_index(labels[i], best_target[i])];
          return;
        }
        auto& tail = tails[t];
        tail.push_back(i);
        for (std::size_t h = 0; h < tail.size(); ++h) {
          const NodeId v = tail[h];
          for (std::size_t e = child_offsets[v]; e < child_offsets[v + 1]; ++e) tail.push_back(children[e]);
        }
        const std::uint32_t epoch = ++marks.epoch;
        for (NodeId v : tail) marks.stamp[v] = epoch;
        spec_gain[t] = gain_switch_with(graph, strengths, aggregates, labels, tail, labels[i],
                                        best_target[i],
                                        [&](NodeId v) { return marks.stamp[v] == epoch; });
      });

  // Phase 3: serial commit.
  std::vector<NodeId> target = forest.target;
  std::vector<CommunityId> live(labels.begin(), labels.end());
  CommunityAggregates live_agg = aggregates;
  std::vector<char> lost(num_c, 0);
  std::vector<char> gained(num_c, 0);
  std::vector<char> moving(n, 0);
  for (std::size_t t = 0; t < evaluated.size(); ++t) {
    const NodeId i = evaluated[t];
    const CommunityId from = labels[i];
    const CommunityId to = best_target[i];
    if (lost[from] || gained[from] || lost[to]) {
      result.deferred.push_back(i);
      continue;
    }
    std::span<const NodeId> tail = forest.on_cycle[i] ? forest.members_of(from)
                                                      : std::span<const NodeId>(tails[t]);
    double gain = spec_gain[t];
    if (gained[to]) {
      for (NodeId v : tail) moving[v] = 1;
      gain = gain_switch_with(graph, strengths, live_agg, live, tail, from, to,
                              [&](NodeId v) { return moving[v] != 0; });
      for (NodeId v : tail) moving[v] = 0;
    }
    if (!(gain > 0.0)) continue;
    target[i] = best_attachment(graph, strengths, live, i, to);
    for (NodeId v : tail) {
      live[v] = to;
      live_agg.move_node(v, from, to, strengths);
    }
    lost[from] = 1;
    gained[to] = 1;
    ++result.accepted;
    if (config.observer != nullptr) {
      config.observer->on_correction({level, CorrectionKind::kMove, gain, &graph, &strengths, live});
    }
  }
  std::sort(result.deferred.begin(), result.deferred.end());

  result.forest = extract_components(std::move(target));
  if (config.verify) {
    const auto fresh = CommunityAggregates::build(strengths, live, num_c);
    for (CommunityId c = 0; c < num_c; ++c) {
      const double tol = 1e-9 * std::max(1.0, m);
      if (fresh.size[c] != live_agg.size[c] || std::abs(fresh.out[c] - live_agg.out[c]) > tol ||
          std::abs(fresh.in[c] - live_agg.in[c]) > tol) {
        throw ContractViolation("maximal correction: aggregates of community " +
                                std::to_string(c) + " drifted");
      }
    }
    // The committed labels and the rebuilt forest must group nodes alike.
    if (canonical_labels(live) != result.forest.community) {
      throw ContractViolation("maximal correction: forest components disagree with labels");
    }
  }
  return result;
}

}  // namespace synclouvain
