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

#include "synclouvain/quality.hpp"

#include <algorithm>
#include <stdexcept>

namespace synclouvain {

QualityParams QualityParams::configuration_energy(const Strengths& strengths) {
  GenericModel model;
  model.alpha = [](NodeId, NodeId) { return 1.0; };
  model.beta = [&strengths](NodeId i, NodeId j) {
    return strengths.total == 0.0 ? 0.0 : strengths.out[i] * strengths.in[j] / strengths.total;
  };
  return generic(std::move(model));
}

CommunityAggregates CommunityAggregates::build(const Strengths& strengths,
                                               std::span<const CommunityId> labels,
                                               CommunityId num_labels) {
  CommunityAggregates agg;
  agg.out.assign(num_labels, 0.0);
  agg.in.assign(num_labels, 0.0);
  agg.size.assign(num_labels, 0);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    agg.out[labels[v]] += strengths.out[v];
    agg.in[labels[v]] += strengths.in[v];
    ++agg.size[labels[v]];
  }
  return agg;
}

void CommunityAggregates::move_node(NodeId node, CommunityId from, CommunityId to,
                                    const Strengths& strengths) {
  out[from] -= strengths.out[node];
  in[from] -= strengths.in[node];
  --size[from];
  out[to] += strengths.out[node];
  in[to] += strengths.in[node];
  ++size[to];
}

double modularity(const Graph& graph, const Strengths& strengths,
                  std::span<const CommunityId> labels) {
  const double m = strengths.total;
  if (m == 0.0) return 0.0;
  CommunityId num_labels = 0;
  for (CommunityId c : labels) num_labels = std::max(num_labels, c + 1);
  std::vector<double> internal(num_labels, 0.0);
  std::vector<double> out(num_labels, 0.0);
  std::vector<double> in(num_labels, 0.0);
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    const CommunityId cu = labels[u];
    out[cu] += strengths.out[u];
    in[cu] += strengths.in[u];
    auto targets = graph.out_neighbors(u);
    auto weights = graph.out_weights(u);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (labels[targets[k]] == cu) internal[cu] += weights[k];
    }
  }
  double q = 0.0;
  for (CommunityId c = 0; c < num_labels; ++c) q += internal[c] - out[c] * in[c] / m;
  return q / m;
}

namespace {

double generic_score(const Graph& graph, const Partition& partition, const GenericModel& model) {
  if (!model.alpha || !model.beta) throw std::invalid_argument("generic model needs alpha and beta");
  const NodeId n = graph.num_nodes();
  std::vector<std::vector<NodeId>> members(partition.num_communities());
  for (NodeId v = 0; v < n; ++v) members[partition[v]].push_back(v);
  double reward = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    auto targets = graph.out_neighbors(u);
    auto weights = graph.out_weights(u);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (partition[targets[k]] == partition[u]) reward += model.alpha(u, targets[k]) * weights[k];
    }
  }
  double penalty = 0.0;
  for (const auto& group : members) {
    for (NodeId i : group) {
      for (NodeId j : group) penalty += model.beta(i, j);
    }
  }
  return reward - penalty;
}

}  // namespace

PartitionScore score(const Graph& graph, const Strengths& strengths, const Partition& partition,
                     const QualityParams& params) {
  if (partition.size() != graph.num_nodes()) {
    throw std::invalid_argument("score: partition does not cover the graph");
  }
  if (const auto* generic = std::get_if<GenericModel>(&params.model)) {
    return {generic_score(graph, partition, *generic)};
  }
  return {modularity(graph, strengths, partition.labels())};
}

namespace {

double link_weight_to(const Graph& graph, std::span<const CommunityId> labels, NodeId node,
                      CommunityId community) {
  double link = 0.0;
  auto add = [&](std::span<const NodeId> nbrs, std::span<const double> weights) {
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] != node && labels[nbrs[k]] == community) link += weights[k];
    }
  };
  add(graph.out_neighbors(node), graph.out_weights(node));
  add(graph.in_neighbors(node), graph.in_weights(node));
  return link;
}

}  // namespace

double gain_insert(const Graph& graph, const Strengths& strengths,
                   const CommunityAggregates& aggregates, std::span<const CommunityId> labels,
                   NodeId node, CommunityId community) {
  if (strengths.total == 0.0 || community >= aggregates.num_labels()) return 0.0;
  const double link = link_weight_to(graph, labels, node, community);
  return insert_gain_from_sums(link, strengths.out[node], strengths.in[node],
                               aggregates.out[community], aggregates.in[community],
                               strengths.total);
}

double local_gain(const Graph& graph, const Strengths& strengths,
                  const CommunityAggregates& aggregates, std::span<const CommunityId> labels,
                  NodeId node) {
  if (strengths.total == 0.0) return 0.0;
  const CommunityId c = labels[node];
  if (aggregates.size[c] <= 1) return 0.0;
  const double link = link_weight_to(graph, labels, node, c);
  return insert_gain_from_sums(link, strengths.out[node], strengths.in[node],
                               aggregates.out[c] - strengths.out[node],
                               aggregates.in[c] - strengths.in[node], strengths.total);
}

double gain_switch(const Graph& graph, const Strengths& strengths,
                   const CommunityAggregates& aggregates, std::span<const CommunityId> labels,
                   std::span<const NodeId> moving, CommunityId from, CommunityId to) {
  std::vector<NodeId> sorted(moving.begin(), moving.end());
  std::sort(sorted.begin(), sorted.end());
  for (NodeId u : sorted) {
    if (labels[u] != from) throw std::invalid_argument("gain_switch: moving node not in `from`");
  }
  return gain_switch_with(graph, strengths, aggregates, labels, moving, from, to, [&](NodeId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
  });
}

}  // namespace synclouvain
