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

#include "synclouvain/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace synclouvain {

Partition::Partition(std::vector<CommunityId> labels, CommunityId num_communities)
    : labels_(std::move(labels)), num_communities_(num_communities) {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] >= num_communities_) {
      throw std::invalid_argument("partition label " + std::to_string(labels_[v]) +
                                  " of node " + std::to_string(v) + " out of range [0, " +
                                  std::to_string(num_communities_) + ")");
    }
  }
}

Partition Partition::from_labels(std::vector<CommunityId> labels) {
  CommunityId count = 0;
  for (CommunityId c : labels) count = std::max(count, c + 1);
  return Partition(std::move(labels), count);
}

Partition Partition::singletons(NodeId n) {
  std::vector<CommunityId> labels(n);
  for (NodeId v = 0; v < n; ++v) labels[v] = v;
  return Partition(std::move(labels), n);
}

Partition Partition::single_community(NodeId n) {
  return Partition(std::vector<CommunityId>(n, 0), n == 0 ? 0 : 1);
}

Partition Partition::canonical() const {
  CommunityId count = 0;
  auto dense = canonical_labels(labels_, &count);
  return Partition(std::move(dense), count);
}

bool Partition::is_identity() const {
  if (num_communities_ != labels_.size()) return false;
  std::vector<char> seen(num_communities_, 0);
  for (CommunityId c : labels_) {
    if (seen[c]) return false;
    seen[c] = 1;
  }
  return true;
}

std::vector<CommunityId> canonical_labels(std::span<const CommunityId> labels,
                                          CommunityId* num_communities) {
  CommunityId max_label = 0;
  for (CommunityId c : labels) max_label = std::max(max_label, c);
  constexpr CommunityId kUnset = std::numeric_limits<CommunityId>::max();
  std::vector<CommunityId> remap(labels.empty() ? 0 : std::size_t{max_label} + 1, kUnset);
  std::vector<CommunityId> dense(labels.size());
  CommunityId next = 0;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    CommunityId& r = remap[labels[v]];
    if (r == kUnset) r = next++;
    dense[v] = r;
  }
  if (num_communities != nullptr) *num_communities = next;
  return dense;
}

Partition compose(const Partition& lower, const Partition& upper) {
  if (lower.num_communities() > upper.size()) {
    throw std::invalid_argument("compose: upper partition does not cover lower communities");
  }
  std::vector<CommunityId> labels(lower.size());
  for (NodeId v = 0; v < lower.size(); ++v) labels[v] = upper[lower[v]];
  return Partition(std::move(labels), upper.num_communities());
}

Graph Graph::from_edges(NodeId n, std::vector<Edge> edges) {
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw std::invalid_argument("edge " + std::to_string(e.src) + "->" +
                                  std::to_string(e.dst) + " references a node >= " +
                                  std::to_string(n));
    }
    if (!std::isfinite(e.weight) || !(e.weight > 0.0)) {
      throw std::invalid_argument("edge " + std::to_string(e.src) + "->" +
                                  std::to_string(e.dst) + " has non-positive or non-finite weight");
    }
  }
  // Stable so that merged weights are summed in input order.
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });

  Graph g;
  g.n_ = n;
  g.out_offsets_.assign(std::size_t{n} + 1, 0);
  g.out_targets_.reserve(edges.size());
  g.out_weights_.reserve(edges.size());
  std::vector<NodeId> sources;
  sources.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (!sources.empty() && sources.back() == e.src && g.out_targets_.back() == e.dst) {
      g.out_weights_.back() += e.weight;
      continue;
    }
    sources.push_back(e.src);
    g.out_targets_.push_back(e.dst);
    g.out_weights_.push_back(e.weight);
    ++g.out_offsets_[std::size_t{e.src} + 1];
  }
  for (NodeId u = 0; u < n; ++u) g.out_offsets_[u + 1] += g.out_offsets_[u];

  // Counting sort by destination keeps sources ascending within each list.
  const std::size_t m = g.out_targets_.size();
  g.in_offsets_.assign(std::size_t{n} + 1, 0);
  for (NodeId v : g.out_targets_) ++g.in_offsets_[std::size_t{v} + 1];
  for (NodeId v = 0; v < n; ++v) g.in_offsets_[v + 1] += g.in_offsets_[v];
  g.in_sources_.resize(m);
  g.in_weights_.resize(m);
  std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t slot = cursor[g.out_targets_[k]]++;
    g.in_sources_[slot] = sources[k];
    g.in_weights_[slot] = g.out_weights_[k];
  }
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(num_edges());
  for (NodeId u = 0; u < n_; ++u) {
    auto targets = out_neighbors(u);
    auto weights = out_weights(u);
    for (std::size_t k = 0; k < targets.size(); ++k) result.push_back({u, targets[k], weights[k]});
  }
  return result;
}

Strengths compute_strengths(const Graph& graph) {
  const NodeId n = graph.num_nodes();
  Strengths s;
  s.out.assign(n, 0.0);
  s.in.assign(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    for (double w : graph.out_weights(u)) s.out[u] += w;
    for (double w : graph.in_weights(u)) s.in[u] += w;
  }
  for (NodeId u = 0; u < n; ++u) s.total += s.out[u];
  return s;
}

Graph aggregate(const Graph& graph, const Partition& partition) {
  if (partition.size() != graph.num_nodes()) {
    throw std::invalid_argument("aggregate: partition has " + std::to_string(partition.size()) +
                                " labels for " + std::to_string(graph.num_nodes()) + " nodes");
  }
  const NodeId n = graph.num_nodes();
  const CommunityId c = partition.num_communities();

  // Bucket source nodes by community (stable), then accumulate each
  // bucket's outgoing weight per destination community.
  std::vector<std::size_t> offsets(std::size_t{c} + 1, 0);
  for (NodeId u = 0; u < n; ++u) ++offsets[std::size_t{partition[u]} + 1];
  for (CommunityId a = 0; a < c; ++a) offsets[a + 1] += offsets[a];
  std::vector<NodeId> members(n);
  {
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (NodeId u = 0; u < n; ++u) members[cursor[partition[u]]++] = u;
  }

  std::vector<Edge> edges;
  std::vector<double> acc(c, 0.0);
  std::vector<char> touched(c, 0);
  std::vector<CommunityId> touched_list;
  for (CommunityId a = 0; a < c; ++a) {
    for (std::size_t k = offsets[a]; k < offsets[a + 1]; ++k) {
      const NodeId u = members[k];
      auto targets = graph.out_neighbors(u);
      auto weights = graph.out_weights(u);
      for (std::size_t e = 0; e < targets.size(); ++e) {
        const CommunityId b = partition[targets[e]];
        if (!touched[b]) {
          touched[b] = 1;
          touched_list.push_back(b);
        }
        acc[b] += weights[e];
      }
    }
    std::sort(touched_list.begin(), touched_list.end());
    for (CommunityId b : touched_list) {
      edges.push_back({a, b, acc[b]});
      acc[b] = 0.0;
      touched[b] = 0;
    }
    touched_list.clear();
  }
  return Graph::from_edges(c, std::move(edges));
}

}  // namespace synclouvain
