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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace synclouvain {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

// Node -> community labeling at one hierarchy level. Labels are in
// [0, num_communities); empty labels are allowed unless the partition is
// canonical.
class Partition {
 public:
  Partition() = default;
  // Throws std::invalid_argument if a label is >= num_communities.
  Partition(std::vector<CommunityId> labels, CommunityId num_communities);
  // num_communities = 1 + max label.
  static Partition from_labels(std::vector<CommunityId> labels);
  static Partition singletons(NodeId n);
  static Partition single_community(NodeId n);

  NodeId size() const { return static_cast<NodeId>(labels_.size()); }
  CommunityId num_communities() const { return num_communities_; }
  CommunityId operator[](NodeId node) const { return labels_[node]; }
  std::span<const CommunityId> labels() const { return labels_; }

  // Dense relabeling ordered by smallest member node.
  Partition canonical() const;
  bool is_identity() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<CommunityId> labels_;
  CommunityId num_communities_ = 0;
};

// Labels relabeled to 0..c-1 in order of first appearance (smallest member).
std::vector<CommunityId> canonical_labels(std::span<const CommunityId> labels,
                                          CommunityId* num_communities = nullptr);

// labels[v] -> upper[labels[v]] for every v.
Partition compose(const Partition& lower, const Partition& upper);

// Immutable directed weighted graph with forward and reverse compressed
// adjacency. Neighbor lists are sorted by id; parallel edges are merged
// by summing weights; self-loops are kept.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on an endpoint >= n or a weight that is
  // not finite and positive. Merged weights are summed in input order.
  static Graph from_edges(NodeId n, std::vector<Edge> edges);

  NodeId num_nodes() const { return n_; }
  std::size_t num_edges() const { return out_targets_.size(); }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const double> out_weights(NodeId u) const {
    return {out_weights_.data() + out_offsets_[u], out_weights_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  std::span<const double> in_weights(NodeId v) const {
    return {in_weights_.data() + in_offsets_[v], in_weights_.data() + in_offsets_[v + 1]};
  }

  // Edge list sorted by (src, dst).
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  NodeId n_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<double> out_weights_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<double> in_weights_;
};

struct Strengths {
  std::vector<double> out;
  std::vector<double> in;
  // Sum of all edge weights, accumulated over `out` in node order.
  double total = 0.0;

  bool operator==(const Strengths&) const = default;
};

Strengths compute_strengths(const Graph& graph);

// Collapses every community into one node. weight(a->b) sums W(i,j) over
// i in a, j in b; intra-community weight becomes a self-loop.
// Throws std::invalid_argument if the partition does not cover the graph.
Graph aggregate(const Graph& graph, const Partition& partition);

}  // namespace synclouvain
