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

// Partition quality and the modularity gain kernels.
//
// Weighted directed modularity of a labeling sigma:
//
//   Q_w = 1/m * sum_{i,j : sigma_i == sigma_j} [ W(i,j) - s_out(i) s_in(j) / m ]
//
// It is the energy  -sum [alpha_ij W(i,j) - beta_ij] delta(sigma_i, sigma_j)
// with alpha_ij = 1, beta_ij = s_out(i) s_in(j) / m, sign-flipped and scaled
// by 1/m. The partition-independent energy offset is never computed.
//
// All gains below are exact differences of Q_w between two labelings.

#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "synclouvain/graph.hpp"

namespace synclouvain {

struct ModularityModel {};

// Energy-style model with caller-supplied per-pair reward scale and
// penalty. Only usable for scoring.
struct GenericModel {
  std::function<double(NodeId, NodeId)> alpha;
  std::function<double(NodeId, NodeId)> beta;
};

struct QualityParams {
  std::variant<ModularityModel, GenericModel> model;

  static QualityParams modularity() { return {ModularityModel{}}; }
  static QualityParams generic(GenericModel m) { return {std::move(m)}; }
  // alpha = 1, beta = s_out(i) s_in(j) / m. Scores m times Q_w.
  static QualityParams configuration_energy(const Strengths& strengths);
};

struct PartitionScore {
  // Q_w for modularity, sum[alpha W - beta] over same-community pairs for
  // the generic model.
  double value = 0.0;
};

// Per-community strength sums and member counts, indexed by label.
struct CommunityAggregates {
  std::vector<double> out;
  std::vector<double> in;
  std::vector<NodeId> size;

  static CommunityAggregates build(const Strengths& strengths,
                                   std::span<const CommunityId> labels,
                                   CommunityId num_labels);
  CommunityId num_labels() const { return static_cast<CommunityId>(out.size()); }
  void move_node(NodeId node, CommunityId from, CommunityId to, const Strengths& strengths);
};

// Q_w of an arbitrary labeling (labels need not be dense). 0 when m == 0.
double modularity(const Graph& graph, const Strengths& strengths,
                  std::span<const CommunityId> labels);

PartitionScore score(const Graph& graph, const Strengths& strengths, const Partition& partition,
                     const QualityParams& params = QualityParams::modularity());

// Q(i joins c) - Q(i alone); node i must not be counted in c's aggregates.
//   1/m [W(i,c) + W(c,i)] - 1/m^2 [s_out(i) S_in(c) + s_in(i) S_out(c)]
double gain_insert(const Graph& graph, const Strengths& strengths,
                   const CommunityAggregates& aggregates, std::span<const CommunityId> labels,
                   NodeId node, CommunityId community);

// Same kernel with precomputed W(i,c) + W(c,i) and community sums.
inline double insert_gain_from_sums(double link_weight, double node_out, double node_in,
                                    double community_out, double community_in, double total) {
  return link_weight / total -
         (node_out * community_in + node_in * community_out) / (total * total);
}

// gain_insert(i, c_i \ {i}); i is counted in its own community's aggregates.
double local_gain(const Graph& graph, const Strengths& strengths,
                  const CommunityAggregates& aggregates, std::span<const CommunityId> labels,
                  NodeId node);

// Q after relabeling exactly `moving` (all labeled `from`) to `to`, minus Q
// before. `to` may be an unused label. O(edges incident to `moving`).
double gain_switch(const Graph& graph, const Strengths& strengths,
                   const CommunityAggregates& aggregates, std::span<const CommunityId> labels,
                   std::span<const NodeId> moving, CommunityId from, CommunityId to);

// gain_switch with membership of `moving` given by a predicate; used by
// the algorithm with stamp arrays.
template <class InMoving>
double gain_switch_with(const Graph& graph, const Strengths& strengths,
                        const CommunityAggregates& aggregates,
                        std::span<const CommunityId> labels, std::span<const NodeId> moving,
                        CommunityId from, CommunityId to, InMoving&& in_moving) {
  const double m = strengths.total;
  if (from == to || m == 0.0 || moving.empty()) return 0.0;
  double to_link = 0.0;    // W(B,T) + W(T,B)
  double rest_link = 0.0;  // W(B,R) + W(R,B)
  double b_out = 0.0;
  double b_in = 0.0;
  for (NodeId u : moving) {
    b_out += strengths.out[u];
    b_in += strengths.in[u];
    auto visit = [&](std::span<const NodeId> nbrs, std::span<const double> weights) {
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const NodeId v = nbrs[k];
        const CommunityId cv = labels[v];
        if (cv == to) {
          to_link += weights[k];
        } else if (cv == from && !in_moving(v)) {
          rest_link += weights[k];
        }
      }
    };
    visit(graph.out_neighbors(u), graph.out_weights(u));
    visit(graph.in_neighbors(u), graph.in_weights(u));
  }
  const double rest_out = aggregates.out[from] - b_out;
  const double rest_in = aggregates.in[from] - b_in;
  const double to_out = to < aggregates.num_labels() ? aggregates.out[to] : 0.0;
  const double to_in = to < aggregates.num_labels() ? aggregates.in[to] : 0.0;
  return (to_link - rest_link) / m -
         (b_out * to_in + b_in * to_out - b_out * rest_in - b_in * rest_out) / (m * m);
}

}  // namespace synclouvain
