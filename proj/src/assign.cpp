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

#include <chrono>

#include "parallel.hpp"
#include "synclouvain/quality.hpp"
#include "synclouvain/sync_louvain.hpp"

namespace synclouvain {

namespace detail {

// Best-neighbor targets without component extraction.
std::vector<NodeId> assign_targets(const Graph& graph, const Strengths& strengths, int threads) {
  const NodeId n = graph.num_nodes();
  const double m = strengths.total;
  std::vector<NodeId> target(n);
  parallel_for(n, threads, [&](std::size_t idx) {
    const auto i = static_cast<NodeId>(idx);
    NodeId best = i;
    double best_gain = 0.0;
    if (m > 0.0) {
      auto outs = graph.out_neighbors(i);
      auto out_w = graph.out_weights(i);
      auto ins = graph.in_neighbors(i);
      auto in_w = graph.in_weights(i);
      std::size_t a = 0;
      std::size_t b = 0;
      // Merge the two sorted lists so each neighbor is seen once, ascending.
      while (a < outs.size() || b < ins.size()) {
        NodeId j;
        double link = 0.0;
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
        if (j == i) continue;
        const double gain = insert_gain_from_sums(link, strengths.out[i], strengths.in[i],
                                                  strengths.out[j], strengths.in[j], m);
        if (gain > best_gain) {
          best_gain = gain;
          best = j;
        }
      }
    }
    target[i] = best;
  });
  return target;
}

}  // namespace detail

AssignmentForest find_assignment(const Graph& graph, const Strengths& strengths, int threads) {
  return extract_components(detail::assign_targets(graph, strengths, threads));
}

}  // namespace synclouvain
