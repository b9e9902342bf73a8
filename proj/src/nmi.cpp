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

#include "synclouvain/nmi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace synclouvain {
namespace {

// -sum p log p over counts summing to n.
double entropy(const std::vector<std::size_t>& counts, double n) {
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double nmi(const Partition& x, const Partition& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("nmi: partitions cover " + std::to_string(x.size()) + " and " +
                                std::to_string(y.size()) + " nodes");
  }
  const NodeId n = x.size();
  if (n == 0) return 1.0;
  const double total = n;
  std::vector<std::size_t> count_x(x.num_communities(), 0);
  std::vector<std::size_t> count_y(y.num_communities(), 0);
  std::vector<std::pair<CommunityId, CommunityId>> joint(n);
  for (NodeId v = 0; v < n; ++v) {
    ++count_x[x[v]];
    ++count_y[y[v]];
    joint[v] = {x[v], y[v]};
  }
  std::sort(joint.begin(), joint.end());
  const double hx = entropy(count_x, total);
  const double hy = entropy(count_y, total);
  if (hx + hy == 0.0) return 1.0;

  double mutual = 0.0;
  for (std::size_t a = 0; a < joint.size();) {
    std::size_t b = a;
    while (b < joint.size() && joint[b] == joint[a]) ++b;
    const double nxy = static_cast<double>(b - a);
    const double nx = static_cast<double>(count_x[joint[a].first]);
    const double ny = static_cast<double>(count_y[joint[a].second]);
    mutual += nxy / total * std::log(nxy * total / (nx * ny));
    a = b;
  }
  return std::clamp(2.0 * mutual / (hx + hy), 0.0, 1.0);
}

}  // namespace synclouvain
