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

#include "synclouvain/forest.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace synclouvain {

AssignmentForest extract_components(std::vector<NodeId> target) {
  const NodeId n = static_cast<NodeId>(target.size());
  for (NodeId v = 0; v < n; ++v) {
    if (target[v] >= n) {
      throw std::invalid_argument("assignment of node " + std::to_string(v) + " out of range");
    }
  }
  constexpr CommunityId kNone = std::numeric_limits<CommunityId>::max();
  AssignmentForest f;
  f.community.assign(n, kNone);
  f.on_cycle.assign(n, 0);
  // stamp[v] == walk id while v is on the current walk.
  std::vector<NodeId> stamp(n, kNone);
  std::vector<NodeId> path;
  CommunityId next = 0;
  for (NodeId start = 0; start < n; ++start) {
    if (f.community[start] != kNone) continue;
    path.clear();
    NodeId v = start;
    while (f.community[v] == kNone && stamp[v] != start) {
      stamp[v] = start;
      path.push_back(v);
      v = target[v];
    }
    CommunityId c;
    if (f.community[v] == kNone) {
      // Closed a new cycle at v. `start` is the smallest member of this
      // component since all smaller nodes are already labeled.
      c = next++;
      NodeId u = v;
      do {
        f.on_cycle[u] = 1;
        u = target[u];
      } while (u != v);
    } else {
      c = f.community[v];
    }
    for (NodeId u : path) f.community[u] = c;
  }
  f.num_communities = next;

  f.member_offsets.assign(std::size_t{next} + 1, 0);
  for (NodeId v = 0; v < n; ++v) ++f.member_offsets[std::size_t{f.community[v]} + 1];
  for (CommunityId c = 0; c < next; ++c) f.member_offsets[c + 1] += f.member_offsets[c];
  f.members.resize(n);
  std::vector<std::size_t> cursor(f.member_offsets.begin(), f.member_offsets.end() - 1);
  for (NodeId v = 0; v < n; ++v) f.members[cursor[f.community[v]]++] = v;
  f.target = std::move(target);
  return f;
}

std::vector<NodeId> tail_of(const AssignmentForest& forest, NodeId node) {
  const CommunityId c = forest.community[node];
  if (forest.on_cycle[node]) {
    auto members = forest.members_of(c);
    return {members.begin(), members.end()};
  }
  auto members = forest.members_of(c);
  std::vector<NodeId> children_of;
  std::vector<NodeId> parents;
  for (NodeId v : members) {
    if (!forest.on_cycle[v]) {
      children_of.push_back(v);
      parents.push_back(forest.target[v]);
    }
  }
  std::vector<NodeId> result{node};
  for (std::size_t head = 0; head < result.size(); ++head) {
    for (std::size_t k = 0; k < children_of.size(); ++k) {
      if (parents[k] == result[head]) result.push_back(children_of[k]);
    }
  }
  return result;
}

}  // namespace synclouvain
