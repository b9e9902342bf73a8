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

#include <cstdint>
#include <span>
#include <vector>

#include "synclouvain/graph.hpp"

namespace synclouvain {

// The assignment graph {(i, a(i))} and its derived community structure.
// Every weakly connected component holds exactly one directed cycle; the
// cycle nodes form the community's SCC, the rest are branches hanging
// into it.
struct AssignmentForest {
  std::vector<NodeId> target;          // a(i); a(i) == i means self-assigned
  std::vector<CommunityId> community;  // dense, ordered by smallest member
  std::vector<std::uint8_t> on_cycle;
  CommunityId num_communities = 0;
  // Members of community c: members[member_offsets[c] .. member_offsets[c+1]),
  // ascending.
  std::vector<std::size_t> member_offsets{0};
  std::vector<NodeId> members;

  NodeId size() const { return static_cast<NodeId>(target.size()); }
  std::span<const NodeId> members_of(CommunityId c) const {
    return {members.data() + member_offsets[c], members.data() + member_offsets[c + 1]};
  }
  Partition partition() const { return Partition(community, num_communities); }
  bool operator==(const AssignmentForest&) const = default;
};

// WCC labeling of the functional graph plus cycle flags, by pointer
// chasing with visitation stamps. O(n).
// Throws std::invalid_argument if some target is out of range.
AssignmentForest extract_components(std::vector<NodeId> target);

// Nodes with a directed assignment path into `node` (including `node`).
// For a cycle node this is its whole community.
std::vector<NodeId> tail_of(const AssignmentForest& forest, NodeId node);

}  // namespace synclouvain
