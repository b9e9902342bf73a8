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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "synclouvain/graph.hpp"

namespace synclouvain {

class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadOptions {
  // Compact the ids that actually occur to 0..n-1 (ascending original id).
  bool remap_ids = false;
};

struct LoadedGraph {
  Graph graph;
  // original_ids[dense] = id in the file; empty unless remap_ids was set.
  std::vector<std::uint64_t> original_ids;
};

// Edge list: `src dst [weight]` per line, `#` comments, optional
// `# nodes N` header declaring trailing isolated nodes.
LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadedGraph load_edge_list_file(const std::string& path, const LoadOptions& options = {});

// Writes `# nodes N`, then `comments` each prefixed with "# ", then one
// `%d %d %.17g` line per edge in (src, dst) order.
void write_edge_list(std::ostream& out, const Graph& graph,
                     const std::vector<std::string>& comments = {});

// `node community` per line sorted by node. When original_ids is
// non-empty the node column carries the original id.
void write_partition(std::ostream& out, const Partition& partition,
                     const std::vector<std::uint64_t>& original_ids = {});
Partition read_partition(std::istream& in);

}  // namespace synclouvain
