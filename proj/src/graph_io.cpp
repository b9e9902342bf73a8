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

#include "synclouvain/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string_view>

namespace synclouvain {
namespace {

struct RawEdge {
  std::uint64_t src;
  std::uint64_t dst;
  double weight;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

std::optional<std::uint64_t> parse_id(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_weight(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

GraphFormatError::GraphFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options) {
  std::vector<RawEdge> raw;
  std::optional<std::uint64_t> declared_nodes;
  std::size_t declared_line = 0;
  std::uint64_t max_id = 0;
  bool any_edge = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0].front() == '#') {
      // `# nodes N` (also accepted as `#nodes N`).
      std::size_t k = tokens[0] == "#" ? 1 : 0;
      std::string_view key = k == 1 ? (tokens.size() > 1 ? tokens[1] : "") : tokens[0].substr(1);
      if (key == "nodes" && tokens.size() == k + 2) {
        auto count = parse_id(tokens[k + 1]);
        if (!count) throw GraphFormatError(line_no, "invalid node count in header");
        declared_nodes = *count;
        declared_line = line_no;
      }
      continue;
    }
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw GraphFormatError(line_no, "expected `src dst [weight]`");
    }
    auto src = parse_id(tokens[0]);
    auto dst = parse_id(tokens[1]);
    if (!src || !dst) throw GraphFormatError(line_no, "node id is not a non-negative integer");
    double weight = 1.0;
    if (tokens.size() == 3) {
      auto w = parse_weight(tokens[2]);
      if (!w) throw GraphFormatError(line_no, "weight is not a number");
      if (!std::isfinite(*w)) throw GraphFormatError(line_no, "weight is not finite");
      if (!(*w > 0.0)) throw GraphFormatError(line_no, "nonpositive weight");
      weight = *w;
    }
    raw.push_back({*src, *dst, weight});
    max_id = std::max({max_id, *src, *dst});
    any_edge = true;
  }

  LoadedGraph result;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  constexpr std::uint64_t kMaxNodes = std::numeric_limits<NodeId>::max();
  if (options.remap_ids) {
    auto& ids = result.original_ids;
    ids.reserve(raw.size() * 2);
    for (const RawEdge& e : raw) {
      ids.push_back(e.src);
      ids.push_back(e.dst);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() >= kMaxNodes) throw GraphFormatError(line_no, "too many nodes");
    auto dense = [&](std::uint64_t id) {
      return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const RawEdge& e : raw) edges.push_back({dense(e.src), dense(e.dst), e.weight});
    result.graph = Graph::from_edges(static_cast<NodeId>(ids.size()), std::move(edges));
    return result;
  }

  std::uint64_t n = any_edge ? max_id + 1 : 0;
  if (declared_nodes) {
    if (*declared_nodes < n) {
      throw GraphFormatError(declared_line, "header declares " + std::to_string(*declared_nodes) +
                                                " nodes but id " + std::to_string(max_id) +
                                                " occurs");
    }
    n = *declared_nodes;
  }
  if (n >= kMaxNodes) throw GraphFormatError(line_no, "node id too large");
  for (const RawEdge& e : raw) {
    edges.push_back({static_cast<NodeId>(e.src), static_cast<NodeId>(e.dst), e.weight});
  }
  result.graph = Graph::from_edges(static_cast<NodeId>(n), std::move(edges));
  return result;
}

LoadedGraph load_edge_list_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& graph,
                     const std::vector<std::string>& comments) {
  out << "# nodes " << graph.num_nodes() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  char buf[96];
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    auto targets = graph.out_neighbors(u);
    auto weights = graph.out_weights(u);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      int len = std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", u, targets[k], weights[k]);
      out.write(buf, len);
    }
  }
}

void write_partition(std::ostream& out, const Partition& partition,
                     const std::vector<std::uint64_t>& original_ids) {
  char buf[64];
  for (NodeId v = 0; v < partition.size(); ++v) {
    int len = original_ids.empty()
                  ? std::snprintf(buf, sizeof(buf), "%u %u\n", v, partition[v])
                  : std::snprintf(buf, sizeof(buf), "%llu %u\n",
                                  static_cast<unsigned long long>(original_ids[v]), partition[v]);
    out.write(buf, len);
  }
}

Partition read_partition(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens.size() != 2) throw GraphFormatError(line_no, "expected `node community`");
    auto node = parse_id(tokens[0]);
    auto comm = parse_id(tokens[1]);
    if (!node || !comm) throw GraphFormatError(line_no, "expected non-negative integers");
    rows.emplace_back(*node, *comm);
  }
  std::sort(rows.begin(), rows.end());
  std::vector<CommunityId> labels(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].first != k) {
      throw GraphFormatError(0, "partition nodes are not exactly 0.." + std::to_string(rows.size() - 1));
    }
    labels[k] = static_cast<CommunityId>(rows[k].second);
  }
  return Partition::from_labels(std::move(labels));
}

}  // namespace synclouvain
