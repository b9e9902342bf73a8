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

// Positive corrections: bisect every community that holds a node with a
// negative local gain.
//
// A community is a functional graph: one cycle with trees hanging into it.
// Removing one branch assignment a(x) detaches the subtree b(x); removing
// two cycle assignments splits the cycle into two arcs, each taking the
// trees rooted on it. For a moved set A in community S with rest R = S \ A
//
//   m * gain(A) = -cut(A, R) + (S_out(A) S_in(R) + S_in(A) S_out(R)) / m
//   cut(A, R)   = D(A) - 2 I(A)
//
// where D sums each node's internal (out + in) weight and I(A) is the
// weight with both ends in A. I of every subtree comes from charging each
// internal edge to the lowest common ancestor of its endpoints (offline
// Tarjan LCA); I of every cycle arc comes from a sweep over block
// adjacency.

#include <algorithm>
#include <functional>
#include <limits>

#include "parallel.hpp"
#include "synclouvain/quality.hpp"
#include "synclouvain/sync_louvain.hpp"

namespace synclouvain {
namespace {

// One community in local ids (position in the ascending member list).
struct LocalCommunity {
  std::vector<NodeId> nodes;
  std::vector<NodeId> target;
  std::vector<double> out;
  std::vector<double> in;
  std::vector<double> self_loop;
  std::vector<std::size_t> out_offsets;
  std::vector<NodeId> out_nbrs;
  std::vector<double> out_w;
  std::vector<std::size_t> in_offsets;
  std::vector<NodeId> in_nbrs;
  std::vector<double> in_w;

  NodeId size() const { return static_cast<NodeId>(nodes.size()); }
};

void build_local(const Graph& graph, const Strengths& strengths, const AssignmentForest& forest,
                 CommunityId c, std::vector<NodeId>& local_index, LocalCommunity& lc) {
  auto members = forest.members_of(c);
  const auto k = static_cast<NodeId>(members.size());
  lc.nodes.assign(members.begin(), members.end());
  for (NodeId x = 0; x < k; ++x) local_index[members[x]] = x;
  lc.target.resize(k);
  lc.out.resize(k);
  lc.in.resize(k);
  lc.self_loop.assign(k, 0.0);
  lc.out_offsets.assign(std::size_t{k} + 1, 0);
  lc.in_offsets.assign(std::size_t{k} + 1, 0);
  lc.out_nbrs.clear();
  lc.out_w.clear();
  lc.in_nbrs.clear();
  lc.in_w.clear();
  for (NodeId x = 0; x < k; ++x) {
    const NodeId u = members[x];
    lc.target[x] = local_index[forest.target[u]];
    lc.out[x] = strengths.out[u];
    lc.in[x] = strengths.in[u];
    auto outs = graph.out_neighbors(u);
    auto out_w = graph.out_weights(u);
    for (std::size_t e = 0; e < outs.size(); ++e) {
      if (forest.community[outs[e]] != c) continue;
      if (outs[e] == u) {
        lc.self_loop[x] += out_w[e];
      } else {
        lc.out_nbrs.push_back(local_index[outs[e]]);
        lc.out_w.push_back(out_w[e]);
      }
    }
    lc.out_offsets[x + 1] = lc.out_nbrs.size();
    auto ins = graph.in_neighbors(u);
    auto in_w = graph.in_weights(u);
    for (std::size_t e = 0; e < ins.size(); ++e) {
      if (forest.community[ins[e]] != c || ins[e] == u) continue;
      lc.in_nbrs.push_back(local_index[ins[e]]);
      lc.in_w.push_back(in_w[e]);
    }
    lc.in_offsets[x + 1] = lc.in_nbrs.size();
  }
}

using SplitCallback =
    std::function<void(const LocalCommunity&, std::span<const NodeId>, CorrectionKind, double)>;

// Repeated optimal bisection of one community. Reuses its buffers across
// communities handled by the same worker.
class Splitter {
 public:
  Splitter(double total_weight, std::size_t cycle_cut_cap)
      : m_(total_weight), cycle_cut_cap_(cycle_cut_cap) {}

  void run(LocalCommunity& lc, PositiveStats& stats, const SplitCallback& on_split) {
    const NodeId k = lc.size();
    resize(k);
    std::vector<std::vector<NodeId>> work;
    std::vector<NodeId> all(k);
    for (NodeId x = 0; x < k; ++x) all[x] = x;
    work.push_back(std::move(all));
    while (!work.empty()) {
      std::vector<NodeId> part = std::move(work.back());
      work.pop_back();
      std::vector<NodeId> moved;
      if (!bisect(lc, part, stats, moved, on_split)) continue;
      std::vector<NodeId> rest;
      rest.reserve(part.size() - moved.size());
      std::set_difference(part.begin(), part.end(), moved.begin(), moved.end(),
                          std::back_inserter(rest));
      work.push_back(std::move(rest));
      work.push_back(std::move(moved));
    }
  }

 private:
  static constexpr std::uint32_t kNever = 0;

  void resize(NodeId k) {
    if (part_.size() >= k) return;
    part_.resize(k, kNever);
    visit_.resize(k, kNever);
    cycle_stamp_.resize(k, kNever);
    black_.resize(k, kNever);
    gain_.resize(k);
    internal_.resize(k);
    block_.resize(k);
    child_count_.resize(k);
    child_start_.resize(k);
    uf_.resize(k);
    ancestor_.resize(k);
    acc_.resize(k);
    sub_out_.resize(k);
    sub_in_.resize(k);
    sub_d_.resize(k);
    sub_i_.resize(k);
  }

  NodeId find(NodeId x) {
    NodeId root = x;
    while (uf_[root] != root) root = uf_[root];
    while (uf_[x] != root) {
      NodeId next = uf_[x];
      uf_[x] = root;
      x = next;
    }
    return root;
  }

  template <class Fn>
  void for_each_link(const LocalCommunity& lc, NodeId x, Fn&& fn) const {
    for (std::size_t e = lc.out_offsets[x]; e < lc.out_offsets[x + 1]; ++e) fn(lc.out_nbrs[e], lc.out_w[e]);
    for (std::size_t e = lc.in_offsets[x]; e < lc.in_offsets[x + 1]; ++e) fn(lc.in_nbrs[e], lc.in_w[e]);
  }

  // Applies one correction to `part` if some node has negative local gain.
  // Returns false when the part is already fine. `moved` receives the
  // detached side, ascending.
  bool bisect(LocalCommunity& lc, const std::vector<NodeId>& part, PositiveStats& stats,
              std::vector<NodeId>& moved, const SplitCallback& on_split) {
    if (part.size() <= 1) return false;
    const std::uint32_t epoch = ++epoch_;
    for (NodeId x : part) part_[x] = epoch;
    auto in_part = [&](NodeId y) { return part_[y] == epoch; };

    double total_out = 0.0;
    double total_in = 0.0;
    for (NodeId x : part) {
      total_out += lc.out[x];
      total_in += lc.in[x];
    }
    NodeId worst = part.front();
    double worst_gain = 0.0;
    for (NodeId x : part) {
      double link = 0.0;
      for_each_link(lc, x, [&](NodeId y, double w) {
        if (in_part(y)) link += w;
      });
      internal_[x] = link + 2.0 * lc.self_loop[x];
      gain_[x] = insert_gain_from_sums(link, lc.out[x], lc.in[x], total_out - lc.out[x],
                                       total_in - lc.in[x], m_);
      if (gain_[x] < worst_gain) {
        worst_gain = gain_[x];
        worst = x;
      }
    }
    if (!(worst_gain < 0.0)) return false;

    // The unique cycle, rotated to start at its smallest node.
    NodeId v = part.front();
    while (visit_[v] != epoch) {
      visit_[v] = epoch;
      v = lc.target[v];
    }
    cycle_.clear();
    NodeId u = v;
    do {
      cycle_.push_back(u);
      u = lc.target[u];
    } while (u != v);
    std::rotate(cycle_.begin(), std::min_element(cycle_.begin(), cycle_.end()), cycle_.end());
    const auto cycle_len = static_cast<NodeId>(cycle_.size());
    for (NodeId pos = 0; pos < cycle_len; ++pos) cycle_stamp_[cycle_[pos]] = epoch;
    auto on_cycle = [&](NodeId y) { return cycle_stamp_[y] == epoch; };

    // Tree children, ascending.
    for (NodeId x : part) child_count_[x] = 0;
    for (NodeId x : part) {
      if (!on_cycle(x)) ++child_count_[lc.target[x]];
    }
    std::size_t offset = 0;
    for (NodeId x : part) {
      child_start_[x] = offset;
      offset += child_count_[x];
      child_count_[x] = 0;
    }
    children_.resize(offset);
    for (NodeId x : part) {
      if (on_cycle(x)) continue;
      const NodeId p = lc.target[x];
      children_[child_start_[p] + child_count_[p]++] = x;
    }
    auto children_of = [&](NodeId x) {
      return std::span<const NodeId>(children_.data() + child_start_[x], child_count_[x]);
    };

    // DFS per cycle root with offline LCA.
    post_order_.clear();
    for (NodeId pos = 0; pos < cycle_len; ++pos) {
      const NodeId root = cycle_[pos];
      stack_.clear();
      auto enter = [&](NodeId x) {
        uf_[x] = x;
        ancestor_[x] = x;
        block_[x] = pos;
        acc_[x] = lc.self_loop[x];
        sub_out_[x] = lc.out[x];
        sub_in_[x] = lc.in[x];
        sub_d_[x] = internal_[x];
        sub_i_[x] = 0.0;
        stack_.push_back({x, 0});
      };
      enter(root);
      while (!stack_.empty()) {
        auto& top = stack_.back();
        auto kids = children_of(top.node);
        if (top.next_child < kids.size()) {
          enter(kids[top.next_child++]);
          continue;
        }
        const NodeId x = top.node;
        stack_.pop_back();
        black_[x] = epoch;
        for_each_link(lc, x, [&](NodeId y, double w) {
          if (in_part(y) && black_[y] == epoch && block_[y] == pos) acc_[ancestor_[find(y)]] += w;
        });
        post_order_.push_back(x);
        if (!stack_.empty()) {
          const NodeId p = stack_.back().node;
          uf_[find(x)] = find(p);
          ancestor_[find(p)] = p;
        }
      }
    }
    for (NodeId x : post_order_) {
      sub_i_[x] += acc_[x];
      if (on_cycle(x)) continue;
      const NodeId p = lc.target[x];
      sub_out_[p] += sub_out_[x];
      sub_in_[p] += sub_in_[x];
      sub_d_[p] += sub_d_[x];
      sub_i_[p] += sub_i_[x];
    }

    auto detach_gain = [&](double a_out, double a_in, double a_d, double a_i) {
      const double cut = a_d - 2.0 * a_i;
      return (-cut + (a_out * (total_in - a_in) + a_in * (total_out - a_out)) / m_) / m_;
    };

    enum class Choice { kNone, kBranch, kArc };
    Choice choice = Choice::kNone;
    double best = -std::numeric_limits<double>::infinity();
    NodeId best_node = 0;
    NodeId arc_first = 0;
    NodeId arc_last = 0;
    for (NodeId x : part) {
      if (on_cycle(x)) continue;
      const double g = detach_gain(sub_out_[x], sub_in_[x], sub_d_[x], sub_i_[x]);
      if (g > best) {
        best = g;
        choice = Choice::kBranch;
        best_node = x;
      }
    }
    if (cycle_len >= 2 && cycle_len > cycle_cut_cap_) {
      ++stats.capped_cycles;
    } else if (cycle_len >= 2) {
      // Arcs [first, last] of blocks not containing block 0; each unordered
      // pair of removed cycle edges is one such arc.
      blocks_.assign(cycle_len, {});
      for (NodeId x : part) {
        for (std::size_t e = lc.out_offsets[x]; e < lc.out_offsets[x + 1]; ++e) {
          const NodeId y = lc.out_nbrs[e];
          if (!in_part(y) || block_[y] == block_[x]) continue;
          blocks_[block_[x]].push_back({block_[y], lc.out_w[e]});
          blocks_[block_[y]].push_back({block_[x], lc.out_w[e]});
        }
      }
      for (NodeId first = 1; first < cycle_len; ++first) {
        double a_out = 0.0, a_in = 0.0, a_d = 0.0, a_i = 0.0;
        for (NodeId last = first; last < cycle_len; ++last) {
          const NodeId r = cycle_[last];
          a_out += sub_out_[r];
          a_in += sub_in_[r];
          a_d += sub_d_[r];
          a_i += sub_i_[r];
          for (const auto& [other, w] : blocks_[last]) {
            if (other >= first && other < last) a_i += w;
          }
          const double g = detach_gain(a_out, a_in, a_d, a_i);
          if (g > best) {
            best = g;
            choice = Choice::kArc;
            arc_first = first;
            arc_last = last;
          }
        }
      }
    }

    moved.clear();
    CorrectionKind kind;
    double applied_gain;
    if (choice != Choice::kNone && best > 0.0) {
      applied_gain = best;
      if (choice == Choice::kBranch) {
        kind = CorrectionKind::kBranchCut;
        ++stats.branch_cuts;
        lc.target[best_node] = best_node;
        moved.push_back(best_node);
        for (std::size_t h = 0; h < moved.size(); ++h) {
          for (NodeId c : children_of(moved[h])) moved.push_back(c);
        }
        std::sort(moved.begin(), moved.end());
      } else {
        kind = CorrectionKind::kCycleCut;
        ++stats.cycle_cuts;
        const NodeId before = cycle_[arc_first - 1];
        const NodeId end = cycle_[arc_last];
        lc.target[before] = before;
        lc.target[end] = end;
        for (NodeId x : part) {
          if (block_[x] >= arc_first && block_[x] <= arc_last) moved.push_back(x);
        }
      }
    } else {
      // No bisection improves the score: detach the worst node alone and
      // re-hang its predecessors so the rest stays one component.
      kind = CorrectionKind::kIsolate;
      ++stats.isolations;
      applied_gain = -worst_gain;
      const NodeId w = worst;
      auto kids = children_of(w);
      if (on_cycle(w) && cycle_len == 1) {
        const NodeId new_root = kids.front();
        lc.target[new_root] = new_root;
        for (NodeId c : kids.subspan(1)) lc.target[c] = new_root;
      } else {
        const NodeId next = lc.target[w];
        for (NodeId c : kids) lc.target[c] = next;
        if (on_cycle(w)) {
          const NodeId pos = block_[w];
          lc.target[cycle_[(pos + cycle_len - 1) % cycle_len]] = next;
        }
      }
      lc.target[w] = w;
      moved.push_back(w);
    }
    if (on_split) on_split(lc, moved, kind, applied_gain);
    return true;
  }

  struct Frame {
    NodeId node;
    std::size_t next_child;
  };

  double m_;
  std::size_t cycle_cut_cap_;
  std::uint32_t epoch_ = kNever;
  std::vector<std::uint32_t> part_, visit_, cycle_stamp_, black_;
  std::vector<double> gain_, internal_;
  std::vector<NodeId> block_, child_count_, uf_, ancestor_;
  std::vector<std::size_t> child_start_;
  std::vector<double> acc_, sub_out_, sub_in_, sub_d_, sub_i_;
  std::vector<NodeId> cycle_, children_, post_order_;
  std::vector<Frame> stack_;
  std::vector<std::vector<std::pair<NodeId, double>>> blocks_;
};

}  // namespace

AssignmentForest positive_correction(const Graph& graph, const Strengths& strengths,
                                     const AssignmentForest& forest, const RunConfig& config,
                                     int level, PositiveStats* stats_out) {
  config.validate();
  const NodeId n = forest.size();
  const double m = strengths.total;
  if (m == 0.0 || n == 0) return forest;
  std::span<const CommunityId> labels = forest.community;
  const auto aggregates = CommunityAggregates::build(strengths, labels, forest.num_communities);

  std::vector<char> negative(n, 0);
  detail::parallel_for(n, config.threads, [&](std::size_t i) {
    negative[i] = local_gain(graph, strengths, aggregates, labels, static_cast<NodeId>(i)) < 0.0;
  });
  std::vector<CommunityId> flagged;
  for (CommunityId c = 0; c < forest.num_communities; ++c) {
    auto members = forest.members_of(c);
    if (std::any_of(members.begin(), members.end(), [&](NodeId v) { return negative[v]; })) {
      flagged.push_back(c);
    }
  }
  PositiveStats stats;
  stats.communities_checked = flagged.size();
  if (flagged.empty()) {
    if (stats_out != nullptr) *stats_out = stats;
    return forest;
  }

  std::vector<NodeId> target = forest.target;
  std::vector<NodeId> local_index(n);
  auto write_back = [&](const LocalCommunity& lc) {
    for (NodeId x = 0; x < lc.size(); ++x) target[lc.nodes[x]] = lc.nodes[lc.target[x]];
  };

  if (config.observer != nullptr) {
    // Serial, with a live labeling for the observer.
    std::vector<CommunityId> live(labels.begin(), labels.end());
    CommunityId next_label = forest.num_communities;
    LocalCommunity lc;
    Splitter splitter(m, config.cycle_cut_cap);
    SplitCallback report = [&](const LocalCommunity& local, std::span<const NodeId> moved,
                               CorrectionKind kind, double gain) {
      for (NodeId x : moved) live[local.nodes[x]] = next_label;
      ++next_label;
      config.observer->on_correction({level, kind, gain, &graph, &strengths, live});
    };
    for (CommunityId c : flagged) {
      build_local(graph, strengths, forest, c, local_index, lc);
      splitter.run(lc, stats, report);
      write_back(lc);
    }
  } else {
    std::vector<PositiveStats> per_task(flagged.size());
    struct Scratch {
      LocalCommunity lc;
      Splitter splitter;
    };
    detail::parallel_for_scratch(
        flagged.size(), config.threads, 1,
        [&] { return Scratch{LocalCommunity{}, Splitter(m, config.cycle_cut_cap)}; },
        [&](std::size_t t, Scratch& scratch) {
          build_local(graph, strengths, forest, flagged[t], local_index, scratch.lc);
          scratch.splitter.run(scratch.lc, per_task[t], {});
          write_back(scratch.lc);
        });
    for (const auto& s : per_task) {
      stats.branch_cuts += s.branch_cuts;
      stats.cycle_cuts += s.cycle_cuts;
      stats.isolations += s.isolations;
      stats.capped_cycles += s.capped_cycles;
    }
  }
  if (stats_out != nullptr) *stats_out = stats;

  AssignmentForest result = extract_components(std::move(target));
  if (config.verify) {
    const auto agg = CommunityAggregates::build(strengths, result.community, result.num_communities);
    for (NodeId v = 0; v < n; ++v) {
      if (local_gain(graph, strengths, agg, result.community, v) < 0.0) {
        throw ContractViolation("positive correction left node " + std::to_string(v) +
                                " with negative local gain");
      }
    }
  }
  return result;
}

}  // namespace synclouvain
