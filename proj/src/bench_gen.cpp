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

#include "synclouvain/bench_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "synclouvain/rng.hpp"

namespace synclouvain {
namespace {

constexpr int kMaxAttempts = 50;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Mean of the continuous power law x^-2 on [a, b].
double power_law_mean(double a, double b) {
  if (b <= a) return a;
  return a * b * std::log(b / a) / (b - a);
}

double degree_floor(double k, double kmax) {
  if (k >= kmax) return kmax;
  double lo = 1.0;
  double hi = kmax;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (power_law_mean(mid, kmax) < k ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Sizes summing to n, each in [smin, smax], density ~ 1/s. Empty when
// this draw cannot be adjusted to sum exactly to n.
std::vector<NodeId> draw_sizes(SeededRng& rng, NodeId n, NodeId smin, NodeId smax) {
  std::vector<NodeId> sizes;
  std::uint64_t sum = 0;
  const double ratio = static_cast<double>(smax + 1) / smin;
  while (sum < n) {
    auto s = static_cast<NodeId>(std::floor(smin * std::pow(ratio, rng.uniform())));
    s = std::clamp(s, smin, smax);
    sizes.push_back(s);
    sum += s;
  }
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::uint64_t excess = sum - n;
  for (std::size_t idx : order) {
    if (excess == 0) break;
    const auto cut = static_cast<NodeId>(std::min<std::uint64_t>(excess, sizes[idx] - smin));
    sizes[idx] -= cut;
    excess -= cut;
  }
  if (excess == 0) return sizes;
  // Drop the last community and spread its members over the others.
  std::uint64_t deficit = sizes.back() - excess;
  sizes.pop_back();
  for (std::size_t idx : order) {
    if (deficit == 0) break;
    if (idx >= sizes.size()) continue;
    const auto add = static_cast<NodeId>(std::min<std::uint64_t>(deficit, smax - sizes[idx]));
    sizes[idx] += add;
    deficit -= add;
  }
  if (deficit != 0 || sizes.empty()) return {};
  return sizes;
}

struct Placement {
  std::vector<CommunityId> community;
  std::vector<NodeId> intra;
  std::size_t capped_stubs = 0;
};

// Largest internal degree first, each into a uniformly chosen community
// that still has room and is large enough. A node that fits nowhere goes
// to the largest community with room and its internal degree is capped.
Placement place(SeededRng& rng, const std::vector<NodeId>& sizes,
                const std::vector<NodeId>& intra) {
  const auto n = static_cast<NodeId>(intra.size());
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  std::stable_sort(nodes.begin(), nodes.end(),
                   [&](NodeId a, NodeId b) { return intra[a] > intra[b]; });
  std::vector<CommunityId> by_size(sizes.size());
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](CommunityId a, CommunityId b) { return sizes[a] > sizes[b]; });
  std::vector<NodeId> free_slots(sizes);
  std::vector<CommunityId> open;
  std::size_t admitted = 0;
  Placement out{std::vector<CommunityId>(n), intra, 0};
  for (NodeId v : nodes) {
    while (admitted < by_size.size() && sizes[by_size[admitted]] >= intra[v] + 1) {
      open.push_back(by_size[admitted++]);
    }
    if (open.empty()) open.push_back(by_size[admitted++]);
    const auto pick = static_cast<std::size_t>(rng.below(open.size()));
    const CommunityId c = open[pick];
    out.community[v] = c;
    if (sizes[c] - 1 < intra[v]) {
      out.capped_stubs += intra[v] - (sizes[c] - 1);
      out.intra[v] = sizes[c] - 1;
    }
    if (--free_slots[c] == 0) {
      open[pick] = open.back();
      open.pop_back();
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> BenchSpec::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(k > 0.0) || !std::isfinite(k)) fail("k must be positive");
  if (k > kmax) fail("k must not exceed kmax");
  if (kmax >= n) fail("kmax must be smaller than N");
  if (!(mu_t >= 0.0 && mu_t <= 1.0)) fail("mu_t must lie in [0, 1]");
  if (!(mu_w >= 0.0 && mu_w <= 1.0)) fail("mu_w must lie in [0, 1]");
  if (mu_t < mu_w) fail("mu_t must be at least mu_w");
  if (cmin < 3) fail("cmin must be at least 3");
  if (cmin > cmax) fail("cmin must not exceed cmax");
  if (cmin > n) fail("cmin must not exceed N");
  if (power_law_mean(1.0, kmax) > k) {
    fail("k is below the smallest mean reachable with kmax (" + fmt(power_law_mean(1.0, kmax)) +
         ")");
  }
  if ((1.0 - mu_t) * kmax > cmax - 1.0 + 1e-9) {
    fail("cmax must exceed (1 - mu_t) * kmax so the largest node fits its community");
  }
  std::vector<std::string> warnings;
  if (mu_t == mu_w) warnings.push_back("mu_t equals mu_w; communities are only weakly planted");
  return warnings;
}

std::vector<std::string> BenchSpec::header() const {
  return {"generator=lfr-style planted partition",
          "N=" + std::to_string(n),
          "k=" + fmt(k),
          "kmax=" + std::to_string(kmax),
          "mu_t=" + fmt(mu_t),
          "mu_w=" + fmt(mu_w),
          "cmin=" + std::to_string(cmin),
          "cmax=" + std::to_string(cmax),
          "seed=" + std::to_string(seed),
          "degree_exponent=2",
          "community_size_exponent=1"};
}

PlantedGraph generate(const BenchSpec& spec) {
  PlantedGraph out;
  out.warnings = spec.validate();
  const NodeId n = spec.n;
  SeededRng rng(spec.seed);

  const double dmin = degree_floor(spec.k, spec.kmax);
  const double kmax = spec.kmax;
  std::vector<NodeId> degree(n);
  for (NodeId v = 0; v < n; ++v) {
    const double x = 1.0 / (1.0 / dmin - rng.uniform() * (1.0 / dmin - 1.0 / kmax));
    degree[v] = std::clamp(static_cast<NodeId>(std::floor(x + rng.uniform())), NodeId{1},
                           spec.kmax);
  }
  std::vector<NodeId> intra(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId s = 0; s < degree[v]; ++s) intra[v] += rng.bernoulli(1.0 - spec.mu_t) ? 1 : 0;
    intra[v] = std::min(intra[v], spec.cmax - 1);
  }
  const NodeId smin =
      std::max(spec.cmin, *std::min_element(intra.begin(), intra.end()) + NodeId{1});
  if (smin > n) throw std::invalid_argument("N is below the smallest feasible community size");

  std::vector<NodeId> sizes;
  std::optional<Placement> best;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto drawn = draw_sizes(rng, n, smin, spec.cmax);
    if (drawn.empty()) continue;
    Placement p = place(rng, drawn, intra);
    if (!best || p.capped_stubs < best->capped_stubs) {
      best = std::move(p);
      sizes = std::move(drawn);
    }
    if (best->capped_stubs == 0) break;
  }
  if (!best) throw std::invalid_argument("cannot split N into community sizes within [cmin, cmax]");
  if (best->capped_stubs > 0) {
    out.warnings.push_back(std::to_string(best->capped_stubs) +
                           " internal stubs turned external to fit community sizes");
  }
  const std::vector<CommunityId>& community = best->community;
  intra = std::move(best->intra);

  std::vector<std::vector<NodeId>> members(sizes.size());
  for (NodeId v = 0; v < n; ++v) members[community[v]].push_back(v);

  std::vector<Edge> edges;
  std::vector<NodeId> pool;
  std::vector<NodeId> chosen;
  for (NodeId v = 0; v < n; ++v) {
    const CommunityId c = community[v];
    const NodeId outside = n - sizes[c];
    const NodeId in_count = intra[v];
    const NodeId out_count = std::min(degree[v] - in_count, outside);
    const double d = static_cast<double>(in_count + out_count);
    double w_in = 1.0;
    double w_out = 1.0;
    if (in_count > 0 && out_count > 0) {
      w_in = (1.0 - spec.mu_w) * d / in_count;
      w_out = spec.mu_w * d / out_count;
    }
    pool.clear();
    for (NodeId u : members[c]) {
      if (u != v) pool.push_back(u);
    }
    for (NodeId s = 0; s < in_count; ++s) {
      const auto pick = s + static_cast<NodeId>(rng.below(pool.size() - s));
      std::swap(pool[s], pool[pick]);
      edges.push_back({v, pool[s], w_in});
    }
    chosen.clear();
    while (chosen.size() < out_count) {
      const auto u = static_cast<NodeId>(rng.below(n));
      if (community[u] == c || std::find(chosen.begin(), chosen.end(), u) != chosen.end()) {
        continue;
      }
      chosen.push_back(u);
      edges.push_back({v, u, w_out});
    }
  }
  out.graph = Graph::from_edges(n, std::move(edges));
  out.truth = Partition::from_labels(canonical_labels(community));
  return out;
}

MixingStats measure_mixing(const Graph& graph, const Partition& truth) {
  if (truth.size() != graph.num_nodes()) {
    throw std::invalid_argument("measure_mixing: partition size mismatch");
  }
  MixingStats stats;
  const NodeId n = graph.num_nodes();
  if (n == 0) return stats;
  std::size_t inter_edges = 0;
  double inter_weight = 0.0;
  double total_weight = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    auto targets = graph.out_neighbors(u);
    auto weights = graph.out_weights(u);
    for (std::size_t e = 0; e < targets.size(); ++e) {
      total_weight += weights[e];
      if (truth[u] != truth[targets[e]]) {
        ++inter_edges;
        inter_weight += weights[e];
      }
    }
  }
  const std::size_t m = graph.num_edges();
  stats.mean_degree = static_cast<double>(m) / n;
  if (m > 0) {
    stats.edge_fraction = static_cast<double>(inter_edges) / m;
    stats.strength_fraction = inter_weight / total_weight;
  }
  return stats;
}

}  // namespace synclouvain
