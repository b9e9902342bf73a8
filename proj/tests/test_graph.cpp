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

#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"
#include "synclouvain/graph.hpp"
#include "synclouvain/graph_io.hpp"

namespace synclouvain {
namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in).graph;
}

TEST(LoadEdgeList, SingleWeightedEdge) {
  Graph g = parse("0 1 2.5\n");
  EXPECT_EQ(g.num_nodes(), 2u);
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 2.5}));
}

TEST(LoadEdgeList, ParallelEdgesMerge) {
  Graph g = parse("0 1\n0 1\n");
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 2.0}));
}

TEST(LoadEdgeList, RejectsNonpositiveWeightWithLine) {
  try {
    parse("0 1 -3\n");
    FAIL() << "expected GraphFormatError";
  } catch (const GraphFormatError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("nonpositive weight"), std::string::npos);
  }
  EXPECT_THROW(parse("# c\n0 1 1\n1 2 0\n"), GraphFormatError);
  try {
    parse("# c\n0 1 1\n1 2 0\n");
  } catch (const GraphFormatError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadEdgeList, RejectsBadIdsAndWeights) {
  EXPECT_THROW(parse("0 x\n"), GraphFormatError);
  EXPECT_THROW(parse("-1 2\n"), GraphFormatError);
  EXPECT_THROW(parse("1.5 2\n"), GraphFormatError);
  EXPECT_THROW(parse("0 1 inf\n"), GraphFormatError);
  EXPECT_THROW(parse("0 1 nan\n"), GraphFormatError);
  EXPECT_THROW(parse("0 1 abc\n"), GraphFormatError);
  EXPECT_THROW(parse("0 1 2 3\n"), GraphFormatError);
  EXPECT_THROW(parse("0\n"), GraphFormatError);
}

TEST(LoadEdgeList, CommentsAndNodesHeader) {
  Graph g = parse("# nodes 5\n# something\n0 1\n\n");
  EXPECT_EQ(g.num_nodes(), 5u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_THROW(parse("# nodes 1\n0 3\n"), GraphFormatError);
  EXPECT_EQ(parse("").num_nodes(), 0u);
}

TEST(LoadEdgeList, RemapsSparseIds) {
  std::istringstream in("10 500 1\n500 7 2\n");
  LoadedGraph lg = load_edge_list(in, {.remap_ids = true});
  EXPECT_EQ(lg.graph.num_nodes(), 3u);
  EXPECT_EQ(lg.original_ids, (std::vector<std::uint64_t>{7, 10, 500}));
  EXPECT_EQ(lg.graph.edges(), (std::vector<Edge>{{1, 2, 1.0}, {2, 0, 2.0}}));
}

TEST(LoadEdgeList, MissingFileNamesPath) {
  try {
    load_edge_list_file("/nonexistent/graph.txt");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/graph.txt"), std::string::npos);
  }
}

TEST(Graph, RejectsInvalidConstruction) {
  EXPECT_THROW(Graph::from_edges(2, {{0, 2, 1.0}}), std::invalid_argument);
  EXPECT_THROW(Graph::from_edges(2, {{0, 1, 0.0}}), std::invalid_argument);
  EXPECT_THROW(Graph::from_edges(2, {{0, 1, std::nan("")}}), std::invalid_argument);
}

TEST(Graph, CanonicalAdjacency) {
  Graph g = Graph::from_edges(3, {{2, 0, 1}, {0, 2, 1}, {0, 1, 1}, {1, 1, 4}, {0, 2, 0.5}});
  auto outs = g.out_neighbors(0);
  EXPECT_EQ(std::vector<NodeId>(outs.begin(), outs.end()), (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(g.out_weights(0)[1], 1.5);
  auto ins = g.in_neighbors(2);
  EXPECT_EQ(std::vector<NodeId>(ins.begin(), ins.end()), (std::vector<NodeId>{0}));
  auto self = g.in_neighbors(1);
  EXPECT_EQ(std::vector<NodeId>(self.begin(), self.end()), (std::vector<NodeId>{0, 1}));
  // Construction order does not matter.
  Graph h = Graph::from_edges(3, {{0, 1, 1}, {1, 1, 4}, {0, 2, 1.5}, {2, 0, 1}});
  EXPECT_EQ(g, h);
}

TEST(Strengths, TwoTriangles) {
  Strengths s = compute_strengths(oracle::two_triangles());
  EXPECT_EQ(s.out, std::vector<double>(6, 1.0));
  EXPECT_EQ(s.in, std::vector<double>(6, 1.0));
  EXPECT_EQ(s.total, 6.0);
}

TEST(Strengths, EmptyAndSelfLoop) {
  Strengths s = compute_strengths(Graph::from_edges(3, {}));
  EXPECT_EQ(s.out, std::vector<double>(3, 0.0));
  EXPECT_EQ(s.total, 0.0);
  Strengths t = compute_strengths(Graph::from_edges(1, {{0, 0, 2.0}}));
  EXPECT_EQ(t.out[0], 2.0);
  EXPECT_EQ(t.in[0], 2.0);
  EXPECT_EQ(t.total, 2.0);
}

TEST(Strengths, SumsAgreeProperty) {
  SeededRng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const bool dyadic = trial % 2 == 0;
    Graph g = oracle::random_graph(rng, 1 + static_cast<NodeId>(rng.below(30)),
                                   {.edge_prob = 0.2, .dyadic = dyadic});
    Strengths s = compute_strengths(g);
    double sum_out = 0.0;
    double sum_in = 0.0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      sum_out += s.out[v];
      sum_in += s.in[v];
    }
    oracle::Dense d = oracle::densify(g);
    if (dyadic) {
      EXPECT_EQ(sum_out, s.total);
      EXPECT_EQ(sum_in, s.total);
      EXPECT_EQ(d.m, s.total);
    } else {
      EXPECT_NEAR(sum_in, s.total, 1e-12 * std::max(1.0, s.total));
      EXPECT_NEAR(d.m, s.total, 1e-12 * std::max(1.0, s.total));
    }
    EXPECT_EQ(compute_strengths(g), s);
  }
}

TEST(Aggregate, TwoTrianglesCollapse) {
  Graph g = aggregate(oracle::two_triangles(), Partition::from_labels({0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(g.num_nodes(), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 0, 3.0}, {1, 1, 3.0}}));
  EXPECT_EQ(compute_strengths(g).total, 6.0);
}

TEST(Aggregate, IdentityAndSingleCommunity) {
  SeededRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_graph(rng, 2 + static_cast<NodeId>(rng.below(20)), {.dyadic = true});
    EXPECT_EQ(aggregate(g, Partition::singletons(g.num_nodes())), g);
    Graph one = aggregate(g, Partition::single_community(g.num_nodes()));
    EXPECT_EQ(one.num_nodes(), 1u);
    if (g.num_edges() > 0) {
      ASSERT_EQ(one.num_edges(), 1u);
      EXPECT_EQ(one.edges()[0].weight, compute_strengths(g).total);
    }
  }
}

TEST(Aggregate, PreservesTotalWeightProperty) {
  SeededRng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const NodeId n = 1 + static_cast<NodeId>(rng.below(40));
    Graph g = oracle::random_graph(rng, n, {.edge_prob = 0.15, .dyadic = true});
    const auto k = static_cast<CommunityId>(1 + rng.below(n));
    Partition p = Partition::from_labels(oracle::random_labels(rng, n, k)).canonical();
    Graph a = aggregate(g, p);
    EXPECT_EQ(a.num_nodes(), p.num_communities());
    EXPECT_EQ(compute_strengths(a).total, compute_strengths(g).total);
    // Block sums by dense oracle.
    oracle::Dense d = oracle::densify(g);
    oracle::Dense da = oracle::densify(a);
    std::vector<double> block(std::size_t{da.n} * da.n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) block[std::size_t{p[i]} * da.n + p[j]] += d.at(i, j);
    }
    EXPECT_EQ(block, da.w);
  }
}

TEST(Aggregate, RejectsMismatchedPartition) {
  EXPECT_THROW(aggregate(oracle::two_triangles(), Partition::singletons(5)),
               std::invalid_argument);
}

TEST(EdgeListFormat, RoundTripIsIdentical) {
  SeededRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = oracle::random_graph(rng, 1 + static_cast<NodeId>(rng.below(25)));
    std::ostringstream out;
    write_edge_list(out, g, {"k=v"});
    std::istringstream in(out.str());
    Graph back = load_edge_list(in).graph;
    EXPECT_EQ(back, g);
    std::ostringstream again;
    write_edge_list(again, back, {"k=v"});
    EXPECT_EQ(again.str(), out.str());
  }
}

TEST(EdgeListFormat, ExactText) {
  std::ostringstream out;
  write_edge_list(out, Graph::from_edges(3, {{1, 0, 0.1}, {0, 1, 2}}));
  EXPECT_EQ(out.str(), "# nodes 3\n0 1 2\n1 0 0.10000000000000001\n");
}

TEST(PartitionFormat, RoundTrip) {
  Partition p = Partition::from_labels({0, 1, 0, 2});
  std::ostringstream out;
  write_partition(out, p);
  EXPECT_EQ(out.str(), "0 0\n1 1\n2 0\n3 2\n");
  std::istringstream in(out.str());
  EXPECT_EQ(read_partition(in), p);
  std::istringstream bad("0 0\n2 1\n");
  EXPECT_THROW(read_partition(bad), GraphFormatError);
}

TEST(Partition, CanonicalComposeIdentity) {
  Partition p = Partition::from_labels({5, 2, 5, 0});
  EXPECT_EQ(p.canonical(), Partition::from_labels({0, 1, 0, 2}));
  EXPECT_TRUE(Partition::singletons(4).is_identity());
  EXPECT_FALSE(p.is_identity());
  Partition upper = Partition::from_labels({1, 0, 1});
  EXPECT_EQ(compose(p.canonical(), upper), Partition::from_labels({1, 0, 1, 1}));
  EXPECT_THROW(Partition({0, 3}, 2), std::invalid_argument);
}

}  // namespace
}  // namespace synclouvain
