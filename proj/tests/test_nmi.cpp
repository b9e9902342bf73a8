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

#include <cmath>

#include "synclouvain/nmi.hpp"
#include "synclouvain/rng.hpp"

namespace synclouvain {
namespace {

TEST(Nmi, IdentityIsOne) {
  Partition p = Partition::from_labels({0, 0, 1, 2, 2, 2});
  EXPECT_DOUBLE_EQ(nmi(p, p), 1.0);
  EXPECT_DOUBLE_EQ(nmi(Partition::single_community(4), Partition::single_community(4)), 1.0);
}

TEST(Nmi, SplitVersusSingletonsByHand) {
  // H(X) = ln 2, H(Y) = ln 4, I = ln 2, so 2 ln2 / (3 ln2) = 2/3.
  Partition split = Partition::from_labels({0, 0, 1, 1});
  Partition singles = Partition::singletons(4);
  const double by_hand = 2.0 * std::log(2.0) / (std::log(2.0) + std::log(4.0));
  EXPECT_NEAR(by_hand, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(nmi(split, singles), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(nmi(singles, split), 2.0 / 3.0, 1e-12);
}

TEST(Nmi, IndependentPartitionsScoreZero) {
  // Crossed 2x2 design: knowing X says nothing about Y.
  EXPECT_NEAR(nmi(Partition::from_labels({0, 0, 1, 1}), Partition::from_labels({0, 1, 0, 1})),
              0.0, 1e-12);
}

TEST(Nmi, RelabelingInvariantAndBounded) {
  SeededRng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + static_cast<NodeId>(rng.below(60));
    std::vector<CommunityId> a(n);
    std::vector<CommunityId> b(n);
    for (NodeId v = 0; v < n; ++v) {
      a[v] = static_cast<CommunityId>(rng.below(5));
      b[v] = static_cast<CommunityId>(rng.below(7));
    }
    Partition x = Partition::from_labels(a);
    Partition y = Partition::from_labels(b);
    // Permute labels of x.
    std::vector<CommunityId> perm{3, 0, 4, 1, 2};
    std::vector<CommunityId> a2(n);
    for (NodeId v = 0; v < n; ++v) a2[v] = perm[a[v]];
    const double s = nmi(x, y);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
    EXPECT_NEAR(nmi(Partition::from_labels(a2), y), s, 1e-12);
    EXPECT_NEAR(nmi(y, x), s, 1e-12);
    EXPECT_NEAR(nmi(x, Partition::from_labels(a2)), 1.0, 1e-12);
  }
}

TEST(Nmi, SizeMismatchThrows) {
  EXPECT_THROW(nmi(Partition::singletons(3), Partition::singletons(4)), std::invalid_argument);
}

}  // namespace
}  // namespace synclouvain
