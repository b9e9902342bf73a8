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

#include "synclouvain/graph.hpp"

namespace synclouvain {

// Normalized mutual information with arithmetic-mean normalization,
// 2 I(X;Y) / (H(X) + H(Y)). Two partitions that both have zero entropy
// (a single community each) score 1.
// Throws std::invalid_argument when the sizes differ.
double nmi(const Partition& x, const Partition& y);

}  // namespace synclouvain
