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

// OpenMP helpers shared by the algorithm phases. Every loop writes only
// per-index results, so any schedule gives the same output.

#pragma once

#include <cstddef>
#include <cstdint>

#include <omp.h>

namespace synclouvain::detail {

template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

// Like parallel_for with one scratch object per worker thread.
template <class MakeScratch, class Body>
void parallel_for_scratch(std::size_t count, int threads, std::size_t chunk,
                          MakeScratch&& make_scratch, Body&& body) {
  const auto n = static_cast<std::int64_t>(count);
  const auto step = static_cast<int>(chunk);
#pragma omp parallel num_threads(threads)
  {
    auto scratch = make_scratch();
#pragma omp for schedule(dynamic, step)
    for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i), scratch);
  }
}

}  // namespace synclouvain::detail
