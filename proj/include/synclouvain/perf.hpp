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

// Wall-clock speedup measurement and Amdahl's law overlay.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "synclouvain/graph.hpp"
#include "synclouvain/sync_louvain.hpp"

namespace synclouvain {

// 1 / ((1 - P) + P / N). Throws std::invalid_argument unless P in [0, 1]
// and N >= 1.
double amdahl(double parallel_fraction, double threads);

struct RunRecord {
  int threads = 1;
  int repeat = 0;
  double wall_seconds = 0.0;
  double score = 0.0;
  int levels = 0;
  std::uint64_t seed = 0;
  double p = 0.0;
  bool operator==(const RunRecord&) const = default;
};

struct SpeedupPoint {
  int threads = 1;
  double mean_seconds = 0.0;
  double median_seconds = 0.0;
  double speedup = 1.0;         // baseline mean / mean
  double median_speedup = 1.0;  // baseline median / median
  bool operator==(const SpeedupPoint&) const = default;
};

struct SpeedupCurve {
  // Ascending thread counts; points.front() is the threads == 1 baseline.
  std::vector<SpeedupPoint> points;
  bool operator==(const SpeedupCurve&) const = default;
};

// Thrown when two runs of one measurement disagree on the flat partition.
class DeterminismBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOutcome {
  Partition flat;
  double score = 0.0;
  int levels = 0;
  PhaseTimes times;
};

// Runs the detector once with the given thread count.
using Runner = std::function<RunOutcome(int threads)>;

struct Measurement {
  std::vector<RunRecord> records;
  std::vector<PhaseTimes> phase_times;  // parallel to records
  SpeedupCurve curve;
};

// Runs `runner` `repeats` times per thread count, one run at a time.
// Throws std::invalid_argument if the list lacks 1, holds duplicates or
// values < 1, or repeats < 1; throws DeterminismBreach on any partition
// mismatch.
Measurement measure(const Runner& runner, const std::vector<int>& threads, int repeats,
                    std::uint64_t seed, double p);

// Convenience: measures `run(graph, config)` with config.threads varied.
Measurement measure(const Graph& graph, const std::vector<int>& threads, int repeats,
                    const RunConfig& config);

// Groups records by thread count. Throws std::invalid_argument when no
// threads == 1 record exists.
SpeedupCurve build_curve(const std::vector<RunRecord>& records);

// Header `threads,repeat,wall_seconds,score,levels,seed,p`; doubles as %.17g.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
// Throws std::runtime_error on schema or number errors.
std::vector<RunRecord> parse_csv(std::istream& in);

// Header `threads,repeat,assign,components,positive,maximal,aggregate`.
void write_phase_csv(std::ostream& out, const Measurement& measurement);

// Tab-separated `threads empirical amdahl`. Returns one warning per row
// whose empirical speedup exceeds its thread count.
std::vector<std::string> write_plot_data(std::ostream& out, const SpeedupCurve& curve,
                                         double parallel_fraction);

}  // namespace synclouvain
