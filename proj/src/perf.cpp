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

#include "synclouvain/perf.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace synclouvain {
namespace {

constexpr const char* kCsvHeader = "threads,repeat,wall_seconds,score,levels,seed,p";

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

template <class T>
T parse_number(const std::string& field, std::size_t line) {
  std::istringstream in(field);
  T value{};
  in >> value;
  if (in.fail() || !in.eof()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad field '" + field + "'");
  }
  return value;
}

double parse_double(const std::string& field, std::size_t line) {
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad field '" + field + "'");
  }
  return value;
}

}  // namespace

double amdahl(double parallel_fraction, double threads) {
  if (!(parallel_fraction >= 0.0 && parallel_fraction <= 1.0)) {
    throw std::invalid_argument("parallel fraction must lie in [0, 1]");
  }
  if (!(threads >= 1.0)) throw std::invalid_argument("thread count must be >= 1");
  return 1.0 / ((1.0 - parallel_fraction) + parallel_fraction / threads);
}

Measurement measure(const Runner& runner, const std::vector<int>& threads, int repeats,
                    std::uint64_t seed, double p) {
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  std::set<int> seen;
  for (int t : threads) {
    if (t < 1) throw std::invalid_argument("thread counts must be >= 1");
    if (!seen.insert(t).second) throw std::invalid_argument("duplicate thread count");
  }
  if (!seen.contains(1)) throw std::invalid_argument("thread list must contain 1");

  Measurement out;
  std::optional<Partition> reference;
  int reference_threads = 0;
  for (int t : threads) {
    for (int r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      RunOutcome outcome = runner(t);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!reference) {
        reference = outcome.flat;
        reference_threads = t;
      } else if (!(outcome.flat == *reference)) {
        throw DeterminismBreach("flat partition with " + std::to_string(t) + " threads (repeat " +
                                std::to_string(r) + ") differs from the " +
                                std::to_string(reference_threads) + "-thread result");
      }
      out.records.push_back({t, r, std::max(wall, 1e-9), outcome.score, outcome.levels, seed, p});
      out.phase_times.push_back(outcome.times);
    }
  }
  out.curve = build_curve(out.records);
  return out;
}

Measurement measure(const Graph& graph, const std::vector<int>& threads, int repeats,
                    const RunConfig& config) {
  config.validate();
  const Strengths strengths = compute_strengths(graph);
  Runner runner = [&](int t) {
    RunConfig c = config;
    c.threads = t;
    Hierarchy h = run(graph, c);
    RunOutcome outcome;
    outcome.score = modularity(graph, strengths, h.flat.labels());
    outcome.levels = static_cast<int>(h.levels.size());
    outcome.times = h.times;
    outcome.flat = std::move(h.flat);
    return outcome;
  };
  return measure(runner, threads, repeats, config.seed, config.accept_prob);
}

SpeedupCurve build_curve(const std::vector<RunRecord>& records) {
  std::map<int, std::vector<double>> by_threads;
  for (const auto& r : records) by_threads[r.threads].push_back(r.wall_seconds);
  if (!by_threads.contains(1)) throw std::invalid_argument("no single-thread baseline");
  SpeedupCurve curve;
  double base_mean = 0.0;
  double base_median = 0.0;
  for (const auto& [t, walls] : by_threads) {
    SpeedupPoint pt;
    pt.threads = t;
    double sum = 0.0;
    for (double w : walls) sum += w;
    pt.mean_seconds = sum / static_cast<double>(walls.size());
    pt.median_seconds = median(walls);
    if (t == 1) {
      base_mean = pt.mean_seconds;
      base_median = pt.median_seconds;
    }
    curve.points.push_back(pt);
  }
  for (auto& pt : curve.points) {
    pt.speedup = pt.threads == 1 ? 1.0 : base_mean / pt.mean_seconds;
    pt.median_speedup = pt.threads == 1 ? 1.0 : base_median / pt.median_seconds;
  }
  return curve;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.threads << ',' << r.repeat << ',' << fmt(r.wall_seconds) << ',' << fmt(r.score) << ','
        << r.levels << ',' << r.seed << ',' << fmt(r.p) << '\n';
  }
}

std::vector<RunRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("csv: expected header '" + std::string(kCsvHeader) + "'");
  }
  std::vector<RunRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 7 fields");
    }
    RunRecord r;
    r.threads = parse_number<int>(fields[0], line_no);
    r.repeat = parse_number<int>(fields[1], line_no);
    r.wall_seconds = parse_double(fields[2], line_no);
    r.score = parse_double(fields[3], line_no);
    r.levels = parse_number<int>(fields[4], line_no);
    r.seed = parse_number<std::uint64_t>(fields[5], line_no);
    r.p = parse_double(fields[6], line_no);
    records.push_back(r);
  }
  return records;
}

void write_phase_csv(std::ostream& out, const Measurement& measurement) {
  out << "threads,repeat,assign,components,positive,maximal,aggregate\n";
  for (std::size_t i = 0; i < measurement.records.size(); ++i) {
    const auto& r = measurement.records[i];
    const auto& t = measurement.phase_times[i];
    out << r.threads << ',' << r.repeat << ',' << fmt(t.assign) << ',' << fmt(t.components) << ','
        << fmt(t.positive) << ',' << fmt(t.maximal) << ',' << fmt(t.aggregate) << '\n';
  }
}

std::vector<std::string> write_plot_data(std::ostream& out, const SpeedupCurve& curve,
                                         double parallel_fraction) {
  if (curve.points.empty()) throw std::invalid_argument("empty speedup curve");
  std::vector<std::string> warnings;
  out << "threads\tempirical\tamdahl\n";
  for (const auto& pt : curve.points) {
    out << pt.threads << '\t' << fmt(pt.speedup) << '\t'
        << fmt(amdahl(parallel_fraction, pt.threads)) << '\n';
    if (pt.speedup > pt.threads) {
      warnings.push_back("empirical speedup " + fmt(pt.speedup) + " exceeds thread count " +
                         std::to_string(pt.threads));
    }
  }
  return warnings;
}

}  // namespace synclouvain
