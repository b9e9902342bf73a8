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

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "synclouvain/bench_gen.hpp"
#include "synclouvain/graph_io.hpp"
#include "synclouvain/sync_louvain.hpp"

namespace synclouvain::cli {
namespace {

namespace fs = std::filesystem;

// Input errors that map to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  return f;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory " + dir.string() + ": " + ec.message());
}

struct RunFlags {
  std::uint64_t seed = 0;
  double p = 0.5;
  int max_outer_iters = 64;
  int max_sweeps = 100;
  std::size_t cycle_cut_cap = 10000;
  bool verify = false;

  void add_to(CLI::App* app) {
    app->add_option("--seed", seed, "Seed of the acceptance draws");
    app->add_option("--p", p, "Acceptance probability of maximal corrections, in (0, 1]");
    app->add_option("--max-outer-iters", max_outer_iters, "Aggregation level cap");
    app->add_option("--max-sweeps", max_sweeps, "Maximal-correction sweep cap per level");
    app->add_option("--cycle-cut-cap", cycle_cut_cap, "Longest cycle searched for pair cuts");
    app->add_flag("--verify", verify, "Re-derive state after every phase");
  }
  RunConfig config(int threads) const {
    RunConfig c;
    c.threads = threads;
    c.seed = seed;
    c.accept_prob = p;
    c.max_outer_iters = max_outer_iters;
    c.max_sweeps = max_sweeps;
    c.cycle_cut_cap = cycle_cut_cap;
    c.verify = verify;
    c.validate();
    return c;
  }
};

struct SpecFlags {
  BenchSpec spec;
  void add_to(CLI::App* app) {
    app->add_option("--N", spec.n, "Node count");
    app->add_option("--k", spec.k, "Mean out-degree");
    app->add_option("--kmax", spec.kmax, "Maximum out-degree");
    app->add_option("--mut", spec.mu_t, "Topology mixing parameter");
    app->add_option("--muw", spec.mu_w, "Weight mixing parameter");
    app->add_option("--cmin", spec.cmin, "Smallest community size");
    app->add_option("--cmax", spec.cmax, "Largest community size");
    app->add_option("--seed", spec.seed, "Generator seed");
  }
};

LoadedGraph load_input(const std::string& path, bool remap) {
  if (!fs::exists(path)) throw InputError("input file not found: " + path);
  LoadedGraph lg = load_edge_list_file(path, {.remap_ids = remap});
  if (lg.graph.num_nodes() == 0) throw InputError(path + ": graph is empty");
  return lg;
}

int resolve_threads(const CLI::Option* flag, int flag_value, const Hooks& hooks) {
  if (flag->count() > 0) return flag_value;
  auto env = hooks.getenv ? hooks.getenv(kThreadsEnv) : [] () -> std::optional<std::string> {
    const char* v = std::getenv(kThreadsEnv);
    return v == nullptr ? std::nullopt : std::optional<std::string>(v);
  }();
  if (!env) return flag_value;
  char* end = nullptr;
  const long value = std::strtol(env->c_str(), &end, 10);
  if (env->empty() || *end != '\0' || value < 1 || value > 4096) {
    throw InputError(std::string(kThreadsEnv) + " must be a positive integer, got '" + *env + "'");
  }
  return static_cast<int>(value);
}

void write_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

int detect(const std::string& input, const fs::path& out_dir, int threads, const RunFlags& flags,
           bool remap, std::ostream& out, std::ostream& err) {
  const RunConfig config = flags.config(threads);
  LoadedGraph lg = load_input(input, remap);
  const auto start = std::chrono::steady_clock::now();
  Hierarchy h = run(lg.graph, config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ensure_dir(out_dir);
  for (std::size_t t = 0; t < h.levels.size(); ++t) {
    auto f = open_output(out_dir / ("level_" + std::to_string(t) + ".txt"));
    write_partition(f, h.levels[t]);
  }
  {
    auto f = open_output(out_dir / "flat.txt");
    write_partition(f, h.flat, lg.original_ids);
  }
  write_warnings(err, h.warnings);
  const Strengths s = compute_strengths(lg.graph);
  out << "modularity=" << fmt(modularity(lg.graph, s, h.flat.labels()))
      << " levels=" << h.levels.size() << " communities=" << h.flat.num_communities()
      << " nodes=" << lg.graph.num_nodes() << " edges=" << lg.graph.num_edges()
      << " threads=" << threads << " wall_seconds=" << fmt(wall) << '\n';
  return kExitOk;
}

int generate_cmd(const BenchSpec& spec, const fs::path& out_dir, std::ostream& out,
                 std::ostream& err) {
  PlantedGraph pg = generate(spec);
  ensure_dir(out_dir);
  {
    auto f = open_output(out_dir / "graph.txt");
    write_edge_list(f, pg.graph, spec.header());
  }
  {
    auto f = open_output(out_dir / "truth.txt");
    write_partition(f, pg.truth);
  }
  write_warnings(err, pg.warnings);
  const MixingStats mix = measure_mixing(pg.graph, pg.truth);
  out << "nodes=" << pg.graph.num_nodes() << " edges=" << pg.graph.num_edges()
      << " communities=" << pg.truth.num_communities() << " mean_degree=" << fmt(mix.mean_degree)
      << " edge_mixing=" << fmt(mix.edge_fraction)
      << " strength_mixing=" << fmt(mix.strength_fraction) << '\n';
  return kExitOk;
}

int bench(const std::string& input, const BenchSpec& spec, const std::vector<int>& threads,
          int repeats, const RunFlags& flags, double amdahl_p, const fs::path& out_dir,
          const Hooks& hooks, std::ostream& out, std::ostream& err) {
  const RunConfig base = flags.config(1);
  amdahl(amdahl_p, 1.0);  // validates P before any work
  Graph graph;
  if (!input.empty()) {
    graph = load_input(input, false).graph;
  } else {
    PlantedGraph pg = generate(spec);
    write_warnings(err, pg.warnings);
    graph = std::move(pg.graph);
  }
  const Strengths strengths = compute_strengths(graph);
  Runner runner = [&](int t) {
    RunConfig c = base;
    c.threads = t;
    if (hooks.bench_runner) return hooks.bench_runner(graph, c);
    Hierarchy h = run(graph, c);
    RunOutcome o;
    o.score = modularity(graph, strengths, h.flat.labels());
    o.levels = static_cast<int>(h.levels.size());
    o.times = h.times;
    o.flat = std::move(h.flat);
    return o;
  };
  Measurement m = measure(runner, threads, repeats, base.seed, base.accept_prob);
  ensure_dir(out_dir);
  {
    auto f = open_output(out_dir / "runs.csv");
    write_csv(f, m.records);
  }
  {
    auto f = open_output(out_dir / "phases.csv");
    write_phase_csv(f, m);
  }
  {
    auto f = open_output(out_dir / "speedup.tsv");
    write_warnings(err, write_plot_data(f, m.curve, amdahl_p));
  }
  write_plot_data(out, m.curve, amdahl_p);
  return kExitOk;
}

int amdahl_cmd(double p, const std::vector<int>& threads, std::ostream& out) {
  out << "threads\tamdahl\n";
  for (int t : threads) out << t << '\t' << fmt(amdahl(p, t)) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const Hooks& hooks) {
  CLI::App app{"Synchronized Louvain community detection for directed weighted graphs"};
  app.name("synclouvain");
  app.require_subcommand(1);

  // detect
  auto* detect_cmd = app.add_subcommand("detect", "Detect communities in an edge list");
  std::string detect_input;
  std::string detect_out = ".";
  int detect_threads = 1;
  bool detect_remap = false;
  RunFlags detect_flags;
  detect_cmd->add_option("input", detect_input, "Edge list file")->required();
  detect_cmd->add_option("-o,--output-dir", detect_out, "Directory for partition files");
  auto* threads_flag = detect_cmd->add_option(
      "-t,--threads", detect_threads,
      std::string("Worker threads (default 1, or ") + kThreadsEnv + ")");
  threads_flag->check(CLI::PositiveNumber);
  detect_cmd->add_flag("--remap", detect_remap, "Compact sparse node ids");
  detect_flags.add_to(detect_cmd);

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Generate a planted benchmark graph");
  SpecFlags gen_spec;
  std::string gen_out = ".";
  gen_spec.add_to(gen_cmd);
  gen_cmd->add_option("-o,--output-dir", gen_out, "Directory for graph.txt and truth.txt");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Measure wall time and speedup");
  std::string bench_input;
  SpecFlags bench_spec;
  std::vector<int> bench_threads{1};
  int repeats = 1;
  double bench_amdahl = 0.95;
  std::string bench_out = ".";
  RunFlags bench_flags;
  bench_cmd->add_option("-i,--input", bench_input, "Edge list file (else generate from spec)");
  bench_cmd->add_option("--N", bench_spec.spec.n, "Node count");
  bench_cmd->add_option("--k", bench_spec.spec.k, "Mean out-degree");
  bench_cmd->add_option("--kmax", bench_spec.spec.kmax, "Maximum out-degree");
  bench_cmd->add_option("--mut", bench_spec.spec.mu_t, "Topology mixing parameter");
  bench_cmd->add_option("--muw", bench_spec.spec.mu_w, "Weight mixing parameter");
  bench_cmd->add_option("--cmin", bench_spec.spec.cmin, "Smallest community size");
  bench_cmd->add_option("--cmax", bench_spec.spec.cmax, "Largest community size");
  bench_cmd->add_option("--graph-seed", bench_spec.spec.seed, "Generator seed");
  bench_cmd->add_option("-t,--threads", bench_threads, "Thread counts, e.g. 1,2,4")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--repeats", repeats, "Runs per thread count")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--amdahl-p", bench_amdahl, "Parallel fraction of the overlay");
  bench_cmd->add_option("-o,--output-dir", bench_out, "Directory for runs.csv and speedup.tsv");
  bench_flags.add_to(bench_cmd);

  // amdahl
  auto* amdahl_sub = app.add_subcommand("amdahl", "Print Amdahl's law predictions");
  double amdahl_p = 0.95;
  std::vector<int> amdahl_threads{1, 2, 4, 8, 12};
  amdahl_sub->add_option("--P", amdahl_p, "Parallel fraction in [0, 1]");
  amdahl_sub->add_option("-t,--threads", amdahl_threads, "Thread counts")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (detect_cmd->parsed()) {
      const int threads = resolve_threads(threads_flag, detect_threads, hooks);
      return detect(detect_input, detect_out, threads, detect_flags, detect_remap, out, err);
    }
    if (gen_cmd->parsed()) return generate_cmd(gen_spec.spec, gen_out, out, err);
    if (bench_cmd->parsed()) {
      return bench(bench_input, bench_spec.spec, bench_threads, repeats, bench_flags, bench_amdahl,
                   bench_out, hooks, out, err);
    }
    return amdahl_cmd(amdahl_p, amdahl_threads, out);
  } catch (const ContractViolation& e) {
    err << "error: contract violation: " << e.what() << '\n';
    return kExitContract;
  } catch (const DeterminismBreach& e) {
    err << "error: determinism breach: " << e.what() << '\n';
    return kExitContract;
  } catch (const GraphFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kExitContract;
  }
}

}  // namespace synclouvain::cli
