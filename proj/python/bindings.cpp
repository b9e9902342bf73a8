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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "synclouvain/bench_gen.hpp"
#include "synclouvain/graph_io.hpp"
#include "synclouvain/nmi.hpp"
#include "synclouvain/perf.hpp"
#include "synclouvain/quality.hpp"
#include "synclouvain/sync_louvain.hpp"

namespace py = pybind11;

namespace synclouvain {
namespace {

using EdgeTuple = std::tuple<NodeId, NodeId, double>;

std::vector<CommunityId> to_list(const Partition& p) {
  auto labels = p.labels();
  return {labels.begin(), labels.end()};
}

Graph graph_from_tuples(NodeId n, const std::vector<EdgeTuple>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& [u, v, w] : edges) out.push_back({u, v, w});
  return Graph::from_edges(n, std::move(out));
}

std::vector<EdgeTuple> graph_edges(const Graph& g) {
  std::vector<EdgeTuple> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.src, e.dst, e.weight);
  return out;
}

double labels_modularity(const Graph& g, const std::vector<CommunityId>& labels) {
  if (labels.size() != g.num_nodes()) {
    throw std::invalid_argument("labels must have one entry per node");
  }
  return modularity(g, compute_strengths(g), labels);
}

py::dict run_py(const Graph& g, int threads, std::uint64_t seed, double p, int max_outer_iters,
                int max_sweeps, std::size_t cycle_cut_cap, bool verify) {
  RunConfig config;
  config.threads = threads;
  config.seed = seed;
  config.accept_prob = p;
  config.max_outer_iters = max_outer_iters;
  config.max_sweeps = max_sweeps;
  config.cycle_cut_cap = cycle_cut_cap;
  config.verify = verify;
  Hierarchy h;
  {
    py::gil_scoped_release release;
    h = run(g, config);
  }
  py::list levels;
  for (const Partition& level : h.levels) levels.append(to_list(level));
  py::dict out;
  out["levels"] = levels;
  out["flat"] = to_list(h.flat);
  out["modularity"] = modularity(g, compute_strengths(g), h.flat.labels());
  out["warnings"] = h.warnings;
  return out;
}

py::tuple generate_py(NodeId n, double k, NodeId kmax, double mu_t, double mu_w, NodeId cmin,
                      NodeId cmax, std::uint64_t seed) {
  BenchSpec spec{n, k, kmax, mu_t, mu_w, cmin, cmax, seed};
  PlantedGraph pg = generate(spec);
  return py::make_tuple(std::move(pg.graph), to_list(pg.truth), pg.warnings);
}

}  // namespace
}  // namespace synclouvain

PYBIND11_MODULE(_synclouvain, m) {
  using namespace synclouvain;
  m.doc() = "Synchronized Louvain community detection for weighted directed graphs.";

  static py::exception<ContractViolation> contract_error(m, "ContractViolation",
                                                          PyExc_RuntimeError);
  static py::exception<GraphFormatError> format_error(m, "GraphFormatError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ContractViolation& e) {
      py::set_error(contract_error, e.what());
    } catch (const GraphFormatError& e) {
      py::set_error(format_error, e.what());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_tuples), py::arg("num_nodes"), py::arg("edges"),
           "Builds a graph from (src, dst, weight) triples. Parallel edges are summed.")
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("edges", &graph_edges)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(num_nodes=" + std::to_string(g.num_nodes()) +
               ", num_edges=" + std::to_string(g.num_edges()) + ")";
      });

  m.def(
      "load_edge_list",
      [](const std::string& path, bool remap) {
        LoadedGraph lg = load_edge_list_file(path, LoadOptions{remap});
        return py::make_tuple(std::move(lg.graph), lg.original_ids);
      },
      py::arg("path"), py::arg("remap") = false,
      "Returns (graph, original_ids); original_ids is empty unless remap is set.");

  m.def("modularity", &labels_modularity, py::arg("graph"), py::arg("labels"));

  m.def("run", &run_py, py::arg("graph"), py::arg("threads") = 1, py::arg("seed") = 0,
        py::arg("p") = 0.5, py::arg("max_outer_iters") = 64, py::arg("max_sweeps") = 100,
        py::arg("cycle_cut_cap") = 10000, py::arg("verify") = false,
        "Returns a dict with levels, flat, modularity and warnings.");

  m.def("generate", &generate_py, py::arg("n") = 1000, py::arg("k") = 50.0,
        py::arg("kmax") = 100, py::arg("mu_t") = 0.2, py::arg("mu_w") = 0.1,
        py::arg("cmin") = 10, py::arg("cmax") = 100, py::arg("seed") = 0,
        "Planted-partition benchmark graph. Returns (graph, truth_labels, warnings).");

  m.def(
      "nmi",
      [](const std::vector<CommunityId>& a, const std::vector<CommunityId>& b) {
        return nmi(Partition::from_labels(a), Partition::from_labels(b));
      },
      py::arg("a"), py::arg("b"));

  m.def("amdahl", &amdahl, py::arg("parallel_fraction"), py::arg("threads"));
}
