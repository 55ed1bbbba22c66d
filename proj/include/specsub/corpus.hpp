#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "specsub/errors.hpp"
#include "specsub/graph.hpp"

#include "json.hpp"

namespace specsub {

struct CorpusGraph {
  std::string name;
  Graph graph;
};

// Verification corpus: named base graphs plus the k and r grids. The default
// set mixes bipartite and non-bipartite families across the interesting
// shapes (paths, even/odd cycles, cliques, a complete bipartite graph and a
// seeded random graph).
struct CorpusSpec {
  std::vector<CorpusGraph> graphs;
  std::vector<int> sk_k = {1, 2, 3};
  std::vector<int> s2k_k = {1, 2};
  std::vector<int> r_set = {1, 2};
};

inline CorpusSpec default_corpus() {
  CorpusSpec c;
  c.graphs = {
      {"C4", cycle_graph(4)},
      {"C5", cycle_graph(5)},
      {"C6", cycle_graph(6)},
      {"K23", complete_bipartite_graph(2, 3)},
      {"K3", complete_graph(3)},
      {"K4", complete_graph(4)},
      {"P2", path_graph(2)},
      {"P4", path_graph(4)},
      {"rand8", random_connected_graph(8, 0.4, 7)},
  };
  return c;
}

// Corpus file: {"graphs":[{"name":..., "kind":..., params...} |
// {"name":..., "file":"x.el"}], "sk_k":[...], "s2k_k":[...], "r":[...]}
inline CorpusSpec corpus_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open corpus file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::io_error, std::string("corpus parse failure: ") + e.what());
  }
  CorpusSpec c;
  c.graphs.clear();
  for (const auto& item : j.at("graphs")) {
    CorpusGraph cg;
    cg.name = item.at("name").get<std::string>();
    if (item.contains("file")) {
      std::ifstream gin(item.at("file").get<std::string>());
      if (!gin) fail(errc::io_error, "cannot open graph file for " + cg.name);
      cg.graph = read_edge_list(gin);
    } else {
      const std::string kind = item.at("kind").get<std::string>();
      if (kind == "path") cg.graph = path_graph(item.at("n").get<int>());
      else if (kind == "cycle") cg.graph = cycle_graph(item.at("n").get<int>());
      else if (kind == "complete") cg.graph = complete_graph(item.at("n").get<int>());
      else if (kind == "complete_bipartite")
        cg.graph = complete_bipartite_graph(item.at("a").get<int>(), item.at("b").get<int>());
      else if (kind == "random_connected")
        cg.graph = random_connected_graph(item.at("n").get<int>(), item.at("p").get<double>(),
                                          item.at("seed").get<unsigned>());
      else
        fail(errc::invalid_params, "unknown corpus graph kind " + kind);
    }
    c.graphs.push_back(std::move(cg));
  }
  if (j.contains("sk_k")) c.sk_k = j.at("sk_k").get<std::vector<int>>();
  if (j.contains("s2k_k")) c.s2k_k = j.at("s2k_k").get<std::vector<int>>();
  if (j.contains("r")) c.r_set = j.at("r").get<std::vector<int>>();
  return c;
}

}  // namespace specsub
