#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bosegraph {

// Undirected graph with a distinguished root, always vertex 0. Bosonic
// modes sit on the vertices; tunneling runs along the edges.
struct RootedGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // each pair ordered u < v
  std::string name;

  static constexpr int root = 0;
};

inline RootedGraph make_graph(int num_vertices,
                              std::vector<std::pair<int, int>> edges,
                              std::string name) {
  if (num_vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= num_vertices)
      throw std::invalid_argument("edge endpoint out of range");
    if (!seen.insert({u, v}).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ")");
  }
  std::sort(edges.begin(), edges.end());
  return {num_vertices, std::move(edges), std::move(name)};
}

// The eleven inequivalent 4-vertex rooted graphs, ids 3..13. Grouped by
// root degree: 3-5 have degree 1, 6-9 degree 2, 10-13 degree 3.
inline RootedGraph catalog_graph(int id) {
  using E = std::vector<std::pair<int, int>>;
  E edges;
  switch (id) {
    case 3: edges = {{0, 1}, {1, 2}, {1, 3}}; break;
    case 4: edges = {{0, 1}, {1, 2}, {2, 3}}; break;
    case 5: edges = {{0, 1}, {1, 2}, {1, 3}, {2, 3}}; break;
    case 6: edges = {{0, 1}, {0, 2}, {1, 3}}; break;
    case 7: edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}}; break;
    case 8: edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}}; break;
    case 9: edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}; break;
    case 10: edges = {{0, 1}, {0, 2}, {0, 3}}; break;
    case 11: edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}}; break;
    case 12: edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}; break;
    case 13: edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}; break;
    default:
      throw std::invalid_argument("catalog id must be in [3, 13], got " +
                                  std::to_string(id));
  }
  return make_graph(4, std::move(edges), "Gamma" + std::to_string(id));
}

inline RootedGraph complete_graph(int num_vertices) {
  if (num_vertices < 2) throw std::invalid_argument("complete_graph needs L >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < num_vertices; ++u)
    for (int v = u + 1; v < num_vertices; ++v) edges.push_back({u, v});
  return make_graph(num_vertices, std::move(edges),
                    "K" + std::to_string(num_vertices));
}

// Root hangs by a single edge off a complete graph on {1, ..., L-1}.
inline RootedGraph pendant_complete(int num_vertices) {
  if (num_vertices < 3) throw std::invalid_argument("pendant_complete needs L >= 3");
  std::vector<std::pair<int, int>> edges = {{0, 1}};
  for (int u = 1; u < num_vertices; ++u)
    for (int v = u + 1; v < num_vertices; ++v) edges.push_back({u, v});
  return make_graph(num_vertices, std::move(edges),
                    "pendant" + std::to_string(num_vertices));
}

// Edge-list text format: '#' comment lines, then "vertices L", then one
// "u v" line per undirected edge.
inline RootedGraph parse_graph(const std::string& text, std::string name = "file") {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int num_vertices = -1;
  std::vector<std::pair<int, int>> edges;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("graph parse error at line " + std::to_string(line_no) +
                             ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (num_vertices < 0) {
      std::string keyword;
      fields >> keyword >> num_vertices;
      if (keyword != "vertices" || fields.fail() || num_vertices < 1)
        fail("expected header 'vertices L'");
      continue;
    }
    int u, v;
    fields >> u >> v;
    if (fields.fail()) fail("expected edge 'u v'");
    if (u == v) fail("self-loop on vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
      fail("vertex index out of range");
    auto e = std::minmax(u, v);
    if (std::find(edges.begin(), edges.end(), std::make_pair(e.first, e.second)) !=
        edges.end())
      fail("duplicate edge");
    edges.push_back({e.first, e.second});
  }
  if (num_vertices < 0) {
    line_no = 0;
    fail("missing 'vertices L' header");
  }
  return make_graph(num_vertices, std::move(edges), std::move(name));
}

// Deletes the root and relabels {1, ..., L-1} down to {0, ..., L-2}.
inline RootedGraph subgraph_without_root(const RootedGraph& g) {
  if (g.num_vertices < 2)
    throw std::invalid_argument("subgraph_without_root needs L >= 2");
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges)
    if (u != RootedGraph::root) edges.push_back({u - 1, v - 1});
  return make_graph(g.num_vertices - 1, std::move(edges), g.name + "-root");
}

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  double lambda_max = 0.0;
  double one_particle_ground_energy = 0.0;  // -lambda_max, in units of tau
};

inline Eigen::MatrixXd adjacency_matrix(const RootedGraph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_vertices, g.num_vertices);
  for (const auto& [u, v] : g.edges) a(u, v) = a(v, u) = 1.0;
  return a;
}

inline SpectrumReport adjacency_spectrum(const RootedGraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g));
  SpectrumReport report;
  report.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + g.num_vertices);
  report.lambda_max = report.eigenvalues.back();
  report.one_particle_ground_energy = -report.lambda_max;
  return report;
}

}  // namespace bosegraph
