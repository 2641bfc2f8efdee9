#pragma once

#include <random>
#include <vector>

#include "ect/graph.hpp"
#include "ect/instance.hpp"

namespace ect::test {

inline Graph cycle_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

inline Graph path_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

/// Graph from an edge list on nodes 0..n-1.
inline Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

/// Simple random graph G(n, p).
inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) g.add_edge(i, j);
    }
  }
  return g;
}

/// Random multigraph with parity tags (odd, even, twin), loops and parallel edges.
inline Graph random_tagged_graph(int n, int m, std::mt19937_64& rng) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  std::uniform_int_distribution<int> node(0, n - 1), tag(0, 9);
  for (int k = 0; k < m; ++k) {
    const int u = node(rng), v = node(rng);
    const int t = tag(rng);
    const Parity p = t < 6 ? Parity::kOdd : (t < 9 ? Parity::kEven : Parity::kTwin);
    g.add_edge(u, v, p);
  }
  return g;
}

/// Instance on a graph with the given costs and no coordinates.
inline Instance make_instance(const Graph& g, const std::vector<long>& costs) {
  Instance inst;
  for (NodeId v : g.nodes()) inst.add_node(v, costs[static_cast<std::size_t>(v)], std::nullopt);
  for (EdgeId e : g.edges()) inst.add_edge(g.edge(e).u, g.edge(e).v);
  return inst;
}

/// Unit square C4 with costs (5, 3, 7, 2) at (0,0), (1,0), (1,1), (0,1).
inline Instance square_instance() {
  Instance inst;
  inst.name = "square";
  const long c[4] = {5, 3, 7, 2};
  const long xy[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int i = 0; i < 4; ++i) inst.add_node(i, c[i], Point{Rational(xy[i][0]), Rational(xy[i][1])});
  for (int i = 0; i < 4; ++i) inst.add_edge(i, (i + 1) % 4);
  return inst;
}

}  // namespace ect::test
