#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ect {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

/// Parity tag of an edge. A plain edge is odd (length one). Compressed graphs
/// store the parity of the folded path; a twin edge has flexible parity, so
/// every cycle through it counts as even.
enum class Parity : std::uint8_t { kOdd, kEven, kTwin };

struct Edge {
  EdgeId id = -1;
  NodeId u = -1;
  NodeId v = -1;
  Parity parity = Parity::kOdd;

  bool is_loop() const { return u == v; }
  NodeId other(NodeId x) const { return x == u ? v : u; }
};

/// Undirected multigraph with stable integer ids. Loops and parallel edges are
/// allowed. Ids are never reused: removed ids stay dead, new ids are allocated
/// past the largest id ever seen (also across induced subgraphs).
class Graph {
 public:
  Graph() = default;

  /// Adds the node with the given id; throws std::invalid_argument if present.
  void add_node(NodeId id);
  /// Adds a node with a fresh id and returns it.
  NodeId add_node();
  /// Adds an edge with a fresh id. Both endpoints must exist.
  EdgeId add_edge(NodeId u, NodeId v, Parity parity = Parity::kOdd);
  /// Adds an edge with a caller-chosen id (used to keep ids of a parent graph).
  void add_edge_with_id(EdgeId id, NodeId u, NodeId v, Parity parity = Parity::kOdd);

  void remove_edge(EdgeId e);
  /// Removes the node and all incident edges.
  void remove_node(NodeId v);

  bool has_node(NodeId v) const;
  bool has_edge(EdgeId e) const;
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Incident edge ids of v in insertion order. A loop appears twice.
  std::span<const EdgeId> incident(NodeId v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  /// Degree with loops counted twice.
  int degree(NodeId v) const { return static_cast<int>(incident(v).size()); }

  /// Live node ids in ascending order.
  std::vector<NodeId> nodes() const;
  /// Live edge ids in ascending order.
  std::vector<EdgeId> edges() const;

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return num_nodes_ == 0; }

  /// One past the largest node id ever used.
  NodeId node_capacity() const { return static_cast<NodeId>(node_alive_.size()); }
  EdgeId edge_capacity() const { return static_cast<EdgeId>(edges_.size()); }

  /// Subgraph induced by `keep` (ids outside the graph are ignored). Edge ids,
  /// parities and id capacities are preserved.
  Graph induced(std::span<const NodeId> keep) const;
  /// Graph minus the given nodes.
  Graph without(std::span<const NodeId> drop) const;

  /// True iff both graphs have the same live nodes and edges (ids, endpoints, parity).
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void ensure_node_capacity(NodeId id);

  std::vector<char> node_alive_;
  std::vector<std::vector<EdgeId>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<char> edge_alive_;
  std::size_t num_nodes_ = 0;
  std::size_t num_edges_ = 0;
};

/// Simple ordered cycle: nodes[i] and nodes[i+1] (cyclically) are joined by edges[i].
struct Cycle {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
};

// NodeSet helpers.
NodeSet make_node_set(std::vector<NodeId> ids);
bool contains(const NodeSet& s, NodeId v);

}  // namespace ect
