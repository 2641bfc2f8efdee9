#include "ect/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ect {

void Graph::ensure_node_capacity(NodeId id) {
  if (id < 0) throw std::invalid_argument("negative node id");
  const auto need = static_cast<std::size_t>(id) + 1;
  if (node_alive_.size() < need) {
    node_alive_.resize(need, 0);
    adjacency_.resize(need);
  }
}

void Graph::add_node(NodeId id) {
  ensure_node_capacity(id);
  auto& alive = node_alive_[static_cast<std::size_t>(id)];
  if (alive) throw std::invalid_argument("node " + std::to_string(id) + " already present");
  alive = 1;
  ++num_nodes_;
}

NodeId Graph::add_node() {
  const NodeId id = node_capacity();
  add_node(id);
  return id;
}

EdgeId Graph::add_edge(NodeId u, NodeId v, Parity parity) {
  const EdgeId id = edge_capacity();
  add_edge_with_id(id, u, v, parity);
  return id;
}

void Graph::add_edge_with_id(EdgeId id, NodeId u, NodeId v, Parity parity) {
  if (!has_node(u) || !has_node(v)) {
    throw std::invalid_argument("edge endpoint missing: " + std::to_string(u) + "-" + std::to_string(v));
  }
  if (id < 0) throw std::invalid_argument("negative edge id");
  const auto idx = static_cast<std::size_t>(id);
  if (edges_.size() <= idx) {
    edges_.resize(idx + 1);
    edge_alive_.resize(idx + 1, 0);
  }
  if (edge_alive_[idx]) throw std::invalid_argument("edge " + std::to_string(id) + " already present");
  edges_[idx] = Edge{id, u, v, parity};
  edge_alive_[idx] = 1;
  adjacency_[static_cast<std::size_t>(u)].push_back(id);
  adjacency_[static_cast<std::size_t>(v)].push_back(id);
  ++num_edges_;
}

void Graph::remove_edge(EdgeId e) {
  if (!has_edge(e)) throw std::invalid_argument("no edge " + std::to_string(e));
  const Edge& ed = edges_[static_cast<std::size_t>(e)];
  for (NodeId end : {ed.u, ed.v}) {
    auto& adj = adjacency_[static_cast<std::size_t>(end)];
    const auto it = std::find(adj.begin(), adj.end(), e);
    if (it != adj.end()) adj.erase(it);
  }
  edge_alive_[static_cast<std::size_t>(e)] = 0;
  --num_edges_;
}

void Graph::remove_node(NodeId v) {
  if (!has_node(v)) throw std::invalid_argument("no node " + std::to_string(v));
  while (!adjacency_[static_cast<std::size_t>(v)].empty()) {
    remove_edge(adjacency_[static_cast<std::size_t>(v)].front());
  }
  node_alive_[static_cast<std::size_t>(v)] = 0;
  --num_nodes_;
}

bool Graph::has_node(NodeId v) const {
  return v >= 0 && static_cast<std::size_t>(v) < node_alive_.size() && node_alive_[static_cast<std::size_t>(v)];
}

bool Graph::has_edge(EdgeId e) const {
  return e >= 0 && static_cast<std::size_t>(e) < edge_alive_.size() && edge_alive_[static_cast<std::size_t>(e)];
}

std::vector<NodeId> Graph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(num_nodes_);
  for (std::size_t i = 0; i < node_alive_.size(); ++i) {
    if (node_alive_[i]) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

std::vector<EdgeId> Graph::edges() const {
  std::vector<EdgeId> out;
  out.reserve(num_edges_);
  for (std::size_t i = 0; i < edge_alive_.size(); ++i) {
    if (edge_alive_[i]) out.push_back(static_cast<EdgeId>(i));
  }
  return out;
}

Graph Graph::induced(std::span<const NodeId> keep) const {
  Graph g;
  g.node_alive_.assign(node_alive_.size(), 0);
  g.adjacency_.resize(node_alive_.size());
  g.edges_.resize(edges_.size());
  g.edge_alive_.assign(edges_.size(), 0);
  for (NodeId v : keep) {
    if (has_node(v) && !g.has_node(v)) {
      g.node_alive_[static_cast<std::size_t>(v)] = 1;
      ++g.num_nodes_;
    }
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!edge_alive_[i]) continue;
    const Edge& e = edges_[i];
    if (g.has_node(e.u) && g.has_node(e.v)) {
      g.edges_[i] = e;
      g.edge_alive_[i] = 1;
      ++g.num_edges_;
    }
  }
  // Preserve incidence order of the parent graph.
  for (NodeId v : g.nodes()) {
    for (EdgeId e : incident(v)) {
      if (g.edge_alive_[static_cast<std::size_t>(e)]) g.adjacency_[static_cast<std::size_t>(v)].push_back(e);
    }
  }
  return g;
}

Graph Graph::without(std::span<const NodeId> drop) const {
  std::vector<char> dropped(node_alive_.size(), 0);
  for (NodeId v : drop) {
    if (has_node(v)) dropped[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<NodeId> keep;
  for (NodeId v : nodes()) {
    if (!dropped[static_cast<std::size_t>(v)]) keep.push_back(v);
  }
  return induced(keep);
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.nodes() != b.nodes()) return false;
  const auto ea = a.edges();
  if (ea != b.edges()) return false;
  for (EdgeId e : ea) {
    const Edge& x = a.edge(e);
    const Edge& y = b.edge(e);
    if (x.u != y.u || x.v != y.v || x.parity != y.parity) return false;
  }
  return true;
}

NodeSet make_node_set(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool contains(const NodeSet& s, NodeId v) { return std::binary_search(s.begin(), s.end(), v); }

}  // namespace ect
