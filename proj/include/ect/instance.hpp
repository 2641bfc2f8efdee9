#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ect/embedding.hpp"
#include "ect/graph.hpp"
#include "ect/rational.hpp"

namespace ect {

/// Node-weighted plane graph.
struct Instance {
  std::string name;
  Graph graph;
  std::vector<Rational> cost;                    // by node id; ignored for infinite nodes
  std::vector<char> infinite;                    // by node id
  std::vector<std::optional<Point>> coords;      // by node id
  std::vector<std::vector<EdgeId>> rotation;     // by node id; empty = from coordinates

  /// Adds node `id` (ids must be fresh).
  void add_node(NodeId id, Rational c, std::optional<Point> p, bool inf = false);
  EdgeId add_edge(NodeId u, NodeId v) { return graph.add_edge(u, v); }
  bool is_infinite(NodeId v) const;
};

/// Multiplier applied to the finite cost total to model infinite costs.
inline constexpr long kInfiniteCostFactor = 1000000;

/// Costs with infinite nodes replaced by kInfiniteCostFactor times the sum of
/// finite costs (at least 1).
std::vector<Rational> effective_costs(const Instance& inst);

/// Embedding from coordinates, honouring rotation overrides.
Embedding instance_embedding(const Instance& inst);

/// Total effective cost of a node set.
Rational total_cost(const std::vector<Rational>& cost, const NodeSet& s);

}  // namespace ect
