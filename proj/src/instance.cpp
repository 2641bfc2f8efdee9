#include "ect/instance.hpp"

#include <algorithm>

namespace ect {

void Instance::add_node(NodeId id, Rational c, std::optional<Point> p, bool inf) {
  graph.add_node(id);
  const auto need = static_cast<std::size_t>(graph.node_capacity());
  if (cost.size() < need) {
    cost.resize(need);
    infinite.resize(need, 0);
    coords.resize(need);
    rotation.resize(need);
  }
  cost[static_cast<std::size_t>(id)] = std::move(c);
  infinite[static_cast<std::size_t>(id)] = inf ? 1 : 0;
  coords[static_cast<std::size_t>(id)] = std::move(p);
}

bool Instance::is_infinite(NodeId v) const {
  return static_cast<std::size_t>(v) < infinite.size() && infinite[static_cast<std::size_t>(v)] != 0;
}

std::vector<Rational> effective_costs(const Instance& inst) {
  Rational finite_total = 0;
  for (NodeId v : inst.graph.nodes()) {
    if (!inst.is_infinite(v)) finite_total += inst.cost[static_cast<std::size_t>(v)];
  }
  if (finite_total < 1) finite_total = 1;
  const Rational big = finite_total * kInfiniteCostFactor;
  std::vector<Rational> out(static_cast<std::size_t>(inst.graph.node_capacity()));
  for (NodeId v : inst.graph.nodes()) {
    out[static_cast<std::size_t>(v)] = inst.is_infinite(v) ? big : inst.cost[static_cast<std::size_t>(v)];
  }
  return out;
}

Embedding instance_embedding(const Instance& inst) {
  const bool overrides =
      std::any_of(inst.rotation.begin(), inst.rotation.end(), [](const auto& r) { return !r.empty(); });
  std::vector<std::optional<Point>> coords = inst.coords;
  coords.resize(static_cast<std::size_t>(inst.graph.node_capacity()));
  if (!overrides) return embed_from_coordinates(inst.graph, coords);
  std::vector<std::vector<EdgeId>> rot = inst.rotation;
  rot.resize(static_cast<std::size_t>(inst.graph.node_capacity()));
  return embed_with_rotation(inst.graph, coords, rot);
}

Rational total_cost(const std::vector<Rational>& cost, const NodeSet& s) {
  Rational sum = 0;
  for (NodeId v : s) sum += cost[static_cast<std::size_t>(v)];
  return sum;
}

}  // namespace ect
