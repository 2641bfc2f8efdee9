#include "ect/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include "ect/errors.hpp"
#include "ect/graph_core.hpp"

namespace ect {

std::size_t oracle_node_limit() {
  if (const char* env = std::getenv("ECT_MAX_ORACLE_NODES")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return kDefaultOracleNodes;
}

namespace {

struct Search {
  const Graph& g;
  const std::vector<Rational>& cost;
  std::vector<char> forbidden;
  std::vector<NodeId> chosen;
  Rational chosen_cost = 0;
  NodeSet best;
  Rational best_cost;
  long long visited = 0;

  // Packing bound: vertex-disjoint even cycles each need a distinct hit.
  Rational lower_bound(const Graph& rest) const {
    Rational lb = 0;
    Graph h = rest;
    while (auto c = find_even_cycle(h)) {
      std::optional<Rational> cheapest;
      for (NodeId v : c->nodes) {
        if (forbidden[static_cast<std::size_t>(v)]) continue;
        if (!cheapest || cost[static_cast<std::size_t>(v)] < *cheapest) cheapest = cost[static_cast<std::size_t>(v)];
      }
      if (!cheapest) return -1;  // unhittable
      lb += *cheapest;
      h = h.without(c->nodes);
    }
    return lb;
  }

  void run() {
    ++visited;
    const Graph rest = g.without(make_node_set(chosen));
    const std::optional<Cycle> c = find_even_cycle(rest);
    if (!c) {
      if (chosen_cost < best_cost) {
        best_cost = chosen_cost;
        best = make_node_set(chosen);
      }
      return;
    }
    const Rational lb = lower_bound(rest);
    if (lb < 0 || chosen_cost + lb >= best_cost) return;
    std::vector<NodeId> options;
    for (NodeId v : c->nodes) {
      if (!forbidden[static_cast<std::size_t>(v)]) options.push_back(v);
    }
    std::stable_sort(options.begin(), options.end(), [&](NodeId a, NodeId b) {
      return cost[static_cast<std::size_t>(a)] < cost[static_cast<std::size_t>(b)];
    });
    std::vector<NodeId> banned_here;
    for (NodeId v : options) {
      chosen.push_back(v);
      chosen_cost += cost[static_cast<std::size_t>(v)];
      run();
      chosen_cost -= cost[static_cast<std::size_t>(v)];
      chosen.pop_back();
      forbidden[static_cast<std::size_t>(v)] = 1;
      banned_here.push_back(v);
    }
    for (NodeId v : banned_here) forbidden[static_cast<std::size_t>(v)] = 0;
  }
};

}  // namespace

ExactResult exact_ect(const Graph& g, const std::vector<Rational>& cost) {
  const std::size_t limit = oracle_node_limit();
  if (g.num_nodes() > limit) {
    throw TooLarge("exact solver limited to " + std::to_string(limit) + " nodes, got " +
                   std::to_string(g.num_nodes()));
  }
  Search s{g, cost, std::vector<char>(static_cast<std::size_t>(g.node_capacity()), 0), {}, 0, {}, 0, 0};
  s.best = even_cycle_vertices(g);
  s.best_cost = 0;
  for (NodeId v : s.best) s.best_cost += cost[static_cast<std::size_t>(v)];
  s.best_cost += 1;
  s.run();
  ExactResult r;
  r.solution = s.best;
  r.cost = 0;
  for (NodeId v : r.solution) r.cost += cost[static_cast<std::size_t>(v)];
  r.branch_nodes = s.visited;
  return r;
}

ExactResult exhaustive_ect(const Graph& g, const std::vector<Rational>& cost) {
  const std::vector<NodeId> nodes = g.nodes();
  if (nodes.size() > 20) throw TooLarge("exhaustive search limited to 20 nodes");
  ExactResult best;
  bool found = false;
  const std::uint32_t total = 1u << nodes.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    Rational c = 0;
    std::vector<NodeId> s;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (mask & (1u << i)) {
        s.push_back(nodes[i]);
        c += cost[static_cast<std::size_t>(nodes[i])];
      }
    }
    if (found && c >= best.cost) continue;
    if (!is_feasible_ect(g, s)) continue;
    best.solution = s;
    best.cost = c;
    found = true;
  }
  return best;
}

std::vector<Cycle> enumerate_cycles(const Graph& g) {
  if (g.num_nodes() > 12) throw TooLarge("cycle enumeration limited to 12 nodes");
  std::set<std::vector<EdgeId>> seen;
  std::vector<Cycle> out;
  std::vector<char> on_path(static_cast<std::size_t>(g.node_capacity()), 0);
  std::vector<EdgeId> path;
  for (NodeId s : g.nodes()) {
    // Cycles whose smallest node is s.
    std::function<void(NodeId)> dfs = [&](NodeId v) {
      for (EdgeId e : g.incident(v)) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop()) continue;
        if (!path.empty() && e == path.back()) continue;
        const NodeId w = ed.other(v);
        if (w == s) {
          std::vector<EdgeId> key = path;
          key.push_back(e);
          std::sort(key.begin(), key.end());
          if (seen.insert(key).second) out.push_back(order_cycle(g, key));
          continue;
        }
        if (w < s || on_path[static_cast<std::size_t>(w)]) continue;
        on_path[static_cast<std::size_t>(w)] = 1;
        path.push_back(e);
        dfs(w);
        path.pop_back();
        on_path[static_cast<std::size_t>(w)] = 0;
      }
    };
    on_path[static_cast<std::size_t>(s)] = 1;
    dfs(s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  std::set<EdgeId> loops;
  for (EdgeId e : g.edges()) {
    if (g.edge(e).is_loop()) loops.insert(e);
  }
  for (EdgeId e : loops) out.push_back(Cycle{{g.edge(e).u}, {e}});
  return out;
}

std::vector<Cycle> enumerate_even_cycles(const Graph& g) {
  std::vector<Cycle> out;
  for (Cycle& c : enumerate_cycles(g)) {
    if (is_even_cycle(g, c.edges)) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ect
