#include "ect/graph_core.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace ect {

namespace {

struct Frame {
  NodeId v;
  EdgeId parent_edge;
  std::size_t next = 0;
};

std::vector<NodeId> path_nodes(const Graph& g, NodeId start, std::span<const EdgeId> path) {
  std::vector<NodeId> out{start};
  NodeId cur = start;
  for (EdgeId e : path) {
    cur = g.edge(e).other(cur);
    out.push_back(cur);
  }
  return out;
}

bool path_has_twin(const Graph& g, std::span<const EdgeId> path) {
  return std::any_of(path.begin(), path.end(), [&](EdgeId e) { return g.edge(e).parity == Parity::kTwin; });
}

int path_parity(const Graph& g, std::span<const EdgeId> path) {
  int p = 0;
  for (EdgeId e : path) p ^= parity_bit(g.edge(e).parity);
  return p;
}

// Two-colours the block under edge parities; false if an odd cycle or a twin edge exists.
bool block_is_bipartite(const Graph& g, const Block& b) {
  std::map<NodeId, int> colour;
  for (EdgeId e : b.edges) {
    if (g.edge(e).parity == Parity::kTwin) return false;
  }
  std::vector<char> in_block(static_cast<std::size_t>(g.edge_capacity()), 0);
  for (EdgeId e : b.edges) in_block[static_cast<std::size_t>(e)] = 1;
  for (NodeId root : b.nodes) {
    if (colour.count(root)) continue;
    colour[root] = 0;
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        if (!in_block[static_cast<std::size_t>(e)]) continue;
        const Edge& ed = g.edge(e);
        const int want = colour[v] ^ parity_bit(ed.parity);
        NodeId w = ed.other(v);
        if (ed.is_loop()) {
          if (want != colour[v]) return false;
          continue;
        }
        auto it = colour.find(w);
        if (it == colour.end()) {
          colour[w] = want;
          stack.push_back(w);
        } else if (it->second != want) {
          return false;
        }
      }
    }
  }
  return true;
}

// Cycle formed by two internally disjoint p-q paths.
Cycle join_paths(const Graph& g, NodeId p, const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  Cycle c;
  auto na = path_nodes(g, p, a);
  auto nb = path_nodes(g, p, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    c.nodes.push_back(na[i]);
    c.edges.push_back(a[i]);
  }
  for (std::size_t i = b.size(); i > 0; --i) {
    c.nodes.push_back(nb[i]);
    c.edges.push_back(b[i - 1]);
  }
  return c;
}

bool is_even_path_pair(const Graph& g, const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  return path_has_twin(g, a) || path_has_twin(g, b) || path_parity(g, a) == path_parity(g, b);
}

// Looks for a short (length <= 3) x-y path avoiding edge e that closes an even cycle with e.
bool short_even_closure(const Graph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  const NodeId x = ed.u, y = ed.v;
  const int pe = parity_bit(ed.parity);
  auto closes = [&](std::initializer_list<EdgeId> path) {
    int p = pe;
    for (EdgeId f : path) {
      if (g.edge(f).parity == Parity::kTwin) return true;
      p ^= parity_bit(g.edge(f).parity);
    }
    return p == 0;
  };
  for (EdgeId e1 : g.incident(x)) {
    const Edge& d1 = g.edge(e1);
    if (e1 == e || d1.is_loop()) continue;
    const NodeId a = d1.other(x);
    if (a == y) {
      if (closes({e1})) return true;
      continue;
    }
    for (EdgeId e2 : g.incident(a)) {
      const Edge& d2 = g.edge(e2);
      if (e2 == e1 || e2 == e || d2.is_loop()) continue;
      const NodeId b = d2.other(a);
      if (b == x) continue;
      if (b == y) {
        if (closes({e1, e2})) return true;
        continue;
      }
      for (EdgeId e3 : g.incident(b)) {
        const Edge& d3 = g.edge(e3);
        if (e3 == e2 || e3 == e || d3.is_loop()) continue;
        if (d3.other(b) == y && closes({e1, e2, e3})) return true;
      }
    }
  }
  return false;
}

// Exact test for a non-loop edge of a 2-connected block graph `bg`.
bool edge_on_even_cycle(const Graph& bg, EdgeId e) {
  const Edge ed = bg.edge(e);
  if (ed.parity == Parity::kTwin) return true;
  if (short_even_closure(bg, e)) return true;
  Graph h = bg;
  h.remove_edge(e);
  std::vector<char> banned(static_cast<std::size_t>(h.node_capacity()), 0);
  auto path = shortest_path(h, ed.u, ed.v, banned);
  if (!path) return false;
  const auto dec = blocks(h);
  std::vector<int> block_of(static_cast<std::size_t>(h.edge_capacity()), -1);
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    for (EdgeId f : dec.blocks[i].edges) block_of[static_cast<std::size_t>(f)] = static_cast<int>(i);
  }
  std::vector<int> chain;
  for (EdgeId f : *path) chain.push_back(block_of[static_cast<std::size_t>(f)]);
  std::sort(chain.begin(), chain.end());
  chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
  for (int bi : chain) {
    if (!block_is_bipartite(h, dec.blocks[static_cast<std::size_t>(bi)])) return true;
  }
  return (path_parity(h, *path) ^ parity_bit(ed.parity)) == 0;
}

}  // namespace

BlockDecomposition blocks(const Graph& g) {
  BlockDecomposition out;
  const auto cap = static_cast<std::size_t>(g.node_capacity());
  std::vector<int> disc(cap, -1), low(cap, 0);
  std::vector<EdgeId> edge_stack;
  int timer = 0;
  std::vector<Block> found;

  for (NodeId root : g.nodes()) {
    if (disc[static_cast<std::size_t>(root)] != -1) continue;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    std::vector<Frame> frames{{root, -1, 0}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      const NodeId v = f.v;
      const auto inc = g.incident(v);
      if (f.next < inc.size()) {
        const EdgeId e = inc[f.next++];
        const Edge& ed = g.edge(e);
        if (e == f.parent_edge || ed.is_loop()) continue;
        const NodeId w = ed.other(v);
        const auto wi = static_cast<std::size_t>(w);
        if (disc[wi] == -1) {
          edge_stack.push_back(e);
          disc[wi] = low[wi] = timer++;
          frames.push_back({w, e, 0});
        } else if (disc[wi] < disc[static_cast<std::size_t>(v)]) {
          edge_stack.push_back(e);
          low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[wi]);
        }
        continue;
      }
      const EdgeId pe = f.parent_edge;
      frames.pop_back();
      if (frames.empty()) break;
      const NodeId p = frames.back().v;
      low[static_cast<std::size_t>(p)] = std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
      if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(p)]) {
        Block b;
        while (true) {
          const EdgeId top = edge_stack.back();
          edge_stack.pop_back();
          b.edges.push_back(top);
          if (top == pe) break;
        }
        found.push_back(std::move(b));
      }
    }
    if (g.incident(root).empty()) found.push_back(Block{{root}, {}});
  }
  for (EdgeId e : g.edges()) {
    if (g.edge(e).is_loop()) found.push_back(Block{{}, {e}});
  }
  for (Block& b : found) {
    if (b.edges.empty()) continue;
    std::sort(b.edges.begin(), b.edges.end());
    for (EdgeId e : b.edges) {
      b.nodes.push_back(g.edge(e).u);
      b.nodes.push_back(g.edge(e).v);
    }
    b.nodes = make_node_set(std::move(b.nodes));
  }
  std::stable_sort(found.begin(), found.end(), [](const Block& a, const Block& b) {
    if (a.edges.empty() != b.edges.empty()) return b.edges.empty();
    if (a.edges.empty()) return a.nodes.front() < b.nodes.front();
    return a.edges.front() < b.edges.front();
  });
  std::vector<int> count(cap, 0);
  for (const Block& b : found) {
    if (b.edges.size() == 1 && g.edge(b.edges[0]).is_loop()) continue;
    for (NodeId v : b.nodes) ++count[static_cast<std::size_t>(v)];
  }
  for (NodeId v : g.nodes()) {
    if (count[static_cast<std::size_t>(v)] >= 2) out.cut_nodes.push_back(v);
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (NodeId v : found[i].nodes) {
      if (contains(out.cut_nodes, v)) out.block_graph_edges.emplace_back(static_cast<int>(i), v);
    }
  }
  out.blocks = std::move(found);
  return out;
}

BlockKind classify_block(const Graph& g, const Block& b) {
  if (b.edges.empty()) return BlockKind::kIsolated;
  if (b.edges.size() == 1) return g.edge(b.edges[0]).is_loop() ? BlockKind::kLoop : BlockKind::kBridge;
  if (b.edges.size() == b.nodes.size()) return BlockKind::kCycle;
  return BlockKind::kRich;
}

bool is_even_cycle(const Graph& g, std::span<const EdgeId> cycle_edges) {
  return path_has_twin(g, cycle_edges) || path_parity(g, cycle_edges) == 0;
}

bool has_even_cycle(const Graph& g) {
  const auto dec = blocks(g);
  for (const Block& b : dec.blocks) {
    switch (classify_block(g, b)) {
      case BlockKind::kLoop:
      case BlockKind::kCycle:
        if (is_even_cycle(g, b.edges)) return true;
        break;
      case BlockKind::kRich:
        return true;
      default:
        break;
    }
  }
  return false;
}

NodeSet even_cycle_vertices(const Graph& g) {
  std::vector<NodeId> out;
  const auto dec = blocks(g);
  for (const Block& b : dec.blocks) {
    const BlockKind kind = classify_block(g, b);
    if (kind == BlockKind::kLoop || kind == BlockKind::kCycle) {
      if (is_even_cycle(g, b.edges)) out.insert(out.end(), b.nodes.begin(), b.nodes.end());
      continue;
    }
    if (kind != BlockKind::kRich) continue;
    if (block_is_bipartite(g, b)) {
      out.insert(out.end(), b.nodes.begin(), b.nodes.end());
      continue;
    }
    Graph bg = g.induced(b.nodes);
    for (EdgeId e : bg.edges()) {
      if (bg.edge(e).is_loop()) bg.remove_edge(e);
    }
    std::map<NodeId, bool> done;
    std::size_t remaining = b.nodes.size();
    for (EdgeId e : b.edges) {
      if (remaining == 0) break;
      const Edge& ed = g.edge(e);
      if (done[ed.u] && done[ed.v]) continue;
      if (!edge_on_even_cycle(bg, e)) continue;
      for (NodeId x : {ed.u, ed.v}) {
        if (!done[x]) {
          done[x] = true;
          --remaining;
          out.push_back(x);
        }
      }
    }
  }
  return make_node_set(std::move(out));
}

Graph residual_graph(const Graph& g, const NodeSet& s) {
  const Graph rest = g.without(s);
  const NodeSet keep = even_cycle_vertices(rest);
  return rest.induced(keep);
}

bool is_feasible_ect(const Graph& g, const NodeSet& s) { return !has_even_cycle(g.without(s)); }

std::optional<std::vector<EdgeId>> shortest_path(const Graph& g, NodeId from, NodeId to,
                                                 const std::vector<char>& banned, EdgeId skip_edge) {
  const auto cap = static_cast<std::size_t>(g.node_capacity());
  std::vector<EdgeId> via(cap, -1);
  std::vector<char> seen(cap, 0);
  std::deque<NodeId> queue{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (EdgeId e : g.incident(v)) {
      if (e == skip_edge) continue;
      const NodeId w = g.edge(e).other(v);
      const auto wi = static_cast<std::size_t>(w);
      if (seen[wi] || (wi < banned.size() && banned[wi])) continue;
      seen[wi] = 1;
      via[wi] = e;
      queue.push_back(w);
    }
  }
  if (!seen[static_cast<std::size_t>(to)]) return std::nullopt;
  std::vector<EdgeId> path;
  for (NodeId cur = to; cur != from;) {
    const EdgeId e = via[static_cast<std::size_t>(cur)];
    path.push_back(e);
    cur = g.edge(e).other(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<Cycle> find_even_cycle(const Graph& g) {
  const auto dec = blocks(g);
  const std::vector<char> no_ban(static_cast<std::size_t>(g.node_capacity()), 0);
  for (const Block& b : dec.blocks) {
    const BlockKind kind = classify_block(g, b);
    if (kind == BlockKind::kLoop || kind == BlockKind::kCycle) {
      if (is_even_cycle(g, b.edges)) return order_cycle(g, b.edges);
      continue;
    }
    if (kind != BlockKind::kRich) continue;
    const Graph bg = g.induced(b.nodes);
    for (EdgeId e : b.edges) {
      const Edge& ed = g.edge(e);
      if (ed.parity != Parity::kTwin) continue;
      auto rest = shortest_path(bg, ed.u, ed.v, no_ban, e);
      std::vector<EdgeId> direct{e};
      return join_paths(g, ed.u, direct, *rest);
    }
    // Any cycle through the first edge, then an ear gives three paths between two nodes.
    const Edge& e0 = g.edge(b.edges.front());
    auto back = shortest_path(bg, e0.u, e0.v, no_ban, e0.id);
    std::vector<EdgeId> first{e0.id};
    Cycle c = join_paths(g, e0.u, first, *back);
    std::map<NodeId, std::size_t> pos;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) pos[c.nodes[i]] = i;
    std::vector<char> on_cycle_edge(static_cast<std::size_t>(g.edge_capacity()), 0);
    for (EdgeId e : c.edges) on_cycle_edge[static_cast<std::size_t>(e)] = 1;
    for (NodeId a : c.nodes) {
      for (EdgeId f : bg.incident(a)) {
        if (on_cycle_edge[static_cast<std::size_t>(f)] || bg.edge(f).is_loop()) continue;
        const NodeId w = bg.edge(f).other(a);
        std::vector<EdgeId> ear{f};
        NodeId end = w;
        if (!pos.count(w)) {
          // BFS from w avoiding a, stopping at the first cycle node.
          const auto cap = static_cast<std::size_t>(bg.node_capacity());
          std::vector<EdgeId> via(cap, -1);
          std::vector<char> seen(cap, 0);
          seen[static_cast<std::size_t>(a)] = seen[static_cast<std::size_t>(w)] = 1;
          std::deque<NodeId> queue{w};
          end = -1;
          while (!queue.empty() && end == -1) {
            const NodeId v = queue.front();
            queue.pop_front();
            for (EdgeId e : bg.incident(v)) {
              const NodeId x = bg.edge(e).other(v);
              if (seen[static_cast<std::size_t>(x)]) continue;
              seen[static_cast<std::size_t>(x)] = 1;
              via[static_cast<std::size_t>(x)] = e;
              if (pos.count(x)) {
                end = x;
                break;
              }
              queue.push_back(x);
            }
          }
          std::vector<EdgeId> tail;
          for (NodeId cur = end; cur != w;) {
            const EdgeId e = via[static_cast<std::size_t>(cur)];
            tail.push_back(e);
            cur = bg.edge(e).other(cur);
          }
          std::reverse(tail.begin(), tail.end());
          ear.insert(ear.end(), tail.begin(), tail.end());
        }
        // Arcs of c between a and end.
        std::size_t i = pos[a], j = pos[end];
        const std::size_t k = c.edges.size();
        std::vector<EdgeId> arc1, arc2;
        for (std::size_t t = i; t != j; t = (t + 1) % k) arc1.push_back(c.edges[t]);
        for (std::size_t t = i; t != j; t = (t + k - 1) % k) arc2.push_back(c.edges[(t + k - 1) % k]);
        if (is_even_path_pair(g, arc1, arc2)) return join_paths(g, a, arc1, arc2);
        if (is_even_path_pair(g, arc1, ear)) return join_paths(g, a, arc1, ear);
        return join_paths(g, a, arc2, ear);
      }
    }
  }
  return std::nullopt;
}

std::vector<NodeSet> connected_components(const Graph& g) {
  std::vector<NodeSet> out;
  std::vector<char> seen(static_cast<std::size_t>(g.node_capacity()), 0);
  for (NodeId root : g.nodes()) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    std::vector<NodeId> comp{root}, stack{root};
    seen[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        const NodeId w = g.edge(e).other(v);
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        comp.push_back(w);
        stack.push_back(w);
      }
    }
    out.push_back(make_node_set(std::move(comp)));
  }
  return out;
}

NodeSet articulation_points(const Graph& g) { return blocks(g).cut_nodes; }

bool edges_form_cycle(const Graph& g, std::span<const EdgeId> edges) {
  if (edges.empty()) return false;
  std::vector<EdgeId> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  std::map<NodeId, int> deg;
  for (EdgeId e : sorted) {
    if (!g.has_edge(e)) return false;
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  for (auto [v, d] : deg) {
    if (d != 2) return false;
  }
  // Connectivity through the edge set.
  Graph h;
  for (auto [v, d] : deg) h.add_node(v);
  for (EdgeId e : sorted) h.add_edge(g.edge(e).u, g.edge(e).v);
  return connected_components(h).size() == 1;
}

Cycle order_cycle(const Graph& g, std::span<const EdgeId> edges) {
  // Orders the edges of a cycle block into a closed walk starting at the smallest node.
  Cycle c;
  if (edges.size() == 1) {
    c.nodes = {g.edge(edges[0]).u};
    c.edges.assign(edges.begin(), edges.end());
    return c;
  }
  std::map<NodeId, std::vector<EdgeId>> inc;
  NodeId start = std::numeric_limits<NodeId>::max();
  for (EdgeId e : edges) {
    inc[g.edge(e).u].push_back(e);
    inc[g.edge(e).v].push_back(e);
    start = std::min({start, g.edge(e).u, g.edge(e).v});
  }
  NodeId cur = start;
  EdgeId prev = -1;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& opts = inc[cur];
    EdgeId next = opts[0] == prev ? opts[1] : opts[0];
    if (prev == -1) next = std::min(opts[0], opts[1]);
    c.nodes.push_back(cur);
    c.edges.push_back(next);
    cur = g.edge(next).other(cur);
    prev = next;
  }
  return c;
}



}  // namespace ect
