#include "ect/matching.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "ect/errors.hpp"
#include "ect/graph_core.hpp"

namespace ect {

namespace {

class Blossom {
 public:
  Blossom(int n, const std::vector<std::pair<int, int>>& edges)
      : n_(n), adj_(static_cast<std::size_t>(n)), mate_(static_cast<std::size_t>(n), -1) {
    for (auto [a, b] : edges) {
      if (a == b) continue;
      adj_[static_cast<std::size_t>(a)].push_back(b);
      adj_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto [a, b] : edges) {
      if (a != b && mate_[static_cast<std::size_t>(a)] == -1 && mate_[static_cast<std::size_t>(b)] == -1) {
        mate_[static_cast<std::size_t>(a)] = b;
        mate_[static_cast<std::size_t>(b)] = a;
      }
    }
  }

  std::vector<int> solve() {
    for (int v = 0; v < n_; ++v) {
      if (mate_[static_cast<std::size_t>(v)] == -1) augment_from(v);
    }
    return mate_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> used(static_cast<std::size_t>(n_), 0);
    while (true) {
      a = base_[static_cast<std::size_t>(a)];
      used[static_cast<std::size_t>(a)] = 1;
      if (mate_[static_cast<std::size_t>(a)] == -1) break;
      a = parent_[static_cast<std::size_t>(mate_[static_cast<std::size_t>(a)])];
    }
    while (true) {
      b = base_[static_cast<std::size_t>(b)];
      if (used[static_cast<std::size_t>(b)]) return b;
      b = parent_[static_cast<std::size_t>(mate_[static_cast<std::size_t>(b)])];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[static_cast<std::size_t>(v)] != b) {
      const int m = mate_[static_cast<std::size_t>(v)];
      blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = 1;
      blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(m)])] = 1;
      parent_[static_cast<std::size_t>(v)] = child;
      child = m;
      v = parent_[static_cast<std::size_t>(m)];
    }
  }

  void augment_from(int root) {
    const auto n = static_cast<std::size_t>(n_);
    used_.assign(n, 0);
    parent_.assign(n, -1);
    base_.resize(n);
    for (int i = 0; i < n_; ++i) base_[static_cast<std::size_t>(i)] = i;
    used_[static_cast<std::size_t>(root)] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int to : adj_[static_cast<std::size_t>(v)]) {
        const auto ti = static_cast<std::size_t>(to);
        if (base_[static_cast<std::size_t>(v)] == base_[ti] || mate_[static_cast<std::size_t>(v)] == to) continue;
        if (to == root || (mate_[ti] != -1 && parent_[static_cast<std::size_t>(mate_[ti])] != -1)) {
          const int cur = lca(v, to);
          blossom_.assign(n, 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            if (blossom_[static_cast<std::size_t>(base_[ii])]) {
              base_[ii] = cur;
              if (!used_[ii]) {
                used_[ii] = 1;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[ti] == -1) {
          parent_[ti] = v;
          if (mate_[ti] == -1) {
            for (int u = to; u != -1;) {
              const int pv = parent_[static_cast<std::size_t>(u)];
              const int ppv = mate_[static_cast<std::size_t>(pv)];
              mate_[static_cast<std::size_t>(u)] = pv;
              mate_[static_cast<std::size_t>(pv)] = u;
              u = ppv;
            }
            return;
          }
          used_[static_cast<std::size_t>(mate_[ti])] = 1;
          queue.push_back(mate_[ti]);
        }
      }
    }
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> mate_, parent_, base_;
  std::vector<char> used_, blossom_;
};

struct Indexed {
  std::vector<NodeId> nodes;
  std::map<NodeId, int> index;
  std::vector<std::pair<int, int>> pairs;
  std::vector<EdgeId> pair_edge;
};

Indexed index_graph(const Graph& g) {
  Indexed ix;
  ix.nodes = g.nodes();
  for (std::size_t i = 0; i < ix.nodes.size(); ++i) ix.index[ix.nodes[i]] = static_cast<int>(i);
  for (EdgeId e : g.edges()) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    ix.pairs.emplace_back(ix.index[ed.u], ix.index[ed.v]);
    ix.pair_edge.push_back(e);
  }
  return ix;
}

Matching from_mates(const Graph& g, const Indexed& ix, const std::vector<int>& mate) {
  Matching m;
  std::vector<char> taken(ix.nodes.size(), 0);
  for (std::size_t k = 0; k < ix.pairs.size(); ++k) {
    auto [a, b] = ix.pairs[k];
    if (mate[static_cast<std::size_t>(a)] == b && !taken[static_cast<std::size_t>(a)]) {
      taken[static_cast<std::size_t>(a)] = taken[static_cast<std::size_t>(b)] = 1;
      m.edges.push_back(ix.pair_edge[k]);
      m.covered.push_back(ix.nodes[static_cast<std::size_t>(a)]);
      m.covered.push_back(ix.nodes[static_cast<std::size_t>(b)]);
    }
  }
  (void)g;
  m.covered = make_node_set(std::move(m.covered));
  return m;
}

}  // namespace

std::vector<int> maximum_matching(int n, const std::vector<std::pair<int, int>>& edges) {
  return Blossom(n, edges).solve();
}

Matching max_matching(const Graph& g) {
  const Indexed ix = index_graph(g);
  return from_mates(g, ix, maximum_matching(static_cast<int>(ix.nodes.size()), ix.pairs));
}

Matching brute_force_matching(const Graph& g) {
  if (g.num_nodes() > 14) throw TooLarge("brute-force matching limited to 14 nodes");
  const Indexed ix = index_graph(g);
  const int n = static_cast<int>(ix.nodes.size());
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));  // (neighbour, pair index)
  for (std::size_t k = 0; k < ix.pairs.size(); ++k) {
    auto [a, b] = ix.pairs[k];
    adj[static_cast<std::size_t>(a)].emplace_back(b, static_cast<int>(k));
    adj[static_cast<std::size_t>(b)].emplace_back(a, static_cast<int>(k));
  }
  std::vector<int> best, cur;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  // Lowest free node is either left exposed or matched to a free neighbour.
  std::function<void(int, int)> rec = [&](int start, int free_left) {
    if (static_cast<int>(cur.size()) + free_left / 2 <= static_cast<int>(best.size())) return;
    int v = start;
    while (v < n && used[static_cast<std::size_t>(v)]) ++v;
    if (v >= n) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    used[static_cast<std::size_t>(v)] = 1;
    for (auto [w, k] : adj[static_cast<std::size_t>(v)]) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      cur.push_back(k);
      rec(v + 1, free_left - 2);
      cur.pop_back();
      used[static_cast<std::size_t>(w)] = 0;
    }
    rec(v + 1, free_left - 1);
    used[static_cast<std::size_t>(v)] = 0;
  };
  rec(0, n);
  std::vector<int> mate(static_cast<std::size_t>(n), -1);
  Matching m;
  for (int k : best) {
    m.edges.push_back(ix.pair_edge[static_cast<std::size_t>(k)]);
    auto [a, b] = ix.pairs[static_cast<std::size_t>(k)];
    m.covered.push_back(ix.nodes[static_cast<std::size_t>(a)]);
    m.covered.push_back(ix.nodes[static_cast<std::size_t>(b)]);
  }
  std::sort(m.edges.begin(), m.edges.end());
  m.covered = make_node_set(std::move(m.covered));
  return m;
}

TutteWitness tutte_deficiency_witness(const Graph& g) {
  if (g.num_nodes() > 14) throw TooLarge("Tutte witness search limited to 14 nodes");
  const auto nodes = g.nodes();
  const std::size_t n = nodes.size();
  TutteWitness best{{}, -1};
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<NodeId> x;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) x.push_back(nodes[i]);
    }
    int odd = 0;
    for (const auto& comp : connected_components(g.without(x))) odd += static_cast<int>(comp.size() % 2);
    const int def = odd - static_cast<int>(x.size());
    if (def > best.deficiency) best = {x, def};
  }
  return best;
}

bool is_valid_matching(const Graph& g, const std::vector<EdgeId>& edges) {
  std::vector<NodeId> ends;
  for (EdgeId e : edges) {
    if (!g.has_edge(e) || g.edge(e).is_loop()) return false;
    ends.push_back(g.edge(e).u);
    ends.push_back(g.edge(e).v);
  }
  const std::size_t total = ends.size();
  return make_node_set(std::move(ends)).size() == total;
}

}  // namespace ect
