#include "ect/pocket_tiling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "ect/errors.hpp"
#include "ect/graph_core.hpp"
#include "ect/matching.hpp"

namespace ect {

namespace {

// Index-based simple adjacency of the host (loops dropped, parallel edges kept).
struct Adjacency {
  std::vector<NodeId> nodes;
  std::vector<int> index;  // by node id
  std::vector<std::vector<int>> adj;
};

Adjacency make_adjacency(const Graph& g) {
  Adjacency a;
  a.nodes = g.nodes();
  a.index.assign(static_cast<std::size_t>(g.node_capacity()), -1);
  for (std::size_t i = 0; i < a.nodes.size(); ++i) a.index[static_cast<std::size_t>(a.nodes[i])] = static_cast<int>(i);
  a.adj.resize(a.nodes.size());
  for (EdgeId e : g.edges()) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    const int x = a.index[static_cast<std::size_t>(ed.u)], y = a.index[static_cast<std::size_t>(ed.v)];
    a.adj[static_cast<std::size_t>(x)].push_back(y);
    a.adj[static_cast<std::size_t>(y)].push_back(x);
  }
  return a;
}

struct Candidate {
  int lower_bound = 0;          // node count is lower_bound or lower_bound + 1
  std::vector<int> removed;     // at most two indices
  std::vector<int> reps;        // one node per component of the side
  bool explicit_set = false;    // loop / parallel candidates
  std::vector<int> members;
};

// Separation candidates after removing node `u` (or nothing when u == -1).
void separation_candidates(const Adjacency& a, int u, std::vector<Candidate>& out) {
  const int n = static_cast<int>(a.nodes.size());
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0), sub(static_cast<std::size_t>(n), 1),
      parent(static_cast<std::size_t>(n), -1), touches_u(static_cast<std::size_t>(n), 0);
  if (u >= 0) {
    for (int w : a.adj[static_cast<std::size_t>(u)]) touches_u[static_cast<std::size_t>(w)] = 1;
  }
  int timer = 0;
  std::vector<int> roots;
  if (u >= 0) disc[static_cast<std::size_t>(u)] = -2;
  const std::vector<int>& starts = u >= 0 ? a.adj[static_cast<std::size_t>(u)] : std::vector<int>{};
  std::vector<int> all;
  if (u < 0) {
    for (int i = 0; i < n; ++i) all.push_back(i);
  }
  const std::vector<int>& seeds = u >= 0 ? starts : all;
  struct Frame {
    int v;
    std::size_t next;
    bool skipped_parent;
  };
  for (int root : seeds) {
    if (disc[static_cast<std::size_t>(root)] != -1) continue;
    roots.push_back(root);
    std::vector<int> order;
    std::vector<Frame> stack{{root, 0, false}};
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int v = f.v;
      const auto& nb = a.adj[static_cast<std::size_t>(v)];
      if (f.next < nb.size()) {
        const int w = nb[f.next++];
        if (disc[static_cast<std::size_t>(w)] == -2) continue;
        if (w == parent[static_cast<std::size_t>(v)] && !f.skipped_parent) {
          f.skipped_parent = true;
          continue;
        }
        if (disc[static_cast<std::size_t>(w)] == -1) {
          parent[static_cast<std::size_t>(w)] = v;
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          stack.push_back({w, 0, false});
        } else {
          low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      stack.pop_back();
      order.push_back(v);
      const int p = parent[static_cast<std::size_t>(v)];
      if (p >= 0) {
        low[static_cast<std::size_t>(p)] = std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
        sub[static_cast<std::size_t>(p)] += sub[static_cast<std::size_t>(v)];
        touches_u[static_cast<std::size_t>(p)] += touches_u[static_cast<std::size_t>(v)];
      }
    }
    const int comp_size = sub[static_cast<std::size_t>(root)];
    // Children grouped by parent, in discovery order.
    std::map<int, std::vector<int>> children;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int p = parent[static_cast<std::size_t>(*it)];
      if (p >= 0) children[p].push_back(*it);
    }
    for (const auto& [v, kids] : children) {
      std::vector<int> split;
      for (int c : kids) {
        if (low[static_cast<std::size_t>(c)] >= disc[static_cast<std::size_t>(v)]) split.push_back(c);
      }
      const bool is_root = v == root;
      if (split.empty() || (is_root && split.size() < 2)) continue;
      std::vector<int> removed{v};
      if (u >= 0) removed.insert(removed.begin(), u);
      int rest = comp_size - 1;
      // Components of comp - {u, v} attached to both u and v, as (size, rep).
      std::vector<std::pair<int, int>> both;
      for (int c : split) {
        out.push_back({sub[static_cast<std::size_t>(c)] + 1, removed, {c}, false, {}});
        rest -= sub[static_cast<std::size_t>(c)];
        if (u >= 0 && touches_u[static_cast<std::size_t>(c)] > 0) both.emplace_back(sub[static_cast<std::size_t>(c)], c);
      }
      if (!is_root && rest > 0) {
        out.push_back({rest + 1, removed, {root}, false, {}});
        both.emplace_back(rest, root);
      }
      // Two such components together with u and v.
      for (std::size_t i = 0; i < both.size(); ++i) {
        for (std::size_t j = i + 1; j < both.size(); ++j) {
          out.push_back({both[i].first + both[j].first + 2, removed, {both[i].second, both[j].second}, false, {}});
        }
      }
    }
  }
  (void)roots;
}

std::vector<Candidate> generate_candidates(const Graph& g, const Adjacency& a) {
  std::vector<Candidate> cands;
  // Whole components.
  for (const NodeSet& comp : connected_components(g)) {
    Candidate c;
    c.lower_bound = static_cast<int>(comp.size());
    c.explicit_set = true;
    for (NodeId v : comp) c.members.push_back(a.index[static_cast<std::size_t>(v)]);
    cands.push_back(std::move(c));
  }
  // Cut nodes of the host (components of g - v plus v).
  separation_candidates(a, -1, cands);
  // Separation pairs.
  for (int u = 0; u < static_cast<int>(a.nodes.size()); ++u) separation_candidates(a, u, cands);
  // Loops and parallel pairs.
  std::map<std::pair<NodeId, NodeId>, int> multiplicity;
  for (EdgeId e : g.edges()) {
    const Edge& ed = g.edge(e);
    ++multiplicity[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}];
  }
  for (auto [key, count] : multiplicity) {
    if (key.first == key.second) {
      cands.push_back({1, {}, {}, true, {a.index[static_cast<std::size_t>(key.first)]}});
    } else if (count >= 2) {
      cands.push_back(
          {2, {}, {}, true, {a.index[static_cast<std::size_t>(key.first)], a.index[static_cast<std::size_t>(key.second)]}});
    }
  }
  return cands;
}

NodeSet materialise(const Graph& g, const Adjacency& a, const Candidate& c) {
  std::vector<NodeId> out;
  if (c.explicit_set) {
    for (int i : c.members) out.push_back(a.nodes[static_cast<std::size_t>(i)]);
    return make_node_set(std::move(out));
  }
  const int n = static_cast<int>(a.nodes.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int r : c.removed) seen[static_cast<std::size_t>(r)] = 2;
  std::vector<int> stack(c.reps);
  for (int r : c.reps) seen[static_cast<std::size_t>(r)] = 1;
  std::set<int> attached;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    out.push_back(a.nodes[static_cast<std::size_t>(v)]);
    for (int w : a.adj[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)] == 2) {
        attached.insert(w);
        continue;
      }
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      stack.push_back(w);
    }
  }
  for (int w : attached) out.push_back(a.nodes[static_cast<std::size_t>(w)]);
  (void)g;
  return make_node_set(std::move(out));
}

bool contains_cycle(const Graph& h) {
  // Connected induced subgraphs: a cycle exists iff |E| >= |V| (loops included).
  return h.num_edges() >= h.num_nodes();
}

NodeSet boundary_of(const Graph& host, const NodeSet& nodes) {
  std::vector<NodeId> out;
  for (NodeId v : nodes) {
    for (EdgeId e : host.incident(v)) {
      if (!contains(nodes, host.edge(e).other(v))) {
        out.push_back(v);
        break;
      }
    }
  }
  return make_node_set(std::move(out));
}

bool symmetric_difference_is_cycle(const Graph& g, const std::vector<EdgeId>& a, const std::vector<EdgeId>& b,
                                   std::vector<EdgeId>& diff) {
  diff.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return edges_form_cycle(g, diff);
}

bool edges_form_path(const Graph& g, const std::vector<EdgeId>& edges) {
  if (edges.empty()) return false;
  std::map<NodeId, int> deg;
  Graph h;
  for (EdgeId e : edges) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) return false;
    ++deg[ed.u];
    ++deg[ed.v];
  }
  for (auto [v, d] : deg) {
    if (d > 2) return false;
    h.add_node(v);
  }
  for (EdgeId e : edges) h.add_edge(g.edge(e).u, g.edge(e).v);
  return connected_components(h).size() == 1 && h.num_edges() + 1 == h.num_nodes();
}

std::vector<EdgeId> shared_edges(const FaceSet& fs, int f, int g, const std::vector<EdgeId>& fe) {
  std::vector<EdgeId> out;
  for (EdgeId e : fe) {
    const int a = fs.face_of_dart[static_cast<std::size_t>(make_dart(e, 0))];
    const int b = fs.face_of_dart[static_cast<std::size_t>(make_dart(e, 1))];
    if ((a == f && b == g) || (a == g && b == f)) out.push_back(e);
  }
  return out;
}

bool face_is_simple_cycle(const Graph& g, const FaceSet& fs, int f) {
  const auto fe = face_edges(fs, f);
  return static_cast<int>(fe.size()) == fs.faces[static_cast<std::size_t>(f)].length && edges_form_cycle(g, fe);
}

}  // namespace

Pocket make_pocket(const Embedding& host, const NodeSet& nodes) {
  Pocket p;
  p.nodes = nodes;
  p.boundary = boundary_of(host.graph, nodes);
  p.embedding = restrict_embedding(host, nodes);
  p.graph = p.embedding.graph;
  return p;
}

Pocket find_minimal_pocket(const Embedding& host, const PocketSearchOptions& opts, PocketSearchStats* stats) {
  const Graph& g = host.graph;
  if (!has_even_cycle(g)) throw NoEvenCycle("host graph has no even cycle");
  const Adjacency a = make_adjacency(g);
  std::vector<Candidate> cands = generate_candidates(g, a);
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& x, const Candidate& y) { return x.lower_bound < y.lower_bound; });
  const bool exhaustive = g.num_nodes() <= opts.exhaustive_check_limit;
  std::set<NodeSet> seen;
  std::optional<NodeSet> best;
  PocketSearchStats local;
  for (const Candidate& c : cands) {
    if (!exhaustive && best && c.lower_bound > static_cast<int>(best->size())) break;
    NodeSet nodes = materialise(g, a, c);
    if (!seen.insert(nodes).second) continue;
    ++local.evaluated;
    const Graph h = g.induced(nodes);
    if (!contains_cycle(h)) continue;
    ++local.pseudo_pockets;
    if (!has_even_cycle(h)) {
      std::string ids;
      for (NodeId v : nodes) ids += " " + std::to_string(v);
      throw PseudoPocketWithoutEvenCycle("pseudo-pocket on nodes" + ids + " has no even cycle");
    }
    if (!best || nodes.size() < best->size() || (nodes.size() == best->size() && nodes < *best)) best = std::move(nodes);
  }
  local.candidates = seen.size();
  if (stats != nullptr) *stats = local;
  return make_pocket(host, *best);
}

std::vector<NodeSet> all_pocket_candidates(const Graph& host) {
  const Adjacency a = make_adjacency(host);
  std::set<NodeSet> seen;
  for (const Candidate& c : generate_candidates(host, a)) seen.insert(materialise(host, a, c));
  return {seen.begin(), seen.end()};
}

TileGraph odd_face_tile_graph(const Pocket& p, const FaceSet& fs) {
  TileGraph tg;
  std::vector<int> node_of_face(fs.faces.size(), -1);
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    if (fs.faces[f].outer || fs.faces[f].even) continue;
    node_of_face[f] = static_cast<int>(tg.faces.size());
    tg.graph.add_node(static_cast<NodeId>(tg.faces.size()));
    tg.faces.push_back(static_cast<int>(f));
  }
  std::set<std::pair<int, int>> pairs;
  for (EdgeId e : p.graph.edges()) {
    const int a = fs.face_of_dart[static_cast<std::size_t>(make_dart(e, 0))];
    const int b = fs.face_of_dart[static_cast<std::size_t>(make_dart(e, 1))];
    if (a == b || node_of_face[static_cast<std::size_t>(a)] < 0 || node_of_face[static_cast<std::size_t>(b)] < 0) continue;
    pairs.insert({std::min(a, b), std::max(a, b)});
  }
  for (auto [f, g] : pairs) {
    const auto fe = face_edges(fs, f), ge = face_edges(fs, g);
    std::vector<EdgeId> diff;
    if (!edges_form_path(p.graph, shared_edges(fs, f, g, fe)) || !symmetric_difference_is_cycle(p.graph, fe, ge, diff)) {
      throw SharedBoundaryNotPath("faces " + std::to_string(f) + " and " + std::to_string(g) +
                                  " do not share a single boundary path");
    }
    tg.graph.add_edge(node_of_face[static_cast<std::size_t>(f)], node_of_face[static_cast<std::size_t>(g)]);
  }
  return tg;
}

TileGraph odd_face_tile_graph(const Pocket& p) { return odd_face_tile_graph(p, faces(p.embedding)); }

Tiling quasi_perfect_tiling(const Pocket& p) {
  const FaceSet fs = faces(p.embedding);
  if (!euler_holds(p.embedding, fs)) throw EulerCheckFailed("pocket embedding violates Euler's formula");
  Tiling t;
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    const Face& face = fs.faces[f];
    if (face.outer) continue;
    ++t.finite_faces;
    if (!face.even) {
      ++t.odd_finite_faces;
      continue;
    }
    ++t.even_finite_faces;
    if (!face_is_simple_cycle(p.graph, fs, static_cast<int>(f))) {
      throw QuasiPerfectViolation("even face " + std::to_string(f) + " is not bounded by a cycle");
    }
    t.tiles.push_back({TileKind::kSingleFace, static_cast<int>(f), -1, face_edges(fs, static_cast<int>(f))});
  }
  const TileGraph tg = odd_face_tile_graph(p, fs);
  const Matching m = max_matching(tg.graph);
  for (EdgeId e : m.edges) {
    const int f = tg.faces[static_cast<std::size_t>(tg.graph.edge(e).u)];
    const int g = tg.faces[static_cast<std::size_t>(tg.graph.edge(e).v)];
    std::vector<EdgeId> diff;
    symmetric_difference_is_cycle(p.graph, face_edges(fs, f), face_edges(fs, g), diff);
    t.tiles.push_back({TileKind::kFacePair, std::min(f, g), std::max(f, g), diff});
    t.covered_odd_faces += 2;
  }
  t.beta = t.odd_finite_faces == 0 ? Rational(1) : Rational(t.covered_odd_faces, t.odd_finite_faces);
  t.psi = t.finite_faces == 0 ? Rational(0) : Rational(t.even_finite_faces, t.finite_faces);
  t.beta.canonicalize();
  t.psi.canonicalize();
  if (t.certificate() < Rational(2, 3)) {
    throw QuasiPerfectViolation("certificate " + to_string(t.certificate()) + " below 2/3 on a pocket of " +
                                std::to_string(p.nodes.size()) + " nodes");
  }
  return t;
}

TilingCheck verify_tiling(const Pocket& p, const Tiling& t) {
  TilingCheck chk;
  auto fail = [&](std::string why) {
    chk.ok = false;
    chk.reasons.push_back(std::move(why));
  };
  const FaceSet fs = faces(p.embedding);
  const int nf = static_cast<int>(fs.faces.size());
  std::vector<int> covered(fs.faces.size(), 0);
  for (const Tile& tile : t.tiles) {
    const bool pair = tile.kind == TileKind::kFacePair;
    if (tile.f < 0 || tile.f >= nf || (pair && (tile.g < 0 || tile.g >= nf || tile.g == tile.f))) {
      fail("tile refers to an unknown face");
      continue;
    }
    ++covered[static_cast<std::size_t>(tile.f)];
    if (pair) ++covered[static_cast<std::size_t>(tile.g)];
    if (!edges_form_cycle(p.graph, tile.cycle) || !is_even_cycle(p.graph, tile.cycle)) {
      fail("tile on face " + std::to_string(tile.f) + " is not an even cycle");
    }
    if (!pair) {
      if (face_edges(fs, tile.f) != tile.cycle) fail("single-face tile does not match face " + std::to_string(tile.f));
      continue;
    }
    const auto fe = face_edges(fs, tile.f), ge = face_edges(fs, tile.g);
    std::vector<EdgeId> diff;
    if (!edges_form_path(p.graph, shared_edges(fs, tile.f, tile.g, fe))) {
      fail("faces " + std::to_string(tile.f) + "," + std::to_string(tile.g) + " do not share one boundary path");
    }
    if (!symmetric_difference_is_cycle(p.graph, fe, ge, diff) || diff != tile.cycle) {
      fail("face-pair tile cycle differs from the symmetric difference");
    }
  }
  int finite = 0, even = 0, odd = 0, odd_cov = 0;
  for (int f = 0; f < nf; ++f) {
    const Face& face = fs.faces[static_cast<std::size_t>(f)];
    if (covered[static_cast<std::size_t>(f)] > 1) fail("face " + std::to_string(f) + " covered twice");
    if (face.outer) {
      if (covered[static_cast<std::size_t>(f)]) fail("infinite face covered");
      continue;
    }
    ++finite;
    if (face.even) {
      ++even;
      if (!covered[static_cast<std::size_t>(f)]) fail("even face " + std::to_string(f) + " uncovered");
    } else {
      ++odd;
      if (covered[static_cast<std::size_t>(f)]) ++odd_cov;
    }
  }
  Rational beta = odd == 0 ? Rational(1) : Rational(odd_cov, odd);
  Rational psi = finite == 0 ? Rational(0) : Rational(even, finite);
  beta.canonicalize();
  psi.canonicalize();
  if (beta != t.beta || psi != t.psi) fail("stored beta/psi differ from recomputed values");
  if (beta * (1 - psi) + 2 * psi < Rational(2, 3)) fail("certificate below 2/3");
  return chk;
}

PseudoTilingStats pseudo_tiling_stats(const Pocket& p) {
  const FaceSet fs = faces(p.embedding);
  PseudoTilingStats st;
  st.faces = static_cast<int>(fs.faces.size());
  std::vector<int> node_of_face(fs.faces.size(), -1);
  Graph odd_all;
  int outer_node = -1;
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    if (fs.faces[f].even) {
      ++st.even_faces;
      if (fs.faces[f].outer) st.infinite_even = true;
      continue;
    }
    ++st.odd_faces;
    node_of_face[f] = static_cast<int>(odd_all.num_nodes());
    if (fs.faces[f].outer) outer_node = node_of_face[f];
    odd_all.add_node(node_of_face[f]);
  }
  std::set<std::pair<int, int>> pairs;
  for (EdgeId e : p.graph.edges()) {
    const int a = fs.face_of_dart[static_cast<std::size_t>(make_dart(e, 0))];
    const int b = fs.face_of_dart[static_cast<std::size_t>(make_dart(e, 1))];
    if (a == b || node_of_face[static_cast<std::size_t>(a)] < 0 || node_of_face[static_cast<std::size_t>(b)] < 0) continue;
    pairs.insert({node_of_face[static_cast<std::size_t>(a)], node_of_face[static_cast<std::size_t>(b)]});
  }
  for (auto [x, y] : pairs) odd_all.add_edge(x, y);
  const int nu_all = static_cast<int>(max_matching(odd_all).edges.size());
  st.covered_odd = 2 * nu_all;
  Graph odd_finite = outer_node >= 0 ? odd_all.without(std::vector<NodeId>{outer_node}) : odd_all;
  const int nu_fin = static_cast<int>(max_matching(odd_finite).edges.size());
  st.max_tiling_covered_odd = 2 * nu_fin;
  st.every_maximum_covers_infinite = st.infinite_even || nu_all > nu_fin;
  return st;
}

}  // namespace ect
