#include "ect/compression.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ect/errors.hpp"
#include "ect/graph_core.hpp"

namespace ect {

Path Path::reversed() const {
  Path p{nodes, edges};
  std::reverse(p.nodes.begin(), p.nodes.end());
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

std::vector<NodeId> Path::interior() const {
  if (nodes.size() <= 2) return {};
  return {nodes.begin() + 1, nodes.end() - 1};
}

NodeSet Piece::internal_nodes(const std::vector<ElementaryCycle>& cycles) const {
  std::vector<NodeId> out;
  for (const PieceSegment& s : segments) {
    if (s.is_cycle) {
      for (const Path& h : cycles[static_cast<std::size_t>(s.cycle)].handles) {
        out.insert(out.end(), h.nodes.begin(), h.nodes.end());
      }
    } else {
      out.insert(out.end(), s.path.nodes.begin(), s.path.nodes.end());
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [&](NodeId x) { return x == u || x == v; }), out.end());
  return make_node_set(std::move(out));
}

NodeSet Piece::cut_nodes() const {
  std::vector<NodeId> out;
  for (const PieceSegment& s : segments) {
    if (s.is_cycle) {
      out.push_back(s.from);
      out.push_back(s.to);
    } else {
      out.insert(out.end(), s.path.nodes.begin(), s.path.nodes.end());
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [&](NodeId x) { return x == u || x == v; }), out.end());
  return make_node_set(std::move(out));
}

namespace {

Parity combine(Parity a, Parity b) {
  if (a == Parity::kTwin || b == Parity::kTwin) return Parity::kTwin;
  return (parity_bit(a) ^ parity_bit(b)) ? Parity::kOdd : Parity::kEven;
}

Path concat(const Path& a, const Path& b) {
  Path p = a;
  p.nodes.insert(p.nodes.end(), b.nodes.begin() + 1, b.nodes.end());
  p.edges.insert(p.edges.end(), b.edges.begin(), b.edges.end());
  return p;
}

using Segments = std::vector<PieceSegment>;

Segments reverse_segments(const Segments& s) {
  Segments out(s.rbegin(), s.rend());
  for (PieceSegment& seg : out) {
    seg.path = seg.path.reversed();
    std::swap(seg.from, seg.to);
  }
  return out;
}

Segments concat_segments(const Segments& a, const Segments& b) {
  Segments out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Path reverse_path(const Path& p) { return p.reversed(); }

// Folds every degree-2 node whose two edge-ends are distinct non-loop edges,
// in ascending node order. `payload` is indexed by edge id and oriented u -> v.
template <class Payload, class Rev, class Cat>
void fold_degree_two(Graph& g, std::vector<Payload>& payload, Rev rev, Cat cat) {
  for (NodeId v : g.nodes()) {
    if (g.degree(v) != 2) continue;
    EdgeId e1 = g.incident(v)[0], e2 = g.incident(v)[1];
    if (e1 == e2 || g.edge(e1).is_loop()) continue;
    if (e2 < e1) std::swap(e1, e2);
    const Edge d1 = g.edge(e1), d2 = g.edge(e2);
    const NodeId a = d1.other(v), b = d2.other(v);
    const Payload& p1 = payload[static_cast<std::size_t>(e1)];
    const Payload& p2 = payload[static_cast<std::size_t>(e2)];
    Payload joined = cat(d1.u == a ? p1 : rev(p1), d2.u == v ? p2 : rev(p2));
    const Parity par = combine(d1.parity, d2.parity);
    g.remove_node(v);
    const EdgeId e = g.add_edge(a, b, par);
    if (payload.size() <= static_cast<std::size_t>(e)) payload.resize(static_cast<std::size_t>(e) + 1);
    payload[static_cast<std::size_t>(e)] = std::move(joined);
  }
}

FoldResult fold_graph(const Graph& g) {
  FoldResult r;
  r.graph = g;
  r.fold.resize(static_cast<std::size_t>(g.edge_capacity()));
  for (EdgeId e : g.edges()) r.fold[static_cast<std::size_t>(e)] = Path{{g.edge(e).u, g.edge(e).v}, {e}};
  fold_degree_two(r.graph, r.fold, reverse_path, concat);
  return r;
}

Cycle cycle_from_closed_path(const Path& p) {
  return Cycle{{p.nodes.begin(), p.nodes.end() - 1}, p.edges};
}

Cycle cycle_from_two_paths(const Path& a, const Path& b) {
  // Both paths run between the same two ends in the same direction.
  Cycle c{{a.nodes.begin(), a.nodes.end() - 1}, a.edges};
  const Path rb = b.reversed();
  c.nodes.insert(c.nodes.end(), rb.nodes.begin(), rb.nodes.end() - 1);
  c.edges.insert(c.edges.end(), rb.edges.begin(), rb.edges.end());
  return c;
}

bool pair_is_even(Parity a, Parity b) {
  return a == Parity::kTwin || b == Parity::kTwin || parity_bit(a) == parity_bit(b);
}

}  // namespace

FoldResult one_compression(const Graph& g) {
  if (g.empty()) throw DegenerateGraph("empty graph");
  FoldResult r = fold_graph(g);
  for (NodeId v : r.graph.nodes()) {
    const auto inc = r.graph.incident(v);
    if (inc.size() == 2 && inc[0] == inc[1]) throw DegenerateGraph("component through node " + std::to_string(v) + " is a bare cycle");
    if (inc.empty()) throw DegenerateGraph("isolated node " + std::to_string(v));
  }
  return r;
}

void two_compression(CompressionStack& cs) {
  const Graph& g1 = cs.g1;
  std::map<std::pair<NodeId, NodeId>, std::vector<EdgeId>> groups;
  for (EdgeId e : g1.edges()) {
    const Edge& ed = g1.edge(e);
    if (ed.is_loop()) throw DegenerateGraph("loop at node " + std::to_string(ed.u) + " in the 1-compression");
    groups[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}].push_back(e);
  }
  std::vector<std::vector<EdgeId>> ordered;
  for (auto& [key, es] : groups) ordered.push_back(es);
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  Graph bar;
  for (NodeId v : g1.nodes()) bar.add_node(v);
  std::vector<Segments> payload;
  cs.elementary_cycles.clear();
  for (const auto& es : ordered) {
    const Edge& d0 = g1.edge(es[0]);
    if (es.size() == 1) {
      const EdgeId e = bar.add_edge(d0.u, d0.v, d0.parity);
      payload.resize(static_cast<std::size_t>(e) + 1);
      PieceSegment seg;
      seg.path = cs.g1_fold[static_cast<std::size_t>(es[0])];
      seg.from = d0.u;
      seg.to = d0.v;
      payload[static_cast<std::size_t>(e)] = {seg};
      continue;
    }
    const Edge& d1 = g1.edge(es[1]);
    if (es.size() > 2 || pair_is_even(d0.parity, d1.parity)) {
      throw SameParityParallel("parallel edges " + std::to_string(es[0]) + "," + std::to_string(es[1]) + " between " +
                               std::to_string(d0.u) + " and " + std::to_string(d0.v));
    }
    const NodeId a = std::min(d0.u, d0.v), b = std::max(d0.u, d0.v);
    ElementaryCycle ec;
    ec.branch_u = a;
    ec.branch_v = b;
    for (int h = 0; h < 2; ++h) {
      const Edge& d = g1.edge(es[static_cast<std::size_t>(h)]);
      const Path& p = cs.g1_fold[static_cast<std::size_t>(es[static_cast<std::size_t>(h)])];
      ec.handles[static_cast<std::size_t>(h)] = d.u == a ? p : p.reversed();
      ec.parity[static_cast<std::size_t>(h)] = parity_bit(d.parity);
    }
    cs.elementary_cycles.push_back(std::move(ec));
    const EdgeId e = bar.add_edge(a, b, Parity::kTwin);
    payload.resize(static_cast<std::size_t>(e) + 1);
    PieceSegment seg;
    seg.is_cycle = true;
    seg.cycle = static_cast<int>(cs.elementary_cycles.size()) - 1;
    seg.from = a;
    seg.to = b;
    payload[static_cast<std::size_t>(e)] = {seg};
  }
  fold_degree_two(bar, payload, reverse_segments, concat_segments);
  cs.g2 = bar;
  cs.pieces.assign(static_cast<std::size_t>(bar.edge_capacity()), Piece{});
  for (EdgeId e : bar.edges()) {
    const Edge& ed = bar.edge(e);
    Piece pc;
    pc.g2_edge = e;
    pc.u = ed.u;
    pc.v = ed.v;
    pc.parity = ed.parity;
    pc.curve.nodes = {ed.u};
    for (const PieceSegment& s : payload[static_cast<std::size_t>(e)]) {
      if (s.is_cycle) {
        pc.twin = true;
        pc.segments.push_back(s);
        const ElementaryCycle& ec = cs.elementary_cycles[static_cast<std::size_t>(s.cycle)];
        pc.curve = concat(pc.curve, s.from == ec.branch_u ? ec.handles[0] : ec.handles[0].reversed());
      } else {
        if (!pc.segments.empty() && !pc.segments.back().is_cycle) {
          PieceSegment& last = pc.segments.back();
          last.path = concat(last.path, s.path);
          last.to = s.to;
        } else {
          pc.segments.push_back(s);
        }
        pc.curve = concat(pc.curve, s.path);
      }
    }
    cs.pieces[static_cast<std::size_t>(e)] = std::move(pc);
  }
}

G3Result subdivide(const Graph& g2) {
  G3Result r;
  for (NodeId v : g2.nodes()) r.graph.add_node(v);
  // Keep midpoint ids clear of every G2 id.
  while (r.graph.node_capacity() < g2.node_capacity()) {
    const NodeId pad = r.graph.add_node();
    r.graph.remove_node(pad);
  }
  r.midpoint.assign(static_cast<std::size_t>(g2.edge_capacity()), -1);
  for (EdgeId e : g2.edges()) {
    const Edge& ed = g2.edge(e);
    const NodeId w = r.graph.add_node();
    r.midpoint[static_cast<std::size_t>(e)] = w;
    const bool twin = ed.parity == Parity::kTwin;
    r.graph.add_edge(ed.u, w, ed.parity);
    r.graph.add_edge(w, ed.v, twin ? Parity::kTwin : Parity::kEven);
  }
  return r;
}

CompressionStack build_compression(const Graph& residual, const Embedding* parent) {
  CompressionStack cs;
  cs.source = residual;
  FoldResult f1 = one_compression(residual);
  cs.g1 = std::move(f1.graph);
  cs.g1_fold = std::move(f1.fold);
  two_compression(cs);
  G3Result g3 = subdivide(cs.g2);
  cs.g3 = std::move(g3.graph);
  cs.midpoint = std::move(g3.midpoint);
  if (parent != nullptr) {
    const auto idx = parent->rotation_index();
    const Graph& g2 = cs.g2;
    std::vector<std::vector<std::pair<int, Dart>>> keyed(static_cast<std::size_t>(g2.node_capacity()));
    std::vector<std::vector<Point>> bends(static_cast<std::size_t>(g2.edge_capacity()));
    for (EdgeId e : g2.edges()) {
      const Piece& pc = cs.piece(e);
      const Path& c = pc.curve;
      // Source dart leaving u along the first curve edge, and leaving v along the last.
      const EdgeId first = c.edges.front(), last = c.edges.back();
      const Dart out_u = make_dart(first, parent->graph.edge(first).u == c.nodes[0] ? 0 : 1);
      const Dart out_v = make_dart(last, parent->graph.edge(last).u == c.nodes.back() ? 0 : 1);
      keyed[static_cast<std::size_t>(pc.u)].emplace_back(idx[static_cast<std::size_t>(out_u)], make_dart(e, 0));
      keyed[static_cast<std::size_t>(pc.v)].emplace_back(idx[static_cast<std::size_t>(out_v)], make_dart(e, 1));
      for (NodeId x : c.interior()) bends[static_cast<std::size_t>(e)].push_back(*parent->coords[static_cast<std::size_t>(x)]);
    }
    std::vector<std::vector<Dart>> rotation(keyed.size());
    for (std::size_t v = 0; v < keyed.size(); ++v) {
      std::sort(keyed[v].begin(), keyed[v].end());
      for (auto [pos, d] : keyed[v]) rotation[v].push_back(d);
    }
    std::vector<std::optional<Point>> coords(static_cast<std::size_t>(g2.node_capacity()));
    for (NodeId v : g2.nodes()) coords[static_cast<std::size_t>(v)] = parent->coords[static_cast<std::size_t>(v)];
    cs.g2_embedding = make_embedding(g2, std::move(rotation), std::move(coords), std::move(bends));
  }
  return cs;
}

NodeSet attachment_nodes(const Graph& g, const Cycle& c) {
  std::vector<EdgeId> in(c.edges);
  std::sort(in.begin(), in.end());
  std::vector<NodeId> out;
  for (NodeId v : c.nodes) {
    for (EdgeId e : g.incident(v)) {
      if (!std::binary_search(in.begin(), in.end(), e)) {
        out.push_back(v);
        break;
      }
    }
  }
  return make_node_set(std::move(out));
}

std::optional<Cycle> find_low_attachment_even_cycle(const Graph& g) {
  // (a) components that are even cycles.
  std::vector<NodeId> cycle_component_nodes;
  for (const NodeSet& comp : connected_components(g)) {
    const bool all_two = std::all_of(comp.begin(), comp.end(), [&](NodeId v) { return g.degree(v) == 2; });
    if (!all_two) continue;
    cycle_component_nodes.insert(cycle_component_nodes.end(), comp.begin(), comp.end());
    std::vector<EdgeId> es;
    for (NodeId v : comp) {
      for (EdgeId e : g.incident(v)) es.push_back(e);
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    if (is_even_cycle(g, es)) return order_cycle(g, es);
  }
  // (b) even cycle blocks with at most two attachment nodes.
  for (const Block& b : blocks(g).blocks) {
    const BlockKind kind = classify_block(g, b);
    if (kind != BlockKind::kCycle && kind != BlockKind::kLoop) continue;
    if (!is_even_cycle(g, b.edges)) continue;
    Cycle c = order_cycle(g, b.edges);
    if (attachment_nodes(g, c).size() <= 2) return c;
  }
  // (c), (d) on the 1-compression of the non-cycle components.
  const FoldResult f = fold_graph(g.without(cycle_component_nodes));
  const Graph& g1 = f.graph;
  std::map<std::pair<NodeId, NodeId>, std::vector<EdgeId>> groups;
  for (EdgeId e : g1.edges()) {
    const Edge& ed = g1.edge(e);
    if (ed.is_loop()) {
      if (ed.parity != Parity::kOdd) return cycle_from_closed_path(f.fold[static_cast<std::size_t>(e)]);
      continue;
    }
    groups[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}].push_back(e);
  }
  std::vector<std::pair<EdgeId, EdgeId>> hits;
  for (const auto& [key, es] : groups) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        if (pair_is_even(g1.edge(es[i]).parity, g1.edge(es[j]).parity)) hits.emplace_back(es[i], es[j]);
      }
    }
  }
  if (!hits.empty()) {
    const auto [a, b] = *std::min_element(hits.begin(), hits.end());
    const Edge& ea = g1.edge(a);
    const Path& pa = f.fold[static_cast<std::size_t>(a)];
    const Path& pb0 = f.fold[static_cast<std::size_t>(b)];
    const Path pb = g1.edge(b).u == ea.u ? pb0 : pb0.reversed();
    return cycle_from_two_paths(pa, pb);
  }
  return std::nullopt;
}

CyclePreimage cycle_preimage(const CompressionStack& cs, std::span<const EdgeId> g2_cycle_edges) {
  if (!edges_form_cycle(cs.g2, g2_cycle_edges)) throw NotACycle("edge set is not a cycle of G2");
  CyclePreimage pre;
  pre.g2_edges.assign(g2_cycle_edges.begin(), g2_cycle_edges.end());
  std::sort(pre.g2_edges.begin(), pre.g2_edges.end());
  std::vector<NodeId> nodes;
  for (EdgeId e : pre.g2_edges) {
    const Piece& pc = cs.piece(e);
    auto in = pc.internal_nodes(cs.elementary_cycles);
    nodes.insert(nodes.end(), in.begin(), in.end());
    nodes.push_back(pc.u);
    nodes.push_back(pc.v);
  }
  pre.nodes = make_node_set(std::move(nodes));
  return pre;
}

}  // namespace ect
