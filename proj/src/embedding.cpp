#include "ect/embedding.hpp"

#include <algorithm>
#include <string>

#include "ect/errors.hpp"
#include "ect/graph_core.hpp"

namespace ect {

namespace {

// Half-plane index then cross product: counterclockwise from the positive x axis.
bool angle_less(const Point& a, const Point& b) {
  auto upper = [](const Point& p) { return p.y > 0 || (p.y == 0 && p.x > 0); };
  const bool ua = upper(a), ub = upper(b);
  if (ua != ub) return ua;
  return a.x * b.y - a.y * b.x > 0;
}

Point first_direction(const Embedding& emb, Dart d) {
  const auto poly = emb.dart_polyline(d);
  return Point{poly[1].x - poly[0].x, poly[1].y - poly[0].y};
}

void check_euler(const Embedding& emb) {
  const FaceSet fs = faces(emb);
  if (!euler_holds(emb, fs)) throw EulerCheckFailed("V - E + F != 2 on some component");
}

}  // namespace

NodeId dart_tail(const Graph& g, Dart d) {
  const Edge& e = g.edge(dart_edge(d));
  return (d & 1) ? e.v : e.u;
}

NodeId dart_head(const Graph& g, Dart d) {
  const Edge& e = g.edge(dart_edge(d));
  return (d & 1) ? e.u : e.v;
}

std::vector<int> Embedding::rotation_index() const {
  std::vector<int> idx(2 * static_cast<std::size_t>(graph.edge_capacity()), -1);
  for (const auto& rot : rotation) {
    for (std::size_t i = 0; i < rot.size(); ++i) idx[static_cast<std::size_t>(rot[i])] = static_cast<int>(i);
  }
  return idx;
}

std::vector<Point> Embedding::dart_polyline(Dart d) const {
  const Edge& e = graph.edge(dart_edge(d));
  std::vector<Point> pts;
  pts.push_back(*coords[static_cast<std::size_t>(e.u)]);
  if (static_cast<std::size_t>(e.id) < bends.size()) {
    const auto& b = bends[static_cast<std::size_t>(e.id)];
    pts.insert(pts.end(), b.begin(), b.end());
  }
  pts.push_back(*coords[static_cast<std::size_t>(e.v)]);
  if (d & 1) std::reverse(pts.begin(), pts.end());
  return pts;
}

namespace {

Embedding angular_embedding(const Graph& g, const std::vector<std::optional<Point>>& coords,
                            const std::vector<std::vector<Point>>& bends) {
  Embedding emb;
  emb.graph = g;
  emb.coords = coords;
  emb.coords.resize(static_cast<std::size_t>(g.node_capacity()));
  emb.bends = bends;
  emb.bends.resize(static_cast<std::size_t>(g.edge_capacity()));
  for (NodeId v : g.nodes()) {
    if (!emb.coords[static_cast<std::size_t>(v)]) throw MissingCoordinates("node " + std::to_string(v));
  }
  emb.rotation.assign(static_cast<std::size_t>(g.node_capacity()), {});
  for (EdgeId e : g.edges()) {
    emb.rotation[static_cast<std::size_t>(g.edge(e).u)].push_back(make_dart(e, 0));
    emb.rotation[static_cast<std::size_t>(g.edge(e).v)].push_back(make_dart(e, 1));
  }
  for (NodeId v : g.nodes()) {
    auto& rot = emb.rotation[static_cast<std::size_t>(v)];
    std::vector<std::pair<Point, Dart>> keyed;
    keyed.reserve(rot.size());
    for (Dart d : rot) keyed.emplace_back(first_direction(emb, d), d);
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return angle_less(a.first, b.first); });
    for (std::size_t i = 0; i < rot.size(); ++i) rot[i] = keyed[i].second;
  }
  return emb;
}

}  // namespace

Embedding embed_from_coordinates(const Graph& g, const std::vector<std::optional<Point>>& coords,
                                 const std::vector<std::vector<Point>>& bends) {
  Embedding emb = angular_embedding(g, coords, bends);
  check_euler(emb);
  return emb;
}

Embedding embed_with_rotation(const Graph& g, const std::vector<std::optional<Point>>& coords,
                              const std::vector<std::vector<EdgeId>>& rotation_edges) {
  Embedding emb = angular_embedding(g, coords, {});
  for (std::size_t v = 0; v < rotation_edges.size(); ++v) {
    const auto& list = rotation_edges[v];
    if (list.empty()) continue;
    const auto node = static_cast<NodeId>(v);
    if (!g.has_node(node)) throw EulerCheckFailed("rotation given for unknown node " + std::to_string(v));
    std::vector<EdgeId> expect(g.incident(node).begin(), g.incident(node).end());
    std::vector<EdgeId> got = list;
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    if (expect != got) throw EulerCheckFailed("rotation at node " + std::to_string(v) + " does not list its edges");
    auto& rot = emb.rotation[v];
    rot.clear();
    for (EdgeId e : list) {
      if (g.edge(e).is_loop()) throw EulerCheckFailed("loops cannot appear in explicit rotations");
      rot.push_back(make_dart(e, g.edge(e).u == node ? 0 : 1));
    }
  }
  check_euler(emb);
  return emb;
}

Embedding make_embedding(const Graph& g, std::vector<std::vector<Dart>> rotation,
                         std::vector<std::optional<Point>> coords, std::vector<std::vector<Point>> bends) {
  Embedding emb;
  emb.graph = g;
  emb.rotation = std::move(rotation);
  emb.rotation.resize(static_cast<std::size_t>(g.node_capacity()));
  emb.coords = std::move(coords);
  emb.coords.resize(static_cast<std::size_t>(g.node_capacity()));
  emb.bends = std::move(bends);
  emb.bends.resize(static_cast<std::size_t>(g.edge_capacity()));
  return emb;
}

Embedding restrict_embedding(const Embedding& e, const NodeSet& keep) {
  Embedding out;
  out.graph = e.graph.induced(keep);
  out.coords = e.coords;
  out.bends = e.bends;
  out.rotation.assign(e.rotation.size(), {});
  for (NodeId v : out.graph.nodes()) {
    for (Dart d : e.rotation[static_cast<std::size_t>(v)]) {
      if (out.graph.has_edge(dart_edge(d))) out.rotation[static_cast<std::size_t>(v)].push_back(d);
    }
  }
  for (NodeId v = 0; v < out.graph.node_capacity(); ++v) {
    if (!out.graph.has_node(v)) out.coords[static_cast<std::size_t>(v)].reset();
  }
  return out;
}

FaceSet faces(const Embedding& emb) {
  const Graph& g = emb.graph;
  FaceSet fs;
  const std::size_t ndarts = 2 * static_cast<std::size_t>(g.edge_capacity());
  fs.face_of_dart.assign(ndarts, -1);
  const auto idx = emb.rotation_index();
  const auto comps = connected_components(g);
  std::vector<int> comp_of(static_cast<std::size_t>(g.node_capacity()), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (NodeId v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  const auto all_nodes = g.nodes();
  const bool has_geometry = std::all_of(all_nodes.begin(), all_nodes.end(), [&](NodeId v) {
    return static_cast<std::size_t>(v) < emb.coords.size() && emb.coords[static_cast<std::size_t>(v)].has_value();
  });
  for (EdgeId e : g.edges()) {
    for (int side = 0; side < 2; ++side) {
      const Dart start = make_dart(e, side);
      if (fs.face_of_dart[static_cast<std::size_t>(start)] != -1) continue;
      Face f;
      const int id = static_cast<int>(fs.faces.size());
      Dart d = start;
      int parity = 0;
      bool twin = false;
      do {
        fs.face_of_dart[static_cast<std::size_t>(d)] = id;
        f.darts.push_back(d);
        const Parity p = g.edge(dart_edge(d)).parity;
        twin = twin || p == Parity::kTwin;
        parity ^= parity_bit(p);
        const NodeId head = dart_head(g, d);
        const auto& rot = emb.rotation[static_cast<std::size_t>(head)];
        const int at = idx[static_cast<std::size_t>(reverse_dart(d))];
        const int n = static_cast<int>(rot.size());
        d = rot[static_cast<std::size_t>((at + n - 1) % n)];
      } while (d != start);
      f.length = static_cast<int>(f.darts.size());
      f.even = twin || parity == 0;
      f.component = comp_of[static_cast<std::size_t>(g.edge(e).u)];
      if (has_geometry) {
        for (Dart x : f.darts) {
          const auto poly = emb.dart_polyline(x);
          for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
            f.area2 += poly[i].x * poly[i + 1].y - poly[i + 1].x * poly[i].y;
          }
        }
      }
      fs.faces.push_back(std::move(f));
    }
  }
  // Outer face per component: smallest signed area, lowest id on ties.
  std::vector<int> outer(comps.size(), -1);
  for (std::size_t i = 0; i < fs.faces.size(); ++i) {
    const Face& f = fs.faces[i];
    int& o = outer[static_cast<std::size_t>(f.component)];
    if (o == -1 || f.area2 < fs.faces[static_cast<std::size_t>(o)].area2) o = static_cast<int>(i);
  }
  for (int o : outer) {
    if (o != -1) fs.faces[static_cast<std::size_t>(o)].outer = true;
  }
  return fs;
}

Parity face_parity(const Embedding&, const FaceSet& fs, int face) {
  return fs.faces[static_cast<std::size_t>(face)].even ? Parity::kEven : Parity::kOdd;
}

bool euler_holds(const Embedding& emb, const FaceSet& fs) {
  const Graph& g = emb.graph;
  const auto comps = connected_components(g);
  std::vector<long> v(comps.size(), 0), e(comps.size(), 0), f(comps.size(), 0);
  std::vector<int> comp_of(static_cast<std::size_t>(g.node_capacity()), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    v[c] = static_cast<long>(comps[c].size());
    for (NodeId x : comps[c]) comp_of[static_cast<std::size_t>(x)] = static_cast<int>(c);
  }
  for (EdgeId x : g.edges()) ++e[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(g.edge(x).u)])];
  for (const Face& face : fs.faces) ++f[static_cast<std::size_t>(face.component)];
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (e[c] == 0) continue;
    if (v[c] - e[c] + f[c] != 2) return false;
  }
  return true;
}

DualGraph dual_graph(const Embedding& emb, const FaceSet& fs) {
  DualGraph dg;
  for (std::size_t i = 0; i < fs.faces.size(); ++i) dg.graph.add_node(static_cast<NodeId>(i));
  for (EdgeId e : emb.graph.edges()) {
    dg.graph.add_edge_with_id(e, fs.face_of_dart[static_cast<std::size_t>(make_dart(e, 0))],
                              fs.face_of_dart[static_cast<std::size_t>(make_dart(e, 1))], Parity::kOdd);
  }
  return dg;
}

std::vector<EdgeId> face_edges(const FaceSet& fs, int face) {
  std::vector<EdgeId> out;
  for (Dart d : fs.faces[static_cast<std::size_t>(face)].darts) out.push_back(dart_edge(d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> face_nodes(const Embedding& emb, const FaceSet& fs, int face) {
  std::vector<NodeId> out;
  for (Dart d : fs.faces[static_cast<std::size_t>(face)].darts) out.push_back(dart_tail(emb.graph, d));
  return out;
}

}  // namespace ect
