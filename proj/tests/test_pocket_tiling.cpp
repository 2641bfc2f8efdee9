#include <doctest.h>

#include <algorithm>

#include "ect/compression.hpp"
#include "ect/errors.hpp"
#include "ect/generators.hpp"
#include "ect/graph_core.hpp"
#include "ect/instance.hpp"
#include "ect/pocket_tiling.hpp"
#include "test_util.hpp"

using namespace ect;
using namespace ect::test;

namespace {

std::optional<Point> pt(long x, long y) { return Point{Rational(x), Rational(y)}; }

// K4 on 0..3 with the path 0-4-5-1 drawn below it.
Embedding k4_with_square() {
  Graph g = complete_graph(4);
  g.add_node(4);
  g.add_node(5);
  g.add_edge(0, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 1);
  return embed_from_coordinates(g, {pt(0, 0), pt(4, 0), pt(2, 4), pt(2, 1), pt(0, -2), pt(4, -2)});
}

bool is_connected(const Graph& g) { return connected_components(g).size() == 1; }

// Some proper subset of the pocket that is itself a pocket of the host.
bool has_smaller_pocket(const Graph& host, const NodeSet& pocket) {
  const std::size_t k = pocket.size();
  for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
    NodeSet sub;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1u) sub.push_back(pocket[i]);
    }
    const Graph h = host.induced(sub);
    if (h.num_edges() < h.num_nodes() || !is_connected(h)) continue;
    int boundary = 0;
    for (NodeId v : sub) {
      for (EdgeId e : host.incident(v)) {
        if (!contains(sub, host.edge(e).other(v))) {
          ++boundary;
          break;
        }
      }
    }
    if (boundary <= 2 && has_even_cycle(h)) return true;
  }
  return false;
}

struct G2Pocket {
  CompressionStack cs;
  Pocket pocket;
};

G2Pocket first_g2_pocket(const Instance& inst) {
  const Embedding e = instance_embedding(inst);
  const Graph r = residual_graph(inst.graph, {});
  G2Pocket out{build_compression(r, &e), {}};
  out.pocket = find_minimal_pocket(*out.cs.g2_embedding);
  return out;
}

}  // namespace

TEST_SUITE("pocket-tiling") {
  TEST_CASE("grid pocket drops a corner") {
    const Instance inst = gen_grid(3, 3, {1, 1}, 1);
    const Pocket p = find_minimal_pocket(instance_embedding(inst));
    CHECK(p.nodes == NodeSet{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(p.boundary == NodeSet{5, 7});
    const Tiling t = quasi_perfect_tiling(p);
    CHECK(t.tiles.size() == 3);
    CHECK(t.beta == 1);
    CHECK(t.psi == 1);
    CHECK(t.certificate() == 2);
    CHECK(verify_tiling(p, t).ok);
  }

  TEST_CASE("K4 and a hanging square tie; the smaller id set wins") {
    const Embedding e = k4_with_square();
    const Pocket p = find_minimal_pocket(e);
    CHECK(p.nodes == NodeSet{0, 1, 2, 3});
    CHECK(p.boundary == NodeSet{0, 1});
    const Tiling t = quasi_perfect_tiling(p);
    REQUIRE(t.tiles.size() == 1);
    CHECK(t.tiles[0].kind == TileKind::kFacePair);
    CHECK(t.certificate() == Rational(2, 3));
    const Pocket sq = make_pocket(e, {0, 1, 4, 5});
    const Tiling ts = quasi_perfect_tiling(sq);
    REQUIRE(ts.tiles.size() == 1);
    CHECK(ts.tiles[0].kind == TileKind::kSingleFace);
    CHECK(ts.tiles[0].cycle.size() == 4);
  }

  TEST_CASE("two paths between a separation pair form a pocket") {
    // Square 0-1-3-2 with pendant 4 on node 0 and a K4 on 3, 5, 6, 7.
    const Graph g = from_edges(8, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 4}, {3, 5}, {3, 6}, {3, 7}, {5, 6}, {5, 7}, {6, 7}});
    const Embedding e = embed_from_coordinates(
        g, {pt(0, 0), pt(2, 2), pt(2, -2), pt(4, 0), pt(-2, 0), pt(8, 0), pt(6, 4), pt(6, 1)});
    const Pocket p = find_minimal_pocket(e);
    CHECK(p.nodes == NodeSet{0, 1, 2, 3});
    CHECK(p.boundary == NodeSet{0, 3});
  }

  TEST_CASE("no even cycle") {
    const Embedding e = embed_from_coordinates(cycle_graph(3), {pt(0, 0), pt(2, 0), pt(1, 2)});
    CHECK_THROWS_AS(find_minimal_pocket(e), NoEvenCycle);
  }

  TEST_CASE("pseudo-pocket without an even cycle is reported") {
    // Triangle 0,1,4 glued to K4 along the edge 0-1.
    Graph g = complete_graph(4);
    g.add_node(4);
    g.add_edge(0, 4);
    g.add_edge(4, 1);
    const Embedding e = embed_from_coordinates(g, {pt(0, 0), pt(4, 0), pt(2, 4), pt(2, 1), pt(2, -2)});
    CHECK_THROWS_AS(find_minimal_pocket(e), PseudoPocketWithoutEvenCycle);
  }

  TEST_CASE("odd face tile graph") {
    // Two triangles sharing the edge 0-1.
    const Graph g = from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 1}});
    const Embedding e = embed_from_coordinates(g, {pt(0, 0), pt(2, 0), pt(1, 2), pt(1, -2)});
    const Pocket p = make_pocket(e, {0, 1, 2, 3});
    const TileGraph tg = odd_face_tile_graph(p);
    CHECK(tg.graph.num_nodes() == 2);
    CHECK(tg.graph.num_edges() == 1);
    const Tiling t = quasi_perfect_tiling(p);
    REQUIRE(t.tiles.size() == 1);
    CHECK(t.tiles[0].kind == TileKind::kFacePair);
    CHECK(t.tiles[0].cycle.size() == 4);
    CHECK(t.beta == 1);
    CHECK(verify_tiling(p, t).ok);
  }

  TEST_CASE("faces sharing only a node are not adjacent") {
    const Graph g = from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
    const Embedding e = embed_from_coordinates(g, {pt(0, 0), pt(2, 0), pt(2, 2), pt(4, 2), pt(4, 4)});
    const Pocket p = make_pocket(e, {0, 1, 2, 3, 4});
    const TileGraph tg = odd_face_tile_graph(p);
    CHECK(tg.graph.num_nodes() == 2);
    CHECK(tg.graph.num_edges() == 0);
    CHECK_THROWS_AS(quasi_perfect_tiling(p), QuasiPerfectViolation);
  }

  TEST_CASE("tampered tilings are rejected") {
    const Pocket p = find_minimal_pocket(instance_embedding(gen_grid(3, 3, {1, 1}, 1)));
    const Tiling t = quasi_perfect_tiling(p);
    Tiling dropped = t;
    dropped.tiles.pop_back();
    CHECK_FALSE(verify_tiling(p, dropped).ok);
    Tiling twice = t;
    twice.tiles.push_back(t.tiles.front());
    CHECK_FALSE(verify_tiling(p, twice).ok);
    Tiling outer = t;
    const FaceSet fs = faces(p.embedding);
    for (std::size_t f = 0; f < fs.faces.size(); ++f) {
      if (fs.faces[f].outer) outer.tiles.push_back({TileKind::kSingleFace, static_cast<int>(f), -1, face_edges(fs, static_cast<int>(f))});
    }
    CHECK_FALSE(verify_tiling(p, outer).ok);
    Tiling skewed = t;
    skewed.psi = Rational(1, 2);
    CHECK_FALSE(verify_tiling(p, skewed).ok);
  }

  TEST_CASE("minimal pockets have no smaller pocket") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const Instance inst = gen_grid_subgraph(4, 4, 0.85, 0.0, {1, 1}, seed);
      if (!has_even_cycle(inst.graph)) continue;
      const Embedding e = instance_embedding(inst);
      const Pocket p = find_minimal_pocket(e);
      CHECK(p.boundary.size() <= 2);
      CHECK(has_even_cycle(p.graph));
      if (p.nodes.size() > 16) continue;
      CHECK_FALSE(has_smaller_pocket(inst.graph, p.nodes));
      ++checked;
    }
    CHECK(checked >= 20);
  }

  TEST_CASE("tessellation pocket covers only dodecagons") {
    for (int r = 2; r <= 3; ++r) {
      const G2Pocket gp = first_g2_pocket(gen_tessellation(r));
      const Tiling t = quasi_perfect_tiling(gp.pocket);
      CHECK(t.even_finite_faces == r * r);
      CHECK(t.odd_finite_faces == 2 * r * r - 2);
      CHECK(t.covered_odd_faces == 0);
      for (const Tile& tile : t.tiles) CHECK(tile.kind == TileKind::kSingleFace);
      Rational expected(2 * r * r, 3 * r * r - 2);
      expected.canonicalize();
      CHECK(t.certificate() == expected);
      CHECK(verify_tiling(gp.pocket, t).ok);
    }
  }

  TEST_CASE("pseudo-tiling statistics") {
    const Pocket p = find_minimal_pocket(instance_embedding(gen_grid(3, 3, {1, 1}, 1)));
    const PseudoTilingStats st = pseudo_tiling_stats(p);
    CHECK(st.faces == 4);
    CHECK(st.even_faces == 4);
    CHECK(st.infinite_even);
    CHECK(st.every_maximum_covers_infinite);
    CHECK(3 * (st.covered_odd + 2 * st.even_faces) >= 2 * st.faces + 4);

    // Triangle pair: the outer face (length 4) is even.
    const Graph g = from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 1}});
    const Embedding e = embed_from_coordinates(g, {pt(0, 0), pt(2, 0), pt(1, 2), pt(1, -2)});
    const PseudoTilingStats tp = pseudo_tiling_stats(make_pocket(e, {0, 1, 2, 3}));
    CHECK(tp.odd_faces == 2);
    CHECK(tp.covered_odd == 2);
    CHECK(tp.max_tiling_covered_odd == 2);
  }
}
