#pragma once

#include <string>
#include <vector>

#include "ect/embedding.hpp"
#include "ect/graph.hpp"
#include "ect/rational.hpp"

namespace ect {

struct Pocket {
  NodeSet nodes;
  NodeSet boundary;     // nodes with a neighbour outside the pocket (at most two)
  Graph graph;          // induced subgraph of the host
  Embedding embedding;  // host embedding restricted to the pocket
};

struct PocketSearchOptions {
  /// Evaluate every separation candidate (not only the smallest ones) for the
  /// "every pseudo-pocket has an even cycle" assertion when the host has at
  /// most this many nodes.
  std::size_t exhaustive_check_limit = 150;
};

struct PocketSearchStats {
  std::size_t candidates = 0;       // distinct candidates generated
  std::size_t evaluated = 0;        // candidates materialised and checked
  std::size_t pseudo_pockets = 0;   // evaluated candidates containing a cycle
};

/// Smallest pocket (fewest nodes, then smallest sorted id set) among whole
/// components, cut-node sides, separation-pair sides and loop / parallel-pair
/// node sets. Throws NoEvenCycle if the host has none, and
/// PseudoPocketWithoutEvenCycle if an evaluated candidate has a cycle but no even cycle.
Pocket find_minimal_pocket(const Embedding& host, const PocketSearchOptions& opts = {},
                           PocketSearchStats* stats = nullptr);

/// Every candidate pocket of the search, materialised (test helper; small hosts only).
std::vector<NodeSet> all_pocket_candidates(const Graph& host);

/// Pocket on an explicit node set of the host.
Pocket make_pocket(const Embedding& host, const NodeSet& nodes);

enum class TileKind { kSingleFace, kFacePair };

struct Tile {
  TileKind kind = TileKind::kSingleFace;
  int f = -1;
  int g = -1;
  std::vector<EdgeId> cycle;  // host edge ids, ascending
};

struct Tiling {
  std::vector<Tile> tiles;
  int finite_faces = 0;
  int even_finite_faces = 0;
  int odd_finite_faces = 0;
  int covered_odd_faces = 0;
  Rational beta;  // covered odd finite faces / odd finite faces (1 if there are none)
  Rational psi;   // even finite faces / finite faces

  Rational certificate() const { return beta * (1 - psi) + 2 * psi; }
};

/// Odd finite faces joined when they share an edge; node i is face faces[i].
struct TileGraph {
  Graph graph;
  std::vector<int> faces;
};

TileGraph odd_face_tile_graph(const Pocket& p, const FaceSet& fs);
TileGraph odd_face_tile_graph(const Pocket& p);

/// Even finite faces plus a maximum matching of the odd finite faces.
/// Throws QuasiPerfectViolation if the certificate is below 2/3.
Tiling quasi_perfect_tiling(const Pocket& p);

struct TilingCheck {
  bool ok = true;
  std::vector<std::string> reasons;
};
TilingCheck verify_tiling(const Pocket& p, const Tiling& t);

/// Maximum pseudo-tiling statistics (the infinite face may be matched when odd).
struct PseudoTilingStats {
  int faces = 0;           // |V(H*)|
  int even_faces = 0;
  int odd_faces = 0;
  int covered_odd = 0;     // odd faces covered by the maximum pseudo-tiling
  bool infinite_even = false;
  bool every_maximum_covers_infinite = false;  // no maximum pseudo-tiling is a tiling
  int max_tiling_covered_odd = 0;  // odd finite faces covered by a maximum tiling
};
PseudoTilingStats pseudo_tiling_stats(const Pocket& p);

}  // namespace ect
