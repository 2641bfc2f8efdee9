#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "ect/embedding.hpp"
#include "ect/graph.hpp"

namespace ect {

/// Walk in a source graph: nodes.size() == edges.size() + 1.
struct Path {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;

  NodeId front() const { return nodes.front(); }
  NodeId back() const { return nodes.back(); }
  Path reversed() const;
  /// Nodes strictly between the ends.
  std::vector<NodeId> interior() const;
};

/// Cycle of a piece made of two branch-to-branch handles of different parity.
struct ElementaryCycle {
  NodeId branch_u = -1;
  NodeId branch_v = -1;
  std::array<Path, 2> handles;  // both run branch_u -> branch_v
  std::array<int, 2> parity{};  // 0 even, 1 odd
};

/// A maximal path block or an elementary cycle inside a piece, in piece order.
struct PieceSegment {
  bool is_cycle = false;
  Path path;          // for path segments, oriented along the piece
  int cycle = -1;     // index into CompressionStack::elementary_cycles
  NodeId from = -1;   // entry node along the piece
  NodeId to = -1;     // exit node along the piece
};

/// Preimage of one G2 edge.
struct Piece {
  EdgeId g2_edge = -1;
  NodeId u = -1;
  NodeId v = -1;
  std::vector<PieceSegment> segments;
  bool twin = false;
  Parity parity = Parity::kOdd;
  Path curve;  // u -> v using handle 0 of every elementary cycle

  /// All nodes of the piece except its ends, ascending.
  NodeSet internal_nodes(const std::vector<ElementaryCycle>& cycles) const;
  /// Internal nodes whose removal separates the ends (path interiors and branch nodes).
  NodeSet cut_nodes() const;
};

struct FoldResult {
  Graph graph;
  std::vector<Path> fold;  // by edge id: preimage path from edge.u to edge.v
};

struct G3Result {
  Graph graph;
  std::vector<NodeId> midpoint;  // by G2 edge id
};

struct CompressionStack {
  Graph source;                               // residual graph G^S
  Graph g1;
  std::vector<Path> g1_fold;                  // by G1 edge id
  Graph g2;
  std::vector<Piece> pieces;                  // by G2 edge id (g2_edge == -1 for dead ids)
  std::vector<ElementaryCycle> elementary_cycles;
  Graph g3;
  std::vector<NodeId> midpoint;               // by G2 edge id
  std::optional<Embedding> g2_embedding;

  const Piece& piece(EdgeId g2_edge) const { return pieces[static_cast<std::size_t>(g2_edge)]; }
};

/// Folds degree-2 nodes (lowest id first). Throws DegenerateGraph when the graph
/// is empty or has a component that is a bare cycle.
FoldResult one_compression(const Graph& g);

/// Twin-merges parallel pairs of the 1-compression and refolds. Fills g2,
/// pieces and elementary cycles of `cs` (cs.source, cs.g1, cs.g1_fold must be set).
/// Throws SameParityParallel.
void two_compression(CompressionStack& cs);

/// Subdivides every edge once. The first half keeps the edge parity, the
/// second half is even; both halves of a twin edge are twin.
G3Result subdivide(const Graph& g2);

/// Full stack for a residual graph. Given an embedding of a supergraph of the
/// residual graph (same ids), G2 inherits its rotation: each G2 edge-end sits
/// where the first source edge of its curve sits. Curves become polylines.
CompressionStack build_compression(const Graph& residual, const Embedding* parent = nullptr);

/// Even cycle with at most two attachment nodes (nodes with an incident edge
/// outside the cycle), found by the component / block / parallel / loop rules.
std::optional<Cycle> find_low_attachment_even_cycle(const Graph& g);

/// Nodes of `c` with an incident edge of g outside the cycle.
NodeSet attachment_nodes(const Graph& g, const Cycle& c);

struct CyclePreimage {
  std::vector<EdgeId> g2_edges;  // ascending
  NodeSet nodes;                 // union of the pieces
};

/// Pieces along a G2 cycle given by its edge ids. Throws NotACycle.
CyclePreimage cycle_preimage(const CompressionStack& cs, std::span<const EdgeId> g2_cycle_edges);

}  // namespace ect
