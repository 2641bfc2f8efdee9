#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ect/graph.hpp"

namespace ect {

/// 1 for odd edges, 0 for even edges. Twin edges have no fixed parity; callers
/// must check for them separately.
inline int parity_bit(Parity p) { return p == Parity::kOdd ? 1 : 0; }

struct Block {
  std::vector<NodeId> nodes;  // ascending
  std::vector<EdgeId> edges;  // ascending
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  NodeSet cut_nodes;
  /// Block graph as (block index, cut node) pairs.
  std::vector<std::pair<int, NodeId>> block_graph_edges;
};

/// Blocks of a multigraph. A loop forms its own block, an isolated node forms a
/// block without edges. Blocks are ordered by their smallest edge id (edgeless
/// blocks last, by node id).
BlockDecomposition blocks(const Graph& g);

/// Kind of a block with respect to cycles.
enum class BlockKind { kIsolated, kBridge, kLoop, kCycle, kRich };
BlockKind classify_block(const Graph& g, const Block& b);

/// Parity of a cycle given by its edges; a twin edge makes it even.
bool is_even_cycle(const Graph& g, std::span<const EdgeId> cycle_edges);

/// True iff g has a cycle of even total length (twin edges count as even).
bool has_even_cycle(const Graph& g);

/// Nodes that lie on at least one even cycle.
NodeSet even_cycle_vertices(const Graph& g);

/// g - s with every node not on an even cycle removed.
Graph residual_graph(const Graph& g, const NodeSet& s);

/// True iff g - s has no even cycle.
bool is_feasible_ect(const Graph& g, const NodeSet& s);

/// Some even cycle of g, if any. Deterministic.
std::optional<Cycle> find_even_cycle(const Graph& g);

/// Shortest path (by edge count) from `from` to `to` avoiding `banned` nodes
/// and the edge `skip_edge`. Returns the edge ids in order.
std::optional<std::vector<EdgeId>> shortest_path(const Graph& g, NodeId from, NodeId to,
                                                 const std::vector<char>& banned, EdgeId skip_edge = -1);

/// True iff the edge set forms one simple cycle (a loop counts as a cycle).
bool edges_form_cycle(const Graph& g, std::span<const EdgeId> edges);

/// Orders the edges of a simple cycle, starting at its smallest node.
Cycle order_cycle(const Graph& g, std::span<const EdgeId> edges);

/// Connected components as sorted node sets, ordered by smallest node.
std::vector<NodeSet> connected_components(const Graph& g);

/// Articulation points of g (simple-graph sense, loops ignored).
NodeSet articulation_points(const Graph& g);

}  // namespace ect
