#pragma once

#include <vector>

#include "ect/graph.hpp"
#include "ect/rational.hpp"

namespace ect {

struct ExactResult {
  NodeSet solution;
  Rational cost;
  long long branch_nodes = 0;
};

/// Default node limit of the exact solver.
inline constexpr std::size_t kDefaultOracleNodes = 22;

/// Node limit of the exact solver: ECT_MAX_ORACLE_NODES if set, else the default.
std::size_t oracle_node_limit();

/// Minimum-cost even cycle transversal by branch and bound. Throws TooLarge
/// above oracle_node_limit() nodes.
ExactResult exact_ect(const Graph& g, const std::vector<Rational>& cost);

/// Minimum-cost transversal by trying every subset (no size guard; tiny graphs only).
ExactResult exhaustive_ect(const Graph& g, const std::vector<Rational>& cost);

/// Every simple cycle of g (loops and parallel pairs included), as edge sets.
/// Throws TooLarge above 12 nodes.
std::vector<Cycle> enumerate_cycles(const Graph& g);

/// Every even simple cycle. Throws TooLarge above 12 nodes.
std::vector<Cycle> enumerate_even_cycles(const Graph& g);

}  // namespace ect
