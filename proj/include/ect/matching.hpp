#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ect/graph.hpp"

namespace ect {

struct Matching {
  std::vector<EdgeId> edges;  // ascending
  NodeSet covered;
};

/// Maximum-cardinality matching on nodes 0..n-1 (Edmonds' blossom algorithm).
/// Returns mate[v] (or -1). Deterministic in the order of `edges`.
std::vector<int> maximum_matching(int n, const std::vector<std::pair<int, int>>& edges);

/// Maximum-cardinality matching of a graph; loops are ignored, parallel edges
/// are allowed (the lowest edge id of a matched pair is reported).
Matching max_matching(const Graph& g);

/// Exhaustive maximum matching; throws TooLarge above 14 nodes.
Matching brute_force_matching(const Graph& g);

struct TutteWitness {
  NodeSet x;
  int deficiency = 0;  // odd components of g - x minus |x|
};

/// Set X maximising oc(g - X) - |X| by exhaustive search; throws TooLarge above 14 nodes.
TutteWitness tutte_deficiency_witness(const Graph& g);

/// True iff no two edges share an endpoint and no edge is a loop.
bool is_valid_matching(const Graph& g, const std::vector<EdgeId>& edges);

}  // namespace ect
