#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ect/instance.hpp"

namespace ect {

/// Integer costs drawn uniformly from [lo, hi].
struct CostProfile {
  long lo = 1;
  long hi = 1;
};

/// Generator name, parameters and seed. Same spec, same instance.
struct InstanceSpec {
  std::string generator;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
};

/// w x h grid with integer coordinates; node id y*w + x.
Instance gen_grid(int w, int h, CostProfile costs, std::uint64_t seed);

/// Grid with nodes kept with probability keep_prob and one diagonal added per
/// cell with probability diag_prob; nodes renumbered compactly.
Instance gen_grid_subgraph(int w, int h, double keep_prob, double diag_prob, CostProfile costs,
                           std::uint64_t seed);

/// Chain of k pentagons (k even) around an inner face closed by a black bottom
/// path. Red nodes cost 1 + eps, blue nodes 1, black nodes are infinite.
/// Throws OddK for odd k or k < 2, InvalidParameter for eps <= 0.
Instance gen_pentagon_ring(int k, const Rational& eps);

/// Chain of one green pentagon (costs 2) and k red/blue pentagons (costs 1),
/// closed by a black bottom path. Throws InvalidParameter unless k is odd and positive.
Instance gen_handle_chain(int k);

/// Patch of the triangle/dodecagon tessellation: reps x reps dodecagons and
/// every triangle touching them. Throws InvalidParameter for reps < 1.
Instance gen_tessellation(int reps, CostProfile costs = {}, std::uint64_t seed = 0);

/// Cost of the reverse-delete outcome "v plus one blue node per red/blue
/// pentagon" on gen_handle_chain(k).
Rational handle_chain_adversarial_cost(int k);

/// Builds the instance described by a spec. Generators: grid (w, h, lo, hi),
/// grid_subgraph (w, h, keep, diag, lo, hi), pentagon_ring (k, eps),
/// handle_chain (k), tessellation (reps, lo, hi). Throws InvalidParameter.
Instance materialize(const InstanceSpec& spec);

/// Benchmark corpus: grids up to 30x30, grid subgraphs, pentagon rings,
/// handle chains and tessellation patches (206 specs).
std::vector<InstanceSpec> standard_corpus();

/// Small subset of the corpus for quick runs.
std::vector<InstanceSpec> quick_corpus();

}  // namespace ect
