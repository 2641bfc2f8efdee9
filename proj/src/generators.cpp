#include "ect/generators.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>

#include "ect/errors.hpp"

namespace ect {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(gen_() % span);
  }
  bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 gen_;
};

void check_profile(const CostProfile& c) {
  if (c.lo < 0 || c.hi < c.lo) throw InvalidParameter("cost range must satisfy 0 <= lo <= hi");
}

Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }

// Pentagon chain shared by the Fig. 1 and Fig. 6 families. Each pentagon has
// an upper handle of length 2 and a lower handle of length 3 between
// consecutive branch nodes; a bottom path with three internal nodes closes the
// lower face.
struct ChainNodes {
  std::vector<NodeId> branch;
  std::vector<NodeId> upper;                       // one per pentagon
  std::vector<std::array<NodeId, 2>> lower;        // two per pentagon
};

ChainNodes build_chain(Instance& inst, int pentagons, const std::vector<std::array<Rational, 3>>& costs) {
  ChainNodes ch;
  NodeId next = 0;
  for (int i = 0; i <= pentagons; ++i) {
    inst.add_node(next, 0, pt(4L * i, 0), true);
    ch.branch.push_back(next++);
  }
  for (int i = 0; i < pentagons; ++i) {
    const auto& c = costs[static_cast<std::size_t>(i)];
    inst.add_node(next, c[0], pt(4L * i + 2, 2));
    ch.upper.push_back(next++);
    inst.add_node(next, c[1], pt(4L * i + 1, -1));
    inst.add_node(next + 1, c[2], pt(4L * i + 3, -1));
    ch.lower.push_back({next, next + 1});
    next += 2;
  }
  const long right = 4L * pentagons;
  const NodeId p0 = next, p1 = next + 1, p2 = next + 2;
  inst.add_node(p0, 0, pt(0, -3), true);
  inst.add_node(p1, 0, pt(right / 2, -4), true);
  inst.add_node(p2, 0, pt(right, -3), true);
  for (int i = 0; i < pentagons; ++i) {
    const NodeId a = ch.branch[static_cast<std::size_t>(i)], b = ch.branch[static_cast<std::size_t>(i) + 1];
    inst.add_edge(a, ch.upper[static_cast<std::size_t>(i)]);
    inst.add_edge(ch.upper[static_cast<std::size_t>(i)], b);
    inst.add_edge(a, ch.lower[static_cast<std::size_t>(i)][0]);
    inst.add_edge(ch.lower[static_cast<std::size_t>(i)][0], ch.lower[static_cast<std::size_t>(i)][1]);
    inst.add_edge(ch.lower[static_cast<std::size_t>(i)][1], b);
  }
  inst.add_edge(ch.branch.front(), p0);
  inst.add_edge(p0, p1);
  inst.add_edge(p1, p2);
  inst.add_edge(p2, ch.branch.back());
  return ch;
}

long parse_long(const InstanceSpec& s, const std::string& key, long fallback) {
  auto it = s.params.find(key);
  if (it == s.params.end()) return fallback;
  try {
    std::size_t used = 0;
    const long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw InvalidParameter("parameter " + key + " is not an integer: " + it->second);
  }
}

double parse_double(const InstanceSpec& s, const std::string& key, double fallback) {
  auto it = s.params.find(key);
  if (it == s.params.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw InvalidParameter("parameter " + key + " is not a number: " + it->second);
  }
}

}  // namespace

Instance gen_grid(int w, int h, CostProfile costs, std::uint64_t seed) {
  if (w < 1 || h < 1) throw InvalidParameter("grid dimensions must be positive");
  check_profile(costs);
  Rng rng(seed);
  Instance inst;
  inst.name = "grid_" + std::to_string(w) + "x" + std::to_string(h) + "_s" + std::to_string(seed);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) inst.add_node(y * w + x, rng.uniform(costs.lo, costs.hi), pt(x, y));
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) inst.add_edge(y * w + x, y * w + x + 1);
      if (y + 1 < h) inst.add_edge(y * w + x, (y + 1) * w + x);
    }
  }
  return inst;
}

Instance gen_grid_subgraph(int w, int h, double keep_prob, double diag_prob, CostProfile costs,
                           std::uint64_t seed) {
  if (w < 1 || h < 1) throw InvalidParameter("grid dimensions must be positive");
  if (!(keep_prob >= 0 && keep_prob <= 1 && diag_prob >= 0 && diag_prob <= 1)) {
    throw InvalidParameter("probabilities must lie in [0, 1]");
  }
  check_profile(costs);
  Rng rng(seed);
  std::vector<NodeId> id(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), -1);
  Instance inst;
  inst.name = "gridsub_" + std::to_string(w) + "x" + std::to_string(h) + "_s" + std::to_string(seed);
  NodeId next = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool keep = rng.chance(keep_prob);
      const long c = rng.uniform(costs.lo, costs.hi);
      if (!keep) continue;
      id[static_cast<std::size_t>(y * w + x)] = next;
      inst.add_node(next++, c, pt(x, y));
    }
  }
  auto at = [&](int x, int y) { return id[static_cast<std::size_t>(y * w + x)]; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (at(x, y) < 0) continue;
      if (x + 1 < w && at(x + 1, y) >= 0) inst.add_edge(at(x, y), at(x + 1, y));
      if (y + 1 < h && at(x, y + 1) >= 0) inst.add_edge(at(x, y), at(x, y + 1));
    }
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      const bool add = rng.chance(diag_prob);
      const bool rising = rng.chance(0.5);
      if (!add) continue;
      const NodeId a = rising ? at(x, y) : at(x + 1, y);
      const NodeId b = rising ? at(x + 1, y + 1) : at(x, y + 1);
      if (a >= 0 && b >= 0) inst.add_edge(a, b);
    }
  }
  return inst;
}

Instance gen_pentagon_ring(int k, const Rational& eps) {
  if (k < 2 || k % 2 != 0) throw OddK("pentagon ring needs an even k >= 2, got " + std::to_string(k));
  if (eps <= 0) throw InvalidParameter("eps must be positive");
  Instance inst;
  inst.name = "pentagon_ring_k" + std::to_string(k) + "_eps" + to_string(eps);
  std::vector<std::array<Rational, 3>> costs(static_cast<std::size_t>(k), {Rational(1) + eps, Rational(1), Rational(1)});
  build_chain(inst, k, costs);
  return inst;
}

Instance gen_handle_chain(int k) {
  if (k < 1 || k % 2 == 0) throw InvalidParameter("handle chain needs an odd k >= 1, got " + std::to_string(k));
  Instance inst;
  inst.name = "handle_chain_k" + std::to_string(k);
  std::vector<std::array<Rational, 3>> costs;
  costs.push_back({Rational(2), Rational(2), Rational(2)});
  for (int i = 0; i < k; ++i) costs.push_back({Rational(1), Rational(1), Rational(1)});
  build_chain(inst, k + 1, costs);
  return inst;
}

Rational handle_chain_adversarial_cost(int k) { return Rational(2) + Rational(k); }

Instance gen_tessellation(int reps, CostProfile costs, std::uint64_t seed) {
  if (reps < 1) throw InvalidParameter("reps must be positive");
  check_profile(costs);
  Rng rng(seed);
  const int r = reps;
  // Lattice points (i, j) are dodecagon centres. A lattice triangle is
  // (i, j, up) = {(i,j), (i+1,j), (i,j+1)} or (i, j, down) =
  // {(i+1,j), (i,j+1), (i+1,j+1)}. Each lattice triangle carries a
  // tessellation triangle with one node on each of its lattice edges.
  auto in_patch = [&](int i, int j) { return i >= 0 && j >= 0 && i < r && j < r; };
  using Tri = std::array<int, 3>;  // i, j, down
  auto corners = [](const Tri& t) {
    const int i = t[0], j = t[1];
    if (t[2] == 0) return std::array<std::array<int, 2>, 3>{{{i, j}, {i + 1, j}, {i, j + 1}}};
    return std::array<std::array<int, 2>, 3>{{{i + 1, j}, {i, j + 1}, {i + 1, j + 1}}};
  };
  std::vector<Tri> tris;
  for (int j = -1; j < r; ++j) {
    for (int i = -1; i < r; ++i) {
      for (int d = 0; d < 2; ++d) {
        const Tri t{i, j, d};
        bool touches = false;
        for (auto c : corners(t)) touches = touches || in_patch(c[0], c[1]);
        if (touches) tris.push_back(t);
      }
    }
  }
  // Scaled by 9: up centroid 9p + (3,3), down centroid 9p + (6,6).
  auto centroid = [](const Tri& t) { return std::array<long, 2>{9L * t[0] + (t[2] ? 6 : 3), 9L * t[1] + (t[2] ? 6 : 3)}; };
  // Lattice edge key: sorted pair of lattice points.
  using LEdge = std::array<int, 4>;
  auto ledge = [](std::array<int, 2> a, std::array<int, 2> b) {
    if (b < a) std::swap(a, b);
    return LEdge{a[0], a[1], b[0], b[1]};
  };
  auto across = [&](const Tri& t, const LEdge& e) {
    // The other lattice triangle on lattice edge e.
    const std::array<int, 2> a{e[0], e[1]}, b{e[2], e[3]};
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        for (int d = 0; d < 2; ++d) {
          const Tri u{t[0] + di, t[1] + dj, d};
          if (u == t) continue;
          int hit = 0;
          for (auto c : corners(u)) hit += (c == a || c == b) ? 1 : 0;
          if (hit == 2) return u;
        }
      }
    }
    return t;
  };
  Instance inst;
  inst.name = "tessellation_r" + std::to_string(reps) + "_s" + std::to_string(seed);
  std::map<std::pair<Tri, LEdge>, NodeId> node_of;
  NodeId next = 0;
  for (const Tri& t : tris) {
    const auto cs = corners(t);
    const auto c0 = centroid(t);
    for (int k = 0; k < 3; ++k) {
      const LEdge e = ledge(cs[static_cast<std::size_t>(k)], cs[static_cast<std::size_t>((k + 1) % 3)]);
      const auto c1 = centroid(across(t, e));
      // One third of the way from this centroid to the neighbouring one.
      const long x = c0[0] + (c1[0] - c0[0]) / 3, y = c0[1] + (c1[1] - c0[1]) / 3;
      node_of[{t, e}] = next;
      inst.add_node(next++, rng.uniform(costs.lo, costs.hi), pt(x, y));
    }
  }
  std::set<std::pair<NodeId, NodeId>> added;
  auto link = [&](NodeId a, NodeId b) {
    if (added.insert({std::min(a, b), std::max(a, b)}).second) inst.add_edge(a, b);
  };
  for (const Tri& t : tris) {
    const auto cs = corners(t);
    std::array<NodeId, 3> n{};
    for (int k = 0; k < 3; ++k) {
      n[static_cast<std::size_t>(k)] =
          node_of[{t, ledge(cs[static_cast<std::size_t>(k)], cs[static_cast<std::size_t>((k + 1) % 3)])}];
    }
    link(n[0], n[1]);
    link(n[1], n[2]);
    link(n[2], n[0]);
  }
  for (const Tri& t : tris) {
    const auto cs = corners(t);
    for (int k = 0; k < 3; ++k) {
      const auto a = cs[static_cast<std::size_t>(k)], b = cs[static_cast<std::size_t>((k + 1) % 3)];
      if (!in_patch(a[0], a[1]) && !in_patch(b[0], b[1])) continue;
      const LEdge e = ledge(a, b);
      auto it = node_of.find({across(t, e), e});
      if (it != node_of.end()) link(node_of[{t, e}], it->second);
    }
  }
  return inst;
}

Instance materialize(const InstanceSpec& spec) {
  const std::string& g = spec.generator;
  auto profile = [&] { return CostProfile{parse_long(spec, "lo", 1), parse_long(spec, "hi", 1)}; };
  auto intp = [&](const std::string& key, long fallback) { return static_cast<int>(parse_long(spec, key, fallback)); };
  if (g == "grid") return gen_grid(intp("w", 3), intp("h", 3), profile(), spec.seed);
  if (g == "grid_subgraph") {
    return gen_grid_subgraph(intp("w", 5), intp("h", 5), parse_double(spec, "keep", 0.85),
                             parse_double(spec, "diag", 0.2), profile(), spec.seed);
  }
  if (g == "pentagon_ring") {
    Rational eps(1, 10);
    if (auto it = spec.params.find("eps"); it != spec.params.end()) {
      try {
        eps = parse_rational(it->second);
      } catch (const std::invalid_argument&) {
        throw InvalidParameter("eps is not a rational: " + it->second);
      }
    }
    return gen_pentagon_ring(intp("k", 2), eps);
  }
  if (g == "handle_chain") return gen_handle_chain(intp("k", 1));
  if (g == "tessellation") return gen_tessellation(intp("reps", 1), profile(), spec.seed);
  throw InvalidParameter("unknown generator: " + g);
}

namespace {

InstanceSpec spec(std::string gen, std::map<std::string, std::string> params, std::uint64_t seed = 0) {
  return InstanceSpec{std::move(gen), std::move(params), seed};
}

}  // namespace

std::vector<InstanceSpec> standard_corpus() {
  std::vector<InstanceSpec> out;
  const std::vector<std::pair<int, int>> small{{2, 2}, {3, 3}, {3, 4}, {4, 4}};
  for (auto [w, h] : small) {
    for (std::uint64_t s = 1; s <= 10; ++s) {
      out.push_back(spec("grid", {{"w", std::to_string(w)}, {"h", std::to_string(h)}, {"lo", "1"}, {"hi", "10"}}, s));
    }
  }
  for (int w : {5, 6, 8, 10}) {
    for (std::uint64_t s = 1; s <= 5; ++s) {
      out.push_back(spec("grid", {{"w", std::to_string(w)}, {"h", std::to_string(w)}, {"lo", "1"}, {"hi", "100"}}, s));
    }
  }
  for (int w : {15, 20, 30}) {
    for (std::uint64_t s = 1; s <= 2; ++s) {
      out.push_back(spec("grid", {{"w", std::to_string(w)}, {"h", std::to_string(w)}, {"lo", "1"}, {"hi", "100"}}, s));
    }
  }
  for (int k : {2, 4, 6}) {
    for (const char* eps : {"1/10", "1/4", "1/2"}) out.push_back(spec("pentagon_ring", {{"k", std::to_string(k)}, {"eps", eps}}));
  }
  for (int k : {1, 3, 5}) out.push_back(spec("handle_chain", {{"k", std::to_string(k)}}));
  for (int r = 1; r <= 4; ++r) {
    out.push_back(spec("tessellation", {{"reps", std::to_string(r)}}));
    out.push_back(spec("tessellation", {{"reps", std::to_string(r)}, {"lo", "1"}, {"hi", "20"}}, static_cast<std::uint64_t>(r)));
  }
  for (std::uint64_t s = 1; s <= 60; ++s) {
    out.push_back(spec("grid_subgraph", {{"w", "4"}, {"h", "4"}, {"keep", "0.9"}, {"diag", "0.3"}, {"lo", "1"}, {"hi", "10"}}, s));
  }
  for (std::uint64_t s = 1; s <= 40; ++s) {
    out.push_back(spec("grid_subgraph", {{"w", "6"}, {"h", "6"}, {"keep", "0.9"}, {"diag", "0.3"}, {"lo", "1"}, {"hi", "20"}}, s));
  }
  for (std::uint64_t s = 1; s <= 20; ++s) {
    out.push_back(spec("grid_subgraph", {{"w", "10"}, {"h", "10"}, {"keep", "0.85"}, {"diag", "0.25"}, {"lo", "1"}, {"hi", "50"}}, s));
  }
  return out;
}

std::vector<InstanceSpec> quick_corpus() {
  return {
      spec("grid", {{"w", "3"}, {"h", "3"}, {"lo", "1"}, {"hi", "10"}}, 1),
      spec("grid", {{"w", "10"}, {"h", "10"}, {"lo", "1"}, {"hi", "100"}}, 1),
      spec("pentagon_ring", {{"k", "2"}, {"eps", "1/10"}}),
      spec("handle_chain", {{"k", "3"}}),
      spec("tessellation", {{"reps", "2"}}),
      spec("grid_subgraph", {{"w", "6"}, {"h", "6"}, {"keep", "0.9"}, {"diag", "0.3"}, {"lo", "1"}, {"hi", "20"}}, 3),
  };
}

}  // namespace ect
