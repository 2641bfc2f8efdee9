#include <doctest.h>

#include <map>

#include "ect/compression.hpp"
#include "ect/errors.hpp"
#include "ect/generators.hpp"
#include "ect/graph_core.hpp"
#include "ect/oracle.hpp"
#include "ect/primal_dual.hpp"
#include "test_util.hpp"

using namespace ect;
using namespace ect::test;

namespace {

// K4 with the edge 0-1 replaced by the handles 0-4-1 and 0-5-6-1.
Graph k4_with_handles() {
  Graph g = from_edges(7, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  g.add_edge(0, 4);
  g.add_edge(4, 1);
  g.add_edge(0, 5);
  g.add_edge(5, 6);
  g.add_edge(6, 1);
  return g;
}

// Same, with the edge 1-2 also replaced by the handles 1-7-2 and 1-8-9-2.
Graph k4_with_two_handle_pairs() {
  Graph g = from_edges(10, {{0, 2}, {0, 3}, {1, 3}, {2, 3}});
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 4}, {4, 1}, {0, 5}, {5, 6}, {6, 1}, {1, 7}, {7, 2}, {1, 8}, {8, 9}, {9, 2}}) {
    g.add_edge(u, v);
  }
  return g;
}

std::vector<EdgeId> triangle_012(const CompressionStack& cs) {
  std::vector<EdgeId> out;
  for (EdgeId e : cs.g2.edges()) {
    const Edge& ed = cs.g2.edge(e);
    if (ed.u != 3 && ed.v != 3) out.push_back(e);
  }
  return out;
}

DualState state_with(std::map<NodeId, long> residual) {
  std::vector<Rational> r(10, Rational(100));
  for (auto [v, c] : residual) r[static_cast<std::size_t>(v)] = c;
  return DualState(r);
}

Inequality plain(std::initializer_list<NodeId> nodes) {
  Inequality q;
  for (NodeId v : nodes) q.coeff[v] = 1;
  return q;
}

bool is_minimal(const Graph& g, const SolveReport& rep) {
  std::map<NodeId, NodeId> partner;
  for (const NodePair& p : rep.pairs) {
    partner[p.a] = p.b;
    partner[p.b] = p.a;
  }
  for (NodeId w : rep.solution) {
    NodeSet rest;
    auto it = partner.find(w);
    const bool pair_kept = it != partner.end() && contains(rep.solution, it->second);
    for (NodeId x : rep.solution) {
      if (x != w && !(pair_kept && x == it->second)) rest.push_back(x);
    }
    if (is_feasible_ect(g, rest)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("primal-dual") {
  TEST_CASE("blended coefficients with a strict dominant handle") {
    const CompressionStack cs = build_compression(k4_with_handles());
    REQUIRE(cs.elementary_cycles.size() == 1);
    DualState ds = state_with({{4, 3}, {5, 1}, {6, 5}});
    const BlendedInequality b = blended_coefficients(cs, triangle_012(cs), ds);
    const CoefficientMap expected{{0, 1}, {1, 1}, {2, 1}, {4, 1}};
    CHECK(b.coeff == expected);
    CHECK(b.special_cycle == -1);
    REQUIRE(b.watches.size() == 1);
    CHECK(b.watches[0].dominant == NodeSet{4});
    CHECK(b.watches[0].other == NodeSet{5, 6});
  }

  TEST_CASE("odd dominant handle makes the cycle special") {
    const CompressionStack cs = build_compression(k4_with_handles());
    DualState ds = state_with({{4, 1}, {5, 3}, {6, 3}});
    const BlendedInequality b = blended_coefficients(cs, triangle_012(cs), ds);
    CHECK(b.special_cycle == 0);
    const CoefficientMap expected{{0, 1}, {1, 1}, {2, 1}, {4, 1}, {5, 1}, {6, 1}};
    CHECK(b.coeff == expected);
  }

  TEST_CASE("a single equal cycle becomes special") {
    const CompressionStack cs = build_compression(k4_with_handles());
    DualState ds = state_with({{4, 2}, {5, 2}, {6, 7}});
    const BlendedInequality b = blended_coefficients(cs, triangle_012(cs), ds);
    const CoefficientMap expected{{0, 1}, {1, 1}, {2, 1}, {4, 1}, {5, 1}, {6, 1}};
    CHECK(b.coeff == expected);
    CHECK(b.watches.empty());
    CHECK(b.special_cycle == 0);
  }

  TEST_CASE("two equal cycles get coefficient one half") {
    const CompressionStack cs = build_compression(k4_with_two_handle_pairs());
    REQUIRE(cs.elementary_cycles.size() == 2);
    DualState ds = state_with({{4, 2}, {5, 2}, {6, 7}, {7, 3}, {8, 3}, {9, 3}});
    const BlendedInequality b = blended_coefficients(cs, triangle_012(cs), ds);
    const CoefficientMap expected{{0, 1},      {1, 1},      {2, 1},      {4, half()}, {5, half()},
                                  {6, half()}, {7, half()}, {8, half()}, {9, half()}};
    CHECK(b.coeff == expected);
    CHECK(b.special_cycle == -1);
  }

  TEST_CASE("dominance may not flip") {
    const CompressionStack cs = build_compression(k4_with_handles());
    DualState ds = state_with({{4, 3}, {5, 1}, {6, 5}});
    blended_coefficients(cs, triangle_012(cs), ds);
    ds.residual[4] = 0;
    CHECK_THROWS_AS(blended_coefficients(cs, triangle_012(cs), ds), DesignationFlip);
  }

  TEST_CASE("increment step on a single cycle") {
    DualState ds(std::vector<Rational>{5, 3, 7, 2});
    ds.inequalities.push_back(plain({0, 1, 2, 3}));
    const StepResult st = increment_step(ds, {0}, {});
    CHECK(st.epsilon == 2);
    CHECK(st.tight == NodeSet{3});
    CHECK_FALSE(st.equalized);
    CHECK(ds.residual[0] == 3);
    CHECK(ds.inequalities[0].y == 2);
  }

  TEST_CASE("shared node rises at double rate") {
    DualState ds(std::vector<Rational>{4, 4, 4});
    ds.inequalities.push_back(plain({0, 1}));
    ds.inequalities.push_back(plain({1, 2}));
    const StepResult st = increment_step(ds, {0, 1}, {});
    CHECK(st.epsilon == 2);
    CHECK(st.tight == NodeSet{1});
    CHECK(ds.residual[0] == 2);
  }

  TEST_CASE("handle equalization stops the step early") {
    DualState ds(std::vector<Rational>{4, 2, 10});
    ds.inequalities.push_back(plain({0, 2}));
    const StepResult st = increment_step(ds, {0}, {{NodeSet{0}, NodeSet{1}}});
    CHECK(st.epsilon == 2);
    CHECK(st.equalized);
    CHECK(st.tight.empty());
    CHECK(ds.residual[0] == ds.residual[1]);
  }

  TEST_CASE("zero rate") {
    DualState ds(std::vector<Rational>{1});
    ds.inequalities.push_back(Inequality{});
    CHECK_THROWS_AS(increment_step(ds, {0}, {}), ZeroRateDeadlock);
  }

  TEST_CASE("reverse delete keeps the first-added node of a square") {
    CHECK(reverse_delete(cycle_graph(4), {0, 1, 2, 3}, {}) == NodeSet{0});
    CHECK(reverse_delete(cycle_graph(4), {2, 0}, {}) == NodeSet{2});
    CHECK_THROWS_AS(reverse_delete(cycle_graph(4), {}, {}), InfeasibleInput);
  }

  TEST_CASE("paired nodes are deleted jointly") {
    const Graph g = cycle_graph(4);
    CHECK(reverse_delete(g, {0, 2}, {}) == NodeSet{0});
    CHECK(reverse_delete(g, {0, 2}, {{0, 2, 0}}) == NodeSet{0, 2});
    // Two squares sharing node 0; the pair {1, 4} can go once 0 is kept.
    const Graph h = from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}, {6, 0}});
    CHECK(reverse_delete(h, {0, 1, 4}, {{1, 4, 1}}) == NodeSet{0});
  }

  TEST_CASE("piece cases") {
    PieceShape path;
    path.u = 0;
    path.v = 9;
    path.internal = {1, 2, 3};
    path.cut_nodes = {1, 2, 3};
    CHECK(piece_cases(path, {}) == 1);
    CHECK(piece_cases(path, {0, 9}) == 1);
    CHECK(piece_cases(path, {2}) == 2);
    CHECK(piece_cases(path, {1, 2}) == 0);
    CHECK(piece_cases(path, {0, 2}) == 0);

    PieceShape handles;
    handles.u = 0;
    handles.v = 9;
    handles.internal = {1, 4, 5, 6, 7};
    handles.cut_nodes = {1, 7};
    handles.handle_interiors = {{NodeSet{4}, NodeSet{5, 6}}};
    CHECK(piece_cases(handles, {4, 5}) == 4);
    CHECK(piece_cases(handles, {4}) == 8);
    CHECK(piece_cases(handles, {1}) == 2);
    CHECK(piece_cases(handles, {5, 6}) == 0);
  }

  TEST_CASE("square with costs 5, 3, 7, 2") {
    const SolveReport rep = run_primal_dual(square_instance());
    CHECK(rep.solution == NodeSet{3});
    CHECK(rep.cost == 2);
    CHECK(rep.dual == 2);
    CHECK(rep.ratio == 1);
    CHECK(verify_certificate(square_instance(), rep, Rational(2)).ok);
  }

  TEST_CASE("graph without even cycles") {
    Instance inst;
    for (int i = 0; i < 3; ++i) inst.add_node(i, 1, Point{Rational(i), Rational(i * i)});
    inst.add_edge(0, 1);
    inst.add_edge(1, 2);
    inst.add_edge(2, 0);
    const SolveReport rep = run_primal_dual(inst);
    CHECK(rep.solution.empty());
    CHECK(rep.cost == 0);
    CHECK(rep.dual == 0);
    CHECK(rep.trace.empty());
  }

  TEST_CASE("pentagon rings and handle chains") {
    for (int k : {2, 4}) {
      const Instance inst = gen_pentagon_ring(k, Rational(1, 10));
      const SolveReport rep = run_primal_dual(inst);
      CHECK(rep.ratio_ok);
      CHECK_FALSE(rep.infinite_in_solution);
      CHECK(rep.piece_violations == 0);
      CHECK(verify_certificate(inst, rep).ok);
    }
    const Instance ring = gen_pentagon_ring(2, Rational(1, 10));
    const Rational opt = exact_ect(ring.graph, effective_costs(ring)).cost;
    const SolveReport rep = run_primal_dual(ring);
    CHECK(verify_certificate(ring, rep, opt).ok);
    for (int k : {1, 3}) {
      const Instance chain = gen_handle_chain(k);
      const SolveReport hc = run_primal_dual(chain);
      CHECK(hc.cost < handle_chain_adversarial_cost(k));
      CHECK(verify_certificate(chain, hc).ok);
    }
  }

  TEST_CASE("tampered certificates are rejected") {
    const Instance inst = gen_grid(4, 4, {1, 9}, 2);
    const SolveReport rep = run_primal_dual(inst);
    REQUIRE(verify_certificate(inst, rep).ok);

    SolveReport doubled = rep;
    doubled.inequalities[0].y *= 2;
    doubled.dual += rep.inequalities[0].y;
    CHECK_FALSE(verify_certificate(inst, doubled).ok);

    SolveReport dropped = rep;
    dropped.solution.pop_back();
    CHECK_FALSE(verify_certificate(inst, dropped).ok);

    SolveReport cost = rep;
    cost.cost += 1;
    CHECK_FALSE(verify_certificate(inst, cost).ok);

    SolveReport coeff = rep;
    coeff.inequalities[0].coeff.begin()->second = Rational(1, 3);
    CHECK_FALSE(verify_certificate(inst, coeff).ok);

    CHECK_FALSE(verify_certificate(inst, rep, rep.dual - 1).ok);
  }

  TEST_CASE("solutions are minimal and certificates hold on small corpora") {
    for (const InstanceSpec& spec : quick_corpus()) {
      const Instance inst = materialize(spec);
      const SolveReport rep = run_primal_dual(inst);
      CHECK(verify_certificate(inst, rep).ok);
      CHECK(is_minimal(inst.graph, rep));
      CHECK(rep.piece_violations == 0);
      CHECK(rep.refined_failures == 0);
    }
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      const Instance inst = gen_grid_subgraph(4, 4, 0.9, 0.3, {1, 10}, seed);
      const SolveReport rep = run_primal_dual(inst);
      const Rational opt = exact_ect(inst.graph, effective_costs(inst)).cost;
      CHECK(verify_certificate(inst, rep, opt).ok);
      CHECK(is_minimal(inst.graph, rep));
    }
  }

  TEST_CASE("solving twice gives identical reports") {
    const Instance inst = gen_grid_subgraph(6, 6, 0.9, 0.3, {1, 20}, 5);
    const SolveReport a = run_primal_dual(inst);
    const SolveReport b = run_primal_dual(inst);
    CHECK(a.solution == b.solution);
    CHECK(a.order == b.order);
    CHECK(a.dual == b.dual);
  }
}
