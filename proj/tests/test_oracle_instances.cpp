#include <doctest.h>

#include <random>

#include "ect/errors.hpp"
#include "ect/generators.hpp"
#include "ect/graph_core.hpp"
#include "ect/io.hpp"
#include "ect/oracle.hpp"
#include "test_util.hpp"

using namespace ect;
using namespace ect::test;

namespace {

std::vector<Rational> unit_costs(const Graph& g) { return std::vector<Rational>(static_cast<std::size_t>(g.node_capacity()), Rational(1)); }

struct Census {
  int length5 = 0;
  int even_finite = 0;
  int odd_finite = 0;
  int triangles = 0;
  int dodecagons = 0;
};

Census census(const Instance& inst) {
  const Embedding e = instance_embedding(inst);
  const FaceSet fs = faces(e);
  Census c;
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    const Face& face = fs.faces[f];
    if (face.outer) continue;
    c.length5 += face.length == 5;
    c.triangles += face.length == 3;
    c.dodecagons += face.length == 12;
    (face_parity(e, fs, static_cast<int>(f)) == Parity::kOdd ? c.odd_finite : c.even_finite) += 1;
  }
  return c;
}

}  // namespace

TEST_SUITE("oracle-instances") {
  TEST_CASE("exact solver on small graphs") {
    CHECK(exact_ect(cycle_graph(4), {5, 3, 7, 2}).cost == 2);
    CHECK(exact_ect(cycle_graph(4), {5, 3, 7, 2}).solution == NodeSet{3});
    CHECK(exact_ect(cycle_graph(5), unit_costs(cycle_graph(5))).cost == 0);
    CHECK(exact_ect(complete_graph(4), unit_costs(complete_graph(4))).cost == 1);
    CHECK(exact_ect(complete_graph(5), unit_costs(complete_graph(5))).cost == 2);
  }

  TEST_CASE("cycle enumeration") {
    CHECK(enumerate_cycles(cycle_graph(6)).size() == 1);
    CHECK(enumerate_even_cycles(cycle_graph(6)).size() == 1);
    CHECK(enumerate_even_cycles(cycle_graph(5)).empty());
    CHECK(enumerate_cycles(complete_graph(4)).size() == 7);
    CHECK(enumerate_even_cycles(complete_graph(4)).size() == 3);
    CHECK_THROWS_AS(enumerate_cycles(path_graph(13)), TooLarge);
  }

  TEST_CASE("size guard") {
    const Instance big = gen_grid(5, 5, {1, 1}, 1);
    CHECK_THROWS_AS(exact_ect(big.graph, effective_costs(big)), TooLarge);
  }

  TEST_CASE("exact solver agrees with exhaustive search") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> cost(1, 9);
    int mismatches = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const Graph g = random_graph(3 + trial % 10, 0.3, rng);
      std::vector<Rational> c;
      for (NodeId v = 0; v < g.node_capacity(); ++v) c.emplace_back(cost(rng));
      const ExactResult a = exact_ect(g, c);
      const ExactResult b = exhaustive_ect(g, c);
      if (a.cost != b.cost || !is_feasible_ect(g, a.solution) || total_cost(c, a.solution) != a.cost) ++mismatches;
    }
    CHECK(mismatches == 0);
  }

  TEST_CASE("grid optimum") {
    const Instance g2 = gen_grid(2, 2, {1, 1}, 1);
    CHECK(exact_ect(g2.graph, effective_costs(g2)).cost == 1);
    const Instance g3 = gen_grid(3, 3, {1, 1}, 1);
    CHECK(exact_ect(g3.graph, effective_costs(g3)).cost == 2);
  }

  TEST_CASE("pentagon ring") {
    for (int k : {2, 4, 6}) {
      const Instance inst = gen_pentagon_ring(k, Rational(1, 4));
      const Census c = census(inst);
      CHECK(c.length5 == k);
      CHECK(c.odd_finite == k);
      CHECK(c.even_finite == 1);
    }
    const Instance ring = gen_pentagon_ring(2, Rational(1, 10));
    const ExactResult r = exact_ect(ring.graph, effective_costs(ring));
    CHECK(r.cost == Rational(21, 10));
    for (NodeId v : r.solution) CHECK_FALSE(ring.is_infinite(v));
    CHECK_THROWS_AS(gen_pentagon_ring(3, Rational(1, 10)), OddK);
    CHECK_THROWS_AS(gen_pentagon_ring(0, Rational(1, 10)), OddK);
    CHECK_THROWS_AS(gen_pentagon_ring(2, Rational(0)), InvalidParameter);
  }

  TEST_CASE("handle chain") {
    for (int k : {1, 3}) {
      const Instance inst = gen_handle_chain(k);
      const Census c = census(inst);
      CHECK(c.length5 == k + 1);
      const ExactResult r = exact_ect(inst.graph, effective_costs(inst));
      CHECK(r.cost < handle_chain_adversarial_cost(k));
    }
    CHECK(handle_chain_adversarial_cost(3) == 5);
    CHECK_THROWS_AS(gen_handle_chain(2), InvalidParameter);
  }

  TEST_CASE("tessellation census") {
    for (int r = 1; r <= 3; ++r) {
      const Census c = census(gen_tessellation(r));
      CHECK(c.dodecagons == r * r);
      CHECK(c.triangles == 2 * r * r + 4 * r);
      CHECK(c.even_finite == r * r);
      CHECK(c.odd_finite == 2 * r * r + 4 * r);
    }
    CHECK_THROWS_AS(gen_tessellation(0), InvalidParameter);
  }

  TEST_CASE("generators are deterministic and valid") {
    for (const InstanceSpec& spec : quick_corpus()) {
      const Instance a = materialize(spec);
      const Instance b = materialize(spec);
      CHECK(serialize_instance(a) == serialize_instance(b));
      const Embedding e = instance_embedding(a);
      CHECK(euler_holds(e, faces(e)));
    }
    CHECK(serialize_instance(gen_grid(4, 4, {1, 9}, 1)) != serialize_instance(gen_grid(4, 4, {1, 9}, 2)));
  }

  TEST_CASE("standard corpus") {
    const auto corpus = standard_corpus();
    CHECK(corpus.size() >= 200);
    InstanceSpec bad{"nope", {}, 1};
    CHECK_THROWS_AS(materialize(bad), InvalidParameter);
    InstanceSpec badw{"grid", {{"w", "x"}, {"h", "3"}}, 1};
    CHECK_THROWS_AS(materialize(badw), InvalidParameter);
  }
}
