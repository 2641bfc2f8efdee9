#include <doctest.h>

#include "ect/errors.hpp"
#include "ect/generators.hpp"
#include "ect/io.hpp"
#include "ect/primal_dual.hpp"
#include "test_util.hpp"

using namespace ect;
using namespace ect::test;

TEST_SUITE("cli-io") {
  TEST_CASE("parse a square") {
    const Instance inst = parse_instance(
        "# square\n"
        "ect 1 4 4\n"
        "name square\n"
        "v 5 0 0\n"
        "v 3 1 0\n"
        "v 7/2 1 1\n"
        "v inf 0 1\n"
        "\n"
        "e 0 1\ne 1 2\ne 2 3\ne 3 0\n");
    CHECK(inst.name == "square");
    CHECK(inst.graph.num_nodes() == 4);
    CHECK(inst.graph.num_edges() == 4);
    CHECK(inst.cost[2] == Rational(7, 2));
    CHECK(inst.is_infinite(3));
    CHECK_FALSE(inst.is_infinite(0));
    CHECK(serialize_instance(parse_instance(serialize_instance(inst))) == serialize_instance(inst));
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_instance("ect 2 1 0\nv 1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("v 1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("ect 1 2 1\nv 1 0 0\nv 1 1 0\ne 0 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("ect 1 1 0\nv -1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("ect 1 1 0\nv x 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("ect 1 2 0\nv 1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("ect 1 1 0\nv 1 0 0\nq\n"), ParseError);
    CHECK_THROWS_AS(parse_instance(""), ParseError);
  }

  TEST_CASE("rotation override round trip") {
    const std::string text =
        "ect 1 4 6\n"
        "v 1 0 0\nv 1 4 0\nv 1 2 4\nv 1 2 1\n"
        "e 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n"
        "rot 3 2 4 5\n";
    const Instance inst = parse_instance(text);
    CHECK(inst.rotation[3] == std::vector<EdgeId>{2, 4, 5});
    CHECK(serialize_instance(parse_instance(serialize_instance(inst))) == serialize_instance(inst));
    CHECK_NOTHROW(instance_embedding(inst));
  }

  TEST_CASE("round trip over the corpus") {
    for (const InstanceSpec& spec : standard_corpus()) {
      const Instance inst = materialize(spec);
      const std::string text = serialize_instance(inst);
      const Instance back = parse_instance(text);
      CHECK(back.graph == inst.graph);
      CHECK(back.cost == inst.cost);
      CHECK(back.infinite == inst.infinite);
      CHECK(back.coords == inst.coords);
      CHECK(serialize_instance(back) == text);
    }
  }

  TEST_CASE("report round trip") {
    const Instance inst = gen_grid(4, 4, {1, 9}, 3);
    const SolveReport rep = run_primal_dual(inst);
    const std::string json = report_to_json(rep, verify_certificate(inst, rep));
    const SolveReport back = parse_report(json);
    CHECK(back.solution == rep.solution);
    CHECK(back.cost == rep.cost);
    CHECK(back.dual == rep.dual);
    CHECK(back.order == rep.order);
    REQUIRE(back.inequalities.size() == rep.inequalities.size());
    for (std::size_t i = 0; i < rep.inequalities.size(); ++i) {
      CHECK(back.inequalities[i].coeff == rep.inequalities[i].coeff);
      CHECK(back.inequalities[i].y == rep.inequalities[i].y);
    }
    CHECK(verify_certificate(inst, back).ok);
    CHECK(report_to_json(run_primal_dual(inst)) == report_to_json(rep));
  }

  TEST_CASE("malformed reports") {
    CHECK_THROWS_AS(parse_report("{"), ParseError);
    CHECK_THROWS_AS(parse_report("{\"format\": \"other\"}"), ParseError);
    CHECK_THROWS_AS(parse_report("{\"format\": \"ect-report 1\"}"), ParseError);
  }
}
