#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "ect/errors.hpp"
#include "ect/generators.hpp"
#include "ect/graph_core.hpp"
#include "ect/io.hpp"
#include "ect/oracle.hpp"
#include "ect/primal_dual.hpp"

namespace py = pybind11;

namespace {

py::dict solve(const std::string& text) {
  const ect::Instance inst = ect::parse_instance(text);
  const ect::SolveReport r = ect::run_primal_dual(inst);
  const ect::CertificateCheck chk = ect::verify_certificate(inst, r);
  py::dict d;
  d["solution"] = r.solution;
  d["cost"] = ect::to_string(r.cost);
  d["dual"] = ect::to_string(r.dual);
  d["ratio"] = ect::to_string(r.ratio);
  d["iterations"] = r.trace.size();
  d["min_certificate"] = ect::to_string(r.min_certificate);
  d["piece_violations"] = r.piece_violations;
  d["verified"] = chk.ok;
  d["report"] = ect::report_to_json(r, chk);
  return d;
}

py::dict exact(const std::string& text) {
  const ect::Instance inst = ect::parse_instance(text);
  const ect::ExactResult ex = ect::exact_ect(inst.graph, ect::effective_costs(inst));
  py::dict d;
  d["solution"] = ex.solution;
  d["cost"] = ect::to_string(ex.cost);
  return d;
}

py::tuple verify(const std::string& instance_text, const std::string& report_json, std::optional<std::string> opt) {
  const ect::Instance inst = ect::parse_instance(instance_text);
  const ect::SolveReport r = ect::parse_report(report_json);
  std::optional<ect::Rational> o;
  if (opt) o = ect::parse_rational(*opt);
  const ect::CertificateCheck chk = ect::verify_certificate(inst, r, o);
  return py::make_tuple(chk.ok, chk.reasons);
}

std::string generate(const std::string& generator, const std::map<std::string, std::string>& params, std::uint64_t seed) {
  return ect::serialize_instance(ect::materialize({generator, params, seed}));
}

ect::Graph edge_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  ect::Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

}  // namespace

PYBIND11_MODULE(_ect, m) {
  m.doc() = "Even cycle transversal on node-weighted planar graphs";

  py::register_exception<ect::Error>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<ect::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ect::InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<ect::OddK>(m, "OddK", PyExc_ValueError);
  py::register_exception<ect::TooLarge>(m, "TooLarge", PyExc_RuntimeError);

  m.def("solve", &solve, py::arg("instance_text"), "Runs the primal-dual algorithm on an instance in text form.");
  m.def("exact", &exact, py::arg("instance_text"), "Exact optimum by branch and bound (size guarded).");
  m.def("verify", &verify, py::arg("instance_text"), py::arg("report_json"), py::arg("opt") = std::nullopt,
        "Re-checks a report; returns (ok, reasons).");
  m.def("generate", &generate, py::arg("generator"), py::arg("params") = std::map<std::string, std::string>{},
        py::arg("seed") = 0, "Materializes a generator spec as instance text.");
  m.def(
      "has_even_cycle", [](int n, const std::vector<std::pair<int, int>>& edges) { return ect::has_even_cycle(edge_graph(n, edges)); },
      py::arg("n"), py::arg("edges"));
  m.def(
      "even_cycle_vertices",
      [](int n, const std::vector<std::pair<int, int>>& edges) { return ect::even_cycle_vertices(edge_graph(n, edges)); },
      py::arg("n"), py::arg("edges"));
  m.attr("APPROXIMATION_BOUND") = "47/7";
}
