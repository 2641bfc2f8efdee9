#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ect/errors.hpp"
#include "ect/generators.hpp"
#include "ect/io.hpp"
#include "ect/oracle.hpp"
#include "ect/primal_dual.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitSizeGuard = 4;
constexpr int kExitVerify = 5;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    ect::write_text_file(path, text);
  }
}

void print_trace(const ect::SolveReport& r) {
  for (const auto& t : r.trace) {
    std::cerr << "iter " << t.index << ' ' << t.branch << " residual=" << t.residual_nodes;
    if (t.branch == "tiling") {
      std::cerr << " g2=" << t.g2_nodes << '/' << t.g2_edges << " pocket=" << t.pocket_nodes << " tiles=" << t.tiles
                << " beta=" << ect::to_string(t.beta) << " psi=" << ect::to_string(t.psi)
                << " cert=" << ect::to_string(t.certificate) << " equalizations=" << t.equalizations;
    }
    std::cerr << " eps=";
    for (std::size_t i = 0; i < t.epsilons.size(); ++i) std::cerr << (i ? "," : "") << ect::to_string(t.epsilons[i]);
    std::cerr << " tight=" << t.tight.size() << " pairs=" << t.pairs.size() << '\n';
  }
}

std::string decimal(const ect::Rational& q) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << q.get_d();
  return out.str();
}

int cmd_solve(const std::string& in, const std::string& out, bool trace, bool seed_check, int max_iters) {
  const ect::Instance inst = ect::read_instance_file(in);
  ect::SolveOptions opts;
  opts.max_iterations = max_iters;
  const ect::SolveReport r = ect::run_primal_dual(inst, opts);
  const ect::CertificateCheck chk = ect::verify_certificate(inst, r);
  const std::string text = ect::report_to_json(r, chk);
  if (trace) print_trace(r);
  if (seed_check) {
    const ect::SolveReport again = ect::run_primal_dual(inst, opts);
    if (ect::report_to_json(again, ect::verify_certificate(inst, again)) != text) {
      std::cerr << "error: repeated run produced a different report\n";
      return kExitSolver;
    }
  }
  emit(out, text);
  if (!chk.ok) {
    for (const auto& why : chk.reasons) std::cerr << "error: " << why << '\n';
    return kExitSolver;
  }
  if (r.piece_violations > 0) {
    std::cerr << "error: " << r.piece_violations << " pieces violate the piece-structure cases\n";
    return kExitSolver;
  }
  return 0;
}

int cmd_exact(const std::string& in, const std::string& out) {
  const ect::Instance inst = ect::read_instance_file(in);
  const ect::ExactResult ex = ect::exact_ect(inst.graph, ect::effective_costs(inst));
  std::ostringstream s;
  s << "{\n  \"instance\": \"" << inst.name << "\",\n  \"cost\": \"" << ect::to_string(ex.cost) << "\",\n  \"solution\": [";
  for (std::size_t i = 0; i < ex.solution.size(); ++i) s << (i ? ", " : "") << ex.solution[i];
  s << "]\n}\n";
  emit(out, s.str());
  return 0;
}

int cmd_verify(const std::string& in, const std::string& report_path, bool oracle) {
  const ect::Instance inst = ect::read_instance_file(in);
  const ect::SolveReport r = ect::parse_report(ect::read_text_file(report_path));
  std::optional<ect::Rational> opt;
  if (oracle) opt = ect::exact_ect(inst.graph, ect::effective_costs(inst)).cost;
  const ect::CertificateCheck chk = ect::verify_certificate(inst, r, opt);
  if (chk.ok) {
    std::cout << "ok cost=" << ect::to_string(r.cost) << " dual=" << ect::to_string(r.dual) << '\n';
    return 0;
  }
  for (const auto& why : chk.reasons) std::cout << "fail: " << why << '\n';
  return kExitVerify;
}

int cmd_gen(const std::string& generator, const std::vector<std::string>& params, std::uint64_t seed,
            const std::string& out) {
  ect::InstanceSpec spec{generator, {}, seed};
  for (const std::string& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw ect::InvalidParameter("expected key=value, got " + p);
    spec.params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  emit(out, ect::serialize_instance(ect::materialize(spec)));
  return 0;
}

int cmd_bench(bool quick, bool oracle, const std::string& out) {
  const auto corpus = quick ? ect::quick_corpus() : ect::standard_corpus();
  std::ostringstream table;
  table << std::left << std::setw(44) << "instance" << std::right << std::setw(6) << "n" << std::setw(6) << "m"
        << std::setw(14) << "cost" << std::setw(8) << "bound" << std::setw(16) << "value" << std::setw(10) << "ratio"
        << std::setw(10) << "ms" << '\n';
  ect::Rational worst = 0;
  int failures = 0;
  for (const auto& spec : corpus) {
    const ect::Instance inst = ect::materialize(spec);
    const auto t0 = std::chrono::steady_clock::now();
    const ect::SolveReport r = ect::run_primal_dual(inst);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    ect::Rational bound = r.dual;
    std::string kind = "dual";
    if (oracle && inst.graph.num_nodes() <= 18) {
      bound = ect::exact_ect(inst.graph, ect::effective_costs(inst)).cost;
      kind = "opt";
    }
    const ect::Rational ratio = bound > 0 ? ect::Rational(r.cost / bound) : ect::Rational(r.cost > 0 ? 1000 : 0);
    if (ratio > worst) worst = ratio;
    if (r.cost > ect::approximation_bound() * bound) ++failures;
    table << std::left << std::setw(44) << inst.name << std::right << std::setw(6) << inst.graph.num_nodes()
          << std::setw(6) << inst.graph.num_edges() << std::setw(14) << decimal(r.cost) << std::setw(8) << kind
          << std::setw(16) << decimal(bound) << std::setw(10) << decimal(ratio) << std::setw(10) << std::fixed
          << std::setprecision(1) << ms << '\n';
  }
  table << "rows " << corpus.size() << " max_ratio " << ect::to_string(worst) << " (" << decimal(worst)
        << ") bound 47/7 violations " << failures << '\n';
  emit(out, table.str());
  return failures == 0 ? 0 : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Even cycle transversal on node-weighted plane graphs"};
  app.require_subcommand(1);

  std::string in, out, report;
  bool trace = false, seed_check = false, oracle = false, quick = false;
  int max_iters = 0;
  std::string generator;
  std::vector<std::string> params;
  std::uint64_t seed = 0;

  auto* solve = app.add_subcommand("solve", "Run the primal-dual algorithm and write a JSON report");
  solve->add_option("instance", in, "Instance file")->required();
  solve->add_option("-o,--output", out, "Report path (default stdout)");
  solve->add_flag("--trace", trace, "Print the iteration log to stderr");
  solve->add_flag("--seed-check", seed_check, "Solve twice and require identical reports");
  solve->add_option("--max-iters", max_iters, "Iteration limit (0: automatic)");

  auto* exact = app.add_subcommand("exact", "Solve exactly by branch and bound");
  exact->add_option("instance", in, "Instance file")->required();
  exact->add_option("-o,--output", out, "Output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Re-check a report against its instance");
  verify->add_option("instance", in, "Instance file")->required();
  verify->add_option("report", report, "Report file")->required();
  verify->add_flag("--oracle", oracle, "Also require dual <= exact optimum");

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("generator", generator, "grid, grid_subgraph, pentagon_ring, handle_chain or tessellation")->required();
  gen->add_option("-p,--param", params, "Generator parameter key=value");
  gen->add_option("-s,--seed", seed, "RNG seed");
  gen->add_option("-o,--output", out, "Instance path (default stdout)");

  auto* bench = app.add_subcommand("bench", "Solve the benchmark corpus and print a table");
  bench->add_flag("--quick", quick, "Use the small corpus");
  bench->add_flag("--oracle", oracle, "Compare with the exact optimum on instances with at most 18 nodes");
  bench->add_option("-o,--output", out, "Table path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(in, out, trace, seed_check, max_iters);
    if (*exact) return cmd_exact(in, out);
    if (*verify) return cmd_verify(in, report, oracle);
    if (*gen) return cmd_gen(generator, params, seed, out);
    if (*bench) return cmd_bench(quick, oracle, out);
  } catch (const ect::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ect::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ect::OddK& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ect::TooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
