#include "ect/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "ect/errors.hpp"

namespace ect {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long parse_index(const std::string& tok, int line_no, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
  }
}

Rational parse_number(const std::string& tok, int line_no, const char* what) {
  try {
    return parse_rational(tok);
  } catch (const std::invalid_argument&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
  }
}

std::string coord_text(const std::optional<Point>& p, bool x) {
  if (!p) return "-";
  const Rational& q = x ? p->x : p->y;
  return q.get_den() == 1 ? q.get_num().get_str() : to_string(q);
}

std::string rational_text(const Rational& q) { return to_string(q); }

Rational rational_from(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw ParseError(std::string("report field '") + key + "' missing");
  try {
    return parse_rational(j.at(key).get<std::string>());
  } catch (const std::invalid_argument&) {
    throw ParseError(std::string("report field '") + key + "' is not a rational");
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  Instance inst;
  long n = -1, m = -1, nodes = 0, edges = 0;
  bool rot_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = split(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (n < 0) {
      if (tok.size() != 4 || tok[0] != "ect" || tok[1] != "1") throw ParseError("line " + std::to_string(line_no) + ": expected header 'ect 1 <n> <m>'");
      n = parse_index(tok[2], line_no, "node count");
      m = parse_index(tok[3], line_no, "edge count");
      continue;
    }
    const std::string& kind = tok[0];
    if (kind == "name") {
      if (nodes > 0 || edges > 0) throw ParseError("line " + std::to_string(line_no) + ": name must precede nodes");
      inst.name = line.substr(line.find("name") + 5);
      continue;
    }
    if (kind == "v") {
      if (tok.size() != 4) throw ParseError("line " + std::to_string(line_no) + ": expected 'v <cost> <x> <y>'");
      if (edges > 0 || rot_seen || nodes >= n) throw ParseError("line " + std::to_string(line_no) + ": unexpected node line");
      const bool inf = tok[1] == "inf";
      Rational c = inf ? Rational(0) : parse_number(tok[1], line_no, "cost");
      if (c < 0) throw ParseError("line " + std::to_string(line_no) + ": negative cost");
      std::optional<Point> p;
      if (tok[2] != "-" || tok[3] != "-") {
        p = Point{parse_number(tok[2], line_no, "coordinate"), parse_number(tok[3], line_no, "coordinate")};
      }
      inst.add_node(static_cast<NodeId>(nodes++), c, p, inf);
      continue;
    }
    if (kind == "e") {
      if (tok.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": expected 'e <u> <v>'");
      if (nodes != n || rot_seen || edges >= m) throw ParseError("line " + std::to_string(line_no) + ": unexpected edge line");
      const long u = parse_index(tok[1], line_no, "endpoint"), v = parse_index(tok[2], line_no, "endpoint");
      if (u >= n || v >= n) throw ParseError("line " + std::to_string(line_no) + ": endpoint out of range");
      inst.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
      ++edges;
      continue;
    }
    if (kind == "rot") {
      if (nodes != n || edges != m || tok.size() < 2) throw ParseError("line " + std::to_string(line_no) + ": unexpected rotation line");
      rot_seen = true;
      const long v = parse_index(tok[1], line_no, "node");
      if (v >= n) throw ParseError("line " + std::to_string(line_no) + ": node out of range");
      std::vector<EdgeId> list;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        const long e = parse_index(tok[i], line_no, "edge");
        if (e >= m) throw ParseError("line " + std::to_string(line_no) + ": edge out of range");
        list.push_back(static_cast<EdgeId>(e));
      }
      inst.rotation[static_cast<std::size_t>(v)] = std::move(list);
      continue;
    }
    throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
  }
  if (n < 0) throw ParseError("missing header");
  if (nodes != n || edges != m) {
    throw ParseError("expected " + std::to_string(n) + " nodes and " + std::to_string(m) + " edges, got " +
                     std::to_string(nodes) + " and " + std::to_string(edges));
  }
  return inst;
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  const auto nodes = inst.graph.nodes();
  const auto edges = inst.graph.edges();
  out << "ect 1 " << nodes.size() << ' ' << edges.size() << '\n';
  if (!inst.name.empty()) out << "name " << inst.name << '\n';
  for (NodeId v : nodes) {
    const auto i = static_cast<std::size_t>(v);
    out << "v " << (inst.is_infinite(v) ? std::string("inf") : to_string(inst.cost[i])) << ' '
        << coord_text(inst.coords[i], true) << ' ' << coord_text(inst.coords[i], false) << '\n';
  }
  for (EdgeId e : edges) out << "e " << inst.graph.edge(e).u << ' ' << inst.graph.edge(e).v << '\n';
  for (NodeId v : nodes) {
    const auto& r = inst.rotation[static_cast<std::size_t>(v)];
    if (r.empty()) continue;
    out << "rot " << v;
    for (EdgeId e : r) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string report_to_json(const SolveReport& r, const std::optional<CertificateCheck>& verdict) {
  json j;
  j["format"] = "ect-report 1";
  j["instance"] = r.instance;
  j["solution"] = r.solution;
  j["cost"] = rational_text(r.cost);
  j["dual"] = rational_text(r.dual);
  j["ratio"] = rational_text(r.ratio);
  j["ratio_bound"] = rational_text(approximation_bound());
  j["ratio_ok"] = r.ratio_ok;
  j["infinite_in_solution"] = r.infinite_in_solution;
  j["order"] = r.order;
  json pairs = json::array();
  for (const NodePair& p : r.pairs) pairs.push_back({p.a, p.b, p.iteration});
  j["pairs"] = pairs;
  json ineqs = json::array();
  for (const Inequality& q : r.inequalities) {
    json c = json::array();
    for (const auto& [v, a] : q.coeff) c.push_back({v, rational_text(a)});
    json qj;
    qj["kind"] = q.kind == InequalityKind::kPlainCycle ? "cycle" : "blended";
    qj["iteration"] = q.iteration;
    qj["y"] = rational_text(q.y);
    qj["coeff"] = c;
    if (q.kind == InequalityKind::kBlended) {
      qj["g2_cycle"] = q.g2_cycle;
      qj["special_cycle"] = q.special_cycle;
    }
    ineqs.push_back(qj);
  }
  j["inequalities"] = ineqs;
  json trace = json::array();
  for (const IterationRecord& t : r.trace) {
    json tj;
    tj["index"] = t.index;
    tj["branch"] = t.branch;
    tj["residual_nodes"] = t.residual_nodes;
    if (t.branch == "tiling") {
      tj["g2_nodes"] = t.g2_nodes;
      tj["g2_edges"] = t.g2_edges;
      tj["pocket_nodes"] = t.pocket_nodes;
      tj["pseudo_pockets"] = t.pseudo_pockets;
      tj["tiles"] = t.tiles;
      tj["finite_faces"] = t.finite_faces;
      tj["even_faces"] = t.even_faces;
      tj["odd_faces"] = t.odd_faces;
      tj["covered_odd"] = t.covered_odd;
      tj["beta"] = rational_text(t.beta);
      tj["psi"] = rational_text(t.psi);
      tj["certificate"] = rational_text(t.certificate);
      if (t.refined_checked) tj["refined_bound_holds"] = t.refined_holds;
      tj["equalizations"] = t.equalizations;
      tj["pieces"] = t.pieces;
      tj["piece_cases"] = t.piece_case_counts;
      tj["piece_violations"] = t.piece_violations;
    }
    json eps = json::array();
    for (const Rational& e : t.epsilons) eps.push_back(rational_text(e));
    tj["epsilons"] = eps;
    tj["tight"] = t.tight;
    tj["pairs"] = t.pairs;
    trace.push_back(tj);
  }
  j["trace"] = trace;
  j["tilings"] = {{"count", r.tilings}, {"min_certificate", rational_text(r.min_certificate)}};
  j["refined_bound"] = {{"checked", r.refined_checked}, {"failures", r.refined_failures}};
  j["pseudo_pockets"] = r.pseudo_pockets;
  j["pieces"] = {{"checked", r.pieces_checked}, {"violations", r.piece_violations}, {"cases", r.piece_case_counts}};
  if (verdict) j["verification"] = {{"ok", verdict->ok}, {"reasons", verdict->reasons}};
  return j.dump(2) + "\n";
}

SolveReport parse_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "ect-report 1") throw ParseError("not an ect report");
  SolveReport r;
  try {
    r.instance = j.value("instance", "");
    r.solution = j.at("solution").get<std::vector<NodeId>>();
    r.order = j.value("order", std::vector<NodeId>{});
    for (const auto& p : j.value("pairs", json::array())) r.pairs.push_back({p.at(0), p.at(1), p.at(2)});
    r.cost = rational_from(j, "cost");
    r.dual = rational_from(j, "dual");
    r.ratio = rational_from(j, "ratio");
    r.ratio_ok = j.value("ratio_ok", false);
    for (const auto& qj : j.at("inequalities")) {
      Inequality q;
      const std::string kind = qj.at("kind").get<std::string>();
      if (kind != "cycle" && kind != "blended") throw ParseError("unknown inequality kind " + kind);
      q.kind = kind == "cycle" ? InequalityKind::kPlainCycle : InequalityKind::kBlended;
      q.iteration = qj.value("iteration", 0);
      q.y = rational_from(qj, "y");
      for (const auto& c : qj.at("coeff")) {
        try {
          q.coeff[c.at(0).get<NodeId>()] = parse_rational(c.at(1).get<std::string>());
        } catch (const std::invalid_argument&) {
          throw ParseError("bad coefficient in report");
        }
      }
      q.g2_cycle = qj.value("g2_cycle", std::vector<EdgeId>{});
      q.special_cycle = qj.value("special_cycle", -1);
      r.inequalities.push_back(std::move(q));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

}  // namespace ect
