#include "ect/primal_dual.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "ect/errors.hpp"
#include "ect/graph_core.hpp"

namespace ect {

namespace {

NodeSet sorted(std::vector<NodeId> v) { return make_node_set(std::move(v)); }

NodeSet intersect(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string describe(const NodeSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

}  // namespace

HandleKey handle_key(const ElementaryCycle& c) {
  HandleKey k;
  k.branch_u = std::min(c.branch_u, c.branch_v);
  k.branch_v = std::max(c.branch_u, c.branch_v);
  k.interiors = {sorted(c.handles[0].interior()), sorted(c.handles[1].interior())};
  if (k.interiors[1] < k.interiors[0]) std::swap(k.interiors[0], k.interiors[1]);
  return k;
}

std::optional<Rational> min_residual(const DualState& ds, const NodeSet& nodes) {
  std::optional<Rational> m;
  for (NodeId v : nodes) {
    const Rational& r = ds.residual[static_cast<std::size_t>(v)];
    if (!m || r < *m) m = r;
  }
  return m;
}

BlendedInequality blended_coefficients(const CompressionStack& cs, const std::vector<EdgeId>& g2_cycle,
                                       DualState& ds) {
  BlendedInequality out;
  auto set_one = [&](NodeId v) { out.coeff[v] = 1; };
  long parity = 0;
  std::set<int> cycles;
  for (EdgeId e : g2_cycle) {
    const Piece& q = cs.piece(e);
    set_one(q.u);
    set_one(q.v);
    parity += static_cast<long>(q.curve.edges.size());
    for (const PieceSegment& seg : q.segments) {
      if (!seg.is_cycle) {
        for (NodeId v : seg.path.nodes) set_one(v);
        continue;
      }
      const ElementaryCycle& ec = cs.elementary_cycles[static_cast<std::size_t>(seg.cycle)];
      set_one(ec.branch_u);
      set_one(ec.branch_v);
      cycles.insert(seg.cycle);
    }
  }
  out.elementary_cycles.assign(cycles.begin(), cycles.end());
  bool all_strict = true;
  std::vector<int> equal_cycles;
  std::vector<std::array<NodeSet, 2>> interiors;
  for (int c : out.elementary_cycles) {
    const ElementaryCycle& ec = cs.elementary_cycles[static_cast<std::size_t>(c)];
    const std::array<NodeSet, 2> in{sorted(ec.handles[0].interior()), sorted(ec.handles[1].interior())};
    interiors.push_back(in);
    const auto m0 = min_residual(ds, in[0]);
    const auto m1 = min_residual(ds, in[1]);
    const HandleKey key = handle_key(ec);
    if (m0 && m1 && *m0 == *m1) {
      all_strict = false;
      equal_cycles.push_back(static_cast<int>(interiors.size()) - 1);
      for (int h = 0; h < 2; ++h) {
        for (NodeId v : in[static_cast<std::size_t>(h)]) out.coeff[v] = half();
      }
      continue;
    }
    const int dom = (!m0 || (m1 && *m0 > *m1)) ? 0 : 1;
    const NodeSet& dominant = in[static_cast<std::size_t>(dom)];
    auto it = ds.designation.find(key);
    if (it == ds.designation.end()) {
      ds.designation.emplace(key, dominant);
    } else if (it->second != dominant) {
      throw DesignationFlip("handle " + describe(it->second) + " between " + std::to_string(key.branch_u) + " and " +
                            std::to_string(key.branch_v) + " lost dominance to " + describe(dominant));
    }
    for (NodeId v : dominant) out.coeff[v] = 1;
    if (!dominant.empty()) out.watches.push_back({dominant, in[static_cast<std::size_t>(1 - dom)]});
    if (dom == 1) parity += 1;
  }
  // A single equal cycle has one odd side, so it is corrected like an odd strict choice.
  int special = -1;
  if (all_strict && !out.elementary_cycles.empty() && parity % 2 != 0) special = 0;
  if (equal_cycles.size() == 1) special = equal_cycles.front();
  if (special >= 0) {
    out.special_cycle = out.elementary_cycles[static_cast<std::size_t>(special)];
    for (NodeId v : interiors[static_cast<std::size_t>(special)][0]) out.coeff[v] = 1;
    for (NodeId v : interiors[static_cast<std::size_t>(special)][1]) out.coeff[v] = 1;
  }
  return out;
}

StepResult increment_step(DualState& ds, const std::vector<int>& active, const std::vector<HandleWatch>& watches) {
  std::map<NodeId, Rational> rate;
  for (int i : active) {
    for (const auto& [v, a] : ds.inequalities[static_cast<std::size_t>(i)].coeff) rate[v] += a;
  }
  std::optional<Rational> eps_tight;
  for (const auto& [v, r] : rate) {
    if (r <= 0) continue;
    const Rational t = ds.residual[static_cast<std::size_t>(v)] / r;
    if (!eps_tight || t < *eps_tight) eps_tight = t;
  }
  if (!eps_tight) throw ZeroRateDeadlock("no node has a positive rate");
  auto rate_of = [&](NodeId v) {
    auto it = rate.find(v);
    return it == rate.end() ? Rational(0) : it->second;
  };
  auto value_at = [&](const NodeSet& s, const Rational& t) {
    std::optional<Rational> m;
    for (NodeId v : s) {
      const Rational x = ds.residual[static_cast<std::size_t>(v)] - rate_of(v) * t;
      if (!m || x < *m) m = x;
    }
    return m;
  };
  std::optional<Rational> eps_handle;
  for (const HandleWatch& w : watches) {
    if (w.dominant.empty() || w.other.empty()) continue;
    std::vector<Rational> times;
    for (NodeId u : w.dominant) {
      for (NodeId x : w.other) {
        const Rational du = rate_of(u), dx = rate_of(x);
        if (du <= dx) continue;
        const Rational t = (ds.residual[static_cast<std::size_t>(u)] - ds.residual[static_cast<std::size_t>(x)]) / (du - dx);
        if (t >= 0 && t <= *eps_tight) times.push_back(t);
      }
    }
    std::sort(times.begin(), times.end());
    for (const Rational& t : times) {
      if (eps_handle && t >= *eps_handle) break;
      if (*value_at(w.dominant, t) <= *value_at(w.other, t)) {
        eps_handle = t;
        break;
      }
    }
  }
  StepResult res;
  res.epsilon = eps_handle && *eps_handle < *eps_tight ? *eps_handle : *eps_tight;
  res.equalized = eps_handle && *eps_handle == res.epsilon;
  for (int i : active) ds.inequalities[static_cast<std::size_t>(i)].y += res.epsilon;
  for (const auto& [v, r] : rate) {
    Rational& left = ds.residual[static_cast<std::size_t>(v)];
    left -= r * res.epsilon;
    if (r > 0 && left == 0) res.tight.push_back(v);
  }
  return res;
}

NodeSet reverse_delete(const Graph& g, const std::vector<NodeId>& order, const std::vector<NodePair>& pairs) {
  std::vector<char> in_s(static_cast<std::size_t>(g.node_capacity()), 0);
  for (NodeId v : order) in_s[static_cast<std::size_t>(v)] = 1;
  auto current = [&] {
    NodeSet s;
    for (NodeId v : g.nodes()) {
      if (in_s[static_cast<std::size_t>(v)]) s.push_back(v);
    }
    return s;
  };
  if (!is_feasible_ect(g, current())) throw InfeasibleInput("node set to prune is not a transversal");
  std::map<NodeId, NodeId> partner;
  for (const NodePair& p : pairs) {
    partner[p.a] = p.b;
    partner[p.b] = p.a;
  }
  std::vector<char> decided(in_s.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId w = *it;
    if (decided[static_cast<std::size_t>(w)]) continue;
    decided[static_cast<std::size_t>(w)] = 1;
    auto p = partner.find(w);
    if (p != partner.end() && in_s[static_cast<std::size_t>(p->second)]) {
      const NodeId w2 = p->second;
      decided[static_cast<std::size_t>(w2)] = 1;
      in_s[static_cast<std::size_t>(w)] = in_s[static_cast<std::size_t>(w2)] = 0;
      if (!is_feasible_ect(g, current())) in_s[static_cast<std::size_t>(w)] = in_s[static_cast<std::size_t>(w2)] = 1;
      continue;
    }
    in_s[static_cast<std::size_t>(w)] = 0;
    if (!is_feasible_ect(g, current())) in_s[static_cast<std::size_t>(w)] = 1;
  }
  return current();
}

int piece_cases(const PieceShape& q, const NodeSet& solution) {
  const NodeSet hit_internal = intersect(q.internal, solution);
  const bool u_hit = contains(solution, q.u), v_hit = contains(solution, q.v);
  const std::size_t ends_hit = (u_hit ? 1 : 0) + (v_hit && q.v != q.u ? 1 : 0);
  const std::size_t total = hit_internal.size() + ends_hit;
  int mask = 0;
  if (hit_internal.empty()) mask |= 1;
  if (total == 1 && hit_internal.size() == 1 && contains(q.cut_nodes, hit_internal[0])) mask |= 2;
  if (total == 2 && hit_internal.size() == 2) {
    for (const auto& h : q.handle_interiors) {
      const bool a0 = contains(h[0], hit_internal[0]) && contains(h[1], hit_internal[1]);
      const bool a1 = contains(h[1], hit_internal[0]) && contains(h[0], hit_internal[1]);
      if (a0 || a1) mask |= 4;
    }
  }
  if (!q.handle_interiors.empty() && ends_hit == 0 && hit_internal.size() == q.handle_interiors.size()) {
    bool ok = true;
    for (const auto& h : q.handle_interiors) {
      const std::size_t n = intersect(h[0], hit_internal).size() + intersect(h[1], hit_internal).size();
      ok = ok && n == 1;
    }
    if (ok) mask |= 8;
  }
  return mask;
}

namespace {

struct Solver {
  const Instance& inst;
  const SolveOptions& opts;
  const Graph& g;
  std::vector<Rational> cost;
  Embedding emb;
  DualState ds;
  std::vector<NodeId> order;
  std::vector<char> in_s;
  std::vector<NodePair> pairs;
  std::vector<PieceShape> shapes;
  std::set<HandleKey> handle_pairs_seen;
  SolveReport report;

  Solver(const Instance& i, const SolveOptions& o)
      : inst(i), opts(o), g(i.graph), cost(effective_costs(i)), emb(instance_embedding(i)), ds(cost) {
    in_s.assign(static_cast<std::size_t>(g.node_capacity()), 0);
  }

  NodeSet current_s() const {
    NodeSet s;
    for (NodeId v : order) s.push_back(v);
    return make_node_set(std::move(s));
  }

  void add_batch(const NodeSet& x, std::vector<std::pair<NodeId, NodeId>> batch_pairs, int iteration,
                 IterationRecord& rec) {
    std::set<NodeId> paired;
    for (auto [a, b] : batch_pairs) {
      paired.insert(a);
      paired.insert(b);
      pairs.push_back({a, b, iteration});
    }
    for (NodeId v : paired) order.push_back(v);
    for (NodeId v : x) {
      if (!paired.count(v)) order.push_back(v);
    }
    for (NodeId v : x) in_s[static_cast<std::size_t>(v)] = 1;
    rec.tight = x;
    rec.pairs = std::move(batch_pairs);
  }

  void cheap_iteration(const Cycle& c, IterationRecord& rec) {
    rec.branch = "cheap";
    Inequality q;
    q.kind = InequalityKind::kPlainCycle;
    q.iteration = rec.index;
    for (NodeId v : c.nodes) q.coeff[v] = 1;
    ds.inequalities.push_back(std::move(q));
    const StepResult st = increment_step(ds, {static_cast<int>(ds.inequalities.size()) - 1}, {});
    rec.epsilons.push_back(st.epsilon);
    add_batch(st.tight, {}, rec.index, rec);
  }

  void tiling_iteration(const Graph& residual, IterationRecord& rec) {
    rec.branch = "tiling";
    const CompressionStack cs = build_compression(residual, &emb);
    rec.g2_nodes = cs.g2.num_nodes();
    rec.g2_edges = cs.g2.num_edges();
    PocketSearchStats pst;
    const Pocket pocket = find_minimal_pocket(*cs.g2_embedding, opts.pocket, &pst);
    rec.pocket_nodes = pocket.nodes.size();
    rec.pseudo_pockets = pst.pseudo_pockets;
    report.pseudo_pockets += pst.pseudo_pockets;
    const Tiling tiling = quasi_perfect_tiling(pocket);
    rec.tiles = static_cast<int>(tiling.tiles.size());
    rec.finite_faces = tiling.finite_faces;
    rec.even_faces = tiling.even_finite_faces;
    rec.odd_faces = tiling.odd_finite_faces;
    rec.covered_odd = tiling.covered_odd_faces;
    rec.beta = tiling.beta;
    rec.psi = tiling.psi;
    rec.certificate = tiling.certificate();
    if (report.tilings == 0 || rec.certificate < report.min_certificate) report.min_certificate = rec.certificate;
    ++report.tilings;
    if (opts.check_refined_bound) {
      const PseudoTilingStats pts = pseudo_tiling_stats(pocket);
      if (pts.every_maximum_covers_infinite) {
        rec.refined_checked = true;
        rec.refined_holds = 3 * (pts.covered_odd + 2 * pts.even_faces) >= 2 * pts.faces + 4;
        ++report.refined_checked;
        if (!rec.refined_holds) ++report.refined_failures;
      }
    }
    for (const ElementaryCycle& ec : cs.elementary_cycles) handle_pairs_seen.insert(handle_key(ec));

    // Pieces on raised tiles.
    std::set<EdgeId> raised;
    for (const Tile& t : tiling.tiles) raised.insert(t.cycle.begin(), t.cycle.end());
    std::set<int> raised_cycles;
    for (EdgeId e : raised) {
      const Piece& q = cs.piece(e);
      PieceShape shape;
      shape.iteration = rec.index;
      shape.g2_edge = e;
      shape.u = q.u;
      shape.v = q.v;
      shape.internal = q.internal_nodes(cs.elementary_cycles);
      shape.cut_nodes = q.cut_nodes();
      for (const PieceSegment& seg : q.segments) {
        if (!seg.is_cycle) continue;
        raised_cycles.insert(seg.cycle);
        const ElementaryCycle& ec = cs.elementary_cycles[static_cast<std::size_t>(seg.cycle)];
        shape.handle_interiors.push_back({sorted(ec.handles[0].interior()), sorted(ec.handles[1].interior())});
      }
      shapes.push_back(std::move(shape));
    }
    rec.pieces = static_cast<int>(raised.size());

    std::vector<int> current(tiling.tiles.size(), -1);
    const int cap = 2 * static_cast<int>(raised_cycles.size()) + 2;
    StepResult st;
    for (int sub = 0;; ++sub) {
      if (sub > cap) throw NonTermination("iteration " + std::to_string(rec.index) + " exceeded " + std::to_string(cap) + " equalization steps");
      std::vector<int> active;
      std::vector<HandleWatch> watches;
      for (std::size_t i = 0; i < tiling.tiles.size(); ++i) {
        BlendedInequality b = blended_coefficients(cs, tiling.tiles[i].cycle, ds);
        watches.insert(watches.end(), b.watches.begin(), b.watches.end());
        if (current[i] >= 0 && ds.inequalities[static_cast<std::size_t>(current[i])].coeff == b.coeff) {
          active.push_back(current[i]);
          continue;
        }
        Inequality q;
        q.kind = InequalityKind::kBlended;
        q.iteration = rec.index;
        q.coeff = std::move(b.coeff);
        q.g2_cycle = tiling.tiles[i].cycle;
        q.special_cycle = b.special_cycle;
        ds.inequalities.push_back(std::move(q));
        current[i] = static_cast<int>(ds.inequalities.size()) - 1;
        active.push_back(current[i]);
      }
      st = increment_step(ds, active, watches);
      rec.epsilons.push_back(st.epsilon);
      if (!st.tight.empty()) break;
      if (!st.equalized) throw ZeroRateDeadlock("step raised nothing tight and changed no inequality");
      ++rec.equalizations;
    }
    std::vector<std::pair<NodeId, NodeId>> batch_pairs;
    for (int c : raised_cycles) {
      const ElementaryCycle& ec = cs.elementary_cycles[static_cast<std::size_t>(c)];
      const NodeSet a = intersect(sorted(ec.handles[0].interior()), st.tight);
      const NodeSet b = intersect(sorted(ec.handles[1].interior()), st.tight);
      if (!a.empty() && !b.empty()) batch_pairs.emplace_back(a.front(), b.front());
    }
    add_batch(st.tight, std::move(batch_pairs), rec.index, rec);
  }

  SolveReport run() {
    report.instance = inst.name;
    const long n = static_cast<long>(g.num_nodes());
    for (int it = 0;; ++it) {
      const long limit = opts.max_iterations > 0 ? opts.max_iterations
                                                 : n * (1 + static_cast<long>(handle_pairs_seen.size()));
      if (it > limit) throw NonTermination("more than " + std::to_string(limit) + " iterations");
      const Graph residual = residual_graph(g, current_s());
      if (residual.empty()) break;
      IterationRecord rec;
      rec.index = it;
      rec.residual_nodes = residual.num_nodes();
      if (auto c = find_low_attachment_even_cycle(residual)) {
        cheap_iteration(*c, rec);
      } else {
        tiling_iteration(residual, rec);
      }
      report.trace.push_back(std::move(rec));
    }
    report.order = order;
    report.pairs = pairs;
    report.solution = reverse_delete(g, order, pairs);
    report.inequalities = ds.inequalities;
    report.cost = total_cost(cost, report.solution);
    report.dual = 0;
    for (const Inequality& q : ds.inequalities) report.dual += q.y;
    report.ratio = report.dual > 0 ? Rational(report.cost / report.dual) : Rational(0);
    report.ratio_ok = report.cost <= approximation_bound() * report.dual;
    for (NodeId v : report.solution) report.infinite_in_solution = report.infinite_in_solution || inst.is_infinite(v);
    for (const PieceShape& q : shapes) {
      const int mask = piece_cases(q, report.solution);
      IterationRecord& rec = report.trace[static_cast<std::size_t>(q.iteration)];
      ++report.pieces_checked;
      if (std::popcount(static_cast<unsigned>(mask)) != 1) {
        ++report.piece_violations;
        ++rec.piece_violations;
        continue;
      }
      const int c = std::countr_zero(static_cast<unsigned>(mask));
      ++report.piece_case_counts[static_cast<std::size_t>(c)];
      ++rec.piece_case_counts[static_cast<std::size_t>(c)];
    }
    if (!report.ratio_ok) {
      throw RatioViolation("cost " + to_string(report.cost) + " exceeds 47/7 times dual " + to_string(report.dual));
    }
    return report;
  }
};

}  // namespace

SolveReport run_primal_dual(const Instance& inst, const SolveOptions& opts) {
  Solver s(inst, opts);
  return s.run();
}

CertificateCheck verify_certificate(const Instance& inst, const SolveReport& report, const std::optional<Rational>& opt) {
  CertificateCheck chk;
  auto fail = [&](std::string why) {
    chk.ok = false;
    chk.reasons.push_back(std::move(why));
  };
  const Graph& g = inst.graph;
  const std::vector<Rational> cost = effective_costs(inst);
  std::vector<Rational> residual = cost;
  Rational dual = 0;
  for (std::size_t i = 0; i < report.inequalities.size(); ++i) {
    const Inequality& q = report.inequalities[i];
    if (q.y < 0) fail("inequality " + std::to_string(i) + " has negative value");
    dual += q.y;
    NodeSet pos;
    std::vector<NodeId> halves;
    bool coeff_ok = true;
    for (const auto& [v, a] : q.coeff) {
      if (!g.has_node(v)) {
        coeff_ok = false;
        continue;
      }
      if (a != 1 && a != half()) coeff_ok = false;
      if (a == half()) halves.push_back(v);
      pos.push_back(v);
      residual[static_cast<std::size_t>(v)] -= a * q.y;
    }
    if (!coeff_ok) {
      fail("inequality " + std::to_string(i) + " has a coefficient outside {1/2, 1} or an unknown node");
      continue;
    }
    const Graph h = g.induced(pos);
    bool valid = has_even_cycle(h);
    for (NodeId v : halves) {
      if (!valid) break;
      valid = has_even_cycle(h.without(std::vector<NodeId>{v}));
    }
    if (!valid) fail("inequality " + std::to_string(i) + " is not valid for every transversal");
  }
  for (NodeId v : g.nodes()) {
    if (residual[static_cast<std::size_t>(v)] < 0) fail("dual infeasible at node " + std::to_string(v));
  }
  if (dual != report.dual) fail("dual objective " + to_string(report.dual) + " differs from recomputed " + to_string(dual));
  for (NodeId v : report.solution) {
    if (!g.has_node(v)) fail("solution contains unknown node " + std::to_string(v));
  }
  if (!is_feasible_ect(g, report.solution)) fail("solution leaves an even cycle");
  const Rational c = total_cost(cost, report.solution);
  if (c != report.cost) fail("cost " + to_string(report.cost) + " differs from recomputed " + to_string(c));
  if (c > approximation_bound() * dual) fail("cost exceeds 47/7 times the dual objective");
  if (opt) {
    if (dual > *opt) fail("dual objective " + to_string(dual) + " exceeds optimum " + to_string(*opt));
    if (c < *opt) fail("cost below the optimum");
  }
  return chk;
}

}  // namespace ect
