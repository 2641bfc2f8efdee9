#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ect/compression.hpp"
#include "ect/instance.hpp"
#include "ect/pocket_tiling.hpp"
#include "ect/rational.hpp"

namespace ect {

using CoefficientMap = std::map<NodeId, Rational>;  // positive coefficients only

enum class InequalityKind { kPlainCycle, kBlended };

/// A raised dual variable: sum of coeff[v] x_v >= 1 with value y.
struct Inequality {
  InequalityKind kind = InequalityKind::kPlainCycle;
  int iteration = 0;
  CoefficientMap coeff;
  Rational y;
  std::vector<EdgeId> g2_cycle;  // blended only: G2 edge ids of the tile cycle
  int special_cycle = -1;        // blended only: index into the iteration's elementary cycles
};

/// Handle of an elementary cycle identified by its nodes, stable across iterations.
struct HandleKey {
  NodeId branch_u = -1;
  NodeId branch_v = -1;
  std::array<NodeSet, 2> interiors;  // sorted, interiors[0] < interiors[1]
  auto operator<=>(const HandleKey&) const = default;
};
HandleKey handle_key(const ElementaryCycle& c);

/// Strict handle pair whose dominant side must not fall below the other one.
struct HandleWatch {
  NodeSet dominant;
  NodeSet other;
};

struct DualState {
  std::vector<Rational> residual;         // by node id
  std::vector<Inequality> inequalities;
  std::map<HandleKey, NodeSet> designation;  // key -> dominant interior

  explicit DualState(std::vector<Rational> costs) : residual(std::move(costs)) {}
};

/// Minimum residual over a node set; nullopt for the empty set (treated as infinite).
std::optional<Rational> min_residual(const DualState& ds, const NodeSet& nodes);

struct BlendedInequality {
  CoefficientMap coeff;
  int special_cycle = -1;
  std::vector<HandleWatch> watches;
  std::vector<int> elementary_cycles;  // indices of the cycles on C
};

/// Coefficients of the blended inequality of a G2 cycle. Records new dominant
/// designations in `ds`. Throws DesignationFlip.
BlendedInequality blended_coefficients(const CompressionStack& cs, const std::vector<EdgeId>& g2_cycle,
                                       DualState& ds);

struct StepResult {
  Rational epsilon;
  NodeSet tight;
  bool equalized = false;
};

/// Raises every active inequality by the largest common amount that keeps the
/// residuals nonnegative and the watched handles ordered. Throws ZeroRateDeadlock.
StepResult increment_step(DualState& ds, const std::vector<int>& active, const std::vector<HandleWatch>& watches);

struct NodePair {
  NodeId a = -1;
  NodeId b = -1;
  int iteration = 0;
};

/// Pair-aware reverse delete over the addition order. Throws InfeasibleInput.
NodeSet reverse_delete(const Graph& g, const std::vector<NodeId>& order, const std::vector<NodePair>& pairs);

/// Shape of a piece, kept for the piece-structure check.
struct PieceShape {
  int iteration = 0;
  EdgeId g2_edge = -1;
  NodeId u = -1;
  NodeId v = -1;
  NodeSet internal;
  NodeSet cut_nodes;
  std::vector<std::array<NodeSet, 2>> handle_interiors;
};

/// Bit i-1 set iff case i of the piece-structure theorem holds for S'.
int piece_cases(const PieceShape& q, const NodeSet& solution);

struct IterationRecord {
  int index = 0;
  std::string branch;  // "cheap" or "tiling"
  std::size_t residual_nodes = 0;
  std::size_t g2_nodes = 0;
  std::size_t g2_edges = 0;
  std::size_t pocket_nodes = 0;
  std::size_t pseudo_pockets = 0;
  int tiles = 0;
  int finite_faces = 0;
  int even_faces = 0;
  int odd_faces = 0;
  int covered_odd = 0;
  Rational beta;
  Rational psi;
  Rational certificate;
  bool refined_checked = false;
  bool refined_holds = true;
  std::vector<Rational> epsilons;
  int equalizations = 0;
  NodeSet tight;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  int pieces = 0;
  std::array<int, 4> piece_case_counts{};
  int piece_violations = 0;
};

struct SolveOptions {
  int max_iterations = 0;  // 0: |V| (1 + handle pairs seen)
  PocketSearchOptions pocket;
  bool check_refined_bound = true;
};

struct SolveReport {
  std::string instance;
  NodeSet solution;
  Rational cost;
  Rational dual;
  Rational ratio;           // cost / dual, 0 when dual is 0
  bool ratio_ok = true;
  bool infinite_in_solution = false;
  std::vector<NodeId> order;
  std::vector<NodePair> pairs;
  std::vector<Inequality> inequalities;
  std::vector<IterationRecord> trace;
  Rational min_certificate;  // over every tiling, 0 if none
  int tilings = 0;
  std::size_t pseudo_pockets = 0;
  int refined_checked = 0;
  int refined_failures = 0;
  int pieces_checked = 0;
  int piece_violations = 0;
  std::array<int, 4> piece_case_counts{};
};

inline const Rational& approximation_bound() {
  static const Rational r(47, 7);
  return r;
}

/// Runs the primal-dual algorithm. Throws on any internal assertion failure
/// (RatioViolation, QuasiPerfectViolation, PseudoPocketWithoutEvenCycle, ...).
SolveReport run_primal_dual(const Instance& inst, const SolveOptions& opts = {});

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> reasons;
};

/// Recomputes residuals, feasibility and the ratio from a report alone. With
/// `opt`, also checks dual <= opt.
CertificateCheck verify_certificate(const Instance& inst, const SolveReport& report,
                                    const std::optional<Rational>& opt = std::nullopt);

}  // namespace ect
