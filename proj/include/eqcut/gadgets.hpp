// Instance-to-instance reductions between cut problems and MinCSP.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqcut/graph.hpp"
#include "eqcut/mincsp.hpp"

namespace eqcut {

struct ReducedInstance {
  MinCspInstance instance;
  long long budget = 0;
  std::vector<std::string> notes;
};

// Soft u = v per edge (edge multiplicity kept), crisp s != t per request.
ReducedInstance edge_multicut_to_mincsp(const CutGraph& g, const std::vector<Request>& requests, long long k);

struct TripleMulticutInstance {
  CutGraph graph;
  TripleSet triples;
  long long budget = 0;
};

// Every relation must be split or NEQ3 after dropping redundant arguments.
// Variable vertices are undeletable; soft constraints of multiplicity m get m
// twin vertices (split) or a triple of weight m (NEQ3).
TripleMulticutInstance mincsp_to_triple_multicut(const MinCspInstance& instance, long long k);

// Set family over elements 0..n-1.
struct HittingSetInstance {
  int universe = 0;
  std::vector<std::vector<int>> sets;
};

// Exhaustive minimum hitting set size; nullopt when some set is empty.
std::optional<int> hitting_set_oracle(const HittingSetInstance& hs);

// Crisp ODD3 chains with soft x_i = z; a set of size one is padded with a
// dummy element whose x = z constraint is crisp.
ReducedInstance hitting_set_to_odd3(const HittingSetInstance& hs, long long k);

// Terminal sets of size three; soft equality per edge, crisp NAE3 per set.
ReducedInstance steiner_to_nae3(const CutGraph& g, const std::vector<VertexSet>& sets, long long k);

struct SteinerInstance {
  CutGraph graph;
  std::vector<VertexSet> sets;
  long long budget = 0;
};

// Instance over crisp NAE3 and soft =; a vertex per variable, an edge per
// soft equality.
SteinerInstance nae3_to_steiner(const MinCspInstance& instance, long long k);

struct DisjunctiveMulticutInstance {
  CutGraph graph;
  std::vector<RequestList> lists;
  long long budget = 0;
};

// Instance over = and NEQOR<d> relations (including !=).
DisjunctiveMulticutInstance rneq_to_disjunctive_multicut(const MinCspInstance& instance, long long k);

struct WheelGadget {
  int t = 0;
  bool unweighted = false;
  MinCspInstance instance;
  // Constraint ids: cycle[i] is v_i = v_{i+1}; partner[i] is v_i != f(v_i).
  std::vector<std::size_t> cycle;
  std::vector<std::size_t> partner;

  int forward(int i) const { return (i + t) % (2 * t + 1); }
  // The deletion set that chooses element i (1-based, 1 <= i <= t).
  std::vector<std::size_t> shape(int i) const;
};

// |S| = t >= 2. The unweighted variant has single equality copies.
WheelGadget wheel(int t, bool unweighted = false);

struct WheelReport {
  bool ok = true;
  long long cost = 0;
  long long expected_cost = 0;
  std::vector<std::vector<std::size_t>> optimal_deletions;  // all of minimum cost
  bool cheaper_deletion_found = false;
  std::string detail;
};

WheelReport wheel_verify(const WheelGadget& w);

// Split Paired Cut. Graphs are edge lists and may have parallel edges.
struct SpcGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;
  int s = 0;
  int t = 1;
};

struct FlowPath {
  std::vector<int> vertices;  // s ... t
  std::vector<int> edges;     // edge ids along the path
};

struct SplitPairedCutInstance {
  SpcGraph g1;
  SpcGraph g2;
  std::vector<std::pair<int, int>> pairs;  // (edge of g1, edge of g2), pairwise disjoint
  int k = 0;
  std::optional<std::vector<FlowPath>> flow1;
  std::optional<std::vector<FlowPath>> flow2;
};

bool spc_oracle(const SplitPairedCutInstance& spc);

// k edge-disjoint s-t paths covering every edge, or nullopt.
std::optional<std::vector<FlowPath>> decompose_flow(const SpcGraph& g, int k);

// Budgets: k for (=,=), 9k for (!=,!=), 5k for (=,!=). Missing decompositions
// are computed; an error is raised when none exists.
ReducedInstance spc_to_eq_eq(const SplitPairedCutInstance& spc, RelationPtr r);
ReducedInstance spc_to_neq_neq(const SplitPairedCutInstance& spc, RelationPtr r);
ReducedInstance spc_to_eq_neq(const SplitPairedCutInstance& spc, RelationPtr r);

// Exhaustive multicoloured independent set check.
bool mis_oracle(const CutGraph& g, const std::vector<VertexSet>& classes);

// Wheel per class, crisp R_OR_NN per edge, budget 5 * number of classes.
ReducedInstance mis_to_disjneqneq(const CutGraph& g, const std::vector<VertexSet>& classes);

// Chain over ODD3 with anchors z1 = 1, z2 = 2 that rejects exactly the all-1
// and all-2 tuples on its n primary variables.
Gadget odd3_nary_gadget(int n);

// Soft v_i = 1 per element, crisp copy of odd3_nary_gadget per set.
ReducedInstance hitting_set_to_odd3_constants(const HittingSetInstance& hs, long long k);

// Replaces assignments x = i by x = t_i over fresh pairwise different t_i.
MinCspInstance emulate_constants(const MinCspInstance& instance);

}  // namespace eqcut
