// Steiner Multicut: the strict variant with a hub vertex, and the
// factor-2 approximation by iterative compression.
#pragma once

#include <optional>

#include "eqcut/graph.hpp"

namespace eqcut {

struct StrictSteinerStats {
  int max_depth = 0;  // deepest branch node whose separator fits the budget
  long long nodes = 0;
  bool flow_monotone = true;  // closest separator grows strictly along every branch
};

// Smallest W with |W| <= k, hub not in W, satisfying every set. Throws when
// the hub is deletable or does not satisfy every set on its own.
std::optional<VertexSet> strict_steiner(const CutGraph& g, int hub, const std::vector<VertexSet>& sets, int k,
                                        StrictSteinerStats* stats = nullptr);

struct SteinerApproxResult {
  bool accepted = false;
  VertexSet cut;            // feasible, |cut| <= 2 * budget_used
  int budget_used = -1;     // smallest budget at which the compression accepted
};

// Accepts with a feasible cut of size <= 2k whenever the optimum is <= k;
// every returned cut is checked.
SteinerApproxResult steiner_2approx(const CutGraph& g, const std::vector<VertexSet>& sets, int k);

bool steiner_feasible(const CutGraph& g, const std::vector<VertexSet>& sets, const VertexSet& cut);

}  // namespace eqcut
