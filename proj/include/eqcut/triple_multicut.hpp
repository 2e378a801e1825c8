// Triple Multicut by iterative compression and the Boolean encoding.
#pragma once

#include <optional>

#include "eqcut/oracle.hpp"

namespace eqcut {

struct TripleMulticutStats {
  long long compressions = 0;
  long long boolean_calls = 0;
};

// A minimum-cost solution of cost <= k, or nullopt.
std::optional<TripleMulticutSolution> triple_multicut(const CutGraph& g, const TripleSet& triples, long long k,
                                                      TripleMulticutStats* stats = nullptr);

// Cost of (Z_V, violated triples) or nullopt when a crisp triple survives.
std::optional<TripleMulticutSolution> evaluate_triple_cut(const CutGraph& g, const TripleSet& triples,
                                                          const VertexSet& zv);

}  // namespace eqcut
