// MinCSP over a strictly negative language with assignment constraints:
// conflict branching and a local-ratio approximation.
#pragma once

#include <optional>
#include <vector>

#include "eqcut/mincsp.hpp"

namespace eqcut {

struct ConstraintDeletion {
  std::vector<std::size_t> deleted;  // constraint ids
  long long cost = 0;                // total multiplicity
};

// Minimum deletion of cost <= k, or nullopt. Throws when a relation is not
// strictly negative.
std::optional<ConstraintDeletion> negative_fpt_solve(const MinCspInstance& instance, long long k);

// A deletion leaving a satisfiable instance, of cost at most
// (max arity + 1) times the optimum; nullopt when crisp constraints conflict.
std::optional<ConstraintDeletion> negative_approx(const MinCspInstance& instance);

// max arity + 1 over the instance's relations (at least 2).
long long negative_approx_factor(const MinCspInstance& instance);

}  // namespace eqcut
