// Bounded-depth branching for Hitting Set.
#pragma once

#include <optional>
#include <vector>

namespace eqcut {

// A minimum hitting set of size <= k, or nullopt. Elements are arbitrary ids.
std::optional<std::vector<int>> hitting_set_branch(const std::vector<std::vector<int>>& sets, int k);

}  // namespace eqcut
