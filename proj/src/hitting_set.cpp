#include "eqcut/hitting_set.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace eqcut {

std::optional<std::vector<int>> hitting_set_branch(const std::vector<std::vector<int>>& sets, int k) {
  for (const auto& s : sets) {
    if (s.empty()) return std::nullopt;
  }
  for (int budget = 0; budget <= k; ++budget) {
    std::vector<int> chosen;
    std::set<std::vector<int>> failed;
    std::function<bool(int)> rec = [&](int left) -> bool {
      const std::vector<int>* open = nullptr;
      for (const auto& s : sets) {
        const bool hit = std::any_of(s.begin(), s.end(), [&](int e) {
          return std::find(chosen.begin(), chosen.end(), e) != chosen.end();
        });
        if (!hit && (!open || s.size() < open->size())) open = &s;
      }
      if (!open) return true;
      if (left == 0) return false;
      auto key = chosen;
      std::sort(key.begin(), key.end());
      if (failed.count(key)) return false;
      for (int e : *open) {
        chosen.push_back(e);
        if (rec(left - 1)) return true;
        chosen.pop_back();
      }
      failed.insert(std::move(key));
      return false;
    };
    if (rec(budget)) {
      std::sort(chosen.begin(), chosen.end());
      return chosen;
    }
  }
  return std::nullopt;
}

}  // namespace eqcut
