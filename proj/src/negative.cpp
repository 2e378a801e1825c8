#include "eqcut/negative.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

namespace eqcut {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

struct Prepared {
  const MinCspInstance* instance;
  std::vector<CnfFormula> formulas;  // per constraint; empty for assignments
};

Prepared prepare(const MinCspInstance& instance) {
  Prepared p{&instance, {}};
  std::map<const EqRelation*, CnfFormula> cache;
  for (const auto& c : instance.constraints()) {
    if (c.is_assignment()) {
      p.formulas.emplace_back();
      continue;
    }
    auto it = cache.find(c.relation.get());
    if (it == cache.end()) {
      auto phi = definable_in_fragment(*c.relation, Fragment::StrictlyNegative);
      if (!phi) throw Error("relation '" + c.relation->name() + "' is not strictly negative");
      it = cache.emplace(c.relation.get(), *phi).first;
    }
    p.formulas.push_back(it->second);
  }
  return p;
}

// Values forced by active assignments; fresh distinct values elsewhere.
std::vector<long long> tentative(const MinCspInstance& inst, const std::vector<bool>& active) {
  const auto& cs = inst.constraints();
  long long fresh = 0;
  for (const auto& c : cs) fresh = std::max(fresh, c.constant);
  std::vector<long long> alpha(static_cast<std::size_t>(inst.num_variables()), kInf);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (active[i] && cs[i].is_assignment()) alpha[static_cast<std::size_t>(cs[i].scope[0])] = cs[i].constant;
  }
  for (auto& a : alpha) {
    if (a == kInf) a = ++fresh;
  }
  return alpha;
}

// Index of a violated clause of constraint c under alpha, or -1.
int violated_clause(const Prepared& p, std::size_t c, const std::vector<long long>& alpha) {
  const auto& con = p.instance->constraints()[c];
  const auto& phi = p.formulas[c];
  for (std::size_t i = 0; i < phi.size(); ++i) {
    bool sat = false;
    for (const auto& lit : phi[i].literals) {
      const long long a = alpha[static_cast<std::size_t>(con.scope[static_cast<std::size_t>(lit.i)])];
      const long long b = alpha[static_cast<std::size_t>(con.scope[static_cast<std::size_t>(lit.j)])];
      if ((a == b) == lit.equal) sat = true;
    }
    if (!sat) return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> clause_variables(const Prepared& p, std::size_t c, int clause) {
  const auto& con = p.instance->constraints()[c];
  std::vector<int> vars;
  for (const auto& lit : p.formulas[c][static_cast<std::size_t>(clause)].literals) {
    vars.push_back(con.scope[static_cast<std::size_t>(lit.i)]);
    vars.push_back(con.scope[static_cast<std::size_t>(lit.j)]);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

// Active assignment constraints on v.
std::vector<std::size_t> assignments_on(const MinCspInstance& inst, const std::vector<bool>& active, int v) {
  std::vector<std::size_t> out;
  const auto& cs = inst.constraints();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (active[i] && cs[i].is_assignment() && cs[i].scope[0] == v) out.push_back(i);
  }
  return out;
}

long long group_cost(const MinCspInstance& inst, const std::vector<std::size_t>& group) {
  long long total = 0;
  for (auto c : group) {
    const auto& con = inst.constraints()[c];
    if (con.crisp) return kInf;
    total += con.multiplicity;
  }
  return total;
}

}  // namespace

std::optional<ConstraintDeletion> negative_fpt_solve(const MinCspInstance& instance, long long k) {
  const Prepared p = prepare(instance);
  const auto& cs = instance.constraints();
  for (long long budget = 0; budget <= k; ++budget) {
    std::vector<bool> active(cs.size(), true);
    std::function<bool(long long)> rec = [&](long long left) -> bool {
      auto drop = [&](const std::vector<std::size_t>& group) -> bool {
        const long long cost = group_cost(instance, group);
        if (cost > left || group.empty()) return false;
        for (auto c : group) active[c] = false;
        const bool ok = rec(left - cost);
        if (!ok) {
          for (auto c : group) active[c] = true;
        }
        return ok;
      };
      // Contradictory assignments on one variable.
      for (int v = 0; v < instance.num_variables(); ++v) {
        const auto on_v = assignments_on(instance, active, v);
        std::set<long long> values;
        for (auto c : on_v) values.insert(cs[c].constant);
        if (values.size() < 2) continue;
        const long long i = *values.begin();
        std::vector<std::size_t> keep_i, drop_i;
        for (auto c : on_v) (cs[c].constant == i ? drop_i : keep_i).push_back(c);
        // keep_i: constraints other than v = i, dropped when alpha(v) = i.
        return drop(keep_i) || drop(drop_i);
      }
      const auto alpha = tentative(instance, active);
      for (std::size_t c = 0; c < cs.size(); ++c) {
        if (!active[c] || cs[c].is_assignment()) continue;
        const int clause = violated_clause(p, c, alpha);
        if (clause < 0) continue;
        if (drop({c})) return true;
        for (int v : clause_variables(p, c, clause)) {
          if (drop(assignments_on(instance, active, v))) return true;
        }
        return false;
      }
      return true;
    };
    if (rec(budget)) {
      ConstraintDeletion out;
      for (std::size_t c = 0; c < cs.size(); ++c) {
        if (!active[c]) {
          out.deleted.push_back(c);
          out.cost += cs[c].multiplicity;
        }
      }
      return out;
    }
  }
  return std::nullopt;
}

std::optional<ConstraintDeletion> negative_approx(const MinCspInstance& instance) {
  const Prepared p = prepare(instance);
  const auto& cs = instance.constraints();
  std::vector<bool> active(cs.size(), true);
  // Residual charge per assignment group (variable, value) and per constraint.
  std::map<std::pair<int, long long>, long long> residual;
  std::vector<long long> own(cs.size());
  for (std::size_t c = 0; c < cs.size(); ++c) {
    own[c] = cs[c].crisp ? kInf : cs[c].multiplicity;
    if (cs[c].is_assignment()) {
      auto& r = residual[{cs[c].scope[0], cs[c].constant}];
      r = (r >= kInf || own[c] >= kInf) ? kInf : r + own[c];
    }
  }
  auto kill_group = [&](int v, long long value) {
    for (std::size_t c = 0; c < cs.size(); ++c) {
      if (cs[c].is_assignment() && cs[c].scope[0] == v && cs[c].constant == value) active[c] = false;
    }
  };

  // Majority phase.
  for (int v = 0; v < instance.num_variables(); ++v) {
    std::map<long long, long long> weight;
    for (const auto& [key, w] : residual) {
      if (key.first == v) weight[key.second] = w;
    }
    if (weight.size() < 2) continue;
    long long best = weight.begin()->first;
    int crisp_values = 0;
    for (const auto& [value, w] : weight) {
      if (w >= kInf) {
        ++crisp_values;
        best = value;
      } else if (weight[best] < kInf && w > weight[best]) {
        best = value;
      }
    }
    if (crisp_values > 1) return std::nullopt;
    long long others = 0;
    for (const auto& [value, w] : weight) {
      if (value == best) continue;
      others += w;
      kill_group(v, value);
      residual[{v, value}] = 0;
    }
    auto& rb = residual[{v, best}];
    if (rb < kInf) {
      rb -= std::min(rb, others);
      if (rb == 0) kill_group(v, best);
    }
  }

  // Local ratio over explicit conflicts.
  while (true) {
    const auto alpha = tentative(instance, active);
    std::optional<std::size_t> bad;
    int clause = -1;
    for (std::size_t c = 0; c < cs.size() && !bad; ++c) {
      if (!active[c] || cs[c].is_assignment()) continue;
      clause = violated_clause(p, c, alpha);
      if (clause >= 0) bad = c;
    }
    if (!bad) break;
    std::vector<std::pair<int, long long>> groups;
    for (int v : clause_variables(p, *bad, clause)) {
      const auto on_v = assignments_on(instance, active, v);
      if (!on_v.empty()) groups.push_back({v, cs[on_v.front()].constant});
    }
    long long delta = own[*bad];
    for (const auto& g : groups) delta = std::min(delta, residual[g]);
    if (delta >= kInf) return std::nullopt;
    if (own[*bad] < kInf) {
      own[*bad] -= delta;
      if (own[*bad] == 0) active[*bad] = false;
    }
    for (const auto& g : groups) {
      auto& r = residual[g];
      if (r >= kInf) continue;
      r -= delta;
      if (r == 0) kill_group(g.first, g.second);
    }
  }

  ConstraintDeletion out;
  for (std::size_t c = 0; c < cs.size(); ++c) {
    if (!active[c]) {
      out.deleted.push_back(c);
      out.cost += cs[c].multiplicity;
    }
  }
  return out;
}

long long negative_approx_factor(const MinCspInstance& instance) {
  long long arity = 1;
  for (const auto& c : instance.constraints()) {
    if (!c.is_assignment()) arity = std::max<long long>(arity, c.relation->arity());
  }
  return arity + 1;
}

}  // namespace eqcut
