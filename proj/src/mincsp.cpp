#include "eqcut/mincsp.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>

#include "eqcut/relations.hpp"

namespace eqcut {

// ---------------------------------------------------------------- instance

int MinCspInstance::add_variable(std::string name) {
  if (name.empty()) throw Error("variable name must be nonempty");
  if (find_variable(name)) throw Error("duplicate variable '" + name + "'");
  names_.push_back(std::move(name));
  return num_variables() - 1;
}

std::optional<int> MinCspInstance::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int MinCspInstance::variable(std::string_view name) const {
  if (auto v = find_variable(name)) return *v;
  throw Error("unknown variable '" + std::string(name) + "'");
}

std::size_t MinCspInstance::add_constraint(RelationPtr relation, std::vector<int> scope, bool crisp,
                                           long long multiplicity) {
  if (!relation) throw Error("constraint without relation");
  if (static_cast<int>(scope.size()) != relation->arity()) {
    throw Error("scope length " + std::to_string(scope.size()) + " does not match arity of '" +
                relation->name() + "'");
  }
  for (int v : scope) {
    if (v < 0 || v >= num_variables()) throw Error("scope references an unknown variable");
  }
  if (multiplicity < 1) throw Error("multiplicity must be positive");
  constraints_.push_back({std::move(relation), std::move(scope), crisp, multiplicity, 0});
  return constraints_.size() - 1;
}

std::size_t MinCspInstance::add_assignment(int var, long long value, bool crisp,
                                           long long multiplicity) {
  if (var < 0 || var >= num_variables()) throw Error("assignment to an unknown variable");
  if (multiplicity < 1) throw Error("multiplicity must be positive");
  constraints_.push_back({nullptr, {var}, crisp, multiplicity, value});
  return constraints_.size() - 1;
}

std::vector<long long> MinCspInstance::constants() const {
  std::vector<long long> out;
  for (const auto& c : constraints_) {
    if (c.is_assignment()) out.push_back(c.constant);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinCspInstance MinCspInstance::without(const std::vector<std::size_t>& removed) const {
  MinCspInstance out = *this;
  out.constraints_.clear();
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) {
      out.constraints_.push_back(constraints_[i]);
    }
  }
  return out;
}

// ---------------------------------------------------------------- cost

bool constraint_satisfied(const Constraint& c, const Assignment& a) {
  if (c.is_assignment()) return a.values.at(static_cast<std::size_t>(c.scope[0])) == c.constant;
  std::array<long long, 16> buf{};
  for (std::size_t i = 0; i < c.scope.size(); ++i) {
    buf[i] = a.values.at(static_cast<std::size_t>(c.scope[i]));
  }
  return c.relation->contains_values(std::span<const long long>(buf.data(), c.scope.size()));
}

CostReport assignment_cost(const MinCspInstance& instance, const Assignment& a) {
  if (static_cast<int>(a.values.size()) != instance.num_variables()) {
    throw Error("assignment does not cover all variables");
  }
  CostReport rep;
  const auto& cs = instance.constraints();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (constraint_satisfied(cs[i], a)) continue;
    rep.violated.push_back(i);
    if (cs[i].crisp) rep.infinite = true;
    else rep.cost += cs[i].multiplicity;
  }
  return rep;
}

int oracle_cap() {
  if (const char* env = std::getenv("EQCUT_ORACLE_CAP")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 12;
}

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

class Search {
 public:
  Search(const MinCspInstance& inst, bool all_crisp) : inst_(inst), all_crisp_(all_crisp) {
    const int n = inst.num_variables();
    constants_ = inst.constants();
    fresh_base_ = constants_.empty() ? 1 : std::max<long long>(constants_.back(), 0) + 1;
    choose_order();
    triggered_.assign(static_cast<std::size_t>(n), {});
    std::vector<int> pos_of(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) pos_of[static_cast<std::size_t>(order_[static_cast<std::size_t>(p)])] = p;
    const auto& cs = inst.constraints();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      int last = 0;
      for (int v : cs[i].scope) last = std::max(last, pos_of[static_cast<std::size_t>(v)]);
      triggered_[static_cast<std::size_t>(last)].push_back(i);
    }
    current_.values.assign(static_cast<std::size_t>(n), 0);
  }

  // Returns the optimum (kInf when every assignment violates a crisp constraint).
  long long run(long long stop_at) {
    stop_at_ = stop_at;
    best_ = kInf;
    dfs(0, 0, 0);
    return best_;
  }

  const Assignment& best_assignment() const { return best_assignment_; }

 private:
  void choose_order() {
    const int n = inst_.num_variables();
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    const auto& cs = inst_.constraints();
    for (int step = 0; step < n; ++step) {
      int best_v = -1;
      long long best_score = -1;
      for (int v = 0; v < n; ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        long long score = 0;
        for (const auto& c : cs) {
          if (std::find(c.scope.begin(), c.scope.end(), v) == c.scope.end()) continue;
          int missing = 0;
          for (int u : c.scope) {
            if (u != v && !placed[static_cast<std::size_t>(u)]) ++missing;
          }
          const long long weight = c.crisp || all_crisp_ ? 4 : 1;
          score += missing == 0 ? 16 * weight : weight;
        }
        if (score > best_score) {
          best_score = score;
          best_v = v;
        }
      }
      placed[static_cast<std::size_t>(best_v)] = true;
      order_.push_back(best_v);
    }
  }

  void dfs(int pos, int fresh, long long cost) {
    if (best_ <= stop_at_) return;
    if (cost >= best_) return;
    if (pos == inst_.num_variables()) {
      best_ = cost;
      best_assignment_ = current_;
      return;
    }
    const int v = order_[static_cast<std::size_t>(pos)];
    const std::size_t nc = constants_.size();
    for (std::size_t choice = 0; choice < nc + static_cast<std::size_t>(fresh) + 1; ++choice) {
      const bool is_new = choice == nc + static_cast<std::size_t>(fresh);
      current_.values[static_cast<std::size_t>(v)] =
          choice < nc ? constants_[choice] : fresh_base_ + static_cast<long long>(choice - nc);
      long long add = 0;
      bool dead = false;
      for (std::size_t ci : triggered_[static_cast<std::size_t>(pos)]) {
        const Constraint& c = inst_.constraints()[ci];
        if (constraint_satisfied(c, current_)) continue;
        if (c.crisp || all_crisp_) {
          dead = true;
          break;
        }
        add += c.multiplicity;
      }
      if (!dead) dfs(pos + 1, is_new ? fresh + 1 : fresh, cost + add);
      if (best_ <= stop_at_) return;
    }
  }

  const MinCspInstance& inst_;
  bool all_crisp_;
  std::vector<long long> constants_;
  long long fresh_base_ = 1;
  std::vector<int> order_;
  std::vector<std::vector<std::size_t>> triggered_;
  Assignment current_;
  Assignment best_assignment_;
  long long best_ = kInf;
  long long stop_at_ = -1;
};

void check_cap(const MinCspInstance& instance, std::optional<int> cap) {
  const int limit = cap.value_or(oracle_cap());
  if (instance.num_variables() > limit) {
    throw Error("oracle cap exceeded: " + std::to_string(instance.num_variables()) +
                " variables > " + std::to_string(limit));
  }
}

}  // namespace

OracleResult brute_force_cost(const MinCspInstance& instance, std::optional<int> cap) {
  check_cap(instance, cap);
  Search s(instance, false);
  const long long best = s.run(-1);
  OracleResult out;
  if (best >= kInf) {
    out.report.infinite = true;
    return out;
  }
  out.assignment = s.best_assignment();
  out.report = assignment_cost(instance, out.assignment);
  return out;
}

std::optional<Assignment> find_satisfying(const MinCspInstance& instance, std::optional<int> cap) {
  check_cap(instance, cap);
  Search s(instance, true);
  if (s.run(0) >= kInf) return std::nullopt;
  return s.best_assignment();
}

bool is_consistent(const MinCspInstance& instance, std::optional<int> cap) {
  return find_satisfying(instance, cap).has_value();
}

MinCspInstance with_crisp_as_copies(const MinCspInstance& instance, long long k) {
  MinCspInstance out(instance.name());
  for (int v = 0; v < instance.num_variables(); ++v) out.add_variable(instance.variable_name(v));
  for (const auto& c : instance.constraints()) {
    const long long m = c.crisp ? k + 1 : c.multiplicity;
    if (c.is_assignment()) out.add_assignment(c.scope[0], c.constant, false, m);
    else out.add_constraint(c.relation, c.scope, false, m);
  }
  return out;
}

// ---------------------------------------------------------------- gadgets

GadgetCheck verify_gadget(const Gadget& gadget, const EqRelation& target) {
  const int r = target.arity();
  if (static_cast<int>(gadget.primary.size()) != r) {
    return {false, "primary variable count differs from target arity"};
  }
  for (const auto& p : all_patterns(r)) {
    MinCspInstance probe = gadget.body;
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        const int a = gadget.primary[static_cast<std::size_t>(i)];
        const int b = gadget.primary[static_cast<std::size_t>(j)];
        if (a == b) continue;
        probe.add_constraint(p[i] == p[j] ? eq_relation() : neq_relation(), {a, b}, true);
      }
    }
    const CostReport rep = brute_force_cost(probe).report;
    const bool member = target.contains(p);
    std::string tuple;
    for (int e : p) tuple += std::to_string(e);
    if (member && !rep.within(0)) return {false, "pattern " + tuple + " has no cost-0 extension"};
    if (!member) {
      if (rep.within(0)) return {false, "pattern " + tuple + " extends at cost 0"};
      if (gadget.implementation && !(rep.within(1) && rep.cost == 1)) {
        return {false, "pattern " + tuple + " has no cost-1 extension"};
      }
    }
  }
  return {};
}

MinCspInstance inline_gadget(const MinCspInstance& instance, const EqRelation& target,
                             const Gadget& gadget) {
  if (static_cast<int>(gadget.primary.size()) != target.arity()) {
    throw Error("gadget primary variables do not match target arity");
  }
  MinCspInstance out(instance.name());
  for (int v = 0; v < instance.num_variables(); ++v) out.add_variable(instance.variable_name(v));
  const auto& cs = instance.constraints();
  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    const Constraint& c = cs[ci];
    if (c.is_assignment()) {
      out.add_assignment(c.scope[0], c.constant, c.crisp, c.multiplicity);
      continue;
    }
    if (!(*c.relation == target)) {
      out.add_constraint(c.relation, c.scope, c.crisp, c.multiplicity);
      continue;
    }
    if (!c.crisp && !gadget.implementation) {
      throw Error("soft constraint cannot be replaced by a gadget that is not an implementation");
    }
    std::vector<int> map(static_cast<std::size_t>(gadget.body.num_variables()), -1);
    for (std::size_t i = 0; i < gadget.primary.size(); ++i) {
      map[static_cast<std::size_t>(gadget.primary[i])] = c.scope[i];
    }
    for (int v = 0; v < gadget.body.num_variables(); ++v) {
      if (map[static_cast<std::size_t>(v)] < 0) {
        map[static_cast<std::size_t>(v)] =
            out.add_variable("c" + std::to_string(ci) + "." + gadget.body.variable_name(v));
      }
    }
    for (const auto& g : gadget.body.constraints()) {
      const bool crisp = g.crisp || c.crisp;
      const long long m = crisp ? 1 : g.multiplicity * c.multiplicity;
      if (g.is_assignment()) {
        out.add_assignment(map[static_cast<std::size_t>(g.scope[0])], g.constant, crisp, m);
      } else {
        std::vector<int> scope;
        for (int v : g.scope) scope.push_back(map[static_cast<std::size_t>(v)]);
        out.add_constraint(g.relation, std::move(scope), crisp, m);
      }
    }
  }
  return out;
}

SplitResult split_conjunctive(const MinCspInstance& instance) {
  SplitResult res{MinCspInstance(instance.name()), 1};
  MinCspInstance& out = res.instance;
  for (int v = 0; v < instance.num_variables(); ++v) out.add_variable(instance.variable_name(v));
  for (const auto& c : instance.constraints()) {
    if (c.is_assignment()) {
      out.add_assignment(c.scope[0], c.constant, c.crisp, c.multiplicity);
      continue;
    }
    auto phi = definable_in_fragment(*c.relation, Fragment::Negative);
    if (!phi) {
      if (!c.crisp) throw Error("relation '" + c.relation->name() + "' is not negative");
      out.add_constraint(c.relation, c.scope, true, 1);
      continue;
    }
    if (!c.crisp) res.factor = std::max<long long>(res.factor, static_cast<long long>(phi->size()));
    for (const auto& clause : *phi) {
      if (clause.positive_count() == 1) {
        const auto& l = clause.literals[0];
        out.add_constraint(eq_relation(), {c.scope[static_cast<std::size_t>(l.i)],
                                           c.scope[static_cast<std::size_t>(l.j)]},
                           c.crisp, c.multiplicity);
        continue;
      }
      std::vector<int> scope;
      for (const auto& l : clause.literals) {
        scope.push_back(c.scope[static_cast<std::size_t>(l.i)]);
        scope.push_back(c.scope[static_cast<std::size_t>(l.j)]);
      }
      out.add_constraint(disj_neq_relation(clause.width()), std::move(scope), c.crisp,
                         c.multiplicity);
    }
  }
  return res;
}

}  // namespace eqcut
