#include "eqcut/boolean.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace eqcut {

namespace {

BoolClause unit(int var, bool positive) { return BoolClause{{BoolLiteral{var, positive}}}; }

BoolClause pair(int a, bool pa, int b, bool pb) {
  return BoolClause{{BoolLiteral{a, pa}, BoolLiteral{b, pb}}};
}

// Node 2*var is the positive literal, 2*var+1 the negative one.
int node(const BoolLiteral& l) { return 2 * l.var + (l.positive ? 0 : 1); }
int negate(int n) { return n ^ 1; }

struct ImplicationGraph {
  struct Arc {
    int to;
    std::size_t origin;
  };
  std::vector<std::vector<Arc>> out;

  ImplicationGraph(const BooleanInstance& b, const std::vector<bool>& active)
      : out(static_cast<std::size_t>(2 * b.num_vars)) {
    for (std::size_t c = 0; c < b.constraints.size(); ++c) {
      if (!active[c]) continue;
      for (const auto& clause : b.constraints[c].clauses) {
        if (clause.literals.size() == 1) {
          const int a = node(clause.literals[0]);
          out[static_cast<std::size_t>(negate(a))].push_back({a, c});
        } else {
          const int a = node(clause.literals[0]);
          const int bb = node(clause.literals[1]);
          out[static_cast<std::size_t>(negate(a))].push_back({bb, c});
          out[static_cast<std::size_t>(negate(bb))].push_back({a, c});
        }
      }
    }
  }

  // Tarjan SCC ids (iterative).
  std::vector<int> scc() const {
    const int n = static_cast<int>(out.size());
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        comp(static_cast<std::size_t>(n), -1);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    int counter = 0, comps = 0;
    std::vector<std::pair<int, std::size_t>> call;
    for (int root = 0; root < n; ++root) {
      if (index[static_cast<std::size_t>(root)] >= 0) continue;
      call.push_back({root, 0});
      while (!call.empty()) {
        auto& [v, it] = call.back();
        const auto sv = static_cast<std::size_t>(v);
        if (it == 0 && index[sv] < 0) {
          index[sv] = low[sv] = counter++;
          stack.push_back(v);
          on_stack[sv] = true;
        }
        if (it < out[sv].size()) {
          const int w = out[sv][it].to;
          ++it;
          const auto sw = static_cast<std::size_t>(w);
          if (index[sw] < 0) {
            call.push_back({w, 0});
          } else if (on_stack[sw]) {
            low[sv] = std::min(low[sv], index[sw]);
          }
          continue;
        }
        if (low[sv] == index[sv]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp[static_cast<std::size_t>(w)] = comps;
            if (w == v) break;
          }
          ++comps;
        }
        const int done = v;
        call.pop_back();
        if (!call.empty()) {
          const auto sp = static_cast<std::size_t>(call.back().first);
          low[sp] = std::min(low[sp], low[static_cast<std::size_t>(done)]);
        }
      }
    }
    return comp;
  }

  // Constraint ids along a shortest implication path from a to b.
  std::vector<std::size_t> path_origins(int a, int b) const {
    std::vector<int> parent(out.size(), -1);
    std::vector<std::size_t> via(out.size(), 0);
    std::vector<bool> seen(out.size(), false);
    std::deque<int> q{a};
    seen[static_cast<std::size_t>(a)] = true;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      if (u == b) break;
      for (const auto& arc : out[static_cast<std::size_t>(u)]) {
        const auto st = static_cast<std::size_t>(arc.to);
        if (seen[st]) continue;
        seen[st] = true;
        parent[st] = u;
        via[st] = arc.origin;
        q.push_back(arc.to);
      }
    }
    std::vector<std::size_t> origins;
    if (!seen[static_cast<std::size_t>(b)]) return origins;
    for (int v = b; v != a; v = parent[static_cast<std::size_t>(v)]) origins.push_back(via[static_cast<std::size_t>(v)]);
    return origins;
  }
};

// nullopt when satisfiable; otherwise the constraint ids of an unsatisfiable core.
std::optional<std::vector<std::size_t>> conflict(const BooleanInstance& b, const std::vector<bool>& active) {
  ImplicationGraph ig(b, active);
  const auto comp = ig.scc();
  for (int v = 0; v < b.num_vars; ++v) {
    if (comp[static_cast<std::size_t>(2 * v)] != comp[static_cast<std::size_t>(2 * v + 1)]) continue;
    auto core = ig.path_origins(2 * v, 2 * v + 1);
    auto back = ig.path_origins(2 * v + 1, 2 * v);
    core.insert(core.end(), back.begin(), back.end());
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    return core;
  }
  return std::nullopt;
}

std::vector<bool> active_mask(const BooleanInstance& b, const std::vector<std::size_t>& deleted) {
  std::vector<bool> active(b.constraints.size(), true);
  for (auto c : deleted) active.at(c) = false;
  return active;
}

}  // namespace

BooleanInstance build_boolean_instance(const CutGraph& g, const TripleSet& triples,
                                       const std::vector<int>& alpha, long long k,
                                       const VertexSet& removed,
                                       const std::vector<std::size_t>& skip,
                                       const std::vector<std::size_t>& distinct) {
  const int n = g.num_vertices();
  if (static_cast<int>(alpha.size()) != n) throw Error("class map does not cover the graph");
  BooleanInstance b;
  b.budget = k;
  for (int a : alpha) b.classes = std::max(b.classes, a + 1);
  b.num_vars = n * b.classes * 2;
  const int d = b.classes;
  auto is_removed = [&](int v) { return std::binary_search(removed.begin(), removed.end(), v); };

  for (auto t : distinct) {
    const auto& tr = triples.at(t);
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const int a = alpha[static_cast<std::size_t>(tr.v[static_cast<std::size_t>(p)])];
        const int c = alpha[static_cast<std::size_t>(tr.v[static_cast<std::size_t>(q)])];
        if (a >= 0 && a == c) throw Error("class map puts two vertices of a kept triple together");
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    BoolConstraint c;
    c.owner = v;
    if (is_removed(v)) {
      c.kind = BoolConstraintKind::Removed;
      c.crisp = true;
      for (int i = 0; i < d; ++i) {
        c.clauses.push_back(unit(b.var(v, i, false), false));
        c.clauses.push_back(unit(b.var(v, i, true), false));
      }
      b.constraints.push_back(std::move(c));
      continue;
    }
    c.kind = BoolConstraintKind::Vertex;
    c.crisp = !g.deletable(v);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) c.clauses.push_back(pair(b.var(v, i, false), false, b.var(v, j, false), false));
      c.clauses.push_back(pair(b.var(v, i, false), false, b.var(v, i, true), true));
    }
    b.constraints.push_back(std::move(c));
  }

  for (int v = 0; v < n; ++v) {
    const int a = alpha[static_cast<std::size_t>(v)];
    if (a < 0 || is_removed(v)) continue;
    BoolConstraint c;
    c.kind = BoolConstraintKind::Terminal;
    c.crisp = true;
    c.owner = v;
    for (int i = 0; i < d; ++i) {
      c.clauses.push_back(unit(b.var(v, i, false), i == a));
      c.clauses.push_back(unit(b.var(v, i, true), i == a));
    }
    b.constraints.push_back(std::move(c));
  }

  for (const auto& e : g.edges()) {
    if (is_removed(e.u) || is_removed(e.v)) continue;
    for (int i = 0; i < d; ++i) {
      BoolConstraint c;
      c.kind = BoolConstraintKind::Edge;
      c.crisp = true;
      c.clauses.push_back(pair(b.var(e.u, i, true), false, b.var(e.v, i, false), true));
      c.clauses.push_back(pair(b.var(e.v, i, true), false, b.var(e.u, i, false), true));
      b.constraints.push_back(std::move(c));
    }
  }

  for (std::size_t t = 0; t < triples.size(); ++t) {
    if (std::find(skip.begin(), skip.end(), t) != skip.end()) continue;
    const auto& tr = triples[t];
    for (int i = 0; i < d; ++i) {
      BoolConstraint c;
      c.kind = BoolConstraintKind::Triple;
      c.crisp = tr.crisp;
      c.weight = tr.weight;
      c.owner = static_cast<int>(t);
      for (int p = 0; p < 3; ++p) {
        for (int q = p + 1; q < 3; ++q) {
          c.clauses.push_back(pair(b.var(tr.v[static_cast<std::size_t>(p)], i, true), false,
                                   b.var(tr.v[static_cast<std::size_t>(q)], i, true), false));
        }
      }
      b.constraints.push_back(std::move(c));
    }
  }
  return b;
}

bool crisp_consistent(const BooleanInstance& b) {
  std::vector<bool> active(b.constraints.size());
  for (std::size_t c = 0; c < b.constraints.size(); ++c) active[c] = b.constraints[c].crisp;
  return !conflict(b, active).has_value();
}

bool satisfiable_without(const BooleanInstance& b, const std::vector<std::size_t>& deleted) {
  return !conflict(b, active_mask(b, deleted)).has_value();
}

std::optional<std::vector<std::size_t>> boolean_solve(const BooleanInstance& b, long long k) {
  if (!crisp_consistent(b)) throw Error("crisp part of the Boolean instance is unsatisfiable");
  for (long long budget = 0; budget <= k; ++budget) {
    std::set<std::vector<std::size_t>> failed;
    std::vector<std::size_t> deleted;
    std::function<bool(long long)> rec = [&](long long left) -> bool {
      auto core = conflict(b, active_mask(b, deleted));
      if (!core) return true;
      auto key = deleted;
      std::sort(key.begin(), key.end());
      if (failed.count(key)) return false;
      for (auto c : *core) {
        const auto& con = b.constraints[c];
        if (con.crisp || con.weight > left) continue;
        deleted.push_back(c);
        if (rec(left - con.weight)) return true;
        deleted.pop_back();
      }
      failed.insert(std::move(key));
      return false;
    };
    if (rec(budget)) {
      std::sort(deleted.begin(), deleted.end());
      return deleted;
    }
  }
  return std::nullopt;
}

std::optional<long long> boolean_oracle(const BooleanInstance& b, long long k) {
  std::vector<std::size_t> soft;
  for (std::size_t c = 0; c < b.constraints.size(); ++c) {
    if (!b.constraints[c].crisp) soft.push_back(c);
  }
  std::optional<long long> best;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, long long)> rec = [&](std::size_t from, long long weight) {
    if (!best || weight < *best) {
      if (satisfiable_without(b, chosen)) best = weight;
    }
    for (std::size_t i = from; i < soft.size(); ++i) {
      const long long w = weight + b.constraints[soft[i]].weight;
      if (w > k || (best && w >= *best)) continue;
      chosen.push_back(soft[i]);
      rec(i + 1, w);
      chosen.pop_back();
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace eqcut
