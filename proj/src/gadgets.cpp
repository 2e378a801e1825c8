#include "eqcut/gadgets.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "eqcut/expressive.hpp"
#include "eqcut/relations.hpp"

namespace eqcut {

namespace {

bool same_relation(const RelationPtr& a, const RelationPtr& b) { return a && b && *a == *b; }

}  // namespace

// ---------------------------------------------------------------- multicut

ReducedInstance edge_multicut_to_mincsp(const CutGraph& g, const std::vector<Request>& requests,
                                        long long k) {
  ReducedInstance out;
  out.budget = k;
  for (int v = 0; v < g.num_vertices(); ++v) out.instance.add_variable(g.name(v));
  for (const auto& e : g.edges()) out.instance.add_constraint(eq_relation(), {e.u, e.v}, false, e.multiplicity);
  for (const auto& r : requests) out.instance.add_constraint(neq_relation(), {r.first, r.second}, true);
  return out;
}

// ---------------------------------------------------------------- triple multicut

TripleMulticutInstance mincsp_to_triple_multicut(const MinCspInstance& instance, long long k) {
  TripleMulticutInstance out;
  out.budget = k;
  CutGraph& g = out.graph;
  for (int v = 0; v < instance.num_variables(); ++v) g.add_vertex(instance.variable_name(v), true);
  const int w = g.add_vertex("_w", true);

  const auto& cs = instance.constraints();
  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    const Constraint& c = cs[ci];
    if (c.is_assignment()) throw Error("assignment constraints have no triple multicut encoding");
    const auto core = essential_core(*c.relation);
    std::vector<int> scope;
    for (int i : core.kept) scope.push_back(c.scope[static_cast<std::size_t>(i)]);

    if (is_neq3(core.relation)) {
      Triple t;
      for (std::size_t p = 0; p < 3; ++p) {
        int v = scope[p];
        // A repeated variable gets a pendant twin that can never be separated from it.
        for (std::size_t q = 0; q < p; ++q) {
          if (scope[q] == scope[p]) {
            const int pendant = g.add_vertex("_p" + std::to_string(ci) + "." + std::to_string(p), true);
            g.add_edge(pendant, scope[p]);
            v = pendant;
            break;
          }
        }
        t.v[p] = v;
      }
      t.crisp = c.crisp;
      t.weight = c.crisp ? 1 : c.multiplicity;
      out.triples.push_back(t);
      continue;
    }
    const auto split = is_split(core.relation);
    if (!split) {
      throw Error("relation '" + c.relation->name() + "' is neither split nor NEQ3");
    }
    const long long copies = c.crisp ? 1 : c.multiplicity;
    for (long long j = 0; j < copies; ++j) {
      const int z = g.add_vertex("_z" + std::to_string(ci) + "." + std::to_string(j), c.crisp);
      for (int p : split->equal_block) g.add_edge(z, scope[static_cast<std::size_t>(p)]);
      for (int q : split->others) {
        Triple t;
        t.v = {z, scope[static_cast<std::size_t>(q)], w};
        t.crisp = c.crisp;
        out.triples.push_back(t);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- hitting set

std::optional<int> hitting_set_oracle(const HittingSetInstance& hs) {
  for (const auto& s : hs.sets) {
    if (s.empty()) return std::nullopt;
  }
  const int n = hs.universe;
  int best = n + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    if (size >= best) continue;
    const bool hits = std::all_of(hs.sets.begin(), hs.sets.end(), [&](const std::vector<int>& s) {
      return std::any_of(s.begin(), s.end(), [&](int e) { return (mask >> e) & 1U; });
    });
    if (hits) best = size;
  }
  return best;
}

namespace {

std::vector<int> normalized_set(std::vector<int> s, int universe) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int e : s) {
    if (e < 0 || e >= universe) throw Error("set element out of range");
  }
  if (s.empty()) throw Error("empty set in hitting set family");
  return s;
}

}  // namespace

ReducedInstance hitting_set_to_odd3(const HittingSetInstance& hs, long long k) {
  ReducedInstance out;
  out.budget = k;
  MinCspInstance& I = out.instance;
  std::vector<int> x;
  for (int i = 0; i < hs.universe; ++i) x.push_back(I.add_variable("x" + std::to_string(i + 1)));
  const int z = I.add_variable("z");
  for (int v : x) I.add_constraint(eq_relation(), {v, z}, false);
  for (std::size_t e = 0; e < hs.sets.size(); ++e) {
    const auto set = normalized_set(hs.sets[e], hs.universe);
    std::vector<int> members;
    for (int a : set) members.push_back(x[static_cast<std::size_t>(a)]);
    if (members.size() == 1) {
      const int d = I.add_variable("d" + std::to_string(e + 1));
      I.add_constraint(eq_relation(), {d, z}, true);
      members.push_back(d);
      out.notes.push_back("set " + std::to_string(e + 1) + " padded with a dummy element");
    }
    int prev = -1;
    for (std::size_t i = 1; i < members.size(); ++i) {
      const int y = I.add_variable("y" + std::to_string(e + 1) + "." + std::to_string(i + 1));
      if (i == 1) I.add_constraint(odd3_relation(), {members[0], members[1], y}, true);
      else I.add_constraint(odd3_relation(), {prev, members[i], y}, true);
      prev = y;
    }
    I.add_constraint(neq_relation(), {members[0], prev}, true);
  }
  return out;
}

// ---------------------------------------------------------------- steiner / NAE3

ReducedInstance steiner_to_nae3(const CutGraph& g, const std::vector<VertexSet>& sets, long long k) {
  ReducedInstance out;
  out.budget = k;
  for (int v = 0; v < g.num_vertices(); ++v) out.instance.add_variable(g.name(v));
  for (const auto& e : g.edges()) out.instance.add_constraint(eq_relation(), {e.u, e.v}, false, e.multiplicity);
  for (const auto& s : sets) {
    if (s.size() == 3) out.instance.add_constraint(nae3_relation(), {s[0], s[1], s[2]}, true);
    else if (s.size() == 2) out.instance.add_constraint(neq_relation(), {s[0], s[1]}, true);
    else throw Error("terminal sets must have two or three vertices");
  }
  return out;
}

SteinerInstance nae3_to_steiner(const MinCspInstance& instance, long long k) {
  SteinerInstance out;
  out.budget = k;
  for (int v = 0; v < instance.num_variables(); ++v) out.graph.add_vertex(instance.variable_name(v));
  for (const auto& c : instance.constraints()) {
    if (!c.is_assignment() && same_relation(c.relation, eq_relation()) && !c.crisp) {
      if (c.scope[0] != c.scope[1]) out.graph.add_edge(c.scope[0], c.scope[1], c.multiplicity);
    } else if (!c.is_assignment() && c.crisp &&
               (same_relation(c.relation, nae3_relation()) || same_relation(c.relation, neq_relation()))) {
      out.sets.push_back(make_vertex_set(c.scope));
    } else {
      throw Error("expected soft = and crisp NAE3 constraints only");
    }
  }
  return out;
}

// ---------------------------------------------------------------- disjunctive multicut

DisjunctiveMulticutInstance rneq_to_disjunctive_multicut(const MinCspInstance& instance, long long k) {
  DisjunctiveMulticutInstance out;
  out.budget = k;
  CutGraph& g = out.graph;
  for (int v = 0; v < instance.num_variables(); ++v) g.add_vertex(instance.variable_name(v), true);
  const auto& cs = instance.constraints();
  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    const Constraint& c = cs[ci];
    if (c.is_assignment()) throw Error("assignment constraints are not supported here");
    const long long copies = c.crisp ? 1 : c.multiplicity;
    if (same_relation(c.relation, eq_relation())) {
      for (long long j = 0; j < copies; ++j) {
        const int z = g.add_vertex("_z" + std::to_string(ci) + "." + std::to_string(j), c.crisp);
        g.add_edge(z, c.scope[0]);
        if (c.scope[1] != c.scope[0]) g.add_edge(z, c.scope[1]);
      }
      continue;
    }
    const int d = disj_neq_degree(*c.relation);
    if (d == 0) throw Error("relation '" + c.relation->name() + "' is neither = nor a disjunction of !=");
    std::vector<Request> pairs;
    for (int i = 0; i < d; ++i) {
      pairs.emplace_back(c.scope[static_cast<std::size_t>(2 * i)], c.scope[static_cast<std::size_t>(2 * i + 1)]);
    }
    if (c.crisp) {
      out.lists.push_back(make_request_list(pairs));
      continue;
    }
    for (long long j = 0; j < copies; ++j) {
      const int z = g.add_vertex("_z" + std::to_string(ci) + "." + std::to_string(j));
      auto list = pairs;
      list.emplace_back(z, z);
      out.lists.push_back(make_request_list(list));
    }
  }
  return out;
}

// ---------------------------------------------------------------- wheel

namespace {

struct WheelIds {
  std::vector<std::size_t> cycle;
  std::vector<std::size_t> partner;
};

// Adds the wheel constraints on vars (size 2t+1). Callers may override the
// constraint for individual cycle edges or partner pairs.
WheelIds add_wheel(MinCspInstance& I, const std::vector<int>& vars, bool unweighted,
                   const std::function<bool(int)>& cycle_crisp = {},
                   const std::function<bool(int)>& skip_partner = {}) {
  const int n = static_cast<int>(vars.size());
  const int t = (n - 1) / 2;
  WheelIds ids;
  const long long eq_weight = unweighted ? 1 : 2;
  for (int i = 0; i < n; ++i) {
    const bool crisp = cycle_crisp && cycle_crisp(i);
    ids.cycle.push_back(I.add_constraint(eq_relation(), {vars[static_cast<std::size_t>(i)],
                                                         vars[static_cast<std::size_t>((i + 1) % n)]},
                                         crisp, crisp ? 1 : eq_weight));
  }
  for (int i = 0; i < n; ++i) {
    if (skip_partner && skip_partner(i)) {
      ids.partner.push_back(static_cast<std::size_t>(-1));
      continue;
    }
    const bool soft = 1 <= i && i <= t;
    ids.partner.push_back(I.add_constraint(
        neq_relation(), {vars[static_cast<std::size_t>(i)], vars[static_cast<std::size_t>((i + t) % n)]}, !soft));
  }
  return ids;
}

}  // namespace

std::vector<std::size_t> WheelGadget::shape(int i) const {
  std::vector<std::size_t> s{cycle[static_cast<std::size_t>(i - 1)], partner[static_cast<std::size_t>(i)],
                             cycle[static_cast<std::size_t>(forward(i))]};
  std::sort(s.begin(), s.end());
  return s;
}

WheelGadget wheel(int t, bool unweighted) {
  if (t < 2) throw Error("the choice gadget needs a base set of size at least two");
  WheelGadget w;
  w.t = t;
  w.unweighted = unweighted;
  w.instance.set_name("wheel_t" + std::to_string(t));
  std::vector<int> vars;
  for (int i = 0; i <= 2 * t; ++i) vars.push_back(w.instance.add_variable("v" + std::to_string(i)));
  auto ids = add_wheel(w.instance, vars, unweighted);
  w.cycle = std::move(ids.cycle);
  w.partner = std::move(ids.partner);
  return w;
}

WheelReport wheel_verify(const WheelGadget& w) {
  WheelReport rep;
  rep.expected_cost = w.unweighted ? 3 : 5;
  rep.cost = brute_force_cost(w.instance).report.cost;
  const auto& cs = w.instance.constraints();
  std::vector<std::size_t> soft;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!cs[i].crisp) soft.push_back(i);
  }
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, long long)> rec = [&](std::size_t from, long long spent) {
    if (spent > 0) {
      const bool consistent = is_consistent(w.instance.without(chosen));
      if (consistent && spent < rep.cost) rep.cheaper_deletion_found = true;
      if (consistent && spent == rep.cost) rep.optimal_deletions.push_back(chosen);
    }
    for (std::size_t i = from; i < soft.size(); ++i) {
      const long long next = spent + cs[soft[i]].multiplicity;
      if (next > rep.cost) continue;
      chosen.push_back(soft[i]);
      rec(i + 1, next);
      chosen.pop_back();
    }
  };
  rec(0, 0);
  std::sort(rep.optimal_deletions.begin(), rep.optimal_deletions.end());

  if (rep.cost != rep.expected_cost) {
    rep.ok = false;
    rep.detail = "cost " + std::to_string(rep.cost) + ", expected " + std::to_string(rep.expected_cost);
  } else if (rep.cheaper_deletion_found) {
    rep.ok = false;
    rep.detail = "a deletion cheaper than the oracle optimum leaves a consistent instance";
  } else if (!w.unweighted) {
    std::vector<std::vector<std::size_t>> shapes;
    for (int i = 1; i <= w.t; ++i) shapes.push_back(w.shape(i));
    std::sort(shapes.begin(), shapes.end());
    if (shapes != rep.optimal_deletions) {
      rep.ok = false;
      rep.detail = std::to_string(rep.optimal_deletions.size()) + " optimal deletions, expected " +
                   std::to_string(shapes.size()) + " choice shapes";
    }
  }
  return rep;
}

// ---------------------------------------------------------------- split paired cut

namespace {

bool spc_cut(const SpcGraph& g, const std::vector<bool>& removed) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<int>> adj(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (removed[e]) continue;
    adj[static_cast<std::size_t>(g.edges[e].first)].push_back(g.edges[e].second);
    adj[static_cast<std::size_t>(g.edges[e].second)].push_back(g.edges[e].first);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{g.s};
  seen[static_cast<std::size_t>(g.s)] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  return !seen[static_cast<std::size_t>(g.t)];
}

void check_spc(const SplitPairedCutInstance& spc) {
  std::vector<bool> used1(spc.g1.edges.size(), false);
  std::vector<bool> used2(spc.g2.edges.size(), false);
  for (auto [a, b] : spc.pairs) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= used1.size() || static_cast<std::size_t>(b) >= used2.size()) {
      throw Error("pair references an unknown edge");
    }
    if (used1[static_cast<std::size_t>(a)] || used2[static_cast<std::size_t>(b)]) throw Error("pairs must be disjoint");
    used1[static_cast<std::size_t>(a)] = used2[static_cast<std::size_t>(b)] = true;
  }
}

// Kind of a 4-ary relation (x1 ? x2) & (x3 ? x4) & cross disequalities.
std::optional<DoubleKind> double_kind(const EqRelation& r) {
  if (r.arity() != 4 || !is_conjunctive(r)) return std::nullopt;
  const auto blue = entailed_equalities(r);
  const auto red = entailed_disequalities(r);
  auto has = [](const std::vector<std::pair<int, int>>& es, int a, int b) {
    return std::find(es.begin(), es.end(), std::pair{a, b}) != es.end();
  };
  for (auto [a, b] : blue) {
    if (!((a == 0 && b == 1) || (a == 2 && b == 3))) return std::nullopt;
  }
  const bool b01 = has(blue, 0, 1), b23 = has(blue, 2, 3);
  const bool r01 = has(red, 0, 1), r23 = has(red, 2, 3);
  if (!(b01 || r01) || !(b23 || r23)) return std::nullopt;
  if (b01 && b23) return DoubleKind::EqEq;
  if (b01 && r23) return DoubleKind::EqNeq;
  if (r01 && r23) return DoubleKind::NeqNeq;
  return std::nullopt;
}

void require_kind(const RelationPtr& r, DoubleKind kind) {
  const auto k = double_kind(*r);
  if (!k || *k != kind) {
    throw Error("relation '" + r->name() + "' is not a " + to_string(kind) + "-relation");
  }
}

std::vector<FlowPath> flow_or_compute(const std::optional<std::vector<FlowPath>>& given, const SpcGraph& g, int k) {
  if (given) return *given;
  auto f = decompose_flow(g, k);
  if (!f) throw Error("graph has no decomposition into " + std::to_string(k) + " edge-disjoint paths");
  return *f;
}

// Variables for every vertex of g, prefixed.
std::vector<int> add_graph_vars(MinCspInstance& I, const SpcGraph& g, const std::string& prefix) {
  std::vector<int> ids;
  for (const auto& v : g.vertices) ids.push_back(I.add_variable(prefix + v));
  return ids;
}

struct WheelPlacement {
  std::vector<int> vars;  // wheel variables v_0 .. v_{2p}
  int p = 0;
  int partner_of(int i) const { return vars[static_cast<std::size_t>((i + p) % (2 * p + 1))]; }
};

// Builds a wheel along every path; edge_pos maps edge id -> (path, position i with e = v_{i-1} v_i).
std::vector<WheelPlacement> add_path_wheels(MinCspInstance& I, const std::vector<FlowPath>& paths,
                                            const std::vector<int>& vertex_vars, const std::string& prefix,
                                            const std::vector<bool>& paired,
                                            std::vector<std::pair<int, int>>& edge_pos) {
  std::vector<WheelPlacement> out;
  for (std::size_t pi = 0; pi < paths.size(); ++pi) {
    const FlowPath& path = paths[pi];
    WheelPlacement wp;
    wp.p = static_cast<int>(path.edges.size());
    for (int v : path.vertices) wp.vars.push_back(vertex_vars[static_cast<std::size_t>(v)]);
    for (int j = wp.p + 1; j <= 2 * wp.p; ++j) {
      wp.vars.push_back(I.add_variable(prefix + "P" + std::to_string(pi + 1) + "." + std::to_string(j)));
    }
    for (int i = 0; i < wp.p; ++i) edge_pos[static_cast<std::size_t>(path.edges[static_cast<std::size_t>(i)])] = {static_cast<int>(pi), i + 1};
    add_wheel(
        I, wp.vars, false,
        [&](int i) { return i < wp.p && !paired[static_cast<std::size_t>(path.edges[static_cast<std::size_t>(i)])]; },
        [&](int i) { return 1 <= i && i <= wp.p && paired[static_cast<std::size_t>(path.edges[static_cast<std::size_t>(i - 1)])]; });
    out.push_back(std::move(wp));
  }
  return out;
}

}  // namespace

bool spc_oracle(const SplitPairedCutInstance& spc) {
  check_spc(spc);
  const std::size_t m = spc.pairs.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (std::popcount(mask) > spc.k) continue;
    std::vector<bool> r1(spc.g1.edges.size(), false);
    std::vector<bool> r2(spc.g2.edges.size(), false);
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) {
        r1[static_cast<std::size_t>(spc.pairs[i].first)] = true;
        r2[static_cast<std::size_t>(spc.pairs[i].second)] = true;
      }
    }
    if (spc_cut(spc.g1, r1) && spc_cut(spc.g2, r2)) return true;
  }
  return false;
}

std::optional<std::vector<FlowPath>> decompose_flow(const SpcGraph& g, int k) {
  const std::size_t m = g.edges.size();
  // flow[e] in {-1, 0, 1}: direction of unit flow along edge e.
  std::vector<int> flow(m, 0);
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<int>> inc(n);
  for (std::size_t e = 0; e < m; ++e) {
    inc[static_cast<std::size_t>(g.edges[e].first)].push_back(static_cast<int>(e));
    inc[static_cast<std::size_t>(g.edges[e].second)].push_back(static_cast<int>(e));
  }
  auto residual = [&](int e, int from) {
    const bool forward = g.edges[static_cast<std::size_t>(e)].first == from;
    return forward ? flow[static_cast<std::size_t>(e)] < 1 : flow[static_cast<std::size_t>(e)] > -1;
  };
  int value = 0;
  while (value <= k) {
    std::vector<int> via(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<int> q{g.s};
    seen[static_cast<std::size_t>(g.s)] = true;
    while (!q.empty() && !seen[static_cast<std::size_t>(g.t)]) {
      const int u = q.front();
      q.pop_front();
      for (int e : inc[static_cast<std::size_t>(u)]) {
        const auto [a, b] = g.edges[static_cast<std::size_t>(e)];
        const int v = a == u ? b : a;
        if (!seen[static_cast<std::size_t>(v)] && residual(e, u)) {
          seen[static_cast<std::size_t>(v)] = true;
          via[static_cast<std::size_t>(v)] = e;
          q.push_back(v);
        }
      }
    }
    if (!seen[static_cast<std::size_t>(g.t)]) break;
    for (int v = g.t; v != g.s;) {
      const int e = via[static_cast<std::size_t>(v)];
      const auto [a, b] = g.edges[static_cast<std::size_t>(e)];
      const int u = a == v ? b : a;
      flow[static_cast<std::size_t>(e)] += (a == u) ? 1 : -1;
      v = u;
    }
    ++value;
  }
  if (value != k) return std::nullopt;
  if (std::any_of(flow.begin(), flow.end(), [](int f) { return f == 0; })) return std::nullopt;

  std::vector<bool> used(m, false);
  std::vector<FlowPath> paths;
  for (int i = 0; i < k; ++i) {
    FlowPath p;
    p.vertices.push_back(g.s);
    int u = g.s;
    while (u != g.t) {
      int next_edge = -1;
      for (int e : inc[static_cast<std::size_t>(u)]) {
        if (used[static_cast<std::size_t>(e)]) continue;
        const auto [a, b] = g.edges[static_cast<std::size_t>(e)];
        const int tail = flow[static_cast<std::size_t>(e)] == 1 ? a : b;
        if (tail == u) {
          next_edge = e;
          break;
        }
      }
      if (next_edge < 0) return std::nullopt;
      used[static_cast<std::size_t>(next_edge)] = true;
      const auto [a, b] = g.edges[static_cast<std::size_t>(next_edge)];
      u = a == u ? b : a;
      if (std::find(p.vertices.begin(), p.vertices.end(), u) != p.vertices.end()) return std::nullopt;
      p.vertices.push_back(u);
      p.edges.push_back(next_edge);
    }
    paths.push_back(std::move(p));
  }
  if (std::any_of(used.begin(), used.end(), [](bool b) { return !b; })) return std::nullopt;
  return paths;
}

ReducedInstance spc_to_eq_eq(const SplitPairedCutInstance& spc, RelationPtr r) {
  check_spc(spc);
  require_kind(r, DoubleKind::EqEq);
  ReducedInstance out;
  out.budget = spc.k;
  MinCspInstance& I = out.instance;
  const auto v1 = add_graph_vars(I, spc.g1, "a.");
  const auto v2 = add_graph_vars(I, spc.g2, "b.");
  std::vector<bool> paired1(spc.g1.edges.size(), false), paired2(spc.g2.edges.size(), false);
  for (auto [a, b] : spc.pairs) paired1[static_cast<std::size_t>(a)] = paired2[static_cast<std::size_t>(b)] = true;
  for (std::size_t e = 0; e < spc.g1.edges.size(); ++e) {
    if (!paired1[e]) I.add_constraint(eq_relation(), {v1[static_cast<std::size_t>(spc.g1.edges[e].first)], v1[static_cast<std::size_t>(spc.g1.edges[e].second)]}, true);
  }
  for (std::size_t e = 0; e < spc.g2.edges.size(); ++e) {
    if (!paired2[e]) I.add_constraint(eq_relation(), {v2[static_cast<std::size_t>(spc.g2.edges[e].first)], v2[static_cast<std::size_t>(spc.g2.edges[e].second)]}, true);
  }
  I.add_constraint(neq_relation(), {v1[static_cast<std::size_t>(spc.g1.s)], v1[static_cast<std::size_t>(spc.g1.t)]}, true);
  I.add_constraint(neq_relation(), {v2[static_cast<std::size_t>(spc.g2.s)], v2[static_cast<std::size_t>(spc.g2.t)]}, true);
  for (auto [a, b] : spc.pairs) {
    const auto e1 = spc.g1.edges[static_cast<std::size_t>(a)];
    const auto e2 = spc.g2.edges[static_cast<std::size_t>(b)];
    I.add_constraint(r, {v1[static_cast<std::size_t>(e1.first)], v1[static_cast<std::size_t>(e1.second)],
                         v2[static_cast<std::size_t>(e2.first)], v2[static_cast<std::size_t>(e2.second)]}, false);
  }
  return out;
}

ReducedInstance spc_to_neq_neq(const SplitPairedCutInstance& spc, RelationPtr r) {
  check_spc(spc);
  require_kind(r, DoubleKind::NeqNeq);
  const auto f1 = flow_or_compute(spc.flow1, spc.g1, spc.k);
  const auto f2 = flow_or_compute(spc.flow2, spc.g2, spc.k);
  ReducedInstance out;
  out.budget = 9LL * spc.k;
  MinCspInstance& I = out.instance;
  const auto v1 = add_graph_vars(I, spc.g1, "a.");
  const auto v2 = add_graph_vars(I, spc.g2, "b.");
  std::vector<bool> paired1(spc.g1.edges.size(), false), paired2(spc.g2.edges.size(), false);
  for (auto [a, b] : spc.pairs) paired1[static_cast<std::size_t>(a)] = paired2[static_cast<std::size_t>(b)] = true;
  std::vector<std::pair<int, int>> pos1(spc.g1.edges.size()), pos2(spc.g2.edges.size());
  const auto w1 = add_path_wheels(I, f1, v1, "a.", paired1, pos1);
  const auto w2 = add_path_wheels(I, f2, v2, "b.", paired2, pos2);
  for (auto [a, b] : spc.pairs) {
    const auto [p, i] = pos1[static_cast<std::size_t>(a)];
    const auto [q, j] = pos2[static_cast<std::size_t>(b)];
    const auto& wp = w1[static_cast<std::size_t>(p)];
    const auto& wq = w2[static_cast<std::size_t>(q)];
    I.add_constraint(r, {wp.vars[static_cast<std::size_t>(i)], wp.partner_of(i), wq.vars[static_cast<std::size_t>(j)], wq.partner_of(j)}, false);
  }
  out.notes.push_back("budget 9k for flow value k");
  return out;
}

ReducedInstance spc_to_eq_neq(const SplitPairedCutInstance& spc, RelationPtr r) {
  check_spc(spc);
  require_kind(r, DoubleKind::EqNeq);
  const auto f2 = flow_or_compute(spc.flow2, spc.g2, spc.k);
  ReducedInstance out;
  out.budget = 5LL * spc.k;
  MinCspInstance& I = out.instance;
  const auto v1 = add_graph_vars(I, spc.g1, "a.");
  const auto v2 = add_graph_vars(I, spc.g2, "b.");
  std::vector<bool> paired1(spc.g1.edges.size(), false), paired2(spc.g2.edges.size(), false);
  for (auto [a, b] : spc.pairs) paired1[static_cast<std::size_t>(a)] = paired2[static_cast<std::size_t>(b)] = true;
  for (std::size_t e = 0; e < spc.g1.edges.size(); ++e) {
    if (!paired1[e]) I.add_constraint(eq_relation(), {v1[static_cast<std::size_t>(spc.g1.edges[e].first)], v1[static_cast<std::size_t>(spc.g1.edges[e].second)]}, true);
  }
  I.add_constraint(neq_relation(), {v1[static_cast<std::size_t>(spc.g1.s)], v1[static_cast<std::size_t>(spc.g1.t)]}, true);
  std::vector<std::pair<int, int>> pos2(spc.g2.edges.size());
  const auto w2 = add_path_wheels(I, f2, v2, "b.", paired2, pos2);
  for (auto [a, b] : spc.pairs) {
    const auto e1 = spc.g1.edges[static_cast<std::size_t>(a)];
    const auto [q, j] = pos2[static_cast<std::size_t>(b)];
    const auto& wq = w2[static_cast<std::size_t>(q)];
    I.add_constraint(r, {v1[static_cast<std::size_t>(e1.first)], v1[static_cast<std::size_t>(e1.second)],
                         wq.vars[static_cast<std::size_t>(j)], wq.partner_of(j)}, false);
  }
  out.notes.push_back("budget 5k for flow value k");
  return out;
}

// ---------------------------------------------------------------- MIS

bool mis_oracle(const CutGraph& g, const std::vector<VertexSet>& classes) {
  std::vector<int> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == classes.size()) return true;
    for (int v : classes[i]) {
      if (std::any_of(pick.begin(), pick.end(), [&](int u) { return g.adjacent(u, v); })) continue;
      pick.push_back(v);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

ReducedInstance mis_to_disjneqneq(const CutGraph& g, const std::vector<VertexSet>& classes) {
  ReducedInstance out;
  out.budget = 5LL * static_cast<long long>(classes.size());
  MinCspInstance& I = out.instance;
  std::vector<int> class_of(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<int> position(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<WheelPlacement> wheels;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].empty()) throw Error("empty colour class");
    WheelPlacement wp;
    wp.p = static_cast<int>(classes[i].size());
    for (int m = 0; m <= 2 * wp.p; ++m) {
      wp.vars.push_back(I.add_variable("x" + std::to_string(i + 1) + "." + std::to_string(m)));
    }
    add_wheel(I, wp.vars, false);
    for (std::size_t j = 0; j < classes[i].size(); ++j) {
      const int v = classes[i][j];
      if (class_of[static_cast<std::size_t>(v)] >= 0) throw Error("colour classes must be disjoint");
      class_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
      position[static_cast<std::size_t>(v)] = static_cast<int>(j) + 1;
    }
    wheels.push_back(std::move(wp));
  }
  for (const auto& e : g.edges()) {
    const int cu = class_of[static_cast<std::size_t>(e.u)];
    const int cv = class_of[static_cast<std::size_t>(e.v)];
    if (cu < 0 || cv < 0) throw Error("colour classes must cover the graph");
    if (cu == cv) continue;  // only one vertex per class is chosen
    const auto& wu = wheels[static_cast<std::size_t>(cu)];
    const auto& wv = wheels[static_cast<std::size_t>(cv)];
    const int ju = position[static_cast<std::size_t>(e.u)];
    const int jv = position[static_cast<std::size_t>(e.v)];
    I.add_constraint(or_neq_neq_relation(),
                     {wu.vars[static_cast<std::size_t>(ju)], wu.partner_of(ju), wv.vars[static_cast<std::size_t>(jv)], wv.partner_of(jv)},
                     true);
  }
  return out;
}

// ---------------------------------------------------------------- constants

Gadget odd3_nary_gadget(int n) {
  if (n < 1) throw Error("arity must be positive");
  Gadget g;
  g.implementation = false;
  MinCspInstance& I = g.body;
  for (int i = 1; i <= n; ++i) g.primary.push_back(I.add_variable("x" + std::to_string(i)));
  const int z1 = I.add_variable("z1");
  const int z2 = I.add_variable("z2");
  I.add_assignment(z1, 1, true);
  I.add_assignment(z2, 2, true);
  int last = g.primary[0];
  for (int i = 2; i <= n; ++i) {
    const int y = I.add_variable("y" + std::to_string(i));
    I.add_constraint(odd3_relation(), {last, g.primary[static_cast<std::size_t>(i - 1)], y}, true);
    last = y;
  }
  I.add_constraint(odd3_relation(), {z1, z2, last}, true);
  return g;
}

ReducedInstance hitting_set_to_odd3_constants(const HittingSetInstance& hs, long long k) {
  ReducedInstance out;
  out.budget = k;
  MinCspInstance& I = out.instance;
  std::vector<int> v;
  for (int i = 0; i < hs.universe; ++i) v.push_back(I.add_variable("v" + std::to_string(i + 1)));
  for (int x : v) I.add_assignment(x, 1, false);
  for (std::size_t e = 0; e < hs.sets.size(); ++e) {
    const auto set = normalized_set(hs.sets[e], hs.universe);
    const Gadget g = odd3_nary_gadget(static_cast<int>(set.size()));
    std::vector<int> map(static_cast<std::size_t>(g.body.num_variables()), -1);
    for (std::size_t i = 0; i < set.size(); ++i) map[static_cast<std::size_t>(g.primary[i])] = v[static_cast<std::size_t>(set[i])];
    for (int b = 0; b < g.body.num_variables(); ++b) {
      if (map[static_cast<std::size_t>(b)] < 0) {
        map[static_cast<std::size_t>(b)] = I.add_variable("s" + std::to_string(e + 1) + "." + g.body.variable_name(b));
      }
    }
    for (const auto& c : g.body.constraints()) {
      if (c.is_assignment()) {
        I.add_assignment(map[static_cast<std::size_t>(c.scope[0])], c.constant, true);
        continue;
      }
      std::vector<int> scope;
      for (int s : c.scope) scope.push_back(map[static_cast<std::size_t>(s)]);
      I.add_constraint(c.relation, scope, true);
    }
  }
  return out;
}

MinCspInstance emulate_constants(const MinCspInstance& instance) {
  MinCspInstance out(instance.name());
  for (int v = 0; v < instance.num_variables(); ++v) out.add_variable(instance.variable_name(v));
  std::map<long long, int> anchor;
  for (long long c : instance.constants()) anchor[c] = out.add_variable("_t" + std::to_string(c));
  for (auto a = anchor.begin(); a != anchor.end(); ++a) {
    for (auto b = std::next(a); b != anchor.end(); ++b) out.add_constraint(neq_relation(), {a->second, b->second}, true);
  }
  for (const auto& c : instance.constraints()) {
    if (c.is_assignment()) {
      out.add_constraint(eq_relation(), {c.scope[0], anchor.at(c.constant)}, c.crisp, c.multiplicity);
    } else {
      out.add_constraint(c.relation, c.scope, c.crisp, c.multiplicity);
    }
  }
  return out;
}

}  // namespace eqcut
