#include "eqcut/lemma_checks.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "eqcut/boolean.hpp"
#include "eqcut/classify.hpp"
#include "eqcut/djmc.hpp"
#include "eqcut/expressive.hpp"
#include "eqcut/io.hpp"
#include "eqcut/negative.hpp"
#include "eqcut/oracle.hpp"
#include "eqcut/relations.hpp"
#include "eqcut/singleton.hpp"
#include "eqcut/steiner.hpp"
#include "eqcut/triple_multicut.hpp"

namespace eqcut {

namespace gen {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

CutGraph random_graph(Rng& rng, int n, double edge_p, double undeletable_p, long long max_mult) {
  CutGraph g;
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v), coin(rng, undeletable_p));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng, edge_p)) g.add_edge(u, v, uniform(rng, 1, static_cast<int>(max_mult)));
    }
  }
  return g;
}

std::vector<Request> random_requests(Rng& rng, int n, int count) {
  std::vector<Request> out;
  for (int i = 0; i < count; ++i) {
    int s = uniform(rng, 0, n - 1), t = uniform(rng, 0, n - 2);
    if (t >= s) ++t;
    out.push_back({std::min(s, t), std::max(s, t)});
  }
  return out;
}

namespace {

std::vector<int> sample_distinct(Rng& rng, int n, int size) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(std::min(n, size)));
  return all;
}

}  // namespace

std::vector<VertexSet> random_terminal_sets(Rng& rng, int n, int count, int min_size, int max_size) {
  std::vector<VertexSet> out;
  for (int i = 0; i < count; ++i) out.push_back(make_vertex_set(sample_distinct(rng, n, uniform(rng, min_size, max_size))));
  return out;
}

TripleSet random_triples(Rng& rng, int n, int count, double crisp_p, long long max_weight) {
  TripleSet out;
  for (int i = 0; i < count; ++i) {
    const auto vs = sample_distinct(rng, n, 3);
    Triple t;
    t.v = {vs[0], vs[1], vs[2]};
    t.crisp = coin(rng, crisp_p);
    t.weight = t.crisp ? 1 : uniform(rng, 1, static_cast<int>(max_weight));
    out.push_back(t);
  }
  return out;
}

std::vector<RequestList> random_lists(Rng& rng, const CutGraph& g, int count, int d, double singleton_p) {
  const int n = g.num_vertices();
  std::vector<RequestList> out;
  for (int i = 0; i < count; ++i) {
    std::vector<Request> reqs;
    const int len = uniform(rng, 1, d);
    for (int j = 0; j < len; ++j) {
      if (coin(rng, singleton_p)) {
        const int s = uniform(rng, 0, n - 1);
        reqs.push_back({s, s});
      } else {
        reqs.push_back(random_requests(rng, n, 1)[0]);
      }
    }
    out.push_back(make_request_list(std::move(reqs)));
  }
  return out;
}

MinCspInstance random_instance(Rng& rng, const std::vector<RelationPtr>& relations, int vars, int constraints,
                               double crisp_p, long long max_mult) {
  MinCspInstance inst("random");
  for (int v = 0; v < vars; ++v) inst.add_variable("x" + std::to_string(v));
  for (int i = 0; i < constraints; ++i) {
    const auto& r = relations[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(relations.size()) - 1))];
    std::vector<int> scope;
    if (r->arity() <= vars) {
      scope = sample_distinct(rng, vars, r->arity());
    } else {
      for (int j = 0; j < r->arity(); ++j) scope.push_back(uniform(rng, 0, vars - 1));
    }
    const bool crisp = coin(rng, crisp_p);
    inst.add_constraint(r, scope, crisp, crisp ? 1 : uniform(rng, 1, static_cast<int>(max_mult)));
  }
  return inst;
}

void add_random_assignments(Rng& rng, MinCspInstance& instance, int count, int constants, double crisp_p,
                            long long max_mult) {
  for (int i = 0; i < count; ++i) {
    const bool crisp = coin(rng, crisp_p);
    instance.add_assignment(uniform(rng, 0, instance.num_variables() - 1), uniform(rng, 1, constants), crisp,
                            crisp ? 1 : uniform(rng, 1, static_cast<int>(max_mult)));
  }
}

HittingSetInstance random_hitting_set(Rng& rng, int universe, int sets, int max_size) {
  HittingSetInstance hs;
  hs.universe = universe;
  for (int i = 0; i < sets; ++i) {
    auto s = sample_distinct(rng, universe, uniform(rng, 1, max_size));
    std::sort(s.begin(), s.end());
    hs.sets.push_back(s);
  }
  return hs;
}

namespace {

SpcGraph random_paths(Rng& rng, int k, int max_len, const std::string& prefix) {
  SpcGraph g;
  g.vertices = {prefix + "s", prefix + "t"};
  g.s = 0;
  g.t = 1;
  for (int p = 0; p < k; ++p) {
    const int len = uniform(rng, 1, max_len);
    int prev = g.s;
    for (int i = 1; i < len; ++i) {
      g.vertices.push_back(prefix + std::to_string(p) + "." + std::to_string(i));
      const int v = static_cast<int>(g.vertices.size()) - 1;
      g.edges.push_back({prev, v});
      prev = v;
    }
    g.edges.push_back({prev, g.t});
  }
  return g;
}

}  // namespace

SplitPairedCutInstance random_spc(Rng& rng, int k, int max_len) {
  SplitPairedCutInstance spc;
  spc.k = k;
  spc.g1 = random_paths(rng, k, max_len, "p");
  spc.g2 = random_paths(rng, k, max_len, "q");
  std::vector<int> e1(spc.g1.edges.size()), e2(spc.g2.edges.size());
  std::iota(e1.begin(), e1.end(), 0);
  std::iota(e2.begin(), e2.end(), 0);
  std::shuffle(e1.begin(), e1.end(), rng);
  std::shuffle(e2.begin(), e2.end(), rng);
  const int m = uniform(rng, 1, static_cast<int>(std::min(e1.size(), e2.size())));
  for (int i = 0; i < m; ++i) spc.pairs.push_back({e1[static_cast<std::size_t>(i)], e2[static_cast<std::size_t>(i)]});
  return spc;
}

EqRelation random_relation(Rng& rng, int arity, const std::string& name) {
  std::vector<EqTuple> tuples;
  for (const auto& t : all_patterns(arity)) {
    if (coin(rng, 0.5)) tuples.push_back(t);
  }
  return EqRelation(arity, std::move(tuples), name);
}

}  // namespace gen

namespace {

using gen::Rng;

struct Recorder {
  CheckResult r;
  explicit Recorder(std::string name) { r.name = std::move(name); }
  void trial() { ++r.trials; }
  void fail(const std::string& detail) {
    if (r.failures++ == 0) r.detail = detail;
  }
};

std::string cost_str(const CostReport& c) { return c.infinite ? "inf" : std::to_string(c.cost); }

std::string opt_str(const std::optional<long long>& v) { return v ? std::to_string(*v) : "none"; }

// Minimum cost capped at limit + 1 ("more than limit").
long long capped(const CostReport& c, long long limit) { return c.infinite ? limit + 1 : std::min(c.cost, limit + 1); }

RelationPtr named(const std::string& name, int arity, const CnfFormula& phi) {
  return std::make_shared<EqRelation>(relation_from_cnf(phi, arity, name));
}

RelationPtr split_relation() {
  return named("SPLIT3", 3,
               {make_clause({make_literal(0, 1, true)}), make_clause({make_literal(0, 2, false)}),
                make_clause({make_literal(1, 2, false)})});
}

CheckResult check_gadgets(int, std::uint64_t) {
  Recorder rec("gadgets-expressive");
  for (const auto& row : classification_table()) {
    const auto& r = row.relation;
    auto attempt = [&](const std::string& what, const std::function<void()>& f) {
      rec.trial();
      try {
        f();
      } catch (const std::exception& e) {
        rec.fail(what + " on " + r->name() + ": " + e.what());
      }
    };
    if (!is_constant(*r)) {
      attempt("disequality gadget", [&] {
        auto chk = verify_gadget(implement_disequality(r), *neq_relation());
        if (!chk.ok) throw Error(chk.detail);
      });
    }
    if (is_horn(*r) && !is_strictly_negative(*r)) {
      attempt("equality gadget", [&] {
        auto chk = verify_gadget(implement_equality(r), *eq_relation());
        if (!chk.ok) throw Error(chk.detail);
      });
    }
    if (is_negative(*r) && !is_conjunctive(*r)) {
      attempt("negative witness", [&] { (void)extract_nae3_or_disjneqneq(r); });
    }
    const auto core = essential_core(*r).relation;
    if (is_conjunctive(core) && !is_split(core) && !is_neq3(core)) {
      attempt("double conjunction", [&] { (void)extract_double_conjunction(*r); });
    }
  }
  return rec.r;
}

CheckResult check_edge_multicut(int trials, std::uint64_t seed) {
  Recorder rec("edge-multicut-to-mincsp");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int n = gen::uniform(rng, 2, 7);
    const auto g = gen::random_graph(rng, n, 0.45, 0.0, 2);
    const auto reqs = gen::random_requests(rng, n, gen::uniform(rng, 1, 3));
    const auto red = edge_multicut_to_mincsp(g, reqs, 0);
    const auto want = edge_multicut_oracle(g, reqs);
    const auto got = brute_force_cost(red.instance).report;
    rec.trial();
    if (!want || got.infinite || got.cost != *want) {
      rec.fail("trial " + std::to_string(t) + ": multicut " + opt_str(want) + " vs mincsp " + cost_str(got));
    }
  }
  return rec.r;
}

CheckResult check_triple_reduction(int trials, std::uint64_t seed) {
  Recorder rec("mincsp-to-triple-multicut");
  Rng rng(seed);
  const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), neq3_relation(), split_relation(),
                                      disj_neq_relation(1)};
  constexpr long long kLimit = 5;
  for (int t = 0; t < trials; ++t) {
    const auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.2, 2);
    const auto red = mincsp_to_triple_multicut(inst, kLimit);
    const long long want = capped(brute_force_cost(inst).report, kLimit);
    const auto sol = triple_multicut_oracle(red.graph, red.triples, kLimit);
    const long long got = sol ? sol->cost : kLimit + 1;
    rec.trial();
    if (want != got) {
      rec.fail("trial " + std::to_string(t) + ": mincsp " + std::to_string(want) + " vs triple multicut " +
               std::to_string(got) + "\n" + print_instance(inst));
    }
  }
  return rec.r;
}

CheckResult check_hitting_set(int trials, std::uint64_t seed, bool constants) {
  Recorder rec(constants ? "hitting-set-to-odd3-constants" : "hitting-set-to-odd3");
  Rng rng(seed);
  for (int t = 0; t < trials;) {
    const auto hs = gen::random_hitting_set(rng, gen::uniform(rng, 2, 4), gen::uniform(rng, 1, 3), 3);
    const auto red = constants ? hitting_set_to_odd3_constants(hs, 0) : hitting_set_to_odd3(hs, 0);
    if (red.instance.num_variables() > 11) continue;
    ++t;
    const auto want = hitting_set_oracle(hs);
    const auto got = brute_force_cost(red.instance).report;
    rec.trial();
    for (int k = 0; k <= hs.universe; ++k) {
      if ((want && *want <= k) != got.within(k)) {
        std::ostringstream s;
        s << "trial " << t << " k=" << k << ": hitting set " << opt_str(want ? std::optional<long long>(*want) : std::nullopt)
          << " vs mincsp " << cost_str(got);
        rec.fail(s.str());
        break;
      }
    }
  }
  return rec.r;
}

CheckResult check_steiner_to_nae3(int trials, std::uint64_t seed) {
  Recorder rec("steiner-to-nae3");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int n = gen::uniform(rng, 3, 7);
    const auto g = gen::random_graph(rng, n, 0.45, 0.0, 2);
    const auto sets = gen::random_terminal_sets(rng, n, gen::uniform(rng, 1, 3), 2, 3);
    const auto red = steiner_to_nae3(g, sets, 0);
    const auto want = edge_steiner_oracle(g, sets);
    const auto got = brute_force_cost(red.instance).report;
    rec.trial();
    if (!want || got.infinite || got.cost != *want) {
      rec.fail("trial " + std::to_string(t) + ": steiner " + opt_str(want) + " vs mincsp " + cost_str(got));
    }
  }
  return rec.r;
}

CheckResult check_nae3_to_steiner(int trials, std::uint64_t seed) {
  Recorder rec("nae3-to-steiner");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int vars = gen::uniform(rng, 3, 7);
    auto inst = gen::random_instance(rng, {eq_relation()}, vars, gen::uniform(rng, 1, 7), 0.0, 2);
    const int sets = gen::uniform(rng, 1, 3);
    for (int i = 0; i < sets; ++i) {
      auto vs = gen::sample_distinct(rng, vars, gen::uniform(rng, 2, 3));
      inst.add_constraint(vs.size() == 3 ? nae3_relation() : neq_relation(), vs, true);
    }
    const auto red = nae3_to_steiner(inst, 0);
    const auto want = brute_force_cost(inst).report;
    const auto got = edge_steiner_oracle(red.graph, red.sets);
    rec.trial();
    if (!got || want.infinite || want.cost != *got) {
      rec.fail("trial " + std::to_string(t) + ": mincsp " + cost_str(want) + " vs steiner " + opt_str(got));
    }
  }
  return rec.r;
}

CheckResult check_rneq(int trials, std::uint64_t seed) {
  Recorder rec("rneq-to-disjunctive-multicut");
  Rng rng(seed);
  const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), disj_neq_relation(2)};
  constexpr int kLimit = 5;
  for (int t = 0; t < trials; ++t) {
    const auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.25, 2);
    const auto red = rneq_to_disjunctive_multicut(inst, kLimit);
    const long long want = capped(brute_force_cost(inst).report, kLimit);
    const auto sol = djmc_oracle(red.graph, red.lists, kLimit);
    const long long got = sol ? static_cast<long long>(sol->size()) : kLimit + 1;
    rec.trial();
    if (want != got) {
      rec.fail("trial " + std::to_string(t) + ": mincsp " + std::to_string(want) + " vs djmc " + std::to_string(got));
    }
  }
  return rec.r;
}

CheckResult check_emulate(int trials, std::uint64_t seed) {
  Recorder rec("emulate-constants");
  Rng rng(seed);
  const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), neq3_relation(), odd3_relation()};
  for (int t = 0; t < trials; ++t) {
    auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.2, 2);
    gen::add_random_assignments(rng, inst, gen::uniform(rng, 1, 3), 3, 0.2, 2);
    const auto want = brute_force_cost(inst).report;
    const auto got = brute_force_cost(emulate_constants(inst)).report;
    rec.trial();
    if (want.infinite != got.infinite || (!want.infinite && want.cost != got.cost)) {
      rec.fail("trial " + std::to_string(t) + ": with constants " + cost_str(want) + " vs emulated " + cost_str(got));
    }
  }
  return rec.r;
}

CheckResult check_wheel(int, std::uint64_t) {
  Recorder rec("wheel");
  for (bool unweighted : {false, true}) {
    for (int t = 2; t <= 4; ++t) {
      const auto rep = wheel_verify(wheel(t, unweighted));
      rec.trial();
      if (!rep.ok) rec.fail("t=" + std::to_string(t) + (unweighted ? " unweighted: " : ": ") + rep.detail);
    }
  }
  return rec.r;
}

CheckResult check_spc(int trials, std::uint64_t seed, DoubleKind kind) {
  Recorder rec(std::string("spc-to-") + to_string(kind));
  Rng rng(seed);
  const RelationPtr r = kind == DoubleKind::EqEq    ? and_eq_eq_relation()
                        : kind == DoubleKind::EqNeq ? and_eq_neq_relation()
                                                    : and_neq_neq_relation();
  for (int t = 0; t < trials;) {
    const int k = gen::uniform(rng, 1, 2);
    const auto spc = gen::random_spc(rng, k, k == 1 ? 3 : 2);
    const auto red = kind == DoubleKind::EqEq    ? spc_to_eq_eq(spc, r)
                     : kind == DoubleKind::EqNeq ? spc_to_eq_neq(spc, r)
                                                 : spc_to_neq_neq(spc, r);
    if (red.instance.num_variables() > 11) continue;
    ++t;
    const bool want = spc_oracle(spc);
    const auto got = brute_force_cost(red.instance).report;
    rec.trial();
    if (want != got.within(red.budget)) {
      rec.fail("trial " + std::to_string(t) + ": spc " + (want ? "yes" : "no") + " vs mincsp " + cost_str(got) +
               " at budget " + std::to_string(red.budget));
    }
  }
  return rec.r;
}

CheckResult check_mis(int trials, std::uint64_t seed) {
  Recorder rec("mis-to-disjneqneq");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int a = gen::uniform(rng, 1, 2), b = gen::uniform(rng, 1, 2);
    CutGraph g;
    std::vector<VertexSet> classes(2);
    for (int i = 0; i < a + b; ++i) {
      g.add_vertex("u" + std::to_string(i));
      classes[i < a ? 0 : 1].push_back(i);
    }
    for (int u = 0; u < a; ++u) {
      for (int v = a; v < a + b; ++v) {
        if (gen::coin(rng, 0.6)) g.add_edge(u, v);
      }
    }
    const auto red = mis_to_disjneqneq(g, classes);
    const bool want = mis_oracle(g, classes);
    const auto got = brute_force_cost(red.instance).report;
    rec.trial();
    if (want != got.within(red.budget)) {
      rec.fail("trial " + std::to_string(t) + ": mis " + (want ? "yes" : "no") + " vs mincsp " + cost_str(got));
    }
  }
  return rec.r;
}

CheckResult check_triple_multicut(int trials, std::uint64_t seed) {
  Recorder rec("triple-multicut");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int n = gen::uniform(rng, 3, 8);
    const auto g = gen::random_graph(rng, n, 0.35, 0.2);
    const auto triples = gen::random_triples(rng, n, gen::uniform(rng, 1, 4), 0.2, 2);
    const int k = gen::uniform(rng, 0, 3);
    const auto want = triple_multicut_oracle(g, triples, k);
    const auto got = triple_multicut(g, triples, k);
    rec.trial();
    if (want.has_value() != got.has_value() || (want && want->cost != got->cost)) {
      rec.fail("trial " + std::to_string(t) + ": oracle " + (want ? std::to_string(want->cost) : "none") +
               " vs solver " + (got ? std::to_string(got->cost) : "none"));
      continue;
    }
    if (got) {
      const auto eval = evaluate_triple_cut(g, triples, got->vertices);
      if (!eval || eval->cost != got->cost) rec.fail("trial " + std::to_string(t) + ": solver returned an invalid cut");
    }
  }
  return rec.r;
}

CheckResult check_boolean(int trials, std::uint64_t seed) {
  Recorder rec("boolean-encoding");
  Rng rng(seed);
  for (int t = 0; t < trials;) {
    const int n = gen::uniform(rng, 3, 7);
    const auto g = gen::random_graph(rng, n, 0.35, 0.2);
    const auto triples = gen::random_triples(rng, n, gen::uniform(rng, 1, 3), 0.2, 2);
    const int k = gen::uniform(rng, 0, 3);
    std::vector<int> alpha(static_cast<std::size_t>(n), -1);
    for (int v : gen::sample_distinct(rng, n, gen::uniform(rng, 1, 4))) alpha[static_cast<std::size_t>(v)] = gen::uniform(rng, 0, 2);
    const auto b = build_boolean_instance(g, triples, alpha, k);
    if (!crisp_consistent(b)) continue;
    ++t;
    const auto want = boolean_oracle(b, k);
    const auto got = boolean_solve(b, k);
    rec.trial();
    if (want.has_value() != got.has_value()) {
      rec.fail("trial " + std::to_string(t) + ": oracle " + opt_str(want) + " vs solver " + (got ? "yes" : "no"));
      continue;
    }
    if (got) {
      long long w = 0;
      for (auto c : *got) w += b.constraints[c].weight;
      if (w != *want || !satisfiable_without(b, *got)) rec.fail("trial " + std::to_string(t) + ": solver deletion invalid");
    }
  }
  return rec.r;
}

CheckResult check_strict_steiner(int trials, std::uint64_t seed) {
  Recorder rec("strict-steiner");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int n = gen::uniform(rng, 3, 10);
    auto g = gen::random_graph(rng, n, 0.3, 0.15);
    g.set_undeletable(0);
    std::vector<VertexSet> sets;
    const int p = gen::uniform(rng, 1, 3);
    for (int i = 0; i < p; ++i) {
      auto vs = gen::sample_distinct(rng, n - 1, gen::uniform(rng, 1, 2));
      for (auto& v : vs) ++v;
      vs.push_back(0);
      sets.push_back(make_vertex_set(vs));
    }
    const int k = gen::uniform(rng, 0, 4);
    StrictSteinerStats st;
    const auto want = vertex_steiner_oracle(g, sets, k);
    const auto got = strict_steiner(g, 0, sets, k, &st);
    rec.trial();
    if (want.has_value() != got.has_value() || (want && want->size() != got->size())) {
      rec.fail("trial " + std::to_string(t) + ": size mismatch");
    } else if (got && (!steiner_feasible(g, sets, *got) || std::binary_search(got->begin(), got->end(), 0))) {
      rec.fail("trial " + std::to_string(t) + ": infeasible cut");
    } else if (st.max_depth > k || !st.flow_monotone) {
      rec.fail("trial " + std::to_string(t) + ": depth " + std::to_string(st.max_depth) + " k " + std::to_string(k) +
               (st.flow_monotone ? "" : ", flow not monotone"));
    }
  }
  return rec.r;
}

CheckResult check_steiner_2approx(int trials, std::uint64_t seed) {
  Recorder rec("steiner-2approx");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int n = gen::uniform(rng, 3, 9);
    const auto g = gen::random_graph(rng, n, 0.35, 0.15);
    const auto sets = gen::random_terminal_sets(rng, n, gen::uniform(rng, 1, 3), 2, 3);
    const int k = gen::uniform(rng, 0, 3);
    const auto opt = vertex_steiner_oracle(g, sets, n);
    const auto res = steiner_2approx(g, sets, k);
    rec.trial();
    const std::string tag = "trial " + std::to_string(t) + ": ";
    if (opt && static_cast<int>(opt->size()) <= k) {
      if (!res.accepted) rec.fail(tag + "rejected a yes-instance");
      else if (!steiner_feasible(g, sets, res.cut) || res.cut.size() > 2 * opt->size()) rec.fail(tag + "cut too large or infeasible");
    } else if (!opt || static_cast<int>(opt->size()) > 2 * k) {
      if (res.accepted) rec.fail(tag + "accepted an instance with optimum above 2k");
    } else if (res.accepted && (!steiner_feasible(g, sets, res.cut) || static_cast<int>(res.cut.size()) > 2 * k)) {
      rec.fail(tag + "invalid cut in the gap region");
    }
  }
  return rec.r;
}

CheckResult check_djmc(int trials, std::uint64_t seed) {
  Recorder rec("disjunctive-multicut");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int d = 1 + t % 2;
    const int n = gen::uniform(rng, 3, 8);
    const auto g = gen::random_graph(rng, n, 0.35, 0.15);
    const auto lists = gen::random_lists(rng, g, gen::uniform(rng, 1, 4), d, 0.2);
    const int k = gen::uniform(rng, 0, 2);
    const auto opt = djmc_oracle(g, lists, k);
    const auto res = solve_djmc(g, lists, k);
    rec.trial();
    const std::string tag = "trial " + std::to_string(t) + ": ";
    if (opt && !res.accepted) rec.fail(tag + "rejected although the optimum is within k");
    else if (res.accepted && !all_lists_satisfied(g, res.solution, lists)) rec.fail(tag + "infeasible solution");
    else if (res.bound_violations > 0) rec.fail(tag + "simplify branch broke a measure bound");
  }
  return rec.r;
}

const std::vector<RelationPtr>& negative_relations() {
  static const std::vector<RelationPtr> rels{neq_relation(), neq3_relation(), nae3_relation(), disj_neq_relation(2)};
  return rels;
}

MinCspInstance random_negative_instance(Rng& rng) {
  auto inst = gen::random_instance(rng, negative_relations(), gen::uniform(rng, 2, 6), gen::uniform(rng, 1, 4), 0.2, 2);
  gen::add_random_assignments(rng, inst, gen::uniform(rng, 1, 4), 2, 0.15, 2);
  return inst;
}

long long deletion_cost(const MinCspInstance& inst, const std::vector<std::size_t>& ids) {
  long long c = 0;
  for (auto i : ids) {
    const auto& con = inst.constraints()[i];
    if (con.crisp) return -1;
    c += con.multiplicity;
  }
  return c;
}

CheckResult check_negative_fpt(int trials, std::uint64_t seed) {
  Recorder rec("negative-fpt");
  Rng rng(seed);
  constexpr long long kLimit = 4;
  for (int t = 0; t < trials; ++t) {
    const auto inst = random_negative_instance(rng);
    const auto want = brute_force_cost(inst).report;
    const auto got = negative_fpt_solve(inst, kLimit);
    rec.trial();
    const std::string tag = "trial " + std::to_string(t) + ": ";
    if (want.within(kLimit) != got.has_value() || (got && got->cost != want.cost)) {
      rec.fail(tag + "oracle " + cost_str(want) + " vs solver " + (got ? std::to_string(got->cost) : "none"));
    } else if (got && (deletion_cost(inst, got->deleted) != got->cost || !is_consistent(inst.without(got->deleted)))) {
      rec.fail(tag + "invalid deletion");
    }
  }
  return rec.r;
}

CheckResult check_negative_approx(int trials, std::uint64_t seed) {
  Recorder rec("negative-approx");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto inst = random_negative_instance(rng);
    const auto want = brute_force_cost(inst).report;
    const auto got = negative_approx(inst);
    rec.trial();
    const std::string tag = "trial " + std::to_string(t) + ": ";
    if (want.infinite != !got.has_value()) {
      rec.fail(tag + "feasibility mismatch");
    } else if (got) {
      if (deletion_cost(inst, got->deleted) != got->cost || !is_consistent(inst.without(got->deleted))) {
        rec.fail(tag + "invalid deletion");
      } else if (got->cost > negative_approx_factor(inst) * want.cost) {
        rec.fail(tag + "cost " + std::to_string(got->cost) + " above factor times optimum " + std::to_string(want.cost));
      }
    }
  }
  return rec.r;
}

CheckResult check_collapse(int trials, std::uint64_t seed) {
  Recorder rec("collapse-vs-retraction");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto r = gen::random_relation(rng, gen::uniform(rng, 1, 4));
    const int c = gen::uniform(rng, 1, 3);
    rec.trial();
    if (preserved_by_collapse(r, c) != retraction_exists_bruteforce(r, c)) {
      rec.fail("trial " + std::to_string(t) + ": mismatch at c=" + std::to_string(c) + "\n" + print_relation(r));
    }
  }
  return rec.r;
}

CheckResult check_round_trip(int trials, std::uint64_t seed) {
  Recorder rec("format-round-trip");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    rec.trial();
    EqLanguage lang;
    lang.add(std::make_shared<EqRelation>(gen::random_relation(rng, gen::uniform(rng, 1, 4), "R" + std::to_string(t))));
    std::istringstream a(print_relations(lang));
    if (!same_language(lang, parse_relations(a))) rec.fail("relation round trip failed");

    auto inst = gen::random_instance(rng, {neq3_relation(), eq_relation(), split_relation()}, 4, 4, 0.3, 3);
    gen::add_random_assignments(rng, inst, 2, 3, 0.3, 2);
    std::istringstream b(print_instance(inst));
    if (!same_instance(inst, parse_instance(b))) rec.fail("instance round trip failed");

    GraphFile gf;
    gf.name = "g";
    gf.graph = gen::random_graph(rng, 6, 0.4, 0.2, 3);
    gf.triples = gen::random_triples(rng, 6, 2, 0.3, 3);
    gf.lists = gen::random_lists(rng, gf.graph, 2, 2, 0.3);
    gf.terminal_sets = gen::random_terminal_sets(rng, 6, 2, 2, 3);
    gf.hub = 0;
    std::istringstream c(print_graph(gf));
    if (!same_graph(gf, parse_graph(c))) rec.fail("graph round trip failed");
  }
  return rec.r;
}

}  // namespace

const std::vector<LemmaCheck>& lemma_checks() {
  static const std::vector<LemmaCheck> checks{
      {"gadgets-expressive", check_gadgets},
      {"edge-multicut-to-mincsp", check_edge_multicut},
      {"mincsp-to-triple-multicut", check_triple_reduction},
      {"hitting-set-to-odd3", [](int n, std::uint64_t s) { return check_hitting_set(n, s, false); }},
      {"hitting-set-to-odd3-constants", [](int n, std::uint64_t s) { return check_hitting_set(n, s, true); }},
      {"steiner-to-nae3", check_steiner_to_nae3},
      {"nae3-to-steiner", check_nae3_to_steiner},
      {"rneq-to-disjunctive-multicut", check_rneq},
      {"emulate-constants", check_emulate},
      {"wheel", check_wheel},
      {"spc-to-eq-eq", [](int n, std::uint64_t s) { return check_spc(n, s, DoubleKind::EqEq); }},
      {"spc-to-eq-neq", [](int n, std::uint64_t s) { return check_spc(n, s, DoubleKind::EqNeq); }},
      {"spc-to-neq-neq", [](int n, std::uint64_t s) { return check_spc(n, s, DoubleKind::NeqNeq); }},
      {"mis-to-disjneqneq", check_mis},
      {"triple-multicut", check_triple_multicut},
      {"boolean-encoding", check_boolean},
      {"strict-steiner", check_strict_steiner},
      {"steiner-2approx", check_steiner_2approx},
      {"disjunctive-multicut", check_djmc},
      {"negative-fpt", check_negative_fpt},
      {"negative-approx", check_negative_approx},
      {"collapse-vs-retraction", check_collapse},
      {"format-round-trip", check_round_trip},
  };
  return checks;
}

std::vector<CheckResult> run_lemma_checks(int trials, std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (const auto& c : lemma_checks()) {
    CheckResult r;
    try {
      r = c.run(trials, seed);
    } catch (const std::exception& e) {
      r.name = c.name;
      r.failures = 1;
      r.detail = std::string("exception: ") + e.what();
    }
    r.name = c.name;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eqcut
