#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "eqcut/gadgets.hpp"
#include "eqcut/lemma_checks.hpp"
#include "eqcut/relations.hpp"
#include "naive_oracles.hpp"

using namespace eqcut;

namespace {

// Smallest hitting set by subset enumeration.
long long min_hitting_set(const HittingSetInstance& hs) {
  long long best = naive::kInf;
  for (std::uint32_t mask = 0; mask < (1U << hs.universe); ++mask) {
    bool ok = true;
    for (const auto& s : hs.sets) {
      bool hit = false;
      for (int e : s) hit = hit || ((mask >> e) & 1U);
      ok = ok && hit;
    }
    if (ok) best = std::min<long long>(best, __builtin_popcount(mask));
  }
  return best;
}

}  // namespace

TEST_SUITE("gadgets") {
  TEST_CASE("edge multicut and MinCSP over = and != have equal costs") {
    gen::Rng rng(41);
    for (int t = 0; t < 60; ++t) {
      const int n = gen::uniform(rng, 2, 7);
      const auto g = gen::random_graph(rng, n, 0.4, 0.0, 3);
      const auto reqs = gen::random_requests(rng, n, gen::uniform(rng, 1, 3));
      const auto red = edge_multicut_to_mincsp(g, reqs, 2);
      CHECK(red.budget == 2);
      CHECK(naive::mincsp_cost(red.instance) == naive::edge_multicut(g, reqs));
    }
  }

  TEST_CASE("split and NEQ3 constraints become triple multicut") {
    gen::Rng rng(42);
    const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), neq3_relation(), eq3_relation()};
    for (int t = 0; t < 60; ++t) {
      const auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.25, 2);
      const auto red = mincsp_to_triple_multicut(inst, 3);
      if (red.graph.num_vertices() > 16) continue;
      CHECK(naive::triple_multicut(red.graph, red.triples) == naive::mincsp_cost(inst));
    }
    MinCspInstance bad;
    const int x = bad.add_variable("x");
    const int y = bad.add_variable("y");
    const int z = bad.add_variable("z");
    bad.add_constraint(nae3_relation(), {x, y, z}, false);
    CHECK_THROWS_AS(mincsp_to_triple_multicut(bad, 1), Error);
  }

  TEST_CASE("hitting set reductions keep the optimum") {
    gen::Rng rng(43);
    for (int t = 0; t < 40; ++t) {
      const auto hs = gen::random_hitting_set(rng, gen::uniform(rng, 2, 4), gen::uniform(rng, 1, 3), 3);
      const long long want = min_hitting_set(hs);
      const auto ho = hitting_set_oracle(hs);
      CHECK((ho ? static_cast<long long>(*ho) : naive::kInf) == want);
      const auto a = hitting_set_to_odd3(hs, 1);
      if (a.instance.num_variables() <= 10) CHECK(naive::mincsp_cost(a.instance) == want);
      const auto b = hitting_set_to_odd3_constants(hs, 1);
      if (b.instance.num_variables() <= 10) CHECK(naive::mincsp_cost(b.instance) == want);
    }
  }

  TEST_CASE("ODD3 chain rejects exactly the two constant tuples") {
    for (int n = 2; n <= 4; ++n) {
      const auto g = odd3_nary_gadget(n);
      CHECK(static_cast<int>(g.primary.size()) == n);
      // Enumerate values 1, 2 on the primaries via assignments.
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        MinCspInstance inst = g.body;
        for (int i = 0; i < n; ++i) inst.add_assignment(g.primary[static_cast<std::size_t>(i)], ((mask >> i) & 1U) ? 2 : 1, true);
        const bool constant = mask == 0 || mask == (1U << n) - 1;
        CHECK((naive::mincsp_cost(inst) == 0) == !constant);
      }
    }
  }

  TEST_CASE("Steiner multicut and NAE3 in both directions") {
    gen::Rng rng(44);
    for (int t = 0; t < 50; ++t) {
      const int n = gen::uniform(rng, 3, 7);
      const auto g = gen::random_graph(rng, n, 0.4, 0.0, 2);
      const auto sets = gen::random_terminal_sets(rng, n, gen::uniform(rng, 1, 3), 3, 3);
      CHECK(naive::mincsp_cost(steiner_to_nae3(g, sets, 0).instance) == naive::edge_steiner(g, sets));
    }
    for (int t = 0; t < 50; ++t) {
      const int vars = gen::uniform(rng, 3, 7);
      auto inst = gen::random_instance(rng, {eq_relation()}, vars, gen::uniform(rng, 1, 6), 0.0, 2);
      std::vector<int> all(static_cast<std::size_t>(vars));
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      inst.add_constraint(nae3_relation(), {all[0], all[1], all[2]}, true);
      const auto red = nae3_to_steiner(inst, 0);
      CHECK(naive::edge_steiner(red.graph, red.sets) == naive::mincsp_cost(inst));
    }
  }

  TEST_CASE("disjunctive disequalities become disjunctive multicut") {
    gen::Rng rng(45);
    const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), disj_neq_relation(2)};
    for (int t = 0; t < 50; ++t) {
      const auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.25, 2);
      const auto red = rneq_to_disjunctive_multicut(inst, 0);
      CHECK(naive::djmc(red.graph, red.lists) == naive::mincsp_cost(inst));
    }
  }

  TEST_CASE("constants are emulated by pairwise different anchors") {
    gen::Rng rng(46);
    const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), odd3_relation()};
    for (int t = 0; t < 50; ++t) {
      auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.2, 2);
      gen::add_random_assignments(rng, inst, gen::uniform(rng, 1, 3), 3, 0.2, 2);
      CHECK(naive::mincsp_cost(emulate_constants(inst)) == naive::mincsp_cost(inst));
    }
  }

  TEST_CASE("choice gadget") {
    for (int t = 2; t <= 4; ++t) {
      for (bool unweighted : {false, true}) {
        const auto w = wheel(t, unweighted);
        CHECK(w.instance.num_variables() == 2 * t + 1);
        const auto rep = wheel_verify(w);
        CHECK(rep.ok);
        CHECK(rep.cost == (unweighted ? 3 : 5));
        if (!unweighted) CHECK(rep.optimal_deletions.size() == static_cast<std::size_t>(t));
      }
    }
    CHECK_THROWS_AS(wheel(1), Error);
  }

  TEST_CASE("multicoloured independent set through the choice gadget") {
    gen::Rng rng(47);
    for (int t = 0; t < 6; ++t) {
      CutGraph g;
      for (int v = 0; v < 4; ++v) g.add_vertex("v" + std::to_string(v));
      const std::vector<VertexSet> classes{{0, 1}, {2, 3}};
      for (int u = 0; u < 2; ++u) {
        for (int v = 2; v < 4; ++v) {
          if (gen::coin(rng, 0.6)) g.add_edge(u, v);
        }
      }
      const auto red = mis_to_disjneqneq(g, classes);
      CHECK(red.budget == 10);
      const auto r = brute_force_cost(red.instance, 12);
      CHECK(r.report.within(red.budget) == mis_oracle(g, classes));
    }
  }

  TEST_CASE("split paired cut reductions decide the same") {
    gen::Rng rng(48);
    for (int t = 0; t < 6; ++t) {
      const auto spc = gen::random_spc(rng, 1, 3);
      const bool want = spc_oracle(spc);
      const auto check = [&](const ReducedInstance& red) {
        if (red.instance.num_variables() > 11) return;
        CHECK((naive::mincsp_cost(red.instance) <= red.budget) == want);
      };
      check(spc_to_eq_eq(spc, and_eq_eq_relation()));
      check(spc_to_eq_neq(spc, and_eq_neq_relation()));
      check(spc_to_neq_neq(spc, and_neq_neq_relation()));
    }
  }
}
