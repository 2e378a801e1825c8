#include <doctest.h>

#include <algorithm>

#include "eqcut/boolean.hpp"
#include "eqcut/djmc.hpp"
#include "eqcut/hitting_set.hpp"
#include "eqcut/lemma_checks.hpp"
#include "eqcut/steiner.hpp"
#include "eqcut/triple_multicut.hpp"
#include "naive_oracles.hpp"

using namespace eqcut;

namespace {

long long min_hitting(const std::vector<std::vector<int>>& sets) {
  std::vector<int> elems;
  for (const auto& s : sets) elems.insert(elems.end(), s.begin(), s.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  long long best = naive::kInf;
  for (std::uint32_t mask = 0; mask < (1U << elems.size()); ++mask) {
    bool ok = true;
    for (const auto& s : sets) {
      bool hit = false;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if ((mask >> i) & 1U) hit = hit || std::find(s.begin(), s.end(), elems[i]) != s.end();
      }
      ok = ok && hit;
    }
    if (ok) best = std::min<long long>(best, __builtin_popcount(mask));
  }
  return best;
}

}  // namespace

TEST_SUITE("solvers") {
  TEST_CASE("hitting set branching") {
    gen::Rng rng(51);
    for (int t = 0; t < 150; ++t) {
      std::vector<std::vector<int>> sets;
      const int m = gen::uniform(rng, 1, 5);
      for (int i = 0; i < m; ++i) {
        std::vector<int> s;
        const int sz = gen::uniform(rng, 1, 3);
        for (int j = 0; j < sz; ++j) s.push_back(gen::uniform(rng, 0, 6));
        sets.push_back(s);
      }
      const int k = gen::uniform(rng, 0, 4);
      const long long opt = min_hitting(sets);
      const auto got = hitting_set_branch(sets, k);
      CHECK(got.has_value() == (opt <= k));
      if (got) {
        CHECK(static_cast<long long>(got->size()) == opt);
        for (const auto& s : sets) {
          CHECK(std::any_of(s.begin(), s.end(), [&](int e) { return std::count(got->begin(), got->end(), e) > 0; }));
        }
      }
    }
  }

  TEST_CASE("triple multicut is exact") {
    gen::Rng rng(52);
    for (int t = 0; t < 120; ++t) {
      const int n = gen::uniform(rng, 3, 8);
      const auto g = gen::random_graph(rng, n, 0.35, 0.2);
      const auto triples = gen::random_triples(rng, n, gen::uniform(rng, 1, 4), 0.2, 2);
      const int k = gen::uniform(rng, 0, 3);
      const long long opt = naive::triple_multicut(g, triples);
      const auto got = triple_multicut(g, triples, k);
      REQUIRE(got.has_value() == (opt <= k));
      if (!got) continue;
      CHECK(got->cost == opt);
      const auto ev = evaluate_triple_cut(g, triples, got->vertices);
      REQUIRE(ev.has_value());
      CHECK(ev->cost == got->cost);
    }
  }

  TEST_CASE("Boolean search matches its exhaustive reference") {
    gen::Rng rng(53);
    int checked = 0;
    for (int t = 0; t < 150; ++t) {
      const int n = gen::uniform(rng, 3, 5);
      const auto g = gen::random_graph(rng, n, 0.4, 0.2);
      const auto triples = gen::random_triples(rng, n, gen::uniform(rng, 1, 2), 0.0, 2);
      std::vector<int> alpha(static_cast<std::size_t>(n), -1);
      for (const auto& tr : triples) {
        for (int v : tr.v) alpha[static_cast<std::size_t>(v)] = gen::uniform(rng, 0, 2);
      }
      const int k = gen::uniform(rng, 0, 3);
      const auto b = build_boolean_instance(g, triples, alpha, k);
      if (!crisp_consistent(b)) {
        CHECK_THROWS_AS(boolean_solve(b, k), Error);
        continue;
      }
      const auto ref = boolean_oracle(b, k);
      const auto got = boolean_solve(b, k);
      REQUIRE(got.has_value() == ref.has_value());
      ++checked;
      if (!got) continue;
      long long w = 0;
      for (auto i : *got) w += b.constraints[i].weight;
      CHECK(w == *ref);
      CHECK(satisfiable_without(b, *got));
    }
    CHECK(checked > 0);
  }

  TEST_CASE("strict Steiner multicut is exact with bounded depth") {
    gen::Rng rng(54);
    for (int t = 0; t < 80; ++t) {
      const int n = gen::uniform(rng, 4, 9);
      auto g = gen::random_graph(rng, n, 0.35, 0.1);
      g.set_undeletable(0);
      std::vector<VertexSet> sets;
      const int p = gen::uniform(rng, 1, 3);
      for (int i = 0; i < p; ++i) sets.push_back(make_vertex_set({0, gen::uniform(rng, 1, n - 1)}));
      const int k = gen::uniform(rng, 0, 3);
      StrictSteinerStats st;
      const auto got = strict_steiner(g, 0, sets, k, &st);
      const long long opt = naive::vertex_steiner(g, sets);
      CHECK(got.has_value() == (opt <= k));
      if (got) {
        CHECK(static_cast<long long>(got->size()) == opt);
        CHECK(naive::feasible_sets(g, *got, sets));
      }
      CHECK(st.max_depth <= k);
      CHECK(st.flow_monotone);
    }
    CutGraph g;
    g.add_vertex("h");
    g.add_vertex("a");
    CHECK_THROWS_AS(strict_steiner(g, 0, {{0, 1}}, 1), Error);
  }

  TEST_CASE("Steiner multicut approximation") {
    gen::Rng rng(55);
    for (int t = 0; t < 80; ++t) {
      const int n = gen::uniform(rng, 4, 9);
      const auto g = gen::random_graph(rng, n, 0.35, 0.1);
      const auto sets = gen::random_terminal_sets(rng, n, gen::uniform(rng, 1, 3), 2, 3);
      const int k = gen::uniform(rng, 0, 3);
      const long long opt = naive::vertex_steiner(g, sets);
      const auto res = steiner_2approx(g, sets, k);
      if (opt <= k) {
        REQUIRE(res.accepted);
        CHECK(naive::feasible_sets(g, res.cut, sets));
        CHECK(static_cast<long long>(res.cut.size()) <= 2 * opt);
      }
      if (opt > 2LL * k) CHECK_FALSE(res.accepted);
      if (res.accepted) CHECK(naive::feasible_sets(g, res.cut, sets));
    }
  }

  TEST_CASE("list measure") {
    const RequestList l = make_request_list({{1, 1}, {0, 2}, {3, 4}});
    const auto m = measure(l);
    CHECK(m.mu1 == 1);
    CHECK(m.mu2 == 2);
    CHECK(m.mu() == 7);
    CHECK(m.nu() == 5);
    CHECK(m.mu() == static_cast<int>(l.size()) + 2 * m.mu2);
    const auto f = measure(std::vector<RequestList>{l, make_request_list({{2, 2}})});
    CHECK(f.mu == 7);
    CHECK(f.nu == 5);
    CHECK(f.lists == 2);
  }

  TEST_CASE("shadow covers and normalisation") {
    gen::Rng rng(56);
    for (int t = 0; t < 40; ++t) {
      const int n = gen::uniform(rng, 4, 8);
      const auto g = gen::random_graph(rng, n, 0.35, 0.2);
      const auto lists = gen::random_lists(rng, g, 2, 2, 0.2);
      const VertexSet ts{0};
      int covers = 0;
      shadow_cover(g, ts, 2, lists, [&](const ShadowCoverResult& c) {
        ++covers;
        // S and R partition the vertices.
        CHECK(c.s.size() + c.r.size() == static_cast<std::size_t>(n));
        CHECK(naive::feasible_lists(g, c.y, lists));
        return false;
      });
      const VertexSet s = make_vertex_set({1, 2});
      const auto norm = normalize_cover(g, s);
      CHECK(std::includes(s.begin(), s.end(), norm.begin(), norm.end()));
      CHECK(covers >= 0);
    }
  }

  TEST_CASE("disjunctive multicut never misses a solution") {
    gen::Rng rng(57);
    for (int d = 1; d <= 2; ++d) {
      for (int t = 0; t < 40; ++t) {
        const int n = gen::uniform(rng, 3, 8);
        const auto g = gen::random_graph(rng, n, 0.3, 0.15);
        const auto lists = gen::random_lists(rng, g, gen::uniform(rng, 1, 3), d, 0.2);
        const int k = gen::uniform(rng, 0, 2);
        const long long opt = naive::djmc(g, lists);
        const auto res = solve_djmc(g, lists, k);
        if (opt <= k) CHECK(res.accepted);
        if (res.accepted) {
          CHECK(naive::feasible_lists(g, res.solution, lists));
          CHECK(static_cast<long long>(res.solution.size()) <= (1LL << (3 * d)) * k);
        }
        CHECK(res.bound_violations == 0);
        if (opt >= naive::kInf) CHECK_FALSE(res.accepted);
      }
    }
    CHECK_THROWS_AS(simplify(CutGraph{}, {}, 0, deterministic_shadow_cover(), [](const SimplifyBranch&) { return true; }),
                    Error);
  }
}
