#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "eqcut/graph.hpp"
#include "eqcut/lemma_checks.hpp"
#include "eqcut/oracle.hpp"
#include "naive_oracles.hpp"

using namespace eqcut;

namespace {

std::vector<bool> as_mask(const CutGraph& g, const VertexSet& s) {
  std::vector<bool> m(static_cast<std::size_t>(g.num_vertices()), false);
  for (int v : s) m[static_cast<std::size_t>(v)] = true;
  return m;
}

// No path from any x to any y avoiding cut; members of cut are blocked.
bool separates(const CutGraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& cut) {
  const auto lab = naive::labels(g, as_mask(g, cut));
  for (int a : x) {
    for (int b : y) {
      if (!naive::apart(lab, a, b)) return false;
    }
  }
  return true;
}

long long opt_size(const std::optional<VertexSet>& s) { return s ? static_cast<long long>(s->size()) : naive::kInf; }

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("construction and edge multiplicities") {
    CutGraph g;
    const int a = g.add_vertex("a");
    const int b = g.add_vertex("b", true);
    g.add_edge(a, b, 2);
    g.add_edge(b, a, 1);
    CHECK(g.edge_multiplicity(a, b) == 3);
    CHECK(g.edges().size() == 1);
    CHECK_FALSE(g.deletable(b));
    CHECK_THROWS_AS(g.add_edge(a, a), Error);
    CHECK(g.vertex("b") == b);
    CHECK_THROWS_AS(g.vertex("c"), Error);
    const auto h = g.isolate({a});
    CHECK(h.num_vertices() == 2);
    CHECK(h.edges().empty());
    CHECK_THROWS_AS(components(g, {b}), Error);
  }

  TEST_CASE("request lists are normalised") {
    const auto l = make_request_list({{3, 1}, {1, 3}, {2, 2}});
    CHECK(l.size() == 2);
    for (auto [s, t] : l) CHECK(s <= t);
  }

  TEST_CASE("component labels agree with a plain search") {
    gen::Rng rng(31);
    for (int t = 0; t < 200; ++t) {
      const int n = gen::uniform(rng, 1, 10);
      const auto g = gen::random_graph(rng, n, 0.3);
      VertexSet cut;
      for (int v = 0; v < n; ++v) {
        if (gen::coin(rng, 0.2)) cut.push_back(v);
      }
      const auto mine = component_labels(g, cut);
      const auto ref = naive::labels(g, as_mask(g, cut));
      for (int u = 0; u < n; ++u) {
        CHECK((mine[static_cast<std::size_t>(u)] < 0) == (ref[static_cast<std::size_t>(u)] < 0));
        for (int v = 0; v < n; ++v) {
          if (ref[static_cast<std::size_t>(u)] < 0 || ref[static_cast<std::size_t>(v)] < 0) continue;
          CHECK((mine[static_cast<std::size_t>(u)] == mine[static_cast<std::size_t>(v)]) ==
                (ref[static_cast<std::size_t>(u)] == ref[static_cast<std::size_t>(v)]));
        }
      }
    }
  }

  TEST_CASE("minimum vertex separators are minimum") {
    gen::Rng rng(32);
    for (int t = 0; t < 150; ++t) {
      const int n = gen::uniform(rng, 3, 10);
      const auto g = gen::random_graph(rng, n, 0.35, 0.15);
      const int s = gen::uniform(rng, 0, n - 1);
      VertexSet ts;
      for (int v = 0; v < n; ++v) {
        if (v != s && gen::coin(rng, 0.25)) ts.push_back(v);
      }
      if (ts.empty()) continue;
      // Deleting s itself is not allowed; members of T may be deleted.
      const long long want = naive::min_deletion(g, [&](const std::vector<int>& lab) {
        if (lab[static_cast<std::size_t>(s)] < 0) return false;
        for (int v : ts) {
          if (!naive::apart(lab, s, v)) return false;
        }
        return true;
      });
      const auto got = min_vertex_separator(g, s, ts);
      CHECK(opt_size(got) == want);
      if (got) CHECK(separates(g, {s}, ts, *got));
    }
  }

  TEST_CASE("separator sizes and multiway cuts avoid terminals") {
    gen::Rng rng(33);
    for (int t = 0; t < 150; ++t) {
      const int n = gen::uniform(rng, 4, 9);
      const auto g = gen::random_graph(rng, n, 0.35, 0.1);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const VertexSet x = make_vertex_set({perm[0]});
      const VertexSet y = make_vertex_set({perm[1], perm[2]});
      const int limit = gen::uniform(rng, 0, 4);
      auto avoid = [&](const std::vector<int>& lab) {
        for (int v : x) {
          if (lab[static_cast<std::size_t>(v)] < 0) return false;
        }
        for (int v : y) {
          if (lab[static_cast<std::size_t>(v)] < 0) return false;
        }
        for (int a : x) {
          for (int b : y) {
            if (!naive::apart(lab, a, b)) return false;
          }
        }
        return true;
      };
      const long long want = naive::min_deletion(g, avoid);
      const int got = separator_size(g, x, y, limit);
      if (want <= limit) CHECK(got == want);
      else CHECK(got > limit);

      // Three groups of one terminal each.
      const std::vector<VertexSet> groups{{perm[0]}, {perm[1]}, {perm[2]}};
      const long long mw = naive::min_deletion(g, [&](const std::vector<int>& lab) {
        for (const auto& gr : groups) {
          if (lab[static_cast<std::size_t>(gr[0])] < 0) return false;
        }
        return naive::apart(lab, perm[0], perm[1]) && naive::apart(lab, perm[0], perm[2]) &&
               naive::apart(lab, perm[1], perm[2]);
      });
      const auto cut = multiway_cut(g, groups, limit);
      CHECK(cut.has_value() == (mw <= limit));
      if (cut) {
        CHECK(static_cast<long long>(cut->size()) == mw);
        CHECK(separates(g, groups[0], groups[1], *cut));
        CHECK(separates(g, groups[1], groups[2], *cut));
      }
    }
  }

  TEST_CASE("important separators are separators within the bound") {
    gen::Rng rng(34);
    for (int t = 0; t < 100; ++t) {
      const int n = gen::uniform(rng, 4, 9);
      const auto g = gen::random_graph(rng, n, 0.35, 0.1);
      const VertexSet x{0};
      const VertexSet y = make_vertex_set({n - 1, n - 2});
      const int k = gen::uniform(rng, 0, 3);
      const auto seps = important_separators(g, x, y, k);
      for (const auto& s : seps) {
        CHECK(static_cast<int>(s.size()) <= k);
        CHECK(separates(g, x, y, s));
        for (int v : s) {
          CHECK(g.deletable(v));
          CHECK(std::find(y.begin(), y.end(), v) == y.end());
        }
      }
      // Some important separator is a minimum one when any fits the bound.
      const int min = separator_size(g, x, y, k);
      if (min <= k) {
        bool has_min = false;
        for (const auto& s : seps) has_min = has_min || static_cast<int>(s.size()) == min;
        CHECK(has_min);
      } else {
        CHECK(seps.empty());
      }
    }
  }

  TEST_CASE("closest minimum separator is minimum and closest") {
    gen::Rng rng(35);
    for (int t = 0; t < 100; ++t) {
      const int n = gen::uniform(rng, 4, 9);
      const auto g = gen::random_graph(rng, n, 0.4);
      const VertexSet w = make_vertex_set({n - 2, n - 1});
      const auto sep = closest_min_separator(g, 0, w);
      const long long min = naive::min_deletion(g, [&](const std::vector<int>& lab) {
        return lab[0] >= 0 && naive::apart(lab, 0, n - 2) && naive::apart(lab, 0, n - 1);
      });
      REQUIRE(static_cast<long long>(sep.size()) == min);
      CHECK(separates(g, {0}, w, sep));
      // The side of vertex 0 is contained in that of every other minimum separator.
      const auto ours = naive::labels(g, as_mask(g, sep));
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (__builtin_popcount(mask) != min || (mask & 1U)) continue;
        const auto lab = naive::labels(g, naive::mask_to_set(mask, n));
        if (!naive::apart(lab, 0, n - 2) || !naive::apart(lab, 0, n - 1)) continue;
        for (int v = 0; v < n; ++v) {
          if (ours[static_cast<std::size_t>(v)] == ours[0]) CHECK(lab[static_cast<std::size_t>(v)] == lab[0]);
        }
      }
    }
  }

  TEST_CASE("shadow is what the terminals cannot reach") {
    gen::Rng rng(36);
    for (int t = 0; t < 100; ++t) {
      const int n = gen::uniform(rng, 3, 9);
      const auto g = gen::random_graph(rng, n, 0.3);
      VertexSet y, ts;
      for (int v = 0; v < n; ++v) {
        if (gen::coin(rng, 0.25)) y.push_back(v);
        else if (gen::coin(rng, 0.3)) ts.push_back(v);
      }
      const auto sh = shadow(g, y, ts);
      const auto lab = naive::labels(g, as_mask(g, y));
      for (int v = 0; v < n; ++v) {
        const bool in_y = std::binary_search(y.begin(), y.end(), v);
        bool reached = false;
        for (int s : ts) reached = reached || (!in_y && !naive::apart(lab, s, v));
        const bool in_shadow = std::binary_search(sh.begin(), sh.end(), v);
        CHECK(in_shadow == (!in_y && !reached));
      }
    }
  }

  TEST_CASE("library oracles agree with enumeration") {
    gen::Rng rng(37);
    for (int t = 0; t < 80; ++t) {
      const int n = gen::uniform(rng, 3, 8);
      const auto g = gen::random_graph(rng, n, 0.3, 0.15, 2);
      const auto reqs = gen::random_requests(rng, n, gen::uniform(rng, 1, 3));
      CHECK(edge_multicut_oracle(g, reqs).value_or(naive::kInf) == naive::edge_multicut(g, reqs));
      const auto sets = gen::random_terminal_sets(rng, n, gen::uniform(rng, 1, 3), 2, 3);
      CHECK(edge_steiner_oracle(g, sets).value_or(naive::kInf) == naive::edge_steiner(g, sets));
      CHECK(opt_size(vertex_steiner_oracle(g, sets, n)) == naive::vertex_steiner(g, sets));
      const auto lists = gen::random_lists(rng, g, gen::uniform(rng, 1, 3), 2, 0.2);
      CHECK(opt_size(djmc_oracle(g, lists, n)) == naive::djmc(g, lists));
      const auto triples = gen::random_triples(rng, n, gen::uniform(rng, 1, 3), 0.2, 2);
      const auto tm = triple_multicut_oracle(g, triples, 100);
      CHECK((tm ? tm->cost : naive::kInf) == naive::triple_multicut(g, triples));
    }
  }

  TEST_CASE("set partitions are enumerated once each") {
    for (int n = 0; n <= 6; ++n) {
      std::set<std::vector<int>> seen;
      for_each_partition(n, [&](const std::vector<int>& l) { seen.insert(l); });
      CHECK(static_cast<long long>(seen.size()) == (n == 0 ? 1 : bell_number(n)));
    }
  }
}
