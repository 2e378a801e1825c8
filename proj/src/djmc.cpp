#include "eqcut/djmc.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "eqcut/hitting_set.hpp"
#include "eqcut/mincsp.hpp"
#include "eqcut/oracle.hpp"

namespace eqcut {

namespace {

bool contains(const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

VertexSet unite(VertexSet a, const VertexSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  return make_vertex_set(std::move(a));
}

template <class F>
bool for_each_subset_upto(const std::vector<int>& pool, int max_size, F&& f) {
  std::vector<int> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
    if (f(cur)) return true;
    if (static_cast<int>(cur.size()) >= max_size) return false;
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      if (rec(i + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  return rec(0);
}

template <class F>
bool for_each_subset_of_size(const std::vector<int>& pool, int size, F&& f) {
  std::vector<int> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
    if (static_cast<int>(cur.size()) == size) return f(cur);
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      if (rec(i + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  return rec(0);
}

// A feasible deletion set to compress: exact when small, greedy otherwise.
std::optional<VertexSet> initial_solution(const CutGraph& g, const std::vector<RequestList>& lists) {
  if (g.num_vertices() <= oracle_cap()) return djmc_oracle(g, lists, g.num_vertices());
  VertexSet all;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.deletable(v)) all.push_back(v);
  }
  if (!all_lists_satisfied(g, all, lists)) return std::nullopt;
  for (std::size_t i = 0; i < all.size();) {
    VertexSet trial = all;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (all_lists_satisfied(g, trial, lists)) all = trial;
    else ++i;
  }
  return all;
}

long long pow2(int e) { return 1LL << std::min(e, 60); }

}  // namespace

ListMeasure measure(const RequestList& list) {
  ListMeasure m;
  for (const auto& r : list) {
    if (r.first == r.second) ++m.mu1;
    else ++m.mu2;
  }
  return m;
}

FamilyMeasure measure(const std::vector<RequestList>& lists) {
  FamilyMeasure f;
  f.lists = lists.size();
  for (const auto& l : lists) {
    const auto m = measure(l);
    f.mu = std::max(f.mu, m.mu());
    f.nu = std::max(f.nu, m.nu());
    f.mu2_total += m.mu2;
  }
  return f;
}

std::vector<RequestList> drop_satisfied(const CutGraph& g, const std::vector<RequestList>& lists) {
  const auto labels = component_labels(g, {});
  std::vector<RequestList> out;
  for (const auto& l : lists) {
    if (!list_satisfied(labels, l)) out.push_back(l);
  }
  return out;
}

ShadowCover deterministic_shadow_cover() {
  return [](const CutGraph& g, const VertexSet& t, int k, const std::vector<RequestList>& lists,
            const CoverSink& sink) {
    std::vector<int> pool;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.deletable(v) && !contains(t, v)) pool.push_back(v);
    }
    std::set<VertexSet> seen;
    for_each_subset_upto(pool, k, [&](const std::vector<int>& y) {
      const VertexSet ys = make_vertex_set(y);
      if (!all_lists_satisfied(g, ys, lists)) return false;
      ShadowCoverResult res;
      res.s = shadow(g, ys, t);
      if (!seen.insert(res.s).second) return false;
      res.y = ys;
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (!contains(res.s, v)) res.r.push_back(v);
      }
      return sink(res);
    });
  };
}

ShadowCover random_shadow_cover(std::uint64_t seed, int samples) {
  return [seed, samples](const CutGraph& g, const VertexSet& t, int, const std::vector<RequestList>&,
                         const CoverSink& sink) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::set<VertexSet> seen;
    for (int i = 0; i < samples; ++i) {
      VertexSet y;
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.deletable(v) && !contains(t, v) && coin(rng)) y.push_back(v);
      }
      ShadowCoverResult res;
      res.s = shadow(g, y, t);
      if (!seen.insert(res.s).second) continue;
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (!contains(res.s, v)) res.r.push_back(v);
      }
      if (sink(res)) return;
    }
  };
}

void shadow_cover(const CutGraph& g, const VertexSet& t, int k, const std::vector<RequestList>& lists,
                  const CoverSink& sink) {
  deterministic_shadow_cover()(g, t, k, lists, sink);
}

VertexSet normalize_cover(const CutGraph& g, VertexSet s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.deletable(v) || contains(s, v)) continue;
      VertexSet drop;
      for (int w : g.neighbors(v)) {
        if (contains(s, w)) drop.push_back(w);
      }
      if (drop.empty()) continue;
      drop = make_vertex_set(drop);
      VertexSet kept;
      std::set_difference(s.begin(), s.end(), drop.begin(), drop.end(), std::back_inserter(kept));
      s = kept;
      changed = true;
    }
  }
  return s;
}

VertexSet compute_Rv(const CutGraph& g, const VertexSet& r, const VertexSet& x, int v) {
  const auto labels = component_labels(g, {});
  const bool linked = std::any_of(x.begin(), x.end(), [&](int a) {
    return labels[static_cast<std::size_t>(a)] == labels[static_cast<std::size_t>(v)];
  });
  if (!linked) return {};
  const bool near_x = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(), [&](int w) { return contains(x, w); });
  if (contains(r, v) || near_x) return {v};
  std::vector<bool> in_h(static_cast<std::size_t>(g.num_vertices()), false);
  std::deque<int> q{v};
  in_h[static_cast<std::size_t>(v)] = true;
  VertexSet boundary;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int w : g.neighbors(u)) {
      if (contains(r, w)) {
        boundary.push_back(w);
      } else if (!in_h[static_cast<std::size_t>(w)]) {
        in_h[static_cast<std::size_t>(w)] = true;
        q.push_back(w);
      }
    }
  }
  return make_vertex_set(boundary);
}

bool branch_within_bounds(const CutGraph& g, const std::vector<RequestList>& lists, int k,
                          const SimplifyBranch& branch) {
  const auto before = measure(lists);
  const auto after = measure(branch.lists);
  if (branch.graph.num_vertices() > g.num_vertices()) return false;
  if (after.nu > before.nu) return false;
  if (after.mu > before.mu - 1) return false;
  return static_cast<long long>(after.lists) <= static_cast<long long>(k) * k * static_cast<long long>(before.lists);
}

void simplify(const CutGraph& g, const std::vector<RequestList>& input, int k, const ShadowCover& cover,
              const std::function<bool(const SimplifyBranch&)>& sink, SimplifyStats* stats) {
  if (k < 1) throw Error("simplify needs a positive budget");
  const auto lists = drop_satisfied(g, input);
  const int n = g.num_vertices();
  const auto x0 = initial_solution(g, lists);
  if (!x0) return;
  const VertexSet& x = *x0;

  bool stop = false;
  for (int wsize = 0; wsize <= std::min<int>(k, static_cast<int>(x.size())) && !stop; ++wsize) {
    for_each_subset_of_size(x, wsize, [&](const std::vector<int>& wraw) -> bool {
      const VertexSet w = make_vertex_set(wraw);
      const int left = k - wsize;
      const CutGraph g1 = g.isolate(w);
      VertexSet rest;
      std::set_difference(x.begin(), x.end(), w.begin(), w.end(), std::back_inserter(rest));
      std::vector<RequestList> lists1;
      {
        const auto labels = component_labels(g, w);
        for (const auto& l : lists) {
          if (!list_satisfied(labels, l)) lists1.push_back(l);
        }
      }

      // X members joined through undeletable vertices share a class.
      std::vector<int> root(static_cast<std::size_t>(n));
      std::iota(root.begin(), root.end(), 0);
      std::function<int(int)> find = [&](int v) {
        return root[static_cast<std::size_t>(v)] == v ? v : root[static_cast<std::size_t>(v)] = find(root[static_cast<std::size_t>(v)]);
      };
      auto fixed = [&](int v) { return !contains(w, v) && (contains(rest, v) || !g.deletable(v)); };
      for (const auto& e : g1.edges()) {
        if (fixed(e.u) && fixed(e.v)) root[static_cast<std::size_t>(find(e.u))] = find(e.v);
      }
      std::vector<int> atom_root;
      std::vector<int> atom_of(static_cast<std::size_t>(n), -1);
      for (int v : rest) {
        const int r = find(v);
        auto it = std::find(atom_root.begin(), atom_root.end(), r);
        atom_of[static_cast<std::size_t>(v)] = static_cast<int>(it - atom_root.begin());
        if (it == atom_root.end()) atom_root.push_back(r);
      }

      for_each_partition(static_cast<int>(atom_root.size()), [&](const std::vector<int>& label) {
        if (stop) return;
        int classes = 0;
        for (int l : label) classes = std::max(classes, l + 1);
        std::vector<VertexSet> groups(static_cast<std::size_t>(classes));
        for (int v : rest) {
          groups[static_cast<std::size_t>(label[static_cast<std::size_t>(atom_of[static_cast<std::size_t>(v)])])].push_back(v);
        }
        for (int a = 0; a < classes; ++a) {
          for (int b = a + 1; b < classes; ++b) {
            if (separator_size(g1, groups[static_cast<std::size_t>(a)], groups[static_cast<std::size_t>(b)], left) > left) return;
          }
        }
        const auto m = multiway_cut(g1, groups, left);
        if (!m) return;
        const VertexSet removed = unite(w, *m);
        const auto labels = component_labels(g, removed);

        // Identify each class; drop deleted vertices.
        CutGraph g2;
        std::vector<int> to_new(static_cast<std::size_t>(n), -1);
        std::vector<int> to_parent;
        VertexSet x2;
        for (int a = 0; a < classes; ++a) {
          std::string nm;
          for (int v : groups[static_cast<std::size_t>(a)]) nm += (nm.empty() ? "" : "+") + g.name(v);
          const int id = g2.add_vertex(nm, true);
          to_parent.push_back(groups[static_cast<std::size_t>(a)].front());
          for (int v : groups[static_cast<std::size_t>(a)]) to_new[static_cast<std::size_t>(v)] = id;
          x2.push_back(id);
        }
        for (int v = 0; v < n; ++v) {
          if (contains(removed, v) || to_new[static_cast<std::size_t>(v)] >= 0) continue;
          to_new[static_cast<std::size_t>(v)] = g2.add_vertex(g.name(v), !g.deletable(v));
          to_parent.push_back(v);
        }
        for (const auto& e : g.edges()) {
          const int a = to_new[static_cast<std::size_t>(e.u)];
          const int b = to_new[static_cast<std::size_t>(e.v)];
          if (a >= 0 && b >= 0 && a != b) g2.add_edge(a, b, 1);
        }
        x2 = make_vertex_set(x2);

        std::vector<RequestList> lists2;
        std::vector<bool> shortened;
        for (const auto& l : lists1) {
          if (list_satisfied(labels, l)) continue;
          RequestList nl;
          bool cut_short = false;
          for (const auto& [s, t] : l) {
            const int a = to_new[static_cast<std::size_t>(s)];
            const int b = to_new[static_cast<std::size_t>(t)];
            if (a == b && (s != t || contains(x2, a))) {
              cut_short = true;  // unusable once X is kept
              continue;
            }
            nl.push_back({std::min(a, b), std::max(a, b)});
          }
          if (nl.empty()) return;
          lists2.push_back(make_request_list(nl));
          shortened.push_back(cut_short);
        }

        const auto x_labels = component_labels(g2, x2);
        cover(g2, x2, left, lists2, [&](const ShadowCoverResult& cov) -> bool {
          const VertexSet s = normalize_cover(g2, cov.s);
          VertexSet r;
          for (int v = 0; v < g2.num_vertices(); ++v) {
            if (!contains(s, v)) r.push_back(v);
          }
          // nullopt stands for "more than k".
          auto rv = [&](int v) -> std::optional<VertexSet> {
            if (contains(x2, v) || !g2.deletable(v)) return std::nullopt;
            auto res = compute_Rv(g2, r, x2, v);
            for (int u : res) {
              if (!g2.deletable(u)) return std::nullopt;
            }
            if (static_cast<int>(res.size()) > k) return std::nullopt;
            return res;
          };
          std::vector<RequestList> out;
          for (std::size_t i = 0; i < lists2.size(); ++i) {
            const auto& l = lists2[i];
            if (shortened[i]) {
              out.push_back(l);
              continue;
            }
            auto pick = std::find_if(l.begin(), l.end(), [&](const Request& q) {
              return q.first != q.second && separated(x_labels, q.first, q.second);
            });
            if (pick == l.end()) throw Error("compressed solution misses a list");
            RequestList base;
            for (const auto& q : l) {
              if (q != *pick) base.push_back(q);
            }
            const auto rs = rv(pick->first);
            const auto rt = rv(pick->second);
            if (!rs && !rt) {
              if (base.empty()) return false;  // this cover kills the branch
              out.push_back(make_request_list(base));
            } else if (rs && !rt) {
              for (int a : *rs) {
                auto nl = base;
                nl.push_back({a, a});
                out.push_back(make_request_list(nl));
              }
            } else if (!rs && rt) {
              for (int b : *rt) {
                auto nl = base;
                nl.push_back({b, b});
                out.push_back(make_request_list(nl));
              }
            } else {
              for (int a : *rs) {
                for (int b : *rt) {
                  auto nl = base;
                  nl.push_back({a, a});
                  nl.push_back({b, b});
                  out.push_back(make_request_list(nl));
                }
              }
            }
          }
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
          SimplifyBranch br;
          br.graph = g2;
          br.lists = std::move(out);
          br.k = 2 * k;
          br.to_parent = to_parent;
          br.removed = removed;
          br.x = x2;
          if (stats) {
            ++stats->branches;
            if (!branch_within_bounds(g, input, k, br)) ++stats->bound_violations;
          }
          if (sink(br)) stop = true;
          return stop;
        });
      });
      return stop;
    });
  }
}

DjmcResult solve_djmc(const CutGraph& g, const std::vector<RequestList>& lists, int k, const ShadowCover& cover) {
  DjmcResult result;
  if (k < 0) return result;
  SimplifyStats stats;

  std::function<std::optional<VertexSet>(const CutGraph&, const std::vector<RequestList>&, int, int)> rec =
      [&](const CutGraph& h, const std::vector<RequestList>& ls, int budget, int depth) -> std::optional<VertexSet> {
    const auto open = drop_satisfied(h, ls);
    if (open.empty()) {
      result.rounds = depth;
      return VertexSet{};
    }
    if (budget == 0) return std::nullopt;
    if (measure(open).mu2_total == 0) {
      std::vector<std::vector<int>> sets;
      for (const auto& l : open) {
        std::vector<int> s;
        for (const auto& q : l) {
          if (h.deletable(q.first)) s.push_back(q.first);
        }
        sets.push_back(s);
      }
      auto hs = hitting_set_branch(sets, budget);
      if (!hs) return std::nullopt;
      result.rounds = depth;
      return make_vertex_set(*hs);
    }
    std::optional<VertexSet> found;
    simplify(h, open, budget, cover, [&](const SimplifyBranch& br) {
      auto sub = rec(br.graph, br.lists, br.k, depth + 1);
      if (!sub) return false;
      VertexSet sol = br.removed;
      for (int v : *sub) sol.push_back(br.to_parent[static_cast<std::size_t>(v)]);
      found = make_vertex_set(sol);
      return true;
    }, &stats);
    return found;
  };

  auto sol = rec(g, lists, k, 0);
  result.branches = stats.branches;
  result.bound_violations = stats.bound_violations;
  if (!sol) return result;
  if (!all_lists_satisfied(g, *sol, lists)) throw Error("disjunctive multicut produced an infeasible set");
  result.bound = pow2(result.rounds) * k;
  if (static_cast<long long>(sol->size()) >= 2 * result.bound && k > 0) {
    throw Error("disjunctive multicut solution exceeds the approximation bound");
  }
  result.accepted = true;
  result.solution = *sol;
  return result;
}

}  // namespace eqcut
