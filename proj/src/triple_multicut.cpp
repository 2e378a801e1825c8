#include "eqcut/triple_multicut.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "eqcut/boolean.hpp"

namespace eqcut {

namespace {

struct Induced {
  CutGraph graph;
  std::vector<int> to_parent;       // local -> parent vertex
  std::vector<int> local;           // parent -> local or -1
  TripleSet triples;
  std::vector<std::size_t> triple_parent;
};

Induced induce(const CutGraph& g, const TripleSet& triples, const std::vector<int>& keep) {
  Induced out;
  out.local.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  for (int v : keep) {
    out.local[static_cast<std::size_t>(v)] = out.graph.add_vertex(g.name(v), !g.deletable(v));
    out.to_parent.push_back(v);
  }
  for (const auto& e : g.edges()) {
    const int a = out.local[static_cast<std::size_t>(e.u)];
    const int b = out.local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) out.graph.add_edge(a, b, e.multiplicity);
  }
  for (std::size_t t = 0; t < triples.size(); ++t) {
    Triple tr = triples[t];
    bool inside = true;
    for (auto& v : tr.v) {
      v = out.local[static_cast<std::size_t>(v)];
      inside = inside && v >= 0;
    }
    if (!inside) continue;
    out.triples.push_back(tr);
    out.triple_parent.push_back(t);
  }
  return out;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

template <class F>
void for_each_subset(const std::vector<int>& pool, int max_size, F&& f) {
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    f(cur);
    if (static_cast<int>(cur.size()) >= max_size) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

class Compressor {
 public:
  Compressor(const CutGraph& g, const TripleSet& triples, long long k, TripleMulticutStats* stats)
      : g_(g), triples_(triples), k_(k), stats_(stats) {}

  // Solution of cost <= k, the cheapest one when want_min is set.
  std::optional<TripleMulticutSolution> run(const VertexSet& xv, const std::vector<std::size_t>& xt,
                                            bool want_min) {
    if (stats_) ++stats_->compressions;
    VertexSet xset = xv;
    for (auto t : xt) {
      for (int v : triples_[t].v) xset.push_back(v);
    }
    xset = make_vertex_set(xset);
    std::vector<int> cand_v;
    for (int v : xset) {
      if (g_.deletable(v)) cand_v.push_back(v);
    }
    std::vector<int> cand_t;
    for (auto t : xt) {
      if (!triples_[t].crisp) cand_t.push_back(static_cast<int>(t));
    }
    best_.reset();
    want_min_ = want_min;
    done_ = false;
    for (int size = 0; size <= std::min<long long>(k_, static_cast<long long>(cand_v.size())) && !done_; ++size) {
      for_each_subset(cand_v, size, [&](const std::vector<int>& wv) {
        if (done_ || static_cast<int>(wv.size()) != size) return;
        for_each_subset(cand_t, static_cast<int>(cand_t.size()), [&](const std::vector<int>& wt) {
          if (done_) return;
          long long base = size;
          for (int t : wt) base += triples_[static_cast<std::size_t>(t)].weight;
          if (base > k_ || (best_ && base >= best_->cost)) return;
          try_guess(xset, xt, make_vertex_set(wv), wt, base);
        });
      });
    }
    return best_;
  }

 private:
  void try_guess(const VertexSet& xset, const std::vector<std::size_t>& xt, const VertexSet& wv,
                 const std::vector<int>& wt, long long base) {
    VertexSet rest;
    std::set_difference(xset.begin(), xset.end(), wv.begin(), wv.end(), std::back_inserter(rest));
    std::vector<std::size_t> kept;
    std::vector<std::size_t> skip;
    for (int t : wt) skip.push_back(static_cast<std::size_t>(t));
    for (auto t : xt) {
      if (std::find(skip.begin(), skip.end(), t) == skip.end()) kept.push_back(t);
    }
    const CutGraph h = g_.isolate(wv);
    const int n = g_.num_vertices();
    auto in = [](const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); };

    // Vertices of X joined through vertices that cannot be deleted end up together.
    UnionFind uf(n);
    auto fixed = [&](int v) { return !in(wv, v) && (in(rest, v) || !g_.deletable(v)); };
    for (const auto& e : h.edges()) {
      if (fixed(e.u) && fixed(e.v)) uf.unite(e.u, e.v);
    }
    std::vector<int> atom_of(static_cast<std::size_t>(n), -1);
    std::vector<int> atom_root;
    for (int v : rest) {
      const int r = uf.find(v);
      auto it = std::find(atom_root.begin(), atom_root.end(), r);
      if (it == atom_root.end()) {
        atom_root.push_back(r);
        atom_of[static_cast<std::size_t>(v)] = static_cast<int>(atom_root.size()) - 1;
      } else {
        atom_of[static_cast<std::size_t>(v)] = static_cast<int>(it - atom_root.begin());
      }
    }
    const long long left_total = k_ - base;
    for_each_partition(static_cast<int>(atom_root.size()), [&](const std::vector<int>& label) {
      if (done_) return;
      std::vector<int> alpha(static_cast<std::size_t>(n), -1);
      for (int v : rest) alpha[static_cast<std::size_t>(v)] = label[static_cast<std::size_t>(atom_of[static_cast<std::size_t>(v)])];
      auto same = [&](int a, int b) {
        const int x = alpha[static_cast<std::size_t>(a)];
        return x >= 0 && x == alpha[static_cast<std::size_t>(b)];
      };
      for (std::size_t t = 0; t < triples_.size(); ++t) {
        const auto& tr = triples_[t];
        const bool must = tr.crisp || std::find(kept.begin(), kept.end(), t) != kept.end();
        if (!must) continue;
        if (same(tr.v[0], tr.v[1]) || same(tr.v[0], tr.v[2]) || same(tr.v[1], tr.v[2])) return;
      }
      long long left = left_total;
      if (want_min_ && best_) left = std::min(left, best_->cost - base - 1);
      if (left < 0) return;
      int classes = 0;
      for (int l : label) classes = std::max(classes, l + 1);
      std::vector<VertexSet> groups(static_cast<std::size_t>(classes));
      for (int v : rest) groups[static_cast<std::size_t>(alpha[static_cast<std::size_t>(v)])].push_back(v);
      for (int a = 0; a < classes; ++a) {
        for (int b = a + 1; b < classes; ++b) {
          if (separator_size(h, groups[static_cast<std::size_t>(a)], groups[static_cast<std::size_t>(b)],
                             static_cast<int>(left)) > left) {
            return;
          }
        }
      }
      const auto boolean = build_boolean_instance(h, triples_, alpha, left, wv, skip, kept);
      if (!crisp_consistent(boolean)) return;
      if (stats_) ++stats_->boolean_calls;
      const auto del = boolean_solve(boolean, left);
      if (!del) return;
      VertexSet zv = wv;
      for (auto c : *del) {
        if (boolean.constraints[c].kind == BoolConstraintKind::Vertex) zv.push_back(boolean.constraints[c].owner);
      }
      auto sol = evaluate_triple_cut(g_, triples_, make_vertex_set(zv));
      if (!sol || sol->cost > k_) return;
      if (!best_ || sol->cost < best_->cost) best_ = sol;
      if (!want_min_) done_ = true;
    });
  }

  const CutGraph& g_;
  const TripleSet& triples_;
  long long k_;
  TripleMulticutStats* stats_;
  std::optional<TripleMulticutSolution> best_;
  bool want_min_ = false;
  bool done_ = false;
};

}  // namespace

std::optional<TripleMulticutSolution> evaluate_triple_cut(const CutGraph& g, const TripleSet& triples,
                                                          const VertexSet& zv) {
  for (int v : zv) {
    if (!g.deletable(v)) return std::nullopt;
  }
  const auto labels = component_labels(g, zv);
  TripleMulticutSolution sol;
  sol.vertices = zv;
  sol.cost = static_cast<long long>(zv.size());
  for (std::size_t t = 0; t < triples.size(); ++t) {
    if (!triple_violated(labels, triples[t])) continue;
    if (triples[t].crisp) return std::nullopt;
    sol.triples.push_back(t);
    sol.cost += triples[t].weight;
  }
  return sol;
}

std::optional<TripleMulticutSolution> triple_multicut(const CutGraph& g, const TripleSet& triples, long long k,
                                                      TripleMulticutStats* stats) {
  if (k < 0) return std::nullopt;
  std::vector<int> order;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!g.deletable(v)) order.push_back(v);
  }
  const std::size_t fixed_count = order.size();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.deletable(v)) order.push_back(v);
  }

  // Current solution in parent ids.
  VertexSet zv;
  std::vector<int> present(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(fixed_count));
  std::sort(present.begin(), present.end());

  auto stage = [&](bool last, bool fresh, int added) -> bool {
    auto sub = induce(g, triples, present);
    VertexSet local_zv;
    for (int v : zv) local_zv.push_back(sub.local[static_cast<std::size_t>(v)]);
    local_zv = make_vertex_set(local_zv);
    if (!last && !fresh) {
      if (auto keep = evaluate_triple_cut(sub.graph, sub.triples, local_zv); keep && keep->cost <= k) return true;
    }
    VertexSet xv = local_zv;
    if (added >= 0) xv.push_back(sub.local[static_cast<std::size_t>(added)]);
    xv = make_vertex_set(xv);
    const auto labels = component_labels(sub.graph, xv);
    std::vector<std::size_t> xt;
    for (std::size_t t = 0; t < sub.triples.size(); ++t) {
      if (triple_violated(labels, sub.triples[t])) xt.push_back(t);
    }
    Compressor comp(sub.graph, sub.triples, k, stats);
    auto sol = comp.run(xv, xt, last);
    if (!sol) return false;
    zv.clear();
    for (int v : sol->vertices) zv.push_back(sub.to_parent[static_cast<std::size_t>(v)]);
    zv = make_vertex_set(zv);
    return true;
  };

  // G[V_inf] first: only triple deletions are possible there.
  {
    auto sub = induce(g, triples, present);
    const auto labels = component_labels(sub.graph, {});
    for (const auto& tr : sub.triples) {
      if (tr.crisp && triple_violated(labels, tr)) return std::nullopt;
    }
  }
  const bool no_deletable = fixed_count == order.size();
  if (!stage(no_deletable, true, -1)) return std::nullopt;
  for (std::size_t i = fixed_count; i < order.size(); ++i) {
    present.push_back(order[i]);
    std::sort(present.begin(), present.end());
    if (!stage(i + 1 == order.size(), false, order[i])) return std::nullopt;
  }
  auto result = evaluate_triple_cut(g, triples, zv);
  if (!result || result->cost > k) throw Error("triple multicut produced an infeasible solution");
  return result;
}

}  // namespace eqcut
