#include "eqcut/steiner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "eqcut/oracle.hpp"

namespace eqcut {

namespace {

bool contains(const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

VertexSet unite(VertexSet a, const VertexSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  return make_vertex_set(std::move(a));
}

struct Sub {
  CutGraph graph;
  std::vector<int> to_parent;
  std::vector<int> local;
};

Sub induce(const CutGraph& g, const VertexSet& keep) {
  Sub s;
  s.local.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  for (int v : keep) {
    s.local[static_cast<std::size_t>(v)] = s.graph.add_vertex(g.name(v), !g.deletable(v));
    s.to_parent.push_back(v);
  }
  for (const auto& e : g.edges()) {
    const int a = s.local[static_cast<std::size_t>(e.u)];
    const int b = s.local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) s.graph.add_edge(a, b, e.multiplicity);
  }
  return s;
}

std::vector<VertexSet> sets_within(const std::vector<VertexSet>& sets, const std::vector<int>& local) {
  std::vector<VertexSet> out;
  for (const auto& s : sets) {
    VertexSet m;
    bool inside = true;
    for (int v : s) {
      const int l = local[static_cast<std::size_t>(v)];
      if (l < 0) inside = false;
      m.push_back(l);
    }
    if (inside) out.push_back(make_vertex_set(m));
  }
  return out;
}

template <class F>
void for_each_subset_of_size(const std::vector<int>& pool, int size, F&& f) {
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == size) {
      f(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// One compression step: X satisfies every set of h; look for a solution of
// size <= 2b given that some solution of size <= b exists.
std::optional<VertexSet> compress(const CutGraph& h, const std::vector<VertexSet>& sets, const VertexSet& x, int b) {
  std::vector<int> cand;
  for (int v : x) {
    if (h.deletable(v)) cand.push_back(v);
  }
  const int n = h.num_vertices();
  std::optional<VertexSet> found;
  for (int size = 0; size <= std::min<int>(b, static_cast<int>(cand.size())) && !found; ++size) {
    for_each_subset_of_size(cand, size, [&](const std::vector<int>& w0raw) {
      if (found) return;
      const VertexSet w0 = make_vertex_set(w0raw);
      const CutGraph h1 = h.isolate(w0);
      VertexSet rest;
      std::set_difference(x.begin(), x.end(), w0.begin(), w0.end(), std::back_inserter(rest));
      const int left = b - size;

      std::vector<int> root(static_cast<std::size_t>(n));
      std::iota(root.begin(), root.end(), 0);
      std::function<int(int)> find = [&](int v) {
        return root[static_cast<std::size_t>(v)] == v ? v : root[static_cast<std::size_t>(v)] = find(root[static_cast<std::size_t>(v)]);
      };
      auto fixed = [&](int v) { return !contains(w0, v) && (contains(rest, v) || !h.deletable(v)); };
      for (const auto& e : h1.edges()) {
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
        if (found) return;
        int classes = 0;
        for (int l : label) classes = std::max(classes, l + 1);
        std::vector<VertexSet> groups(static_cast<std::size_t>(classes));
        for (int v : rest) {
          groups[static_cast<std::size_t>(label[static_cast<std::size_t>(atom_of[static_cast<std::size_t>(v)])])].push_back(v);
        }
        for (int a = 0; a < classes; ++a) {
          for (int c = a + 1; c < classes; ++c) {
            if (separator_size(h1, groups[static_cast<std::size_t>(a)], groups[static_cast<std::size_t>(c)], left) > left) return;
          }
        }
        const auto m = multiway_cut(h1, groups, left);
        if (!m) return;
        const VertexSet removed = unite(w0, *m);
        const auto labels = component_labels(h, removed);

        std::vector<int> class_of_label(static_cast<std::size_t>(n), -1);
        for (int a = 0; a < classes; ++a) {
          for (int v : groups[static_cast<std::size_t>(a)]) class_of_label[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])] = a;
        }
        std::vector<std::vector<VertexSet>> per_class(static_cast<std::size_t>(classes));
        for (const auto& s : sets) {
          if (terminal_set_satisfied(labels, s)) continue;
          const int cls = class_of_label[static_cast<std::size_t>(labels[static_cast<std::size_t>(s.front())])];
          if (cls < 0) return;  // X would not satisfy this set
          per_class[static_cast<std::size_t>(cls)].push_back(s);
        }
        VertexSet cut = removed;
        int budget = left;
        for (int a = 0; a < classes; ++a) {
          const auto& todo = per_class[static_cast<std::size_t>(a)];
          if (todo.empty()) continue;
          // A class may span several components of h - removed.
          CutGraph comp;
          std::vector<int> local(static_cast<std::size_t>(n), -1);
          std::vector<int> back;
          const int hub = comp.add_vertex("hub", true);
          back.push_back(-1);
          for (int v = 0; v < n; ++v) {
            const int lv = labels[static_cast<std::size_t>(v)];
            if (lv < 0 || class_of_label[static_cast<std::size_t>(lv)] != a) continue;
            if (contains(groups[static_cast<std::size_t>(a)], v)) {
              local[static_cast<std::size_t>(v)] = hub;
            } else {
              local[static_cast<std::size_t>(v)] = comp.add_vertex(h.name(v), !h.deletable(v));
              back.push_back(v);
            }
          }
          for (const auto& e : h.edges()) {
            const int u = local[static_cast<std::size_t>(e.u)];
            const int w = local[static_cast<std::size_t>(e.v)];
            if (u >= 0 && w >= 0 && u != w) comp.add_edge(u, w, 1);
          }
          std::vector<VertexSet> csets;
          for (const auto& s : todo) {
            VertexSet m2;
            for (int v : s) m2.push_back(local[static_cast<std::size_t>(v)]);
            csets.push_back(make_vertex_set(m2));
          }
          const auto part = strict_steiner(comp, hub, csets, budget);
          if (!part) return;
          budget -= static_cast<int>(part->size());
          for (int v : *part) cut.push_back(back[static_cast<std::size_t>(v)]);
        }
        cut = make_vertex_set(cut);
        if (static_cast<int>(cut.size()) <= 2 * b && steiner_feasible(h, sets, cut)) found = cut;
      });
    });
  }
  return found;
}

std::optional<VertexSet> solve_with_budget(const CutGraph& g, const std::vector<VertexSet>& sets, int b) {
  VertexSet present;
  std::vector<int> order;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!g.deletable(v)) present.push_back(v);
    else order.push_back(v);
  }
  {
    auto sub = induce(g, present);
    if (!steiner_feasible(sub.graph, sets_within(sets, sub.local), {})) return std::nullopt;
  }
  VertexSet z;
  for (int v : order) {
    present = unite(present, {v});
    auto sub = induce(g, present);
    const auto local_sets = sets_within(sets, sub.local);
    VertexSet lz;
    for (int u : z) lz.push_back(sub.local[static_cast<std::size_t>(u)]);
    lz = make_vertex_set(lz);
    if (steiner_feasible(sub.graph, local_sets, lz)) continue;
    const auto next = compress(sub.graph, local_sets, unite(lz, {sub.local[static_cast<std::size_t>(v)]}), b);
    if (!next) return std::nullopt;
    z.clear();
    for (int u : *next) z.push_back(sub.to_parent[static_cast<std::size_t>(u)]);
    z = make_vertex_set(z);
  }
  return z;
}

}  // namespace

bool steiner_feasible(const CutGraph& g, const std::vector<VertexSet>& sets, const VertexSet& cut) {
  for (int v : cut) {
    if (!g.deletable(v)) return false;
  }
  const auto labels = component_labels(g, cut);
  for (const auto& s : sets) {
    if (!terminal_set_satisfied(labels, s)) return false;
  }
  return true;
}

std::optional<VertexSet> strict_steiner(const CutGraph& g, int hub, const std::vector<VertexSet>& sets, int k,
                                        StrictSteinerStats* stats) {
  if (g.deletable(hub)) throw Error("strict Steiner hub must be undeletable");
  {
    const auto labels = component_labels(g, {hub});
    for (const auto& s : sets) {
      if (!terminal_set_satisfied(labels, s)) throw Error("hub does not satisfy every terminal set");
    }
  }
  StrictSteinerStats local;
  StrictSteinerStats& st = stats ? *stats : local;
  for (int budget = 0; budget <= k; ++budget) {
    std::optional<VertexSet> answer;
    std::function<bool(const VertexSet&, int, int)> rec = [&](const VertexSet& y, int depth, int prev) -> bool {
      ++st.nodes;
      VertexSet w;
      if (!y.empty()) {
        auto sep = min_vertex_separator(g, hub, y);
        if (!sep) return false;
        w = *sep;
      }
      if (static_cast<int>(w.size()) <= prev) st.flow_monotone = false;
      if (static_cast<int>(w.size()) > budget) return false;
      st.max_depth = std::max(st.max_depth, depth);
      const auto labels = component_labels(g, w);
      const VertexSet* open = nullptr;
      for (const auto& s : sets) {
        if (!terminal_set_satisfied(labels, s)) {
          open = &s;
          break;
        }
      }
      if (!open) {
        answer = w;
        return true;
      }
      for (int t : *open) {
        if (t == hub || contains(y, t)) continue;
        if (rec(unite(y, {t}), depth + 1, static_cast<int>(w.size()))) return true;
      }
      return false;
    };
    if (rec({}, 0, -1)) return answer;
  }
  return std::nullopt;
}

SteinerApproxResult steiner_2approx(const CutGraph& g, const std::vector<VertexSet>& sets, int k) {
  SteinerApproxResult result;
  for (int b = 0; b <= k; ++b) {
    auto cut = solve_with_budget(g, sets, b);
    if (!cut) continue;
    if (!steiner_feasible(g, sets, *cut) || static_cast<int>(cut->size()) > 2 * b) {
      throw Error("Steiner approximation produced an invalid cut");
    }
    result.accepted = true;
    result.cut = *cut;
    result.budget_used = b;
    return result;
  }
  return result;
}

}  // namespace eqcut
