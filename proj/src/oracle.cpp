#include "eqcut/oracle.hpp"

#include <algorithm>
#include <limits>

namespace eqcut {

void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  if (n == 0) {
    f(label);
    return;
  }
  // Restricted growth strings, iterated in place.
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  while (true) {
    f(label);
    int i = n - 1;
    while (i > 0 && label[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
    if (i == 0) return;
    ++label[static_cast<std::size_t>(i)];
    int running = std::max(prefix_max[static_cast<std::size_t>(i - 1)], label[static_cast<std::size_t>(i)]);
    prefix_max[static_cast<std::size_t>(i)] = running;
    for (int j = i + 1; j < n; ++j) {
      label[static_cast<std::size_t>(j)] = 0;
      prefix_max[static_cast<std::size_t>(j)] = running;
    }
  }
}

namespace {

long long crossing_weight(const std::vector<CutGraph::Edge>& edges, const std::vector<int>& label) {
  long long w = 0;
  for (const auto& e : edges) {
    if (label[static_cast<std::size_t>(e.u)] != label[static_cast<std::size_t>(e.v)]) w += e.multiplicity;
  }
  return w;
}

}  // namespace

std::optional<long long> edge_multicut_oracle(const CutGraph& g, const std::vector<Request>& requests) {
  for (const auto& r : requests) {
    if (r.first == r.second) return std::nullopt;
  }
  const auto edges = g.edges();
  long long best = std::numeric_limits<long long>::max();
  for_each_partition(g.num_vertices(), [&](const std::vector<int>& label) {
    for (const auto& r : requests) {
      if (label[static_cast<std::size_t>(r.first)] == label[static_cast<std::size_t>(r.second)]) return;
    }
    best = std::min(best, crossing_weight(edges, label));
  });
  return best;
}

std::optional<long long> edge_steiner_oracle(const CutGraph& g, const std::vector<VertexSet>& sets) {
  for (const auto& s : sets) {
    if (s.size() < 2) return std::nullopt;
  }
  const auto edges = g.edges();
  long long best = std::numeric_limits<long long>::max();
  for_each_partition(g.num_vertices(), [&](const std::vector<int>& label) {
    for (const auto& s : sets) {
      if (!terminal_set_satisfied(label, s)) return;
    }
    best = std::min(best, crossing_weight(edges, label));
  });
  return best;
}

std::optional<VertexSet> min_vertex_deletion(const CutGraph& g,
                                             const std::function<bool(const VertexSet&)>& ok,
                                             int limit, const VertexSet& protect) {
  std::vector<int> pool;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.deletable(v) && !std::binary_search(protect.begin(), protect.end(), v)) pool.push_back(v);
  }
  const int m = static_cast<int>(pool.size());
  for (int size = 0; size <= std::min(limit, m); ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      VertexSet x;
      for (int i : idx) x.push_back(pool[static_cast<std::size_t>(i)]);
      if (ok(x)) return x;
      int i = size - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - size + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;
}

std::optional<VertexSet> vertex_steiner_oracle(const CutGraph& g, const std::vector<VertexSet>& sets,
                                               int limit) {
  return min_vertex_deletion(
      g,
      [&](const VertexSet& x) {
        const auto labels = component_labels(g, x);
        return std::all_of(sets.begin(), sets.end(),
                           [&](const VertexSet& s) { return terminal_set_satisfied(labels, s); });
      },
      limit);
}

std::optional<VertexSet> djmc_oracle(const CutGraph& g, const std::vector<RequestList>& lists, int limit) {
  return min_vertex_deletion(g, [&](const VertexSet& x) { return all_lists_satisfied(g, x, lists); }, limit);
}

std::optional<VertexSet> multiway_cut_oracle(const CutGraph& g, const std::vector<VertexSet>& groups,
                                             int limit) {
  VertexSet terminals;
  for (const auto& grp : groups) terminals.insert(terminals.end(), grp.begin(), grp.end());
  terminals = make_vertex_set(terminals);
  return min_vertex_deletion(
      g,
      [&](const VertexSet& x) {
        const auto labels = component_labels(g, x);
        for (std::size_t a = 0; a < groups.size(); ++a) {
          for (std::size_t b = a + 1; b < groups.size(); ++b) {
            for (int s : groups[a]) {
              for (int t : groups[b]) {
                if (!separated(labels, s, t)) return false;
              }
            }
          }
        }
        return true;
      },
      limit, terminals);
}

bool triple_violated(const std::vector<int>& labels, const Triple& t) {
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const int la = labels[static_cast<std::size_t>(t.v[static_cast<std::size_t>(a)])];
      const int lb = labels[static_cast<std::size_t>(t.v[static_cast<std::size_t>(b)])];
      if (la >= 0 && la == lb) return true;
    }
  }
  return false;
}

std::optional<TripleMulticutSolution> triple_multicut_oracle(const CutGraph& g, const TripleSet& triples,
                                                             long long limit) {
  std::optional<TripleMulticutSolution> best;
  const int vertex_limit = static_cast<int>(std::min<long long>(limit, g.num_vertices()));
  // Enumerate every Z_V within the limit; the triple part is then forced.
  min_vertex_deletion(
      g,
      [&](const VertexSet& x) {
        const auto labels = component_labels(g, x);
        TripleMulticutSolution sol{x, {}, static_cast<long long>(x.size())};
        for (std::size_t i = 0; i < triples.size(); ++i) {
          if (!triple_violated(labels, triples[i])) continue;
          if (triples[i].crisp) return false;
          sol.triples.push_back(i);
          sol.cost += triples[i].weight;
        }
        if (sol.cost <= limit && (!best || sol.cost < best->cost)) best = sol;
        return false;
      },
      vertex_limit);
  return best;
}

}  // namespace eqcut
