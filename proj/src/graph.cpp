#include "eqcut/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace eqcut {

VertexSet make_vertex_set(std::vector<int> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// ---------------------------------------------------------------- CutGraph

int CutGraph::add_vertex(std::string name, bool undeletable) {
  if (name.empty()) throw Error("vertex name must be nonempty");
  if (find_vertex(name)) throw Error("duplicate vertex '" + name + "'");
  names_.push_back(std::move(name));
  undeletable_.push_back(undeletable);
  adj_.emplace_back();
  mult_.emplace_back();
  return num_vertices() - 1;
}

void CutGraph::add_edge(int u, int v, long long multiplicity) {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) throw Error("edge endpoint out of range");
  if (u == v) throw Error("self-loop at '" + name(u) + "'");
  if (multiplicity < 1) throw Error("edge multiplicity must be positive");
  auto& au = adj_[static_cast<std::size_t>(u)];
  auto it = std::find(au.begin(), au.end(), v);
  if (it != au.end()) {
    mult_[static_cast<std::size_t>(u)][static_cast<std::size_t>(it - au.begin())] += multiplicity;
    auto& av = adj_[static_cast<std::size_t>(v)];
    auto jt = std::find(av.begin(), av.end(), u);
    mult_[static_cast<std::size_t>(v)][static_cast<std::size_t>(jt - av.begin())] += multiplicity;
    return;
  }
  au.push_back(v);
  mult_[static_cast<std::size_t>(u)].push_back(multiplicity);
  adj_[static_cast<std::size_t>(v)].push_back(u);
  mult_[static_cast<std::size_t>(v)].push_back(multiplicity);
}

void CutGraph::remove_edges_of(int v) {
  for (int u : adj_[static_cast<std::size_t>(v)]) {
    auto& au = adj_[static_cast<std::size_t>(u)];
    auto it = std::find(au.begin(), au.end(), v);
    mult_[static_cast<std::size_t>(u)].erase(mult_[static_cast<std::size_t>(u)].begin() + (it - au.begin()));
    au.erase(it);
  }
  adj_[static_cast<std::size_t>(v)].clear();
  mult_[static_cast<std::size_t>(v)].clear();
}

std::optional<int> CutGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int CutGraph::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw Error("unknown vertex '" + std::string(name) + "'");
}

void CutGraph::set_undeletable(int v, bool undeletable) {
  undeletable_.at(static_cast<std::size_t>(v)) = undeletable;
}

bool CutGraph::adjacent(int u, int v) const {
  const auto& au = neighbors(u);
  return std::find(au.begin(), au.end(), v) != au.end();
}

long long CutGraph::edge_multiplicity(int u, int v) const {
  const auto& au = neighbors(u);
  auto it = std::find(au.begin(), au.end(), v);
  if (it == au.end()) return 0;
  return mult_[static_cast<std::size_t>(u)][static_cast<std::size_t>(it - au.begin())];
}

std::vector<CutGraph::Edge> CutGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < num_vertices(); ++u) {
    const auto& au = adj_[static_cast<std::size_t>(u)];
    for (std::size_t i = 0; i < au.size(); ++i) {
      if (u < au[i]) out.push_back({u, au[i], mult_[static_cast<std::size_t>(u)][i]});
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return out;
}

CutGraph CutGraph::isolate(const VertexSet& vs) const {
  CutGraph out = *this;
  for (int v : vs) out.remove_edges_of(v);
  return out;
}

RequestList make_request_list(std::vector<Request> pairs) {
  for (auto& p : pairs) {
    if (p.first > p.second) std::swap(p.first, p.second);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

// ---------------------------------------------------------------- connectivity

std::vector<int> component_labels(const CutGraph& g, const VertexSet& removed) {
  const int n = g.num_vertices();
  std::vector<int> label(static_cast<std::size_t>(n), -2);
  for (int v : removed) label[static_cast<std::size_t>(v)] = -1;
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] != -2) continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(u)) {
        if (label[static_cast<std::size_t>(w)] == -2) {
          label[static_cast<std::size_t>(w)] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<VertexSet> components(const CutGraph& g, const VertexSet& x) {
  for (int v : x) {
    if (!g.deletable(v)) throw Error("cannot delete undeletable vertex '" + g.name(v) + "'");
  }
  const auto label = component_labels(g, x);
  std::vector<VertexSet> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int l = label[static_cast<std::size_t>(v)];
    if (l < 0) continue;
    if (static_cast<std::size_t>(l) >= out.size()) out.resize(static_cast<std::size_t>(l) + 1);
    out[static_cast<std::size_t>(l)].push_back(v);
  }
  return out;
}

std::vector<bool> reachable(const CutGraph& g, const VertexSet& sources, const VertexSet& removed) {
  std::vector<bool> blocked(static_cast<std::size_t>(g.num_vertices()), false);
  for (int v : removed) blocked[static_cast<std::size_t>(v)] = true;
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  std::vector<int> stack;
  for (int s : sources) {
    if (!blocked[static_cast<std::size_t>(s)] && !seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u)) {
      if (!blocked[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

bool separated(const std::vector<int>& labels, int s, int t) {
  const int ls = labels[static_cast<std::size_t>(s)];
  const int lt = labels[static_cast<std::size_t>(t)];
  return ls < 0 || lt < 0 || ls != lt;
}

bool list_satisfied(const std::vector<int>& labels, const RequestList& list) {
  return std::any_of(list.begin(), list.end(),
                     [&](const Request& r) { return separated(labels, r.first, r.second); });
}

bool all_lists_satisfied(const CutGraph& g, const VertexSet& x, const std::vector<RequestList>& lists) {
  const auto labels = component_labels(g, x);
  return std::all_of(lists.begin(), lists.end(),
                     [&](const RequestList& l) { return list_satisfied(labels, l); });
}

bool terminal_set_satisfied(const std::vector<int>& labels, const VertexSet& set) {
  int first = -2;
  for (int v : set) {
    const int l = labels[static_cast<std::size_t>(v)];
    if (l < 0) return true;
    if (first == -2) first = l;
    else if (l != first) return true;
  }
  return false;
}

// ---------------------------------------------------------------- flows

namespace {

constexpr int kInfCap = 1 << 28;

// Vertex-split network: in(v) = 2v, out(v) = 2v+1, source 2n, sink 2n+1.
class SplitNetwork {
 public:
  // cuttable[v]: v may be cut at unit cost.
  SplitNetwork(const CutGraph& g, const VertexSet& sources, const VertexSet& sinks,
               const std::vector<bool>& cuttable)
      : n_(g.num_vertices()), head_(static_cast<std::size_t>(2 * n_ + 2), -1) {
    for (int v = 0; v < n_; ++v) {
      add_arc(2 * v, 2 * v + 1, cuttable[static_cast<std::size_t>(v)] ? 1 : kInfCap);
      for (int w : g.neighbors(v)) add_arc(2 * v + 1, 2 * w, kInfCap);
    }
    for (int s : sources) add_arc(source(), 2 * s + 1, kInfCap);
    for (int t : sinks) add_arc(2 * t + 1, sink(), kInfCap);
  }

  int source() const { return 2 * n_; }
  int sink() const { return 2 * n_ + 1; }

  // Augments until the flow exceeds limit or no path remains.
  long long max_flow(long long limit) {
    long long flow = 0;
    while (flow <= limit) {
      std::vector<int> parent_arc(head_.size(), -1);
      std::vector<bool> seen(head_.size(), false);
      std::deque<int> q{source()};
      seen[static_cast<std::size_t>(source())] = true;
      while (!q.empty() && !seen[static_cast<std::size_t>(sink())]) {
        const int u = q.front();
        q.pop_front();
        for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = next_[static_cast<std::size_t>(a)]) {
          const int w = to_[static_cast<std::size_t>(a)];
          if (cap_[static_cast<std::size_t>(a)] > 0 && !seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = true;
            parent_arc[static_cast<std::size_t>(w)] = a;
            q.push_back(w);
          }
        }
      }
      if (!seen[static_cast<std::size_t>(sink())]) break;
      int bottleneck = kInfCap;
      for (int v = sink(); v != source(); v = to_[static_cast<std::size_t>(parent_arc[static_cast<std::size_t>(v)] ^ 1)]) {
        bottleneck = std::min(bottleneck, cap_[static_cast<std::size_t>(parent_arc[static_cast<std::size_t>(v)])]);
      }
      for (int v = sink(); v != source(); v = to_[static_cast<std::size_t>(parent_arc[static_cast<std::size_t>(v)] ^ 1)]) {
        cap_[static_cast<std::size_t>(parent_arc[static_cast<std::size_t>(v)])] -= bottleneck;
        cap_[static_cast<std::size_t>(parent_arc[static_cast<std::size_t>(v)] ^ 1)] += bottleneck;
      }
      flow += bottleneck;
      if (bottleneck >= kInfCap) break;
    }
    return flow;
  }

  // Nodes reachable from the source in the residual network.
  std::vector<bool> source_side() const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{source()};
    seen[static_cast<std::size_t>(source())] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = next_[static_cast<std::size_t>(a)]) {
        const int w = to_[static_cast<std::size_t>(a)];
        if (cap_[static_cast<std::size_t>(a)] > 0 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    return seen;
  }

  // Nodes that can still reach the sink in the residual network.
  std::vector<bool> sink_side() const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{sink()};
    seen[static_cast<std::size_t>(sink())] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      // Residual arc w->u exists iff the reverse arc of some u-arc has capacity.
      for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = next_[static_cast<std::size_t>(a)]) {
        const int w = to_[static_cast<std::size_t>(a)];
        if (cap_[static_cast<std::size_t>(a ^ 1)] > 0 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    return seen;
  }

  VertexSet cut_vertices(const std::vector<bool>& side_in_source) const {
    VertexSet out;
    for (int v = 0; v < n_; ++v) {
      if (side_in_source[static_cast<std::size_t>(2 * v)] && !side_in_source[static_cast<std::size_t>(2 * v + 1)]) {
        out.push_back(v);
      }
    }
    return out;
  }

 private:
  void add_arc(int u, int v, int cap) {
    to_.push_back(v);
    cap_.push_back(cap);
    next_.push_back(head_[static_cast<std::size_t>(u)]);
    head_[static_cast<std::size_t>(u)] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u);
    cap_.push_back(0);
    next_.push_back(head_[static_cast<std::size_t>(v)]);
    head_[static_cast<std::size_t>(v)] = static_cast<int>(to_.size()) - 1;
  }

  int n_;
  std::vector<int> head_;
  std::vector<int> to_;
  std::vector<int> cap_;
  std::vector<int> next_;
};

std::vector<bool> cuttable_mask(const CutGraph& g, const VertexSet& protect) {
  std::vector<bool> c(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) c[static_cast<std::size_t>(v)] = g.deletable(v);
  for (int v : protect) c[static_cast<std::size_t>(v)] = false;
  return c;
}

bool intersects(const VertexSet& a, const VertexSet& b) {
  for (int v : a) {
    if (std::binary_search(b.begin(), b.end(), v)) return true;
  }
  return false;
}

}  // namespace

std::optional<VertexSet> min_vertex_separator(const CutGraph& g, int s, const VertexSet& t) {
  if (std::binary_search(t.begin(), t.end(), s)) throw Error("source belongs to the target set");
  SplitNetwork net(g, {s}, t, cuttable_mask(g, {s}));
  const long long flow = net.max_flow(g.num_vertices());
  if (flow > g.num_vertices()) return std::nullopt;
  return net.cut_vertices(net.source_side());
}

VertexSet closest_min_separator(const CutGraph& g, int v, const VertexSet& w) {
  auto sep = min_vertex_separator(g, v, w);
  if (!sep) throw Error("no finite separator between '" + g.name(v) + "' and the target set");
  return *sep;
}

int separator_size(const CutGraph& g, const VertexSet& x, const VertexSet& y, int limit) {
  if (intersects(x, y)) return limit + 1;
  VertexSet protect = x;
  protect.insert(protect.end(), y.begin(), y.end());
  SplitNetwork net(g, x, y, cuttable_mask(g, protect));
  const long long flow = net.max_flow(limit);
  return static_cast<int>(std::min<long long>(flow, limit + 1));
}

namespace {

void important_rec(const CutGraph& g, VertexSet x, const VertexSet& y, int k, VertexSet current,
                   std::vector<VertexSet>& out) {
  VertexSet protect = x;
  protect.insert(protect.end(), y.begin(), y.end());
  SplitNetwork net(g, x, y, cuttable_mask(g, protect));
  const long long flow = net.max_flow(k);
  if (flow > k) return;
  if (flow == 0) {
    out.push_back(make_vertex_set(current));
    return;
  }
  // Furthest minimum separator: source side is everything that cannot reach the sink.
  auto sink_side = net.sink_side();
  std::vector<bool> src_side(sink_side.size());
  for (std::size_t i = 0; i < sink_side.size(); ++i) src_side[i] = !sink_side[i];
  const VertexSet furthest = net.cut_vertices(src_side);
  const int v = furthest.front();

  VertexSet with_v = current;
  with_v.push_back(v);
  important_rec(g.isolate({v}), x, y, k - 1, with_v, out);

  x.push_back(v);
  important_rec(g, make_vertex_set(x), y, k, current, out);
}

}  // namespace

std::vector<VertexSet> important_separators(const CutGraph& g, const VertexSet& x,
                                            const VertexSet& y, int k) {
  if (k < 0 || intersects(x, y)) return {};
  std::vector<VertexSet> cands;
  important_rec(g, x, y, k, {}, cands);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  auto reach_of = [&](const VertexSet& s) { return reachable(g, x, s); };
  auto separates = [&](const VertexSet& s) {
    const auto r = reach_of(s);
    return std::none_of(y.begin(), y.end(), [&](int t) { return r[static_cast<std::size_t>(t)]; });
  };
  std::vector<std::vector<bool>> reaches;
  std::vector<VertexSet> minimal;
  for (const auto& s : cands) {
    bool is_min = separates(s);
    for (std::size_t i = 0; i < s.size() && is_min; ++i) {
      VertexSet smaller = s;
      smaller.erase(smaller.begin() + static_cast<long>(i));
      if (separates(smaller)) is_min = false;
    }
    if (is_min) {
      minimal.push_back(s);
      reaches.push_back(reach_of(s));
    }
  }
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < minimal.size() && !dominated; ++j) {
      if (i == j || minimal[j].size() > minimal[i].size()) continue;
      bool subset = true;
      bool strict = false;
      for (std::size_t v = 0; v < reaches[i].size(); ++v) {
        if (reaches[i][v] && !reaches[j][v]) subset = false;
        if (!reaches[i][v] && reaches[j][v]) strict = true;
      }
      dominated = subset && strict;
    }
    if (!dominated) out.push_back(minimal[i]);
  }
  return out;
}

namespace {

std::optional<VertexSet> multiway_rec(const CutGraph& g, const std::vector<VertexSet>& groups,
                                      std::size_t i, int k) {
  if (i + 1 >= groups.size()) return VertexSet{};
  VertexSet rest;
  for (std::size_t j = i + 1; j < groups.size(); ++j) rest.insert(rest.end(), groups[j].begin(), groups[j].end());
  rest = make_vertex_set(rest);
  for (const auto& s : important_separators(g, groups[i], rest, k)) {
    auto sub = multiway_rec(g.isolate(s), groups, i + 1, k - static_cast<int>(s.size()));
    if (sub) {
      VertexSet all = s;
      all.insert(all.end(), sub->begin(), sub->end());
      return make_vertex_set(all);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<VertexSet> multiway_cut(const CutGraph& g, const std::vector<VertexSet>& groups, int k) {
  CutGraph work = g;
  std::vector<VertexSet> gs;
  for (const auto& grp : groups) {
    if (grp.empty()) continue;
    gs.push_back(make_vertex_set(grp));
    for (int v : grp) work.set_undeletable(v);
  }
  for (std::size_t a = 0; a < gs.size(); ++a) {
    for (std::size_t b = a + 1; b < gs.size(); ++b) {
      if (intersects(gs[a], gs[b])) return std::nullopt;
    }
  }
  for (int budget = 0; budget <= k; ++budget) {
    if (auto cut = multiway_rec(work, gs, 0, budget)) return cut;
  }
  return std::nullopt;
}

VertexSet shadow(const CutGraph& g, const VertexSet& y, const VertexSet& t) {
  const auto r = reachable(g, t, y);
  VertexSet out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!r[static_cast<std::size_t>(v)] && !std::binary_search(y.begin(), y.end(), v)) out.push_back(v);
  }
  return out;
}

}  // namespace eqcut
