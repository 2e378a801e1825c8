// Vertex-deletion cut graphs and separator primitives.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqcut/eqrel.hpp"

namespace eqcut {

using VertexSet = std::vector<int>;  // sorted, unique

VertexSet make_vertex_set(std::vector<int> vs);

class CutGraph {
 public:
  struct Edge {
    int u;
    int v;
    long long multiplicity;
  };

  int add_vertex(std::string name, bool undeletable = false);
  // Adds multiplicity to an existing edge. Self-loops are rejected.
  void add_edge(int u, int v, long long multiplicity = 1);
  void remove_edges_of(int v);

  std::optional<int> find_vertex(std::string_view name) const;
  int vertex(std::string_view name) const;
  int num_vertices() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
  bool deletable(int v) const { return !undeletable_.at(static_cast<std::size_t>(v)); }
  void set_undeletable(int v, bool undeletable = true);
  const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  bool adjacent(int u, int v) const;
  long long edge_multiplicity(int u, int v) const;
  std::vector<Edge> edges() const;  // u < v, sorted

  // Same vertex ids, with every edge at the given vertices removed.
  CutGraph isolate(const VertexSet& vs) const;

 private:
  std::vector<std::string> names_;
  std::vector<bool> undeletable_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<long long>> mult_;  // parallel to adj_
};

using Request = std::pair<int, int>;  // (s, t) with s <= t; (s, s) means "delete s"
using RequestList = std::vector<Request>;

RequestList make_request_list(std::vector<Request> pairs);

struct Triple {
  std::array<int, 3> v{};
  long long weight = 1;
  bool crisp = false;
};
using TripleSet = std::vector<Triple>;

// Component label per vertex of G - removed; -1 for removed vertices.
std::vector<int> component_labels(const CutGraph& g, const VertexSet& removed);

// Components of G - X; throws if X contains an undeletable vertex.
std::vector<VertexSet> components(const CutGraph& g, const VertexSet& x);

// Vertices reachable from sources in G - removed (sources in removed are skipped).
std::vector<bool> reachable(const CutGraph& g, const VertexSet& sources, const VertexSet& removed);

// s and t are separated by X when one is in X or they lie in different components of G - X.
bool separated(const std::vector<int>& labels, int s, int t);
bool list_satisfied(const std::vector<int>& labels, const RequestList& list);
bool all_lists_satisfied(const CutGraph& g, const VertexSet& x, const std::vector<RequestList>& lists);
// Some member of the set is in X, or two members lie in different components.
bool terminal_set_satisfied(const std::vector<int>& labels, const VertexSet& set);

// Minimum set of deletable vertices other than s separating s from every
// vertex of T; members of T may be deleted. nullopt when none exists.
std::optional<VertexSet> min_vertex_separator(const CutGraph& g, int s, const VertexSet& t);

// The minimum v-W separator with the smallest v-side; throws when none exists.
VertexSet closest_min_separator(const CutGraph& g, int v, const VertexSet& w);

// Size of a minimum X-Y separator that avoids X and Y, capped at limit+1
// (a value above limit means "more than limit", including "none").
int separator_size(const CutGraph& g, const VertexSet& x, const VertexSet& y, int limit);

// All important X-Y separators of size <= k; separators avoid X and Y.
std::vector<VertexSet> important_separators(const CutGraph& g, const VertexSet& x,
                                            const VertexSet& y, int k);

// Minimum vertex set of size <= k, avoiding all terminals, that leaves no path
// between terminals of different groups.
std::optional<VertexSet> multiway_cut(const CutGraph& g, const std::vector<VertexSet>& groups, int k);

// Vertices of G - Y not reachable from T.
VertexSet shadow(const CutGraph& g, const VertexSet& y, const VertexSet& t);

}  // namespace eqcut
