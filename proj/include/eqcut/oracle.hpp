// Exhaustive reference solvers for the graph cut problems. Exponential; meant
// for graphs with about ten vertices.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "eqcut/graph.hpp"

namespace eqcut {

// Minimum total multiplicity of edges whose deletion separates every request.
// nullopt when a request has s == t.
std::optional<long long> edge_multicut_oracle(const CutGraph& g, const std::vector<Request>& requests);

// Edge Steiner multicut: every terminal set must meet two components.
// nullopt when some set has fewer than two vertices.
std::optional<long long> edge_steiner_oracle(const CutGraph& g, const std::vector<VertexSet>& sets);

// Smallest set of deletable vertices outside `protect` accepted by `ok`,
// searched by increasing size up to limit.
std::optional<VertexSet> min_vertex_deletion(const CutGraph& g,
                                             const std::function<bool(const VertexSet&)>& ok,
                                             int limit, const VertexSet& protect = {});

std::optional<VertexSet> vertex_steiner_oracle(const CutGraph& g, const std::vector<VertexSet>& sets,
                                               int limit);
std::optional<VertexSet> djmc_oracle(const CutGraph& g, const std::vector<RequestList>& lists, int limit);
std::optional<VertexSet> multiway_cut_oracle(const CutGraph& g, const std::vector<VertexSet>& groups,
                                             int limit);

struct TripleMulticutSolution {
  VertexSet vertices;
  std::vector<std::size_t> triples;  // indices of deleted triples
  long long cost = 0;
};

// A triple survives when at least two of its vertices share a component of
// G - Z_V; surviving triples must be deleted (crisp ones cannot be).
bool triple_violated(const std::vector<int>& labels, const Triple& t);

// Minimum |Z_V| + weight(Z_T) up to limit.
std::optional<TripleMulticutSolution> triple_multicut_oracle(const CutGraph& g, const TripleSet& triples,
                                                             long long limit);

// Invokes f on every set partition of {0..n-1} as a block label per element.
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& f);

}  // namespace eqcut
