// Disjunctive Multicut: the list measure, shadow covering, the Simplify
// step and the approximation loop.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "eqcut/graph.hpp"

namespace eqcut {

struct ListMeasure {
  int mu1 = 0;  // singleton requests
  int mu2 = 0;  // other requests
  int mu() const { return mu1 + 3 * mu2; }
  int nu() const { return mu1 + 2 * mu2; }
};

ListMeasure measure(const RequestList& list);

struct FamilyMeasure {
  int mu = 0;  // max over lists
  int nu = 0;  // max over lists
  int mu2_total = 0;
  std::size_t lists = 0;
};

FamilyMeasure measure(const std::vector<RequestList>& lists);

struct ShadowCoverResult {
  VertexSet s;
  VertexSet r;  // complement of s
  VertexSet y;  // the transversal the cover was built for; empty in random mode
};

// Emits covers until the sink returns true.
using CoverSink = std::function<bool(const ShadowCoverResult&)>;
using ShadowCover = std::function<void(const CutGraph& g, const VertexSet& t, int k,
                                       const std::vector<RequestList>& lists, const CoverSink& sink)>;

// One cover per set Y of deletable vertices outside T with |Y| <= k that
// satisfies every list; S is the shadow of Y with respect to T.
ShadowCover deterministic_shadow_cover();

// S is the shadow of a random vertex set; no guarantee, for experiments.
ShadowCover random_shadow_cover(std::uint64_t seed, int samples);

// Runs the deterministic cover.
void shadow_cover(const CutGraph& g, const VertexSet& t, int k, const std::vector<RequestList>& lists,
                  const CoverSink& sink);

// Moves N(v) ∩ S out of S for every undeletable v adjacent to S, repeatedly.
VertexSet normalize_cover(const CutGraph& g, VertexSet s);

// {} when v is disconnected from X; {v} when v is in R or adjacent to X;
// otherwise R ∩ N(H) for the component H of G[V \ R] containing v.
VertexSet compute_Rv(const CutGraph& g, const VertexSet& r, const VertexSet& x, int v);

struct SimplifyBranch {
  CutGraph graph;
  std::vector<RequestList> lists;
  int k = 0;
  std::vector<int> to_parent;  // branch vertex -> a parent vertex
  VertexSet removed;           // parent vertices deleted in this branch
  VertexSet x;                 // branch vertices standing for the compressed solution
};

struct SimplifyStats {
  long long branches = 0;
  long long bound_violations = 0;  // branches breaking a measure bound
};

// Emits (G', L', 2k) branches until the sink returns true. Requires k >= 1.
void simplify(const CutGraph& g, const std::vector<RequestList>& lists, int k, const ShadowCover& cover,
              const std::function<bool(const SimplifyBranch&)>& sink, SimplifyStats* stats = nullptr);

// Checks the measure bounds of a branch against its input.
bool branch_within_bounds(const CutGraph& g, const std::vector<RequestList>& lists, int k,
                          const SimplifyBranch& branch);

struct DjmcResult {
  bool accepted = false;
  VertexSet solution;
  int rounds = 0;           // Simplify rounds on the accepting path
  long long bound = 0;      // 2^rounds * k
  long long branches = 0;
  long long bound_violations = 0;
};

// Never rejects when some solution of size <= k exists; accepted solutions
// are feasible and have size below 2^(rounds+1) * k.
DjmcResult solve_djmc(const CutGraph& g, const std::vector<RequestList>& lists, int k,
                      const ShadowCover& cover = deterministic_shadow_cover());

// Lists not satisfied by the empty set, unchanged otherwise.
std::vector<RequestList> drop_satisfied(const CutGraph& g, const std::vector<RequestList>& lists);

}  // namespace eqcut
