// Random instance generators and oracle cross-checks for every reduction and
// solver, shared by the verify-lemmas command and the test suites.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eqcut/gadgets.hpp"
#include "eqcut/graph.hpp"
#include "eqcut/mincsp.hpp"

namespace eqcut {

namespace gen {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);  // inclusive
bool coin(Rng& rng, double p);

// Vertices named v0, v1, ...
CutGraph random_graph(Rng& rng, int n, double edge_p, double undeletable_p = 0.0, long long max_mult = 1);
std::vector<Request> random_requests(Rng& rng, int n, int count);  // s < t
std::vector<VertexSet> random_terminal_sets(Rng& rng, int n, int count, int min_size, int max_size);
TripleSet random_triples(Rng& rng, int n, int count, double crisp_p, long long max_weight);
// Each list has 1..d requests; a request is a singleton with probability singleton_p.
std::vector<RequestList> random_lists(Rng& rng, const CutGraph& g, int count, int d, double singleton_p);
// Scopes use distinct variables whenever the arity allows it.
MinCspInstance random_instance(Rng& rng, const std::vector<RelationPtr>& relations, int vars, int constraints,
                               double crisp_p, long long max_mult);
// Adds soft (or crisp) assignments to values 1..constants.
void add_random_assignments(Rng& rng, MinCspInstance& instance, int count, int constants, double crisp_p,
                            long long max_mult);
HittingSetInstance random_hitting_set(Rng& rng, int universe, int sets, int max_size);
// Both graphs are k internally disjoint s-t paths of length 1..max_len;
// a random subset of edges is paired.
SplitPairedCutInstance random_spc(Rng& rng, int k, int max_len);
// Uniform random subset of the patterns of the given arity.
EqRelation random_relation(Rng& rng, int arity, const std::string& name = "R");

}  // namespace gen

struct CheckResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string detail;  // first failure
  bool ok() const { return failures == 0; }
};

struct LemmaCheck {
  std::string name;
  std::function<CheckResult(int trials, std::uint64_t seed)> run;
};

const std::vector<LemmaCheck>& lemma_checks();
std::vector<CheckResult> run_lemma_checks(int trials, std::uint64_t seed);

}  // namespace eqcut
