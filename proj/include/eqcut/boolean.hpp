// Boolean MinCSP over groups of 2-clauses, and the Triple Multicut encoding.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqcut/graph.hpp"

namespace eqcut {

struct BoolLiteral {
  int var = 0;
  bool positive = true;
};

// One or two literals.
struct BoolClause {
  std::vector<BoolLiteral> literals;
};

enum class BoolConstraintKind { Vertex, Terminal, Edge, Triple, Removed };

// A conjunction of clauses, deleted as a whole.
struct BoolConstraint {
  std::vector<BoolClause> clauses;
  bool crisp = false;
  long long weight = 1;
  BoolConstraintKind kind = BoolConstraintKind::Vertex;
  int owner = -1;  // vertex id or triple index
};

struct BooleanInstance {
  int num_vars = 0;
  int classes = 0;  // d
  std::vector<BoolConstraint> constraints;
  long long budget = 0;

  // Variable for v_i (hat = false) or the hatted copy.
  int var(int vertex, int cls, bool hat) const { return (vertex * classes + cls) * 2 + (hat ? 1 : 0); }
};

// alpha[v] is the class (0..d-1) of v in X and -1 elsewhere. Vertices in
// `removed` are already deleted: no vertex constraint, all variables forced
// false. Triples in `skip` are already deleted. Throws when a triple listed in
// `distinct` has two X members in one class.
BooleanInstance build_boolean_instance(const CutGraph& g, const TripleSet& triples,
                                       const std::vector<int>& alpha, long long k,
                                       const VertexSet& removed = {},
                                       const std::vector<std::size_t>& skip = {},
                                       const std::vector<std::size_t>& distinct = {});

// 2-SAT check of the crisp constraints alone.
bool crisp_consistent(const BooleanInstance& b);

// True when the constraints not listed in `deleted` are jointly satisfiable.
bool satisfiable_without(const BooleanInstance& b, const std::vector<std::size_t>& deleted);

// Minimum-weight set of soft constraints whose deletion leaves a satisfiable
// instance, if its weight is at most k. Throws when the crisp part is
// inconsistent.
std::optional<std::vector<std::size_t>> boolean_solve(const BooleanInstance& b, long long k);

// Exhaustive reference for boolean_solve.
std::optional<long long> boolean_oracle(const BooleanInstance& b, long long k);

}  // namespace eqcut
