// Gadgets a single relation provides for = and != and for the hard witness
// relations used by the hardness side of the classification.
#pragma once

#include <array>
#include <string>

#include "eqcut/mincsp.hpp"

namespace eqcut {

// Requires r not constant. Soft r-constraint on the pattern of a coarsest tuple.
Gadget implement_disequality(RelationPtr r);

// Requires r Horn and not strictly negative.
Gadget implement_equality(RelationPtr r);

enum class NegativeWitnessKind { Nae3, OrNeqNeq };

struct NegativeWitness {
  NegativeWitnessKind kind;
  Gadget definition;  // crisp-only, implementation = false
};

// Requires r negative and not conjunctive. The returned definition is checked
// against NAE3 / R_OR_NN by exhaustive model comparison.
NegativeWitness extract_nae3_or_disjneqneq(RelationPtr r);

enum class DoubleKind { EqEq, EqNeq, NeqNeq };
const char* to_string(DoubleKind k);

struct DoubleConjunctionWitness {
  DoubleKind kind;
  std::array<int, 4> indices;  // 0-based; (indices[0], indices[1]) is the first edge
  EqRelation projection;
};

// Requires r conjunctive, not split, not NEQ3 (checked on the essential core).
DoubleConjunctionWitness extract_double_conjunction(const EqRelation& r);

}  // namespace eqcut
