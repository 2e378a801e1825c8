// Languages extended by assignment constraints x = i: slices over [c], the
// retraction test and the resulting verdicts.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqcut/classify.hpp"
#include "eqcut/eqrel.hpp"

namespace eqcut {

struct SingletonExpansion {
  EqLanguage base;
  std::optional<int> constants;  // nullopt: every natural number is available
};

struct SliceRelation {
  std::string name;
  int arity = 0;
  std::vector<std::vector<int>> tuples;  // values in 1..c, sorted
};

struct SliceLanguage {
  int c = 0;
  std::vector<SliceRelation> relations;
};

SliceRelation slice_relation(const EqRelation& r, int c);
SliceLanguage c_slice(const EqLanguage& language, int c);

// Every tuple stays in R when all values outside a set of at most c-1 of its
// values are merged into one new value.
bool preserved_by_collapse(const EqRelation& r, int c);

// Exhaustive search over retractions onto [c], described by how many values
// outside [c] each element of [c] absorbs (one element absorbs infinitely many).
bool retraction_exists_bruteforce(const EqRelation& r, int c);
bool retraction_exists_bruteforce(const std::vector<RelationPtr>& relations, int c);

struct SliceFlags {
  bool trivial = false;
  bool positive_conjunctive = false;
  bool connected = false;
  std::optional<bool> affine;          // c = 2 only
  std::optional<bool> zero_one_valid;  // c = 2 only: both constant tuples in every relation
};

SliceFlags slice_properties(const SliceLanguage& d);

// Closure under coordinatewise x ^ y ^ z after renaming 1, 2 to 0, 1. Throws when c != 2.
bool slice_affine(const SliceLanguage& d);

enum class ExpansionCase {
  EquivalentToBase,
  Trivial,
  Polynomial,
  BooleanEquivalent,
  StrictlyNegativeFpt,
  PositiveConjunctive,
  HittingSetHardHorn,
  CspNpHard,
};
const char* to_string(ExpansionCase c);

enum class PositiveConjunctiveVerdict { P, Fpt, W1Hard };
const char* to_string(PositiveConjunctiveVerdict v);

struct ExpansionVerdict {
  ExpansionCase kind = ExpansionCase::Polynomial;
  std::optional<PositiveConjunctiveVerdict> sub;
  bool csp_np_hard = false;
  bool mincsp_np_hard = false;
  bool fpt = false;
  bool const_approx = false;
  bool nearest_codeword_hard = false;
  std::optional<Verdict> base;  // set for EquivalentToBase
  std::string note;
};

// Throws on an empty language, improper relations, or c < 1.
ExpansionVerdict classify_expansion(const SingletonExpansion& e);

}  // namespace eqcut
