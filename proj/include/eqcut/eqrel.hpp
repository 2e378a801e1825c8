// Equality relations: canonical partition-pattern tuples, CNF over =/!= literals,
// fragment definability and the structural predicates used by classification.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqcut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kArityCap = 8;

// Restricted-growth tuple: entries[0] == 1 and each entry is at most one more
// than the maximum of the entries before it.
class EqTuple {
 public:
  EqTuple() = default;

  // Checks the restricted-growth invariant; throws otherwise.
  static EqTuple from_canonical(std::vector<int> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }
  int num_blocks() const;
  std::uint64_t key() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend auto operator<=>(const EqTuple&, const EqTuple&) = default;
  friend bool operator==(const EqTuple&, const EqTuple&) = default;

 private:
  explicit EqTuple(std::vector<int> entries) : entries_(std::move(entries)) {}
  std::vector<int> entries_;
  friend EqTuple canonicalize(std::span<const long long> raw);
};

EqTuple canonicalize(std::span<const long long> raw);
EqTuple canonicalize(std::initializer_list<long long> raw);

// Key of the partition pattern of raw values, equal to canonicalize(raw).key().
std::uint64_t pattern_key(std::span<const long long> raw);

enum class Refinement { None, Refines, StrictlyRefines };

// a refines b when a_i = a_j implies b_i = b_j.
Refinement refines(const EqTuple& a, const EqTuple& b);

// All canonical tuples of length r (Bell(r) many), in lexicographic order.
const std::vector<EqTuple>& all_patterns(int r);
long long bell_number(int r);

class EqRelation {
 public:
  EqRelation(int arity, std::vector<EqTuple> tuples, std::string name = {});

  int arity() const { return arity_; }
  const std::vector<EqTuple>& tuples() const { return tuples_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool is_complete() const;
  bool is_proper() const { return !empty() && !is_complete(); }

  bool contains(const EqTuple& t) const;
  bool contains_key(std::uint64_t key) const;
  bool contains_values(std::span<const long long> values) const {
    return contains_key(pattern_key(values));
  }

  EqRelation renamed(std::string name) const;

  // Same arity and tuple set; names are ignored.
  friend bool operator==(const EqRelation& a, const EqRelation& b) {
    return a.arity_ == b.arity_ && a.tuples_ == b.tuples_;
  }

 private:
  int arity_;
  std::vector<EqTuple> tuples_;
  std::vector<std::uint64_t> keys_;
  std::string name_;
};

using RelationPtr = std::shared_ptr<const EqRelation>;

struct Literal {
  int i = 0;  // 0-based indices, i < j
  int j = 1;
  bool equal = true;
  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

Literal make_literal(int i, int j, bool equal);

struct Clause {
  std::vector<Literal> literals;  // sorted, no duplicates
  friend auto operator<=>(const Clause&, const Clause&) = default;
  friend bool operator==(const Clause&, const Clause&) = default;
  int positive_count() const;
  int width() const { return static_cast<int>(literals.size()); }
};

// Sorts and deduplicates; throws on i == j or on both polarities of one pair.
Clause make_clause(std::vector<Literal> literals);

using CnfFormula = std::vector<Clause>;

std::string to_string(const Literal& lit);  // "x1=x2" / "x1!=x2", 1-based
std::string to_string(const Clause& clause);
std::string to_string(const CnfFormula& phi);

bool satisfies(const EqTuple& t, const Literal& lit);
bool satisfies(const EqTuple& t, const Clause& clause);
bool satisfies(const EqTuple& t, const CnfFormula& phi);

EqRelation relation_from_cnf(const CnfFormula& phi, int arity, std::string name = {});

// indices are 0-based; repetition is allowed.
EqRelation project(const EqRelation& r, std::span<const int> indices);

enum class Fragment { Horn, Negative, StrictlyNegative, Conjunctive, Unrestricted };
const char* to_string(Fragment f);

// All inclusion-minimal fragment clauses of width <= max_width entailed by r.
std::vector<Clause> entailed_clauses(const EqRelation& r, Fragment fragment, int max_width);

bool definable(const EqRelation& r, Fragment fragment);

// A fragment formula whose models are exactly r, with every clause prime
// (no literal can be dropped), or nullopt when r is not fragment-definable.
std::optional<CnfFormula> definable_in_fragment(const EqRelation& r, Fragment fragment);

bool is_constant(const EqRelation& r);
bool is_horn(const EqRelation& r);
bool is_negative(const EqRelation& r);
bool is_strictly_negative(const EqRelation& r);
bool is_conjunctive(const EqRelation& r);
bool is_neq3(const EqRelation& r);

struct SplitPartition {
  std::vector<int> equal_block;  // all equal
  std::vector<int> others;       // each differs from the equal block
};
std::optional<SplitPartition> is_split(const EqRelation& r);

// Index pairs (i < j) equal / different in every tuple.
std::vector<std::pair<int, int>> entailed_equalities(const EqRelation& r);
std::vector<std::pair<int, int>> entailed_disequalities(const EqRelation& r);

// Indices whose value never affects membership.
std::vector<int> redundant_arguments(const EqRelation& r);

struct EssentialCore {
  EqRelation relation;
  std::vector<int> kept;
  std::vector<int> redundant;
};
EssentialCore essential_core(const EqRelation& r);

class EqLanguage {
 public:
  EqLanguage() = default;
  void add(RelationPtr relation);  // throws on unnamed or duplicate names
  const std::vector<RelationPtr>& relations() const { return relations_; }
  RelationPtr find(const std::string& name) const;
  std::size_t size() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }

 private:
  std::vector<RelationPtr> relations_;
};

}  // namespace eqcut
