// MinCSP instances over equality relations, their cost semantics, and the
// exhaustive oracle.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqcut/eqrel.hpp"

namespace eqcut {

struct Constraint {
  RelationPtr relation;  // null for a value assignment (x = constant)
  std::vector<int> scope;
  bool crisp = false;
  long long multiplicity = 1;
  long long constant = 0;

  bool is_assignment() const { return relation == nullptr; }
};

class MinCspInstance {
 public:
  explicit MinCspInstance(std::string name = {}) : name_(std::move(name)) {}

  int add_variable(std::string name);
  std::optional<int> find_variable(std::string_view name) const;
  int variable(std::string_view name) const;  // throws when missing
  int num_variables() const { return static_cast<int>(names_.size()); }
  const std::string& variable_name(int v) const { return names_.at(static_cast<std::size_t>(v)); }

  std::size_t add_constraint(RelationPtr relation, std::vector<int> scope, bool crisp,
                             long long multiplicity = 1);
  std::size_t add_assignment(int var, long long value, bool crisp, long long multiplicity = 1);
  const std::vector<Constraint>& constraints() const { return constraints_; }

  // Distinct constants mentioned by assignment constraints, ascending.
  std::vector<long long> constants() const;

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Copy with the listed constraints removed.
  MinCspInstance without(const std::vector<std::size_t>& removed) const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<Constraint> constraints_;
};

// Value per variable. Values that no assignment constraint mentions act as
// anonymous blocks; only equality between them matters.
struct Assignment {
  std::vector<long long> values;
};

struct CostReport {
  bool infinite = false;
  long long cost = 0;
  std::vector<std::size_t> violated;

  bool within(long long budget) const { return !infinite && cost <= budget; }
};

bool constraint_satisfied(const Constraint& c, const Assignment& a);
CostReport assignment_cost(const MinCspInstance& instance, const Assignment& a);

// Oracle variable cap: EQCUT_ORACLE_CAP if set, otherwise 12.
int oracle_cap();

struct OracleResult {
  CostReport report;
  Assignment assignment;
};

// Exact minimum cost over all assignments; throws when the instance has more
// variables than the cap.
OracleResult brute_force_cost(const MinCspInstance& instance, std::optional<int> cap = {});

// An assignment satisfying every constraint (soft ones included), if any.
std::optional<Assignment> find_satisfying(const MinCspInstance& instance,
                                          std::optional<int> cap = {});
bool is_consistent(const MinCspInstance& instance, std::optional<int> cap = {});

// Replaces crisp constraints by soft ones of multiplicity k+1.
MinCspInstance with_crisp_as_copies(const MinCspInstance& instance, long long k);

// A gadget body whose primary variables stand for the target's arguments.
// An implementation gadget may be inlined for soft constraints; otherwise only
// crisp target constraints may be replaced.
struct Gadget {
  MinCspInstance body;
  std::vector<int> primary;
  bool implementation = true;
};

struct GadgetCheck {
  bool ok = true;
  std::string detail;
};

// Exhaustive check over all patterns of the primary variables.
GadgetCheck verify_gadget(const Gadget& gadget, const EqRelation& target);

MinCspInstance inline_gadget(const MinCspInstance& instance, const EqRelation& target,
                             const Gadget& gadget);

struct SplitResult {
  MinCspInstance instance;
  long long factor = 1;  // largest clause count among split soft constraints
};

// Replaces negative relations by one constraint per clause of a prime
// negative formula (equalities as "=", negative clauses as NEQOR<d>).
SplitResult split_conjunctive(const MinCspInstance& instance);

}  // namespace eqcut
