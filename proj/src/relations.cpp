#include "eqcut/relations.hpp"

#include <map>
#include <mutex>

namespace eqcut {

namespace {

RelationPtr from_tuples(const std::string& name, int arity,
                        std::initializer_list<std::initializer_list<long long>> tuples) {
  std::vector<EqTuple> ts;
  for (auto t : tuples) ts.push_back(canonicalize(t));
  return std::make_shared<const EqRelation>(arity, std::move(ts), name);
}

Literal eq(int i, int j) { return make_literal(i - 1, j - 1, true); }
Literal ne(int i, int j) { return make_literal(i - 1, j - 1, false); }

RelationPtr from_cnf(const std::string& name, int arity,
                     std::initializer_list<std::initializer_list<Literal>> clauses) {
  CnfFormula phi;
  for (auto c : clauses) phi.push_back(make_clause(std::vector<Literal>(c)));
  return std::make_shared<const EqRelation>(relation_from_cnf(phi, arity, name));
}

}  // namespace

RelationPtr eq_relation() {
  static const RelationPtr r = from_tuples("=", 2, {{1, 1}});
  return r;
}
RelationPtr neq_relation() {
  static const RelationPtr r = from_tuples("!=", 2, {{1, 2}});
  return r;
}
RelationPtr eq3_relation() {
  static const RelationPtr r = from_tuples("EQ3", 3, {{1, 1, 1}});
  return r;
}
RelationPtr neq3_relation() {
  static const RelationPtr r = from_tuples("NEQ3", 3, {{1, 2, 3}});
  return r;
}
RelationPtr nae3_relation() {
  static const RelationPtr r = from_cnf("NAE3", 3, {{ne(1, 2), ne(2, 3)}});
  return r;
}
RelationPtr odd3_relation() {
  static const RelationPtr r = from_tuples("ODD3", 3, {{1, 1, 1}, {1, 2, 3}});
  return r;
}
RelationPtr or_neq_neq_relation() {
  static const RelationPtr r = from_cnf(
      "R_OR_NN", 4,
      {{ne(1, 2), ne(3, 4)}, {ne(1, 3)}, {ne(1, 4)}, {ne(2, 3)}, {ne(2, 4)}});
  return r;
}
RelationPtr and_eq_eq_relation() {
  static const RelationPtr r = from_tuples("R_AND_EE", 4, {{1, 1, 1, 1}, {1, 1, 2, 2}});
  return r;
}
RelationPtr and_eq_neq_relation() {
  static const RelationPtr r = from_cnf("R_AND_EN", 4, {{eq(1, 2)}, {ne(3, 4)}});
  return r;
}
RelationPtr and_neq_neq_relation() {
  static const RelationPtr r = from_cnf("R_AND_NN", 4, {{ne(1, 2)}, {ne(3, 4)}});
  return r;
}
RelationPtr even_blocks_relation() {
  static const RelationPtr r =
      from_tuples("EVEN4", 4, {{1, 1, 1, 1}, {1, 1, 2, 2}, {1, 2, 1, 2}, {1, 2, 2, 1}});
  return r;
}

RelationPtr disj_neq_relation(int d) {
  if (d < 1 || 2 * d > kArityCap) throw Error("disjunctive disequality degree out of range");
  if (d == 1) return neq_relation();
  static std::mutex mu;
  static std::map<int, RelationPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[d];
  if (!slot) {
    std::vector<Literal> lits;
    for (int i = 0; i < d; ++i) lits.push_back(make_literal(2 * i, 2 * i + 1, false));
    slot = std::make_shared<const EqRelation>(
        relation_from_cnf({make_clause(lits)}, 2 * d, "NEQOR" + std::to_string(d)));
  }
  return slot;
}

int disj_neq_degree(const EqRelation& r) {
  if (r.arity() % 2 != 0) return 0;
  const int d = r.arity() / 2;
  return *disj_neq_relation(d) == r ? d : 0;
}

RelationPtr builtin_relation(const std::string& name) {
  static const std::map<std::string, RelationPtr (*)()> table = {
      {"=", eq_relation},           {"!=", neq_relation},
      {"EQ3", eq3_relation},        {"NEQ3", neq3_relation},
      {"NAE3", nae3_relation},      {"ODD3", odd3_relation},
      {"R_OR_NN", or_neq_neq_relation},
      {"R_AND_EE", and_eq_eq_relation},
      {"R_AND_EN", and_eq_neq_relation},
      {"R_AND_NN", and_neq_neq_relation},
      {"EVEN4", even_blocks_relation},
  };
  if (auto it = table.find(name); it != table.end()) return it->second();
  if (name.rfind("NEQOR", 0) == 0 && name.size() > 5) {
    try {
      return disj_neq_relation(std::stoi(name.substr(5)));
    } catch (const std::exception&) {
      return nullptr;
    }
  }
  return nullptr;
}

const char* to_string(TableClass c) {
  switch (c) {
    case TableClass::Fpt: return "FPT";
    case TableClass::W1HardFpa: return "W1-hard+FPA";
    case TableClass::HittingSetHard: return "HS-hard";
  }
  return "?";
}

std::vector<TableRow> classification_table() {
  using T = TableClass;
  return {
      {eq3_relation(), T::Fpt},
      {from_cnf("T_EQ12", 3, {{eq(1, 2)}}), T::Fpt},
      {from_cnf("T_NEQ13_NEQ23", 3, {{ne(1, 3)}, {ne(2, 3)}}), T::Fpt},
      {neq3_relation(), T::Fpt},
      {from_cnf("T_NEQ23", 3, {{ne(2, 3)}}), T::Fpt},
      {from_cnf("T_EQ12_NEQ13_NEQ23", 3, {{eq(1, 2)}, {ne(1, 3)}, {ne(2, 3)}}), T::Fpt},
      {odd3_relation(), T::HittingSetHard},
      {from_cnf("T_HORN2", 3, {{eq(1, 2), ne(1, 3)}, {eq(1, 2), ne(2, 3)}}), T::HittingSetHard},
      {from_cnf("T_HORN1", 3, {{ne(1, 2), eq(2, 3)}}), T::HittingSetHard},
      {nae3_relation(), T::W1HardFpa},
      {or_neq_neq_relation(), T::W1HardFpa},
      {and_eq_eq_relation(), T::W1HardFpa},
      {and_neq_neq_relation(), T::W1HardFpa},
      {and_eq_neq_relation(), T::W1HardFpa},
  };
}

}  // namespace eqcut
