// Named relations used throughout: builtins, the classification table rows,
// and the disjunctive disequality family.
#pragma once

#include <string>
#include <vector>

#include "eqcut/eqrel.hpp"

namespace eqcut {

RelationPtr eq_relation();   // "="
RelationPtr neq_relation();  // "!="
RelationPtr eq3_relation();
RelationPtr neq3_relation();
RelationPtr nae3_relation();
RelationPtr odd3_relation();
RelationPtr or_neq_neq_relation();   // (x1!=x2 | x3!=x4) with the four cross disequalities
RelationPtr and_eq_eq_relation();    // (x1=x2) & (x3=x4)
RelationPtr and_eq_neq_relation();   // (x1=x2) & (x3!=x4)
RelationPtr and_neq_neq_relation();  // (x1!=x2) & (x3!=x4)
RelationPtr even_blocks_relation();  // every block of even size, arity 4

// x1!=y1 | ... | xd!=yd over (x1, y1, ..., xd, yd); d = 1 is plain "!=".
RelationPtr disj_neq_relation(int d);
// Returns d when r equals some disj_neq_relation(d), otherwise 0.
int disj_neq_degree(const EqRelation& r);

// Looks up builtin names ("=", "!=", "EQ3", "NEQ3", "NAE3", "ODD3", "R_OR_NN",
// "R_AND_EE", "R_AND_EN", "R_AND_NN", "EVEN4", "NEQOR<d>" such as "NEQOR2"); nullptr if unknown.
RelationPtr builtin_relation(const std::string& name);

enum class TableClass { Fpt, W1HardFpa, HittingSetHard };
const char* to_string(TableClass c);

struct TableRow {
  RelationPtr relation;
  TableClass expected;
};

// The fourteen rows of the published classification table, in order.
std::vector<TableRow> classification_table();

}  // namespace eqcut
