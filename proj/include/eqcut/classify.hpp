// Complexity classification of finite equality languages.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqcut/eqrel.hpp"
#include "eqcut/relations.hpp"

namespace eqcut {

enum class ClassicalClass { P, NPHard };
enum class ParameterizedClass { Fpt, W1Hard, HittingSetHard, CspNpHard };
enum class ApproxClass { PolyConst, FptConst, HittingSetHard, Trivial, CspNpHard };

const char* to_string(ClassicalClass c);
const char* to_string(ParameterizedClass c);
const char* to_string(ApproxClass c);

struct Witness {
  std::string relation;
  std::string reason;
};

struct RedundancyNote {
  std::string relation;
  std::vector<int> redundant;  // 0-based indices
};

struct Verdict {
  ClassicalClass csp = ClassicalClass::P;
  ClassicalClass mincsp_classical = ClassicalClass::P;
  ParameterizedClass parameterized = ParameterizedClass::Fpt;
  ApproxClass approx = ApproxClass::Trivial;
  std::optional<Witness> witness;
  std::vector<RedundancyNote> redundancies;
};

// Throws Error on an empty language or on empty/complete relations. When
// add_eq_neq is set, = and != are added before classifying.
Verdict classify_language(const EqLanguage& language, bool add_eq_neq = false);

// Column of the published table for a verdict; nullopt for CSP-hard languages.
std::optional<TableClass> table_class(const Verdict& v);

}  // namespace eqcut
