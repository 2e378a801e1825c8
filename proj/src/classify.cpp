#include "eqcut/classify.hpp"

#include "eqcut/relations.hpp"

namespace eqcut {

const char* to_string(ClassicalClass c) { return c == ClassicalClass::P ? "P" : "NP-hard"; }

const char* to_string(ParameterizedClass c) {
  switch (c) {
    case ParameterizedClass::Fpt: return "FPT";
    case ParameterizedClass::W1Hard: return "W1-hard";
    case ParameterizedClass::HittingSetHard: return "HS-hard";
    case ParameterizedClass::CspNpHard: return "CSP-NP-hard";
  }
  return "?";
}

const char* to_string(ApproxClass c) {
  switch (c) {
    case ApproxClass::PolyConst: return "poly-const";
    case ApproxClass::FptConst: return "fpt-const";
    case ApproxClass::HittingSetHard: return "HS-hard";
    case ApproxClass::Trivial: return "trivial";
    case ApproxClass::CspNpHard: return "CSP-NP-hard";
  }
  return "?";
}

Verdict classify_language(const EqLanguage& language, bool add_eq_neq) {
  std::vector<RelationPtr> rels = language.relations();
  if (add_eq_neq) {
    for (auto extra : {eq_relation(), neq_relation()}) {
      bool present = false;
      for (const auto& r : rels) present = present || *r == *extra;
      if (!present) rels.push_back(extra);
    }
  }
  if (rels.empty()) throw Error("cannot classify an empty language");

  Verdict v;
  struct Info {
    RelationPtr rel;
    EssentialCore core;
  };
  std::vector<Info> infos;
  for (const auto& r : rels) {
    if (!r->is_proper()) {
      throw Error("relation '" + r->name() + "' is " + (r->empty() ? "empty" : "complete") +
                  "; only proper relations can be classified");
    }
    infos.push_back({r, essential_core(*r)});
    if (!infos.back().core.redundant.empty()) {
      v.redundancies.push_back({r->name(), infos.back().core.redundant});
    }
  }

  auto first = [&](auto pred) -> const Info* {
    for (const auto& i : infos) {
      if (pred(i)) return &i;
    }
    return nullptr;
  };

  const Info* non_constant = first([](const Info& i) { return !is_constant(*i.rel); });
  const Info* non_sn = first([](const Info& i) { return !is_strictly_negative(*i.rel); });
  const Info* non_horn = first([](const Info& i) { return !is_horn(*i.rel); });

  if (!non_constant || !non_sn) {
    v.csp = ClassicalClass::P;
    v.mincsp_classical = ClassicalClass::P;
    v.parameterized = ParameterizedClass::Fpt;
    v.approx = ApproxClass::Trivial;
    v.witness = Witness{rels.front()->name(), !non_constant ? "constant" : "strictly-negative"};
    return v;
  }
  v.mincsp_classical = ClassicalClass::NPHard;
  if (non_horn) {
    v.csp = ClassicalClass::NPHard;
    v.parameterized = ParameterizedClass::CspNpHard;
    v.approx = ApproxClass::CspNpHard;
    v.witness = Witness{non_horn->rel->name(), "not-horn"};
    return v;
  }
  if (const Info* i = first([](const Info& x) { return !is_negative(*x.rel); })) {
    v.parameterized = ParameterizedClass::HittingSetHard;
    v.approx = ApproxClass::HittingSetHard;
    v.witness = Witness{i->rel->name(), "not-negative"};
    return v;
  }
  if (const Info* i = first([](const Info& x) {
        return !is_split(x.core.relation) && !is_neq3(x.core.relation);
      })) {
    v.parameterized = ParameterizedClass::W1Hard;
    v.approx = ApproxClass::FptConst;
    v.witness = Witness{i->rel->name(), is_conjunctive(*i->rel) ? "conjunctive-not-split"
                                                                  : "negative-not-conjunctive"};
    return v;
  }
  v.parameterized = ParameterizedClass::Fpt;
  v.approx = ApproxClass::FptConst;
  v.witness = Witness{rels.front()->name(), "split-or-neq3"};
  return v;
}

std::optional<TableClass> table_class(const Verdict& v) {
  switch (v.parameterized) {
    case ParameterizedClass::Fpt: return TableClass::Fpt;
    case ParameterizedClass::W1Hard: return TableClass::W1HardFpa;
    case ParameterizedClass::HittingSetHard: return TableClass::HittingSetHard;
    case ParameterizedClass::CspNpHard: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace eqcut
