#include <doctest.h>

#include "eqcut/lemma_checks.hpp"
#include "eqcut/relations.hpp"
#include "eqcut/singleton.hpp"

using namespace eqcut;

namespace {

ExpansionVerdict verdict(std::vector<RelationPtr> rels, std::optional<int> c) {
  EqLanguage l;
  for (auto& r : rels) l.add(r);
  return classify_expansion({l, c});
}

}  // namespace

TEST_SUITE("singleton") {
  TEST_CASE("slices list tuples over the first c values") {
    const auto s = slice_relation(*neq_relation(), 2);
    CHECK(s.arity == 2);
    CHECK(s.tuples == std::vector<std::vector<int>>{{1, 2}, {2, 1}});
    CHECK(slice_relation(*neq3_relation(), 2).tuples.empty());
    CHECK(slice_relation(*eq_relation(), 3).tuples.size() == 3);
    EqLanguage l;
    l.add(eq_relation());
    l.add(nae3_relation());
    const auto d = c_slice(l, 2);
    CHECK(d.c == 2);
    CHECK(d.relations.size() == 2);
    // NAE3 over two values: the six non-constant tuples.
    CHECK(d.relations[1].tuples.size() == 6);
  }

  TEST_CASE("slice properties") {
    EqLanguage eq;
    eq.add(eq_relation());
    const auto f = slice_properties(c_slice(eq, 2));
    CHECK(f.positive_conjunctive);
    CHECK(f.connected);
    REQUIRE(f.affine.has_value());
    CHECK(*f.affine);
    EqLanguage neq;
    neq.add(neq_relation());
    CHECK(slice_affine(c_slice(neq, 2)));
    CHECK_THROWS_AS(slice_affine(c_slice(neq, 3)), Error);
    EqLanguage nae;
    nae.add(nae3_relation());
    CHECK_FALSE(slice_affine(c_slice(nae, 2)));
  }

  TEST_CASE("collapse test agrees with the retraction search") {
    gen::Rng rng(61);
    for (int t = 0; t < 300; ++t) {
      const auto r = gen::random_relation(rng, gen::uniform(rng, 1, 4));
      for (int c = 1; c <= 3; ++c) CHECK(preserved_by_collapse(r, c) == retraction_exists_bruteforce(r, c));
    }
    // Merging every value is allowed, so only constant relations survive.
    CHECK(preserved_by_collapse(*eq_relation(), 2));
    CHECK_FALSE(preserved_by_collapse(*neq_relation(), 2));
    CHECK_FALSE(preserved_by_collapse(*neq3_relation(), 2));
  }

  TEST_CASE("joint retraction is at least as strict as each relation") {
    gen::Rng rng(62);
    for (int t = 0; t < 60; ++t) {
      const auto a = std::make_shared<EqRelation>(gen::random_relation(rng, gen::uniform(rng, 2, 3), "A"));
      const auto b = std::make_shared<EqRelation>(gen::random_relation(rng, gen::uniform(rng, 2, 3), "B"));
      for (int c = 1; c <= 3; ++c) {
        const bool joint = retraction_exists_bruteforce(std::vector<RelationPtr>{a, b}, c);
        if (joint) {
          CHECK(retraction_exists_bruteforce(*a, c));
          CHECK(retraction_exists_bruteforce(*b, c));
        }
      }
    }
  }

  TEST_CASE("named expansion verdicts") {
    const auto p = verdict({eq_relation()}, 2);
    CHECK_FALSE(p.mincsp_np_hard);
    for (std::optional<int> c : {std::optional<int>(3), std::optional<int>()}) {
      const auto v = verdict({eq_relation()}, c);
      CHECK(v.mincsp_np_hard);
      CHECK(v.fpt);
      CHECK(v.const_approx);
    }
    const auto neq1 = verdict({neq_relation()}, 1);
    CHECK(neq1.kind == ExpansionCase::StrictlyNegativeFpt);
    CHECK(neq1.mincsp_np_hard);
    CHECK(neq1.fpt);
    CHECK(neq1.const_approx);

    const auto even = verdict({even_blocks_relation()}, 2);
    CHECK(even.kind == ExpansionCase::BooleanEquivalent);
    CHECK(even.nearest_codeword_hard);

    const auto conj = verdict({and_eq_eq_relation()}, std::nullopt);
    CHECK(conj.kind == ExpansionCase::PositiveConjunctive);
    REQUIRE(conj.sub.has_value());
    CHECK(*conj.sub == PositiveConjunctiveVerdict::W1Hard);
    CHECK_FALSE(conj.fpt);
    CHECK(conj.const_approx);

    const auto odd = verdict({odd3_relation()}, std::nullopt);
    CHECK(odd.kind == ExpansionCase::HittingSetHardHorn);

    const auto nae = verdict({nae3_relation()}, 3);
    CHECK(nae.kind == ExpansionCase::StrictlyNegativeFpt);

    // (x1=x2 | x2=x3) & x1!=x3 is neither Horn nor constant.
    const auto h = std::make_shared<EqRelation>(
        relation_from_cnf({make_clause({make_literal(0, 1, true), make_literal(1, 2, true)}),
                           make_clause({make_literal(0, 2, false)})},
                          3, "H"));
    const auto hard = verdict({h}, 3);
    CHECK(hard.kind == ExpansionCase::CspNpHard);
    CHECK(hard.csp_np_hard);
  }

  TEST_CASE("languages equivalent to the base language") {
    // Horn with a non-constant, non-strictly-negative relation: constants add nothing.
    const auto v = verdict({eq_relation(), neq_relation()}, 3);
    CHECK(v.kind == ExpansionCase::EquivalentToBase);
    REQUIRE(v.base.has_value());
    CHECK(v.base->parameterized == ParameterizedClass::Fpt);
  }

  TEST_CASE("bad expansions are rejected") {
    CHECK_THROWS_AS(classify_expansion({EqLanguage{}, 2}), Error);
    EqLanguage l;
    l.add(eq_relation());
    CHECK_THROWS_AS(classify_expansion({l, 0}), Error);
  }
}
