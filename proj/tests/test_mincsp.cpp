#include <doctest.h>

#include "eqcut/expressive.hpp"
#include "eqcut/lemma_checks.hpp"
#include "eqcut/mincsp.hpp"
#include "eqcut/negative.hpp"
#include "eqcut/relations.hpp"
#include "naive_oracles.hpp"

using namespace eqcut;

namespace {

long long lib_cost(const MinCspInstance& inst) {
  const auto r = brute_force_cost(inst);
  return r.report.infinite ? naive::kInf : r.report.cost;
}

std::vector<RelationPtr> mixed_relations() {
  return {eq_relation(), neq_relation(), nae3_relation(), odd3_relation(), and_eq_neq_relation()};
}

}  // namespace

TEST_SUITE("mincsp") {
  TEST_CASE("instances track variables and constraints") {
    MinCspInstance inst("t");
    const int x = inst.add_variable("x");
    const int y = inst.add_variable("y");
    CHECK(inst.variable("y") == y);
    CHECK_FALSE(inst.find_variable("z").has_value());
    CHECK_THROWS_AS(inst.variable("z"), Error);
    CHECK_THROWS_AS(inst.add_constraint(eq_relation(), {x}, false), Error);
    inst.add_constraint(eq_relation(), {x, y}, false, 3);
    inst.add_assignment(x, 4, true);
    inst.add_assignment(y, 2, false);
    CHECK(inst.constants() == std::vector<long long>{2, 4});
    const auto smaller = inst.without({0});
    CHECK(smaller.constraints().size() == 2);
  }

  TEST_CASE("assignment cost counts violated multiplicities") {
    MinCspInstance inst;
    const int x = inst.add_variable("x");
    const int y = inst.add_variable("y");
    inst.add_constraint(eq_relation(), {x, y}, false, 2);
    inst.add_constraint(neq_relation(), {x, y}, false, 1);
    auto rep = assignment_cost(inst, Assignment{{5, 5}});
    CHECK_FALSE(rep.infinite);
    CHECK(rep.cost == 1);
    rep = assignment_cost(inst, Assignment{{5, 6}});
    CHECK(rep.cost == 2);
    CHECK(rep.within(2));
    CHECK_FALSE(rep.within(1));
  }

  TEST_CASE("exhaustive cost agrees with the enumeration oracle") {
    gen::Rng rng(21);
    for (int t = 0; t < 120; ++t) {
      auto inst = gen::random_instance(rng, mixed_relations(), gen::uniform(rng, 1, 6), gen::uniform(rng, 1, 6), 0.2, 3);
      if (gen::coin(rng, 0.4)) gen::add_random_assignments(rng, inst, gen::uniform(rng, 1, 3), 2, 0.2, 2);
      const long long want = naive::mincsp_cost(inst);
      CHECK(lib_cost(inst) == want);
      const auto r = brute_force_cost(inst);
      if (!r.report.infinite) CHECK(naive::cost_of(inst, r.assignment.values) == want);
    }
  }

  TEST_CASE("consistency means cost zero with every constraint crisp") {
    gen::Rng rng(22);
    for (int t = 0; t < 80; ++t) {
      const auto inst = gen::random_instance(rng, mixed_relations(), gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 5), 0.0, 1);
      CHECK(is_consistent(inst) == (naive::mincsp_cost(inst) == 0));
      const auto a = find_satisfying(inst);
      if (a) CHECK(naive::cost_of(inst, a->values) == 0);
    }
  }

  TEST_CASE("crisp constraints as k+1 copies keep costs up to k") {
    gen::Rng rng(23);
    for (int t = 0; t < 80; ++t) {
      const auto inst = gen::random_instance(rng, mixed_relations(), gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 5), 0.4, 2);
      const long long k = gen::uniform(rng, 0, 4);
      const long long orig = naive::mincsp_cost(inst);
      const long long copies = naive::mincsp_cost(with_crisp_as_copies(inst, k));
      if (orig <= k) CHECK(copies == orig);
      else CHECK(copies > k);
    }
  }

  TEST_CASE("oracle cap is enforced") {
    MinCspInstance inst;
    for (int i = 0; i < 5; ++i) inst.add_variable("x" + std::to_string(i));
    CHECK_THROWS_AS(brute_force_cost(inst, 4), Error);
    CHECK_NOTHROW(brute_force_cost(inst, 5));
  }

  TEST_CASE("equality and disequality gadgets from table relations") {
    for (const auto& row : classification_table()) {
      CAPTURE(row.relation->name());
      const auto& r = *row.relation;
      if (!is_constant(r)) {
        const auto g = implement_disequality(row.relation);
        CHECK(verify_gadget(g, *neq_relation()).ok);
      }
      if (is_horn(r) && !is_strictly_negative(r)) {
        const auto g = implement_equality(row.relation);
        CHECK(verify_gadget(g, *eq_relation()).ok);
      }
    }
  }

  TEST_CASE("negative witnesses are NAE3 or the disjunction of two disequalities") {
    for (const auto& r : {nae3_relation(), or_neq_neq_relation()}) {
      const auto w = extract_nae3_or_disjneqneq(r);
      const auto& target = w.kind == NegativeWitnessKind::Nae3 ? *nae3_relation() : *or_neq_neq_relation();
      CHECK(verify_gadget(w.definition, target).ok);
    }
    CHECK(extract_nae3_or_disjneqneq(nae3_relation()).kind == NegativeWitnessKind::Nae3);
    CHECK(extract_nae3_or_disjneqneq(or_neq_neq_relation()).kind == NegativeWitnessKind::OrNeqNeq);
  }

  TEST_CASE("double conjunction witnesses") {
    CHECK(extract_double_conjunction(*and_eq_eq_relation()).kind == DoubleKind::EqEq);
    CHECK(extract_double_conjunction(*and_eq_neq_relation()).kind == DoubleKind::EqNeq);
    CHECK(extract_double_conjunction(*and_neq_neq_relation()).kind == DoubleKind::NeqNeq);
    const auto w = extract_double_conjunction(*and_neq_neq_relation());
    CHECK(w.projection == *and_neq_neq_relation());
  }

  TEST_CASE("inlining a gadget keeps the cost") {
    gen::Rng rng(24);
    const auto g = implement_disequality(nae3_relation());
    for (int t = 0; t < 40; ++t) {
      const auto inst = gen::random_instance(rng, {eq_relation(), neq_relation()}, gen::uniform(rng, 2, 4),
                                             gen::uniform(rng, 1, 3), 0.2, 1);
      const auto out = inline_gadget(inst, *neq_relation(), g);
      if (out.num_variables() > 9) continue;
      CHECK(naive::mincsp_cost(out) == naive::mincsp_cost(inst));
    }
  }

  TEST_CASE("splitting negative constraints bounds the cost both ways") {
    gen::Rng rng(25);
    const std::vector<RelationPtr> rels{neq_relation(), and_neq_neq_relation(), nae3_relation(), or_neq_neq_relation()};
    for (int t = 0; t < 60; ++t) {
      const auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.2, 2);
      const auto split = split_conjunctive(inst);
      const long long a = naive::mincsp_cost(inst);
      const long long b = naive::mincsp_cost(split.instance);
      CHECK(a <= b);
      if (a < naive::kInf) CHECK(b <= split.factor * a);
    }
  }

  TEST_CASE("strictly negative solvers against the oracle") {
    gen::Rng rng(26);
    const std::vector<RelationPtr> rels{neq_relation(), neq3_relation(), and_neq_neq_relation(), disj_neq_relation(2)};
    for (int t = 0; t < 80; ++t) {
      auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 5), 0.15, 2);
      gen::add_random_assignments(rng, inst, gen::uniform(rng, 0, 4), 3, 0.15, 2);
      const long long opt = naive::mincsp_cost(inst);
      const int k = gen::uniform(rng, 0, 5);
      const auto exact = negative_fpt_solve(inst, k);
      CHECK(exact.has_value() == (opt <= k));
      if (exact) {
        CHECK(exact->cost == opt);
        CHECK(naive::mincsp_cost(inst.without(exact->deleted)) == 0);
      }
      const auto approx = negative_approx(inst);
      CHECK(approx.has_value() == (opt < naive::kInf));
      if (approx) {
        CHECK(naive::mincsp_cost(inst.without(approx->deleted)) == 0);
        CHECK(approx->cost <= negative_approx_factor(inst) * opt);
      }
    }
    MinCspInstance bad;
    const int x = bad.add_variable("x");
    const int y = bad.add_variable("y");
    bad.add_constraint(eq_relation(), {x, y}, false);
    CHECK_THROWS_AS(negative_fpt_solve(bad, 1), Error);
  }
}
