#include "eqcut/expressive.hpp"

#include <algorithm>
#include <numeric>

#include "eqcut/relations.hpp"

namespace eqcut {

namespace {

MinCspInstance indexed_body(int arity, const std::string& prefix) {
  MinCspInstance body;
  for (int i = 0; i < arity; ++i) body.add_variable(prefix + std::to_string(i + 1));
  return body;
}

std::vector<int> identity_scope(int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

Gadget implement_disequality(RelationPtr r) {
  if (is_constant(*r)) throw Error("relation '" + r->name() + "' is constant; it cannot express !=");
  const EqTuple* coarsest = nullptr;
  for (const auto& t : r->tuples()) {
    if (!coarsest || t.num_blocks() < coarsest->num_blocks()) coarsest = &t;
  }
  Gadget g;
  g.body = indexed_body(coarsest->num_blocks(), "x");
  std::vector<int> scope;
  for (int e : *coarsest) scope.push_back(e - 1);
  int other = 0;
  for (int e : *coarsest) {
    if (e != 1) {
      other = e - 1;
      break;
    }
  }
  g.body.add_constraint(r, scope, false);
  g.primary = {0, other};
  g.implementation = true;
  return g;
}

Gadget implement_equality(RelationPtr r) {
  if (!is_horn(*r) || is_strictly_negative(*r)) {
    throw Error("relation '" + r->name() + "' must be Horn and not strictly negative");
  }
  const auto phi = definable_in_fragment(*r, Fragment::Horn);
  for (const auto& clause : *phi) {
    if (clause.positive_count() != 1) continue;
    std::vector<int> parent = identity_scope(r->arity());
    Literal positive{};
    for (const auto& l : clause.literals) {
      if (l.equal) positive = l;
      else parent[static_cast<std::size_t>(find_root(parent, l.i))] = find_root(parent, l.j);
    }
    std::vector<int> class_of(static_cast<std::size_t>(r->arity()), -1);
    std::vector<int> roots;
    for (int i = 0; i < r->arity(); ++i) {
      const int root = find_root(parent, i);
      auto it = std::find(roots.begin(), roots.end(), root);
      class_of[static_cast<std::size_t>(i)] = static_cast<int>(it - roots.begin());
      if (it == roots.end()) roots.push_back(root);
    }
    Gadget g;
    g.body = indexed_body(static_cast<int>(roots.size()), "x");
    g.body.add_constraint(r, class_of, false);
    g.primary = {class_of[static_cast<std::size_t>(positive.i)],
                 class_of[static_cast<std::size_t>(positive.j)]};
    g.implementation = true;
    if (g.primary[0] != g.primary[1] && verify_gadget(g, *eq_relation()).ok) return g;
  }
  throw Error("internal: no equality gadget found for '" + r->name() + "'");
}

NegativeWitness extract_nae3_or_disjneqneq(RelationPtr r) {
  if (!is_negative(*r) || is_conjunctive(*r)) {
    throw Error("relation '" + r->name() + "' must be negative and not conjunctive");
  }
  const auto phi = definable_in_fragment(*r, Fragment::Negative);
  const int n = r->arity();

  auto base_body = [&](const Clause& clause, std::size_t first, std::size_t second) {
    Gadget g;
    g.body = indexed_body(n, "x");
    g.body.add_constraint(r, identity_scope(n), true);
    for (std::size_t s = 0; s < clause.literals.size(); ++s) {
      if (s == first || s == second) continue;
      g.body.add_constraint(eq_relation(), {clause.literals[s].i, clause.literals[s].j}, true);
    }
    g.implementation = false;
    return g;
  };

  // Classes of the four literal positions after identifying the pairs in `eqs`.
  auto distinct_positions = [&](const std::vector<std::pair<int, int>>& eqs,
                                const std::array<int, 4>& pos) {
    std::vector<int> parent = identity_scope(n);
    for (auto [a, b] : eqs) parent[static_cast<std::size_t>(find_root(parent, a))] = find_root(parent, b);
    std::vector<int> reps;
    std::vector<int> roots;
    for (int p : pos) {
      const int root = find_root(parent, p);
      if (std::find(roots.begin(), roots.end(), root) == roots.end()) {
        roots.push_back(root);
        reps.push_back(p);
      }
    }
    return reps;
  };

  for (const auto& clause : *phi) {
    if (clause.width() < 2) continue;
    for (std::size_t a = 0; a < clause.literals.size(); ++a) {
      for (std::size_t b = a + 1; b < clause.literals.size(); ++b) {
        const Literal& l1 = clause.literals[a];
        const Literal& l2 = clause.literals[b];
        std::vector<std::pair<int, int>> eqs;
        for (std::size_t s = 0; s < clause.literals.size(); ++s) {
          if (s != a && s != b) eqs.emplace_back(clause.literals[s].i, clause.literals[s].j);
        }
        const std::array<int, 4> pos{l1.i, l1.j, l2.i, l2.j};
        const auto reps = distinct_positions(eqs, pos);
        if (reps.size() == 3) {
          Gadget g = base_body(clause, a, b);
          g.primary = reps;
          if (verify_gadget(g, *nae3_relation()).ok) return {NegativeWitnessKind::Nae3, g};
        }
        if (reps.size() == 4) {
          Gadget g = base_body(clause, a, b);
          for (int p : {l1.i, l1.j}) {
            for (int q : {l2.i, l2.j}) g.body.add_constraint(neq_relation(), {p, q}, true);
          }
          g.primary = {l1.i, l1.j, l2.i, l2.j};
          if (verify_gadget(g, *or_neq_neq_relation()).ok) return {NegativeWitnessKind::OrNeqNeq, g};
          // Some cross pair may be forced equal; identify it and look for NAE3.
          for (int p : {l1.i, l1.j}) {
            for (int q : {l2.i, l2.j}) {
              auto eqs2 = eqs;
              eqs2.emplace_back(p, q);
              const auto reps3 = distinct_positions(eqs2, pos);
              if (reps3.size() != 3) continue;
              Gadget h = base_body(clause, a, b);
              h.body.add_constraint(eq_relation(), {p, q}, true);
              h.primary = reps3;
              if (verify_gadget(h, *nae3_relation()).ok) return {NegativeWitnessKind::Nae3, h};
            }
          }
        }
      }
    }
  }
  throw Error("internal: no NAE3 or R_OR_NN definition found for '" + r->name() + "'");
}

const char* to_string(DoubleKind k) {
  switch (k) {
    case DoubleKind::EqEq: return "(=,=)";
    case DoubleKind::EqNeq: return "(=,!=)";
    case DoubleKind::NeqNeq: return "(!=,!=)";
  }
  return "?";
}

DoubleConjunctionWitness extract_double_conjunction(const EqRelation& r) {
  const EqRelation core = essential_core(r).relation;
  if (!is_conjunctive(r) || is_split(core) || is_neq3(core)) {
    throw Error("relation must be conjunctive, not split and not NEQ3");
  }
  const auto blue = entailed_equalities(r);
  const auto red = entailed_disequalities(r);
  struct Edge {
    int a, b;
    bool is_blue;
  };
  std::vector<Edge> edges;
  for (auto [a, b] : blue) edges.push_back({a, b, true});
  for (auto [a, b] : red) edges.push_back({a, b, false});
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  auto is_blue = [&](int x, int y) {
    if (x > y) std::swap(x, y);
    return std::find(blue.begin(), blue.end(), std::pair{x, y}) != blue.end();
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (std::size_t f = e + 1; f < edges.size(); ++f) {
      Edge e1 = edges[e];
      Edge e2 = edges[f];
      if (e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b) continue;
      bool cross_blue = false;
      for (int x : {e1.a, e1.b}) {
        for (int y : {e2.a, e2.b}) cross_blue = cross_blue || is_blue(x, y);
      }
      if (cross_blue) continue;
      if (!e1.is_blue && e2.is_blue) std::swap(e1, e2);
      const DoubleKind kind = e1.is_blue ? (e2.is_blue ? DoubleKind::EqEq : DoubleKind::EqNeq)
                                         : DoubleKind::NeqNeq;
      const std::array<int, 4> idx{e1.a, e1.b, e2.a, e2.b};
      return {kind, idx, project(r, idx)};
    }
  }
  throw Error("internal: no pair of independent edges without blue cross edges");
}

}  // namespace eqcut
