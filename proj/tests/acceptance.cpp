// Acceptance run: one PASS/FAIL line per criterion. Reference answers come
// from the enumeration oracles in naive_oracles.hpp or from the published
// table, never from the code under test.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "eqcut/boolean.hpp"
#include "eqcut/classify.hpp"
#include "eqcut/djmc.hpp"
#include "eqcut/gadgets.hpp"
#include "eqcut/io.hpp"
#include "eqcut/lemma_checks.hpp"
#include "eqcut/oracle.hpp"
#include "eqcut/relations.hpp"
#include "eqcut/singleton.hpp"
#include "eqcut/steiner.hpp"
#include "eqcut/triple_multicut.hpp"
#include "naive_oracles.hpp"

using namespace eqcut;
using gen::Rng;

namespace {

// Runtime limits per criterion, seconds.
constexpr double kLimitTable = 10;
constexpr double kLimitWheel = 30;
constexpr double kLimitReductions = 300;
constexpr double kLimitTriple = 600;
constexpr double kLimitStrictSteiner = 120;
constexpr double kLimitSteinerApprox = 300;
constexpr double kLimitDjmc = 600;
constexpr double kLimitSingleton = 120;
constexpr double kLimitFragments = 120;

// Minimum trial counts.
constexpr int kReductionTrials = 200;
constexpr int kTripleTrials = 500;
constexpr int kBooleanTrials = 200;
constexpr int kStrictSteinerTrials = 300;
constexpr int kApproxYesTrials = 300;
constexpr int kApproxNoTrials = 60;
constexpr int kDjmcTrialsPerD = 200;

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= limit) o.fail("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit) + " s");
  if (!o.pass) ++failures;
  std::printf("[%s] %d. %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.detail.empty() ? "" : " : ", o.detail.c_str());
  std::fflush(stdout);
}

std::string opt_text(long long v) { return v >= naive::kInf ? "inf" : std::to_string(v); }

long long lib_cost(const CostReport& c) { return c.infinite ? naive::kInf : c.cost; }

// ---------------------------------------------------------------- 1

Outcome table_regression() {
  Outcome o;
  // Complexity column of the published table, in file order.
  const std::vector<std::pair<std::string, TableClass>> expected{
      {"EQ3", TableClass::Fpt},
      {"T_EQ12", TableClass::Fpt},
      {"T_NEQ13_NEQ23", TableClass::Fpt},
      {"NEQ3", TableClass::Fpt},
      {"T_NEQ23", TableClass::Fpt},
      {"T_EQ12_NEQ13_NEQ23", TableClass::Fpt},
      {"ODD3", TableClass::HittingSetHard},
      {"T_HORN2", TableClass::HittingSetHard},
      {"T_HORN1", TableClass::HittingSetHard},
      {"NAE3", TableClass::W1HardFpa},
      {"R_OR_NN", TableClass::W1HardFpa},
      {"R_AND_EE", TableClass::W1HardFpa},
      {"R_AND_NN", TableClass::W1HardFpa},
      {"R_AND_EN", TableClass::W1HardFpa},
  };
  const auto lang = parse_relations_file(std::string(EQCUT_DATA_DIR) + "/table1.rel");
  if (lang.size() != expected.size()) {
    o.fail("file has " + std::to_string(lang.size()) + " relations");
    return o;
  }
  int matched = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& r = lang.relations()[i];
    if (r->name() != expected[i].first) {
      o.fail("row " + std::to_string(i) + " is " + r->name());
      continue;
    }
    EqLanguage single;
    single.add(r);
    const auto tc = table_class(classify_language(single, true));
    if (!tc || *tc != expected[i].second) {
      o.fail(r->name() + " classified as " + (tc ? to_string(*tc) : "CSP-NP-hard"));
    } else {
      ++matched;
    }
  }
  o.detail = o.pass ? std::to_string(matched) + "/14 rows" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 2

Outcome wheel_gadget() {
  Outcome o;
  for (int t = 2; t <= 4; ++t) {
    const auto w = wheel(t);
    const auto& inst = w.instance;
    const long long cost = naive::mincsp_cost(inst);
    if (cost != 5) {
      o.fail("t=" + std::to_string(t) + ": cost " + opt_text(cost));
      continue;
    }
    // An optimal deletion is exactly the violated set of an optimal
    // assignment, so collect those over all patterns of the variables.
    std::set<std::vector<std::size_t>> optimal;
    const int n = inst.num_variables();
    std::vector<long long> a(static_cast<std::size_t>(n), 0);
    std::function<void(int, long long)> rec = [&](int i, long long used) {
      if (i == n) {
        std::vector<std::size_t> violated;
        long long weight = 0;
        for (std::size_t c = 0; c < inst.constraints().size(); ++c) {
          const auto& con = inst.constraints()[c];
          if (naive::holds(con, a)) continue;
          weight += con.crisp ? naive::kInf : con.multiplicity;
          violated.push_back(c);
        }
        if (weight == 5) optimal.insert(violated);
        return;
      }
      for (long long v = 0; v <= used; ++v) {
        a[static_cast<std::size_t>(i)] = v;
        rec(i + 1, std::max(used, v + 1));
      }
    };
    rec(0, 0);
    std::set<std::vector<std::size_t>> shapes;
    for (int i = 1; i <= t; ++i) {
      auto s = w.shape(i);
      std::sort(s.begin(), s.end());
      if (s.size() != 3) o.fail("t=" + std::to_string(t) + ": shape " + std::to_string(i) + " has " + std::to_string(s.size()) + " constraints");
      shapes.insert(s);
    }
    if (o.pass) o.detail += (o.detail.empty() ? "" : ", ") + std::string("t=") + std::to_string(t) + ": cost 5, " + std::to_string(optimal.size()) + " optimal deletions";
    if (optimal != shapes) {
      o.fail("t=" + std::to_string(t) + ": " + std::to_string(optimal.size()) + " optimal deletions vs " +
             std::to_string(shapes.size()) + " shapes");
    }
  }
  return o;
}

// ---------------------------------------------------------------- 3

Outcome reductions() {
  Outcome o;
  Rng rng(kSeed);
  int counts[5] = {0, 0, 0, 0, 0};
  for (int t = 0; t < kReductionTrials; ++t) {
    {  // edge multicut -> MinCSP
      const int n = gen::uniform(rng, 2, 8);
      const auto g = gen::random_graph(rng, n, 0.35, 0.0, 2);
      const auto reqs = gen::random_requests(rng, n, gen::uniform(rng, 1, 3));
      const long long want = naive::edge_multicut(g, reqs);
      const long long got = naive::mincsp_cost(edge_multicut_to_mincsp(g, reqs, 0).instance);
      if (want != got) o.fail("multicut trial " + std::to_string(t) + ": " + opt_text(want) + " vs " + opt_text(got));
      ++counts[0];
    }
    {  // = and disjunctions of != -> disjunctive multicut
      const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), disj_neq_relation(2)};
      const auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.25, 2);
      const auto red = rneq_to_disjunctive_multicut(inst, 0);
      const long long want = naive::mincsp_cost(inst);
      const long long got = naive::djmc(red.graph, red.lists);
      if (want != got) {
        o.fail("rneq trial " + std::to_string(t) + ": " + opt_text(want) + " vs " + opt_text(got));
      }
      ++counts[1];
    }
    {  // constants -> fresh pairwise different anchors
      const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), neq3_relation(), odd3_relation()};
      auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4), 0.2, 2);
      gen::add_random_assignments(rng, inst, gen::uniform(rng, 1, 3), 3, 0.2, 2);
      const long long want = naive::mincsp_cost(inst);
      const long long got = naive::mincsp_cost(emulate_constants(inst));
      if (want != got) o.fail("constants trial " + std::to_string(t) + ": " + opt_text(want) + " vs " + opt_text(got));
      ++counts[2];
    }
    {  // Steiner -> NAE3
      const int n = gen::uniform(rng, 3, 8);
      const auto g = gen::random_graph(rng, n, 0.35, 0.0, 2);
      const auto sets = gen::random_terminal_sets(rng, n, gen::uniform(rng, 1, 3), 3, 3);
      const long long want = naive::edge_steiner(g, sets);
      const long long got = naive::mincsp_cost(steiner_to_nae3(g, sets, 0).instance);
      if (want != got) o.fail("steiner trial " + std::to_string(t) + ": " + opt_text(want) + " vs " + opt_text(got));
      ++counts[3];
    }
    {  // NAE3 -> Steiner
      const int vars = gen::uniform(rng, 3, 8);
      auto inst = gen::random_instance(rng, {eq_relation()}, vars, gen::uniform(rng, 1, 8), 0.0, 2);
      const int sets = gen::uniform(rng, 1, 3);
      for (int i = 0; i < sets; ++i) {
        std::vector<int> all(static_cast<std::size_t>(vars));
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(3);
        inst.add_constraint(nae3_relation(), all, true);
      }
      const auto red = nae3_to_steiner(inst, 0);
      const long long want = naive::mincsp_cost(inst);
      const long long got = naive::edge_steiner(red.graph, red.sets);
      if (want != got) o.fail("nae3 trial " + std::to_string(t) + ": " + opt_text(want) + " vs " + opt_text(got));
      ++counts[4];
    }
  }
  if (o.pass) {
    o.detail = std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" + std::to_string(counts[2]) + "/" +
               std::to_string(counts[3]) + "/" + std::to_string(counts[4]) + " instances";
  }
  return o;
}

// ---------------------------------------------------------------- 4

// Yes/no of the triple multicut instance decided only through Boolean
// instances: guess the deleted part W of the triple vertices and a class for
// each remaining one.
bool boolean_decision(const CutGraph& g, const TripleSet& triples, long long k) {
  std::set<int> xs;
  for (const auto& t : triples) xs.insert(t.v.begin(), t.v.end());
  const std::vector<int> x(xs.begin(), xs.end());
  const int m = static_cast<int>(x.size());
  for (std::uint32_t wmask = 0; wmask < (1U << m); ++wmask) {
    VertexSet w;
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      if ((wmask >> i) & 1U) {
        ok = ok && g.deletable(x[static_cast<std::size_t>(i)]);
        w.push_back(x[static_cast<std::size_t>(i)]);
      }
    }
    if (!ok || static_cast<long long>(w.size()) > k) continue;
    std::vector<int> rest;
    for (int v : x) {
      if (!std::binary_search(w.begin(), w.end(), v)) rest.push_back(v);
    }
    const CutGraph h = g.isolate(w);
    bool found = false;
    for_each_partition(static_cast<int>(rest.size()), [&](const std::vector<int>& cls) {
      if (found) return;
      std::vector<int> alpha(static_cast<std::size_t>(g.num_vertices()), -1);
      for (std::size_t i = 0; i < rest.size(); ++i) alpha[static_cast<std::size_t>(rest[i])] = cls[i];
      const auto b = build_boolean_instance(h, triples, alpha, k - static_cast<long long>(w.size()), w);
      if (!crisp_consistent(b)) return;
      if (boolean_solve(b, k - static_cast<long long>(w.size()))) found = true;
    });
    if (found) return true;
  }
  return false;
}

Outcome triple_multicut_check() {
  Outcome o;
  Rng rng(kSeed + 4);
  int trials = 0, yes = 0;
  for (int t = 0; t < kTripleTrials; ++t) {
    const int n = gen::uniform(rng, 3, 8);
    const auto g = gen::random_graph(rng, n, 0.35, 0.2);
    const auto triples = gen::random_triples(rng, n, gen::uniform(rng, 1, 4), 0.2, 2);
    const int k = gen::uniform(rng, 0, 3);
    const long long opt = naive::triple_multicut(g, triples);
    const auto got = triple_multicut(g, triples, k);
    ++trials;
    if ((opt <= k) != got.has_value()) {
      o.fail("trial " + std::to_string(t) + ": optimum " + opt_text(opt) + " at k=" + std::to_string(k) + " but solver " +
             (got ? "accepted" : "rejected"));
    } else if (got && got->cost != opt) {
      o.fail("trial " + std::to_string(t) + ": solver cost " + std::to_string(got->cost) + " vs " + std::to_string(opt));
    }
    yes += got ? 1 : 0;
  }
  int btrials = 0;
  for (int t = 0; t < kBooleanTrials; ++t) {
    const int n = gen::uniform(rng, 3, 6);
    const auto g = gen::random_graph(rng, n, 0.35, 0.2);
    const auto triples = gen::random_triples(rng, n, gen::uniform(rng, 1, 2), 0.2, 2);
    const int k = gen::uniform(rng, 0, 2);
    const bool want = naive::triple_multicut(g, triples) <= k;
    ++btrials;
    if (boolean_decision(g, triples, k) != want) {
      o.fail("boolean trial " + std::to_string(t) + ": expected " + (want ? "yes" : "no"));
    }
  }
  if (o.pass) {
    o.detail = std::to_string(trials) + " solver trials (" + std::to_string(yes) + " yes), " + std::to_string(btrials) +
               " Boolean trials, 0 mismatches";
  }
  return o;
}

// ---------------------------------------------------------------- 5

Outcome strict_steiner_check() {
  Outcome o;
  Rng rng(kSeed + 5);
  int yes = 0;
  for (int t = 0; t < kStrictSteinerTrials; ++t) {
    const int n = gen::uniform(rng, 4, 10);
    auto g = gen::random_graph(rng, n, 0.3, 0.1);
    const int hub = gen::uniform(rng, 0, n - 1);
    g.set_undeletable(hub);
    std::vector<VertexSet> sets;
    const int p = gen::uniform(rng, 1, 3);
    for (int i = 0; i < p; ++i) {
      VertexSet s{hub};
      const int extra = gen::uniform(rng, 1, 2);
      while (static_cast<int>(s.size()) < extra + 1) {
        const int v = gen::uniform(rng, 0, n - 1);
        if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
      }
      sets.push_back(make_vertex_set(s));
    }
    const int k = gen::uniform(rng, 0, 4);
    const long long opt = naive::vertex_steiner(g, sets);
    StrictSteinerStats st;
    const auto got = strict_steiner(g, hub, sets, k, &st);
    const std::string tag = "trial " + std::to_string(t) + ": ";
    if ((opt <= k) != got.has_value()) {
      o.fail(tag + "optimum " + opt_text(opt) + " k=" + std::to_string(k) + " solver " + (got ? "accepted" : "rejected"));
    } else if (got && (static_cast<long long>(got->size()) != opt || !naive::feasible_sets(g, *got, sets))) {
      o.fail(tag + "returned size " + std::to_string(got->size()) + " vs optimum " + opt_text(opt));
    }
    if (st.max_depth > k) o.fail(tag + "branching depth " + std::to_string(st.max_depth) + " > k=" + std::to_string(k));
    if (!st.flow_monotone) o.fail(tag + "closest-separator size did not increase along a branch");
    yes += got ? 1 : 0;
  }
  if (o.pass) o.detail = std::to_string(kStrictSteinerTrials) + " instances, " + std::to_string(yes) + " yes";
  return o;
}

// ---------------------------------------------------------------- 6

Outcome steiner_approx_check() {
  Outcome o;
  Rng rng(kSeed + 6);
  int yes = 0, no = 0, attempts = 0;
  while ((yes < kApproxYesTrials || no < kApproxNoTrials) && attempts < 20000) {
    ++attempts;
    const int n = gen::uniform(rng, 4, 10);
    const auto g = gen::random_graph(rng, n, 0.3, 0.1);
    const auto sets = gen::random_terminal_sets(rng, n, gen::uniform(rng, 1, 3), 2, 3);
    const int k = gen::uniform(rng, 0, 3);
    const long long opt = naive::vertex_steiner(g, sets);
    const bool is_yes = opt <= k;
    const bool is_no = opt > 2LL * k;
    if ((is_yes && yes >= kApproxYesTrials) || (is_no && no >= kApproxNoTrials) || (!is_yes && !is_no)) continue;
    const auto res = steiner_2approx(g, sets, k);
    const std::string tag = "attempt " + std::to_string(attempts) + ": ";
    if (is_yes) {
      ++yes;
      if (!res.accepted) o.fail(tag + "rejected with optimum " + std::to_string(opt) + " <= k=" + std::to_string(k));
      else if (!naive::feasible_sets(g, res.cut, sets)) o.fail(tag + "infeasible cut");
      else if (static_cast<long long>(res.cut.size()) > 2 * opt) o.fail(tag + "cut of size " + std::to_string(res.cut.size()) + " > 2*" + std::to_string(opt));
    } else {
      ++no;
      if (res.accepted) o.fail(tag + "accepted with optimum " + opt_text(opt) + " > 2k");
    }
  }
  if (yes < kApproxYesTrials || no < kApproxNoTrials) o.fail("too few instances generated");
  if (o.pass) o.detail = std::to_string(yes) + " yes-instances, " + std::to_string(no) + " instances with optimum > 2k";
  return o;
}

// ---------------------------------------------------------------- 7

struct Measure {
  int mu = 0, nu = 0;
};

Measure family_measure(const std::vector<RequestList>& lists) {
  Measure m;
  for (const auto& l : lists) {
    int singles = 0, pairs = 0;
    for (auto [s, t] : l) (s == t ? singles : pairs)++;
    m.mu = std::max(m.mu, singles + 3 * pairs);
    m.nu = std::max(m.nu, singles + 2 * pairs);
  }
  return m;
}

Outcome djmc_check() {
  Outcome o;
  Rng rng(kSeed + 7);
  long long branches = 0;
  int accepted = 0, trials = 0;
  for (int d = 1; d <= 2; ++d) {
    for (int t = 0; t < kDjmcTrialsPerD; ++t) {
      const int n = gen::uniform(rng, 3, 9);
      const auto g = gen::random_graph(rng, n, 0.3, 0.15);
      const auto lists = gen::random_lists(rng, g, gen::uniform(rng, 1, 4), d, 0.2);
      const int k = gen::uniform(rng, 0, 2);
      const long long opt = naive::djmc(g, lists);
      const auto res = solve_djmc(g, lists, k);
      ++trials;
      const std::string tag = "d=" + std::to_string(d) + " trial " + std::to_string(t) + ": ";
      if (opt <= k && !res.accepted) o.fail(tag + "rejected with optimum " + std::to_string(opt));
      if (res.accepted) {
        ++accepted;
        if (!naive::feasible_lists(g, res.solution, lists)) o.fail(tag + "infeasible solution");
        for (int v : res.solution) {
          if (!g.deletable(v)) o.fail(tag + "solution deletes an undeletable vertex");
        }
      }
      if (res.bound_violations != 0) o.fail(tag + std::to_string(res.bound_violations) + " bound violations inside the solver");
      // Top-level Simplify branches, measured here.
      const auto open = drop_satisfied(g, lists);
      const Measure before = family_measure(open);
      if (k < 1 || before.mu == before.nu) continue;  // no pair requests left
      bool cheap_branch = false;
      simplify(g, open, k, deterministic_shadow_cover(), [&](const SimplifyBranch& br) {
        ++branches;
        if (naive::djmc(br.graph, br.lists) <= 2LL * k) cheap_branch = true;
        const Measure after = family_measure(br.lists);
        if (br.graph.num_vertices() > g.num_vertices()) o.fail(tag + "branch grew the graph");
        if (after.nu > before.nu) o.fail(tag + "nu grew from " + std::to_string(before.nu) + " to " + std::to_string(after.nu));
        if (after.mu > before.mu - 1) o.fail(tag + "mu went from " + std::to_string(before.mu) + " to " + std::to_string(after.mu));
        if (static_cast<long long>(br.lists.size()) > static_cast<long long>(k) * k * static_cast<long long>(open.size())) {
          o.fail(tag + std::to_string(br.lists.size()) + " lists > k^2 * " + std::to_string(open.size()));
        }
        return false;
      });
      if (opt <= k && !cheap_branch) o.fail(tag + "no Simplify branch keeps cost <= 2k");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(trials) + " instances, " + std::to_string(accepted) + " accepted, " + std::to_string(branches) +
               " top-level branches, 0 violations";
  }
  return o;
}

// ---------------------------------------------------------------- 8

Outcome singleton_check() {
  Outcome o;
  auto lang_of = [](std::vector<RelationPtr> rels) {
    EqLanguage l;
    for (auto& r : rels) l.add(r);
    return l;
  };
  auto verdict = [&](std::vector<RelationPtr> rels, std::optional<int> c) {
    return classify_expansion({lang_of(std::move(rels)), c});
  };
  auto hard_fpt_approx = [](const ExpansionVerdict& v) { return v.mincsp_np_hard && v.fpt && v.const_approx; };

  if (verdict({eq_relation()}, 2).mincsp_np_hard) o.fail("({=}, c=2) is not polynomial");
  for (std::optional<int> c : {std::optional<int>(3), std::optional<int>(4), std::optional<int>()}) {
    if (!hard_fpt_approx(verdict({eq_relation()}, c))) {
      o.fail("({=}, c=" + (c ? std::to_string(*c) : std::string("inf")) + ") is not NP-hard+FPT+const-approx");
    }
  }
  if (!hard_fpt_approx(verdict({neq_relation()}, 1))) o.fail("({!=}, c=1) is not NP-hard+FPT+const-approx");
  const auto even = verdict({even_blocks_relation()}, 2);
  if (even.kind != ExpansionCase::BooleanEquivalent || !even.nearest_codeword_hard) {
    o.fail(std::string("(even blocks, c=2) gave ") + to_string(even.kind));
  }
  const auto conj = verdict({and_eq_eq_relation()}, std::nullopt);
  if (!conj.sub || *conj.sub != PositiveConjunctiveVerdict::W1Hard || conj.fpt || !conj.const_approx) {
    o.fail(std::string("(R_AND_EE, c=inf) gave ") + to_string(conj.kind));
  }

  long long checked = 0, preserved = 0;
  for (int r = 1; r <= 4 && o.pass; ++r) {
    const auto& pats = all_patterns(r);
    const std::uint32_t total = 1U << pats.size();
    for (std::uint32_t mask = 0; mask < total && o.pass; ++mask) {
      std::vector<EqTuple> ts;
      for (std::size_t i = 0; i < pats.size(); ++i) {
        if ((mask >> i) & 1U) ts.push_back(pats[i]);
      }
      const EqRelation rel(r, ts, "R");
      for (int c = 1; c <= 3; ++c) {
        const bool a = preserved_by_collapse(rel, c);
        const bool b = retraction_exists_bruteforce(rel, c);
        ++checked;
        preserved += a;
        if (a != b) o.fail("arity " + std::to_string(r) + " mask " + std::to_string(mask) + " c=" + std::to_string(c));
      }
    }
  }
  if (o.pass) {
    o.detail = "5 named cases, " + std::to_string(checked) + " (relation, c) pairs agree (" + std::to_string(preserved) +
               " with a retraction)";
  }
  return o;
}

// ---------------------------------------------------------------- 9

bool clause_in_fragment(const Clause& c, Fragment f) {
  const int pos = c.positive_count();
  switch (f) {
    case Fragment::Horn: return pos <= 1;
    case Fragment::Negative: return pos == 0 || c.width() == 1;
    case Fragment::StrictlyNegative: return pos == 0;
    case Fragment::Conjunctive: return c.width() == 1;
    case Fragment::Unrestricted: return true;
  }
  return false;
}

// Bit per pattern satisfying the clause.
std::uint32_t clause_models(const Clause& c, int arity) {
  std::uint32_t m = 0;
  const auto& pats = all_patterns(arity);
  for (std::size_t i = 0; i < pats.size(); ++i) {
    bool sat = false;
    for (const auto& l : c.literals) sat = sat || ((pats[i][l.i] == pats[i][l.j]) == l.equal);
    if (sat) m |= 1U << i;
  }
  return m;
}

Outcome fragment_check() {
  Outcome o;
  const std::vector<Fragment> fragments{Fragment::Horn, Fragment::Negative, Fragment::StrictlyNegative,
                                        Fragment::Conjunctive, Fragment::Unrestricted};
  long long compared = 0;
  for (int r = 1; r <= 3; ++r) {
    const auto& pats = all_patterns(r);
    const int np = static_cast<int>(pats.size());
    const std::uint32_t full = (1U << np) - 1;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) pairs.push_back({i, j});
    }
    // Every clause: per pair absent, =, or !=. Code 0 is the empty clause,
    // the only way to define the empty unary relation.
    std::vector<Clause> all;
    int combos = 1;
    for (std::size_t p = 0; p < pairs.size(); ++p) combos *= 3;
    for (int code = 0; code < combos; ++code) {
      std::vector<Literal> lits;
      int x = code;
      for (auto [i, j] : pairs) {
        if (x % 3 == 1) lits.push_back(make_literal(i, j, true));
        if (x % 3 == 2) lits.push_back(make_literal(i, j, false));
        x /= 3;
      }
      all.push_back(make_clause(lits));
    }
    for (Fragment f : fragments) {
      std::vector<std::uint32_t> models;
      for (const auto& c : all) {
        if (clause_in_fragment(c, f)) models.push_back(clause_models(c, r));
      }
      // Formulas of up to np clauses: one clause per excluded pattern suffices.
      std::set<std::uint32_t> definable{full};
      std::function<void(std::size_t, int, std::uint32_t)> rec = [&](std::size_t from, int left, std::uint32_t cur) {
        definable.insert(cur);
        if (left == 0) return;
        for (std::size_t i = from; i < models.size(); ++i) rec(i + 1, left - 1, cur & models[i]);
      };
      rec(0, np, full);
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        std::vector<EqTuple> ts;
        for (int i = 0; i < np; ++i) {
          if ((mask >> i) & 1U) ts.push_back(pats[static_cast<std::size_t>(i)]);
        }
        const EqRelation rel(r, ts, "R");
        const auto phi = definable_in_fragment(rel, f);
        ++compared;
        const bool want = definable.count(mask) > 0;
        const std::string tag = std::string(to_string(f)) + " arity " + std::to_string(r) + " mask " + std::to_string(mask);
        if (phi.has_value() != want) {
          o.fail(tag + ": library " + (phi ? "definable" : "not definable"));
          continue;
        }
        if (phi) {
          std::uint32_t m = full;
          for (const auto& c : *phi) {
            if (!clause_in_fragment(c, f)) o.fail(tag + ": clause outside the fragment");
            m &= clause_models(c, r);
          }
          if (m != mask) o.fail(tag + ": formula defines a different relation");
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " (relation, fragment) pairs agree";
  return o;
}

}  // namespace

int main() {
  criterion(1, "classification table regression", kLimitTable, table_regression);
  criterion(2, "choice gadget cost and optimal shapes", kLimitWheel, wheel_gadget);
  criterion(3, "cost-preserving reductions", kLimitReductions, reductions);
  criterion(4, "triple multicut and Boolean encoding", kLimitTriple, triple_multicut_check);
  criterion(5, "strict Steiner multicut", kLimitStrictSteiner, strict_steiner_check);
  criterion(6, "Steiner multicut 2-approximation", kLimitSteinerApprox, steiner_approx_check);
  criterion(7, "disjunctive multicut and Simplify bounds", kLimitDjmc, djmc_check);
  criterion(8, "singleton expansions and collapse test", kLimitSingleton, singleton_check);
  criterion(9, "fragment definability", kLimitFragments, fragment_check);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
