// eqcut: classify equality languages, run reductions and solvers, and check
// the lemma oracles.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eqcut/classify.hpp"
#include "eqcut/djmc.hpp"
#include "eqcut/gadgets.hpp"
#include "eqcut/io.hpp"
#include "eqcut/lemma_checks.hpp"
#include "eqcut/negative.hpp"
#include "eqcut/oracle.hpp"
#include "eqcut/singleton.hpp"
#include "eqcut/steiner.hpp"
#include "eqcut/triple_multicut.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace eqcut;

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kError = 2;

// FNV-1a over the canonical printed form.
std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream s;
  s << std::hex << h;
  return s.str();
}

struct Report {
  bool machine = false;
  json doc;
  std::vector<std::string> lines;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void line(const std::string& s) { lines.push_back(s); }
  void emit() {
    if (machine) {
      std::cout << doc.dump(2) << '\n';
      return;
    }
    for (const auto& l : lines) std::cout << l << '\n';
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cout << "time: " << ms.count() << " ms\n";
  }
};

std::string names(const CutGraph& g, const VertexSet& vs) {
  std::string s;
  for (int v : vs) s += (s.empty() ? "" : " ") + g.name(v);
  return s.empty() ? "(none)" : s;
}

json name_list(const CutGraph& g, const VertexSet& vs) {
  json a = json::array();
  for (int v : vs) a.push_back(g.name(v));
  return a;
}

json verdict_json(const Verdict& v) {
  json j;
  j["csp"] = to_string(v.csp);
  j["mincsp"] = to_string(v.mincsp_classical);
  j["parameterized"] = to_string(v.parameterized);
  j["approx"] = to_string(v.approx);
  const auto tc = table_class(v);
  j["table_class"] = tc ? to_string(*tc) : "CSP-NP-hard";
  if (v.witness) j["witness"] = {{"relation", v.witness->relation}, {"reason", v.witness->reason}};
  return j;
}

std::string verdict_text(const Verdict& v) {
  const auto tc = table_class(v);
  std::string s = std::string("csp=") + to_string(v.csp) + " mincsp=" + to_string(v.mincsp_classical) +
                  " param=" + to_string(v.parameterized) + " approx=" + to_string(v.approx) +
                  " class=" + (tc ? to_string(*tc) : "CSP-NP-hard");
  if (v.witness) s += " witness=" + v.witness->relation + ":" + v.witness->reason;
  return s;
}

json expansion_json(const ExpansionVerdict& v) {
  json j;
  j["case"] = to_string(v.kind);
  if (v.sub) j["sub"] = to_string(*v.sub);
  j["csp_np_hard"] = v.csp_np_hard;
  j["mincsp_np_hard"] = v.mincsp_np_hard;
  j["fpt"] = v.fpt;
  j["const_approx"] = v.const_approx;
  j["nearest_codeword_hard"] = v.nearest_codeword_hard;
  if (v.base) j["base"] = verdict_json(*v.base);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

std::string expansion_text(const ExpansionVerdict& v) {
  std::string s = std::string("case=") + to_string(v.kind);
  if (v.sub) s += std::string("/") + to_string(*v.sub);
  s += std::string(" mincsp=") + (v.mincsp_np_hard ? "NP-hard" : "P") + " fpt=" + (v.fpt ? "yes" : "no") +
       " const-approx=" + (v.const_approx ? "yes" : "no");
  if (v.csp_np_hard) s += " csp=NP-hard";
  if (v.nearest_codeword_hard) s += " nearest-codeword-hard";
  if (!v.note.empty()) s += " note=\"" + v.note + "\"";
  return s;
}

std::optional<int> parse_constants(const std::string& s) {
  if (s == "inf") return std::nullopt;
  const int c = std::stoi(s);
  if (c < 1) throw Error("--constants must be a positive integer or 'inf'");
  return c;
}

int cmd_classify(Report& rep, const std::string& in, const std::string& constants, bool with_eq_neq) {
  const auto lang = parse_relations_file(in);
  rep.doc["input_digest"] = digest(print_relations(lang));
  rep.doc["relations"] = lang.size();
  json rels = json::array();
  auto single = [](const RelationPtr& r) {
    EqLanguage l;
    l.add(r);
    return l;
  };
  if (constants.empty()) {
    for (const auto& r : lang.relations()) {
      const auto v = classify_language(single(r), with_eq_neq);
      rels.push_back({{"name", r->name()}, {"verdict", verdict_json(v)}});
      rep.line(r->name() + ": " + verdict_text(v));
    }
    rep.doc["per_relation"] = rels;
    if (!lang.empty()) {
      const auto v = classify_language(lang, with_eq_neq);
      rep.doc["language"] = verdict_json(v);
      rep.line("language: " + verdict_text(v));
    }
    return kAccept;
  }
  const auto c = parse_constants(constants);
  rep.doc["constants"] = constants;
  auto with_base = [&](EqLanguage l) {
    if (with_eq_neq) {
      for (auto extra : {eq_relation(), neq_relation()}) {
        bool present = false;
        for (const auto& r : l.relations()) present = present || *r == *extra;
        if (!present) l.add(extra);
      }
    }
    return l;
  };
  for (const auto& r : lang.relations()) {
    const auto v = classify_expansion({with_base(single(r)), c});
    rels.push_back({{"name", r->name()}, {"verdict", expansion_json(v)}});
    rep.line(r->name() + ": " + expansion_text(v));
  }
  rep.doc["per_relation"] = rels;
  if (!lang.empty()) {
    const auto v = classify_expansion({with_base(lang), c});
    rep.doc["language"] = expansion_json(v);
    rep.line("language: " + expansion_text(v));
  }
  return kAccept;
}

int cmd_solve(Report& rep, const std::string& algo, const std::string& in, std::optional<long long> k,
              std::uint64_t seed, const std::string& mode) {
  auto need_k = [&]() {
    if (!k) throw Error("solver '" + algo + "' needs -k");
    if (*k < 0) throw Error("-k must be non-negative");
    return *k;
  };
  auto verdict = [&](bool ok) {
    rep.doc["result"] = ok ? "accept" : "reject";
    rep.line(ok ? "accept" : "reject");
    return ok ? kAccept : kReject;
  };
  if (algo == "oracle" || algo == "neg-fpt") {
    const auto inst = parse_instance_file(in);
    rep.doc["input_digest"] = digest(print_instance(inst));
    if (algo == "oracle") {
      const auto res = brute_force_cost(inst);
      const auto& r = res.report;
      rep.doc["cost"] = r.infinite ? json("inf") : json(r.cost);
      rep.doc["violated"] = r.violated;
      std::string ids;
      for (auto i : r.violated) ids += " " + std::to_string(i);
      rep.line(std::string("cost: ") + (r.infinite ? "inf" : std::to_string(r.cost)));
      rep.line("deleted constraints:" + (ids.empty() ? std::string(" (none)") : ids));
      return verdict(k ? r.within(*k) : !r.infinite);
    }
    const auto res = negative_fpt_solve(inst, need_k());
    if (res) {
      rep.doc["cost"] = res->cost;
      rep.doc["deleted"] = res->deleted;
      std::string ids;
      for (auto i : res->deleted) ids += " " + std::to_string(i);
      rep.line("cost: " + std::to_string(res->cost));
      rep.line("deleted constraints:" + (ids.empty() ? std::string(" (none)") : ids));
    }
    return verdict(res.has_value());
  }

  const auto gf = parse_graph_file(in);
  const auto& g = gf.graph;
  rep.doc["input_digest"] = digest(print_graph(gf));
  const long long kk = need_k();
  auto solution = [&](const VertexSet& vs) {
    rep.doc["solution"] = name_list(g, vs);
    rep.line("deleted vertices: " + names(g, vs));
  };
  if (algo == "djmc") {
    if (mode != "det" && mode != "random") throw Error("--mode must be det or random");
    const auto cover = mode == "det" ? deterministic_shadow_cover() : random_shadow_cover(seed, 64);
    const auto res = solve_djmc(g, gf.lists, static_cast<int>(kk), cover);
    rep.doc["mode"] = mode;
    rep.doc["rounds"] = res.rounds;
    rep.doc["bound"] = res.bound;
    rep.doc["branches"] = res.branches;
    rep.doc["bound_violations"] = res.bound_violations;
    if (res.accepted) solution(res.solution);
    rep.line("rounds: " + std::to_string(res.rounds) + " bound: " + std::to_string(res.bound));
    return verdict(res.accepted);
  }
  if (algo == "steiner2x") {
    const auto res = steiner_2approx(g, gf.terminal_sets, static_cast<int>(kk));
    if (res.accepted) {
      solution(res.cut);
      rep.doc["budget_used"] = res.budget_used;
    }
    return verdict(res.accepted);
  }
  if (algo == "strict-steiner") {
    if (!gf.hub) throw Error("strict-steiner needs a 'hub' line");
    StrictSteinerStats st;
    const auto res = strict_steiner(g, *gf.hub, gf.terminal_sets, static_cast<int>(kk), &st);
    rep.doc["max_depth"] = st.max_depth;
    rep.doc["nodes"] = st.nodes;
    if (res) solution(*res);
    return verdict(res.has_value());
  }
  if (algo == "triple-mc") {
    const auto res = triple_multicut(g, gf.triples, kk);
    if (res) {
      solution(res->vertices);
      rep.doc["deleted_triples"] = res->triples;
      rep.doc["cost"] = res->cost;
      std::string ids;
      for (auto i : res->triples) ids += " " + std::to_string(i);
      rep.line("deleted triples:" + (ids.empty() ? std::string(" (none)") : ids));
      rep.line("cost: " + std::to_string(res->cost));
    }
    return verdict(res.has_value());
  }
  throw Error("unknown solver '" + algo + "'");
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string cost_text(const CostReport& c) { return c.infinite ? "inf" : std::to_string(c.cost); }

HittingSetInstance hitting_set_of(const GraphFile& gf) {
  HittingSetInstance hs;
  hs.universe = gf.graph.num_vertices();
  for (const auto& s : gf.terminal_sets) hs.sets.push_back(s);
  return hs;
}

int cmd_reduce(Report& rep, const std::string& name, const std::string& in, const std::string& out, bool verify,
               long long k) {
  rep.doc["reduction"] = name;
  bool ok = true;
  auto check = [&](const std::string& lhs_name, const std::string& lhs, const std::string& rhs_name,
                   const std::string& rhs, bool equal) {
    rep.doc["verify"] = {{lhs_name, lhs}, {rhs_name, rhs}, {"match", equal}};
    rep.line("verify: " + lhs_name + " " + lhs + ", " + rhs_name + " " + rhs + (equal ? " (match)" : " (MISMATCH)"));
    ok = ok && equal;
  };
  auto opt_text = [](const std::optional<long long>& v) { return v ? std::to_string(*v) : std::string("inf"); };

  if (name == "multicut-to-mincsp") {
    const auto gf = parse_graph_file(in);
    std::vector<Request> reqs;
    for (const auto& l : gf.lists) {
      if (l.size() != 1 || l[0].first == l[0].second) throw Error("multicut input needs lists with one (s,t) pair each");
      reqs.push_back(l[0]);
    }
    const auto red = edge_multicut_to_mincsp(gf.graph, reqs, k);
    write_out(out, print_instance(red.instance));
    if (verify) {
      const auto a = edge_multicut_oracle(gf.graph, reqs);
      const auto b = brute_force_cost(red.instance).report;
      check("multicut", opt_text(a), "mincsp", cost_text(b), a && !b.infinite && *a == b.cost);
    }
  } else if (name == "mincsp-to-triple-mc") {
    const auto inst = parse_instance_file(in);
    const auto red = mincsp_to_triple_multicut(inst, k);
    GraphFile gf{inst.name(), red.graph, {}, red.triples, {}, {}};
    write_out(out, print_graph(gf));
    if (verify) {
      const auto a = brute_force_cost(inst).report;
      const auto b = triple_multicut_oracle(red.graph, red.triples, k);
      const bool equal = a.within(k) == b.has_value() && (!b || b->cost == a.cost);
      check("mincsp", cost_text(a), "triple-multicut(<=k)", b ? std::to_string(b->cost) : "none", equal);
    }
  } else if (name == "steiner-to-nae3") {
    const auto gf = parse_graph_file(in);
    const auto red = steiner_to_nae3(gf.graph, gf.terminal_sets, k);
    write_out(out, print_instance(red.instance));
    if (verify) {
      const auto a = edge_steiner_oracle(gf.graph, gf.terminal_sets);
      const auto b = brute_force_cost(red.instance).report;
      check("steiner", opt_text(a), "mincsp", cost_text(b), a && !b.infinite && *a == b.cost);
    }
  } else if (name == "nae3-to-steiner") {
    const auto inst = parse_instance_file(in);
    const auto red = nae3_to_steiner(inst, k);
    GraphFile gf{inst.name(), red.graph, {}, {}, red.sets, {}};
    write_out(out, print_graph(gf));
    if (verify) {
      const auto a = brute_force_cost(inst).report;
      const auto b = edge_steiner_oracle(red.graph, red.sets);
      check("mincsp", cost_text(a), "steiner", opt_text(b), b && !a.infinite && *b == a.cost);
    }
  } else if (name == "rneq-to-djmc") {
    const auto inst = parse_instance_file(in);
    const auto red = rneq_to_disjunctive_multicut(inst, k);
    GraphFile gf{inst.name(), red.graph, red.lists, {}, {}, {}};
    write_out(out, print_graph(gf));
    if (verify) {
      const auto a = brute_force_cost(inst).report;
      const auto b = djmc_oracle(red.graph, red.lists, static_cast<int>(k));
      const bool equal = a.within(k) == b.has_value() && (!b || static_cast<long long>(b->size()) == a.cost);
      check("mincsp", cost_text(a), "djmc(<=k)", b ? std::to_string(b->size()) : "none", equal);
    }
  } else if (name == "emulate-constants") {
    const auto inst = parse_instance_file(in);
    const auto red = emulate_constants(inst);
    write_out(out, print_instance(red));
    if (verify) {
      const auto a = brute_force_cost(inst).report;
      const auto b = brute_force_cost(red).report;
      check("with-constants", cost_text(a), "emulated", cost_text(b),
            a.infinite == b.infinite && (a.infinite || a.cost == b.cost));
    }
  } else if (name == "mis-to-disjneqneq") {
    const auto gf = parse_graph_file(in);
    const auto red = mis_to_disjneqneq(gf.graph, gf.terminal_sets);
    write_out(out, print_instance(red.instance));
    if (verify) {
      const bool a = mis_oracle(gf.graph, gf.terminal_sets);
      const auto b = brute_force_cost(red.instance).report;
      check("mis", a ? "yes" : "no", "mincsp(<=" + std::to_string(red.budget) + ")", cost_text(b),
            a == b.within(red.budget));
    }
  } else if (name == "hs-to-odd3" || name == "hs-to-odd3-constants") {
    const auto gf = parse_graph_file(in);
    const auto hs = hitting_set_of(gf);
    const auto red = name == "hs-to-odd3" ? hitting_set_to_odd3(hs, k) : hitting_set_to_odd3_constants(hs, k);
    write_out(out, print_instance(red.instance));
    for (const auto& n : red.notes) rep.line("note: " + n);
    if (verify) {
      const auto a = hitting_set_oracle(hs);
      const auto b = brute_force_cost(red.instance).report;
      const bool equal = (a && *a <= k) == b.within(k);
      check("hitting-set", a ? std::to_string(*a) : "inf", "mincsp", cost_text(b), equal);
    }
  } else {
    throw Error("unknown reduction '" + name + "'");
  }
  rep.doc["output_written"] = !out.empty();
  return ok ? kAccept : kReject;
}

int cmd_verify(Report& rep, int trials, std::uint64_t seed) {
  int failed = 0;
  json checks = json::array();
  for (const auto& r : run_lemma_checks(trials, seed)) {
    checks.push_back({{"name", r.name}, {"trials", r.trials}, {"failures", r.failures}, {"detail", r.detail}});
    rep.line(std::string(r.ok() ? "PASS " : "FAIL ") + r.name + " (" + std::to_string(r.trials) + " trials" +
             (r.ok() ? ")" : ", " + std::to_string(r.failures) + " failures: " + r.detail + ")"));
    if (!r.ok()) ++failed;
  }
  rep.doc["checks"] = checks;
  rep.doc["failed"] = failed;
  return failed == 0 ? kAccept : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equality-language MinCSP classification, reductions and cut solvers"};
  app.require_subcommand(1);
  std::string report = "text";

  std::string in, out, constants, mode = "det", algo, reduction;
  bool with_eq_neq = false, verify = false;
  long long k_value = 0;
  std::uint64_t seed = 1;
  int trials = 50;

  auto* classify = app.add_subcommand("classify", "Classify a relation file");
  classify->add_option("--in", in, "Relation file")->required();
  classify->add_option("--constants", constants, "Singleton expansion with c constants (integer or 'inf')");
  classify->add_flag("--with-eq-neq", with_eq_neq, "Add = and != to every language");
  classify->add_option("--report", report)->check(CLI::IsMember({"text", "machine"}));

  auto* solve = app.add_subcommand("solve", "Run a solver");
  solve->add_option("algorithm", algo, "djmc|steiner2x|strict-steiner|triple-mc|oracle|neg-fpt")
      ->required()
      ->check(CLI::IsMember({"djmc", "steiner2x", "strict-steiner", "triple-mc", "oracle", "neg-fpt"}));
  solve->add_option("--in", in, "Graph or instance file")->required();
  auto* k_opt = solve->add_option("-k", k_value, "Budget");
  solve->add_option("--seed", seed, "Seed for random mode");
  solve->add_option("--mode", mode, "Shadow cover: det|random")->check(CLI::IsMember({"det", "random"}));
  solve->add_option("--report", report)->check(CLI::IsMember({"text", "machine"}));

  auto* reduce = app.add_subcommand("reduce", "Run a reduction");
  reduce->add_option("name", reduction,
                     "multicut-to-mincsp|mincsp-to-triple-mc|steiner-to-nae3|nae3-to-steiner|rneq-to-djmc|"
                     "emulate-constants|mis-to-disjneqneq|hs-to-odd3|hs-to-odd3-constants")
      ->required();
  reduce->add_option("--in", in, "Input file")->required();
  reduce->add_option("--out", out, "Output file (stdout when omitted)");
  reduce->add_option("-k", k_value, "Budget");
  reduce->add_flag("--verify", verify, "Compare oracle answers on both sides");
  reduce->add_option("--report", report)->check(CLI::IsMember({"text", "machine"}));

  auto* lemmas = app.add_subcommand("verify-lemmas", "Oracle cross-checks of every reduction and solver");
  lemmas->add_option("--trials", trials, "Random trials per check")->check(CLI::PositiveNumber);
  lemmas->add_option("--seed", seed, "Seed");
  lemmas->add_option("--report", report)->check(CLI::IsMember({"text", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  Report rep;
  rep.machine = report == "machine";
  json cmd = json::array();
  for (int i = 1; i < argc; ++i) cmd.push_back(argv[i]);
  rep.doc["command"] = cmd;
  try {
    int code = kError;
    if (*classify) code = cmd_classify(rep, in, constants, with_eq_neq);
    else if (*solve) code = cmd_solve(rep, algo, in, k_opt->count() ? std::optional<long long>(k_value) : std::nullopt, seed, mode);
    else if (*reduce) code = cmd_reduce(rep, reduction, in, out, verify, k_value);
    else if (*lemmas) code = cmd_verify(rep, trials, seed);
    rep.emit();
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
}
