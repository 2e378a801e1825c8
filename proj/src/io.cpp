#include "eqcut/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "eqcut/relations.hpp"

namespace eqcut {

ParseError::ParseError(const std::string& source, int line, const std::string& message)
    : Error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Line {
  int number = 0;
  std::string text;  // comment stripped
  std::vector<std::string> tokens;
};

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    Line l;
    l.number = n;
    l.text = raw;
    std::istringstream ss(raw);
    for (std::string tok; ss >> tok;) l.tokens.push_back(tok);
    out.push_back(std::move(l));
  }
  return out;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

long long parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw Error("expected integer " + what + ", got '" + s + "'");
  }
  if (pos != s.size()) throw Error("expected integer " + what + ", got '" + s + "'");
  return v;
}

// Optional trailing "*m".
long long take_multiplicity(std::vector<std::string>& toks) {
  if (!toks.empty() && toks.back().size() > 1 && toks.back()[0] == '*') {
    const long long m = parse_int(toks.back().substr(1), "multiplicity");
    if (m < 1) throw Error("multiplicity must be positive");
    toks.pop_back();
    return m;
  }
  return 1;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_index(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') throw Error("expected variable like x1, got '" + s + "'");
  const long long i = parse_int(s.substr(1), "index");
  if (i < 1 || i > kArityCap) throw Error("index out of range in '" + s + "'");
  return static_cast<int>(i - 1);
}

Clause parse_clause(const std::string& text, int arity) {
  std::vector<Literal> lits;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, '|');) {
    part = trim(part);
    bool equal = true;
    auto op = part.find("!=");
    std::size_t len = 2;
    if (op != std::string::npos) {
      equal = false;
    } else {
      op = part.find('=');
      len = 1;
      if (op == std::string::npos) throw Error("literal '" + part + "' has no = or !=");
    }
    const int i = parse_index(trim(part.substr(0, op)));
    const int j = parse_index(trim(part.substr(op + len)));
    if (i >= arity || j >= arity) throw Error("literal '" + part + "' exceeds arity");
    if (i == j) throw Error("literal '" + part + "' compares a variable with itself");
    lits.push_back(make_literal(std::min(i, j), std::max(i, j), equal));
  }
  if (lits.empty()) throw Error("empty clause");
  return make_clause(std::move(lits));
}

// Parses a stanza starting at lines[pos] (the header); advances pos past it.
RelationPtr parse_stanza(const std::vector<Line>& lines, std::size_t& pos, const std::string& source) {
  const Line& head = lines[pos];
  const auto& t = head.tokens;
  auto fail = [&](int line, const std::string& m) -> ParseError { return ParseError(source, line, m); };
  std::string name;
  int arity = 0;
  try {
    if (t.size() == 4 && t[2] == "arity") {
      name = t[1];
      arity = static_cast<int>(parse_int(t[3], "arity"));
    } else if (t.size() == 3) {
      name = t[1];
      arity = static_cast<int>(parse_int(t[2], "arity"));
    } else {
      throw Error("expected 'relation NAME arity R'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw fail(head.number, e.what());
  }
  if (arity < 1 || arity > kArityCap) throw fail(head.number, "arity must be in 1.." + std::to_string(kArityCap));

  std::vector<EqTuple> tuples;
  CnfFormula cnf;
  bool saw_tuple = false, saw_cnf = false;
  ++pos;
  for (; pos < lines.size() && !lines[pos].tokens.empty(); ++pos) {
    const Line& l = lines[pos];
    try {
      if (l.tokens[0] == "tuple") {
        if (static_cast<int>(l.tokens.size()) - 1 != arity) {
          throw Error("tuple has " + std::to_string(l.tokens.size() - 1) + " entries, relation '" + name +
                      "' has arity " + std::to_string(arity));
        }
        std::vector<long long> raw;
        for (std::size_t i = 1; i < l.tokens.size(); ++i) raw.push_back(parse_int(l.tokens[i], "tuple entry"));
        tuples.push_back(canonicalize(raw));
        saw_tuple = true;
      } else if (l.tokens[0] == "cnf") {
        const auto at = l.text.find("cnf");
        cnf.push_back(parse_clause(l.text.substr(at + 3), arity));
        saw_cnf = true;
      } else {
        throw Error("expected 'tuple' or 'cnf', got '" + l.tokens[0] + "'");
      }
      if (saw_tuple && saw_cnf) throw Error("relation mixes tuple and cnf lines");
    } catch (const Error& e) {
      throw fail(l.number, e.what());
    }
  }
  if (saw_cnf) return std::make_shared<EqRelation>(relation_from_cnf(cnf, arity, name));
  return std::make_shared<EqRelation>(arity, std::move(tuples), name);
}

std::string join(const std::vector<std::string>& v, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (i > from) s += ' ';
    s += v[i];
  }
  return s;
}

}  // namespace

EqLanguage parse_relations(std::istream& in, const std::string& source) {
  const auto lines = read_lines(in);
  EqLanguage lang;
  std::size_t pos = 0;
  while (pos < lines.size()) {
    if (lines[pos].tokens.empty()) {
      ++pos;
      continue;
    }
    const int at = lines[pos].number;
    if (lines[pos].tokens[0] != "relation") {
      throw ParseError(source, at, "expected 'relation', got '" + lines[pos].tokens[0] + "'");
    }
    auto r = parse_stanza(lines, pos, source);
    try {
      lang.add(r);
    } catch (const Error& e) {
      throw ParseError(source, at, e.what());
    }
  }
  return lang;
}

EqLanguage parse_relations_file(const std::string& path) {
  auto in = open(path);
  return parse_relations(in, path);
}

std::string print_relation(const EqRelation& r) {
  std::ostringstream out;
  out << "relation " << r.name() << " arity " << r.arity() << '\n';
  for (const auto& t : r.tuples()) {
    out << "tuple";
    for (int e : t) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

std::string print_relations(const EqLanguage& language) {
  std::string out;
  for (const auto& r : language.relations()) out += print_relation(*r) + "\n";
  return out;
}

MinCspInstance parse_instance(std::istream& in, const std::string& source) {
  const auto lines = read_lines(in);
  MinCspInstance inst;
  std::map<std::string, RelationPtr> local;
  bool header = false;
  std::size_t pos = 0;
  while (pos < lines.size()) {
    const Line& l = lines[pos];
    if (l.tokens.empty()) {
      ++pos;
      continue;
    }
    const auto& kw = l.tokens[0];
    if (kw == "relation") {
      auto r = parse_stanza(lines, pos, source);
      if (!local.emplace(r->name(), r).second) {
        throw ParseError(source, l.number, "duplicate relation '" + r->name() + "'");
      }
      continue;
    }
    try {
      auto toks = l.tokens;
      if (kw == "instance") {
        if (header) throw Error("duplicate instance header");
        if (toks.size() != 2) throw Error("expected 'instance NAME'");
        inst.set_name(toks[1]);
        header = true;
      } else if (kw == "var") {
        if (toks.size() < 2) throw Error("expected 'var NAME'");
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (inst.find_variable(toks[i])) throw Error("duplicate variable '" + toks[i] + "'");
          inst.add_variable(toks[i]);
        }
      } else if (kw == "crisp" || kw == "soft") {
        const bool crisp = kw == "crisp";
        const long long m = crisp ? 1 : take_multiplicity(toks);
        if (toks.size() < 2) throw Error("expected a relation name");
        RelationPtr r;
        if (auto it = local.find(toks[1]); it != local.end()) r = it->second;
        if (!r) r = builtin_relation(toks[1]);
        if (!r) throw Error("unknown relation '" + toks[1] + "'");
        if (static_cast<int>(toks.size()) - 2 != r->arity()) {
          throw Error("relation '" + toks[1] + "' has arity " + std::to_string(r->arity()) + ", got " +
                      std::to_string(toks.size() - 2) + " arguments");
        }
        std::vector<int> scope;
        for (std::size_t i = 2; i < toks.size(); ++i) {
          auto v = inst.find_variable(toks[i]);
          if (!v) throw Error("undeclared variable '" + toks[i] + "'");
          scope.push_back(*v);
        }
        inst.add_constraint(r, std::move(scope), crisp, m);
      } else if (kw == "soft-assign" || kw == "crisp-assign") {
        const bool crisp = kw == "crisp-assign";
        const long long m = crisp ? 1 : take_multiplicity(toks);
        if (toks.size() != 4 || toks[2] != "=") throw Error("expected '" + kw + " x = VALUE'");
        auto v = inst.find_variable(toks[1]);
        if (!v) throw Error("undeclared variable '" + toks[1] + "'");
        inst.add_assignment(*v, parse_int(toks[3], "value"), crisp, m);
      } else {
        throw Error("unknown directive '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, l.number, e.what());
    }
    ++pos;
  }
  return inst;
}

MinCspInstance parse_instance_file(const std::string& path) {
  auto in = open(path);
  return parse_instance(in, path);
}

std::string print_instance(const MinCspInstance& instance) {
  std::ostringstream out;
  out << "instance " << (instance.name().empty() ? "unnamed" : instance.name()) << '\n';
  // Non-builtin relations are embedded, renamed when the name is taken.
  std::map<const EqRelation*, std::string> names;
  std::map<std::string, const EqRelation*> used;
  int fresh = 0;
  std::ostringstream stanzas;
  for (const auto& c : instance.constraints()) {
    if (c.is_assignment() || names.count(c.relation.get())) continue;
    const auto& r = *c.relation;
    auto b = builtin_relation(r.name());
    if (b && *b == r) {
      names[&r] = r.name();
      continue;
    }
    std::string name = r.name();
    auto clash = [&](const std::string& n) {
      if (n.empty() || builtin_relation(n)) return true;
      auto it = used.find(n);
      return it != used.end() && !(*it->second == r);
    };
    while (clash(name)) name = "R" + std::to_string(++fresh);
    if (!used.count(name)) {
      used[name] = &r;
      stanzas << print_relation(r.renamed(name)) << '\n';
    }
    names[&r] = name;
  }
  out << stanzas.str();
  for (int v = 0; v < instance.num_variables(); ++v) out << "var " << instance.variable_name(v) << '\n';
  for (const auto& c : instance.constraints()) {
    const bool soft_mult = !c.crisp && c.multiplicity != 1;
    if (c.is_assignment()) {
      out << (c.crisp ? "crisp-assign " : "soft-assign ") << instance.variable_name(c.scope[0]) << " = "
          << c.constant;
    } else {
      out << (c.crisp ? "crisp " : "soft ") << names.at(c.relation.get());
      for (int v : c.scope) out << ' ' << instance.variable_name(v);
    }
    if (soft_mult) out << " *" << c.multiplicity;
    out << '\n';
  }
  return out.str();
}

GraphFile parse_graph(std::istream& in, const std::string& source) {
  const auto lines = read_lines(in);
  GraphFile gf;
  bool header = false;
  for (const Line& l : lines) {
    if (l.tokens.empty()) continue;
    try {
      auto toks = l.tokens;
      const auto& kw = toks[0];
      auto vertex = [&](const std::string& name) {
        auto v = gf.graph.find_vertex(name);
        if (!v) throw Error("undeclared vertex '" + name + "'");
        return *v;
      };
      if (kw == "graph") {
        if (header) throw Error("duplicate graph header");
        if (toks.size() != 2) throw Error("expected 'graph NAME'");
        gf.name = toks[1];
        header = true;
      } else if (kw == "vertex") {
        const bool und = toks.size() == 3 && toks[2] == "undeletable";
        if (toks.size() != 2 && !und) throw Error("expected 'vertex NAME [undeletable]'");
        if (gf.graph.find_vertex(toks[1])) throw Error("duplicate vertex '" + toks[1] + "'");
        if (toks[1].find_first_of("(),") != std::string::npos) throw Error("vertex names may not contain ( ) ,");
        gf.graph.add_vertex(toks[1], und);
      } else if (kw == "edge") {
        const long long m = take_multiplicity(toks);
        if (toks.size() != 3) throw Error("expected 'edge u v [*m]'");
        gf.graph.add_edge(vertex(toks[1]), vertex(toks[2]), m);
      } else if (kw == "triple") {
        Triple t;
        if (toks.back() == "crisp") {
          t.crisp = true;
          toks.pop_back();
        }
        t.weight = take_multiplicity(toks);
        if (toks.size() != 4) throw Error("expected 'triple u v w [*m] [crisp]'");
        for (int i = 0; i < 3; ++i) t.v[static_cast<std::size_t>(i)] = vertex(toks[static_cast<std::size_t>(i) + 1]);
        if (t.v[0] == t.v[1] || t.v[0] == t.v[2] || t.v[1] == t.v[2]) throw Error("triple repeats a vertex");
        gf.triples.push_back(t);
      } else if (kw == "list") {
        std::vector<Request> reqs;
        const std::string body = join(toks, 1);
        std::size_t p = 0;
        while (true) {
          p = body.find_first_not_of(' ', p);
          if (p == std::string::npos) break;
          if (body[p] != '(') throw Error("expected '(' in request list");
          const auto close = body.find(')', p);
          if (close == std::string::npos) throw Error("unclosed '(' in request list");
          const std::string inner = body.substr(p + 1, close - p - 1);
          const auto comma = inner.find(',');
          if (comma == std::string::npos) throw Error("request '(" + inner + ")' needs two vertices");
          int s = vertex(trim(inner.substr(0, comma)));
          int t = vertex(trim(inner.substr(comma + 1)));
          reqs.push_back({std::min(s, t), std::max(s, t)});
          p = close + 1;
        }
        if (reqs.empty()) throw Error("empty request list");
        gf.lists.push_back(make_request_list(std::move(reqs)));
      } else if (kw == "terminals") {
        if (toks.size() < 2) throw Error("expected 'terminals v ...'");
        std::vector<int> vs;
        for (std::size_t i = 1; i < toks.size(); ++i) vs.push_back(vertex(toks[i]));
        gf.terminal_sets.push_back(make_vertex_set(std::move(vs)));
      } else if (kw == "hub") {
        if (toks.size() != 2) throw Error("expected 'hub v'");
        if (gf.hub) throw Error("duplicate hub");
        gf.hub = vertex(toks[1]);
      } else {
        throw Error("unknown directive '" + kw + "'");
      }
    } catch (const Error& e) {
      throw ParseError(source, l.number, e.what());
    }
  }
  return gf;
}

GraphFile parse_graph_file(const std::string& path) {
  auto in = open(path);
  return parse_graph(in, path);
}

std::string print_graph(const GraphFile& gf) {
  const auto& g = gf.graph;
  std::ostringstream out;
  out << "graph " << (gf.name.empty() ? "unnamed" : gf.name) << '\n';
  for (int v = 0; v < g.num_vertices(); ++v) {
    out << "vertex " << g.name(v) << (g.deletable(v) ? "" : " undeletable") << '\n';
  }
  for (const auto& e : g.edges()) {
    out << "edge " << g.name(e.u) << ' ' << g.name(e.v);
    if (e.multiplicity != 1) out << " *" << e.multiplicity;
    out << '\n';
  }
  for (const auto& t : gf.triples) {
    out << "triple " << g.name(t.v[0]) << ' ' << g.name(t.v[1]) << ' ' << g.name(t.v[2]);
    if (t.weight != 1) out << " *" << t.weight;
    if (t.crisp) out << " crisp";
    out << '\n';
  }
  for (const auto& list : gf.lists) {
    out << "list";
    for (const auto& [s, t] : list) out << " (" << g.name(s) << ',' << g.name(t) << ')';
    out << '\n';
  }
  for (const auto& set : gf.terminal_sets) {
    out << "terminals";
    for (int v : set) out << ' ' << g.name(v);
    out << '\n';
  }
  if (gf.hub) out << "hub " << g.name(*gf.hub) << '\n';
  return out.str();
}

bool same_language(const EqLanguage& a, const EqLanguage& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = *a.relations()[i];
    const auto& y = *b.relations()[i];
    if (x.name() != y.name() || !(x == y)) return false;
  }
  return true;
}

bool same_instance(const MinCspInstance& a, const MinCspInstance& b) {
  if (a.num_variables() != b.num_variables() || a.constraints().size() != b.constraints().size()) return false;
  for (int v = 0; v < a.num_variables(); ++v) {
    if (a.variable_name(v) != b.variable_name(v)) return false;
  }
  for (std::size_t i = 0; i < a.constraints().size(); ++i) {
    const auto& x = a.constraints()[i];
    const auto& y = b.constraints()[i];
    if (x.is_assignment() != y.is_assignment() || x.scope != y.scope || x.crisp != y.crisp) return false;
    if (!x.crisp && x.multiplicity != y.multiplicity) return false;
    if (x.is_assignment() ? x.constant != y.constant : !(*x.relation == *y.relation)) return false;
  }
  return true;
}

bool same_graph(const GraphFile& a, const GraphFile& b) {
  const auto& g = a.graph;
  const auto& h = b.graph;
  if (g.num_vertices() != h.num_vertices()) return false;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.name(v) != h.name(v) || g.deletable(v) != h.deletable(v)) return false;
  }
  const auto ea = g.edges(), eb = h.edges();
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].u != eb[i].u || ea[i].v != eb[i].v || ea[i].multiplicity != eb[i].multiplicity) return false;
  }
  if (a.triples.size() != b.triples.size()) return false;
  for (std::size_t i = 0; i < a.triples.size(); ++i) {
    const auto& x = a.triples[i];
    const auto& y = b.triples[i];
    if (x.v != y.v || x.weight != y.weight || x.crisp != y.crisp) return false;
  }
  return a.lists == b.lists && a.terminal_sets == b.terminal_sets && a.hub == b.hub;
}

}  // namespace eqcut
