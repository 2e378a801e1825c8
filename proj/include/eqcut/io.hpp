// Text formats for relation files, MinCSP instances and cut graphs.
#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "eqcut/eqrel.hpp"
#include "eqcut/graph.hpp"
#include "eqcut/mincsp.hpp"

namespace eqcut {

class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// relation NAME arity R     (or: relation NAME R)
// tuple a1 ... ar           (any integers; only the equality pattern matters)
// cnf x1=x2 | x3!=x4        (one clause per line)
// A blank line ends a stanza; '#' starts a comment.
EqLanguage parse_relations(std::istream& in, const std::string& source = "<input>");
EqLanguage parse_relations_file(const std::string& path);
std::string print_relation(const EqRelation& r);
std::string print_relations(const EqLanguage& language);

// instance NAME, var x, crisp REL x ..., soft REL x ... [*m],
// soft-assign x = 3 [*m], crisp-assign x = 3. REL is a builtin name or a
// relation stanza given earlier in the same file.
MinCspInstance parse_instance(std::istream& in, const std::string& source = "<input>");
MinCspInstance parse_instance_file(const std::string& path);
std::string print_instance(const MinCspInstance& instance);

struct GraphFile {
  std::string name;
  CutGraph graph;
  std::vector<RequestList> lists;
  TripleSet triples;
  std::vector<VertexSet> terminal_sets;  // "terminals a b c"
  std::optional<int> hub;                // "hub x"
};

// graph NAME, vertex v [undeletable], edge u v [*m], triple u v w [*m] [crisp],
// list (s,t) (s,s) ..., terminals a b ..., hub x.
GraphFile parse_graph(std::istream& in, const std::string& source = "<input>");
GraphFile parse_graph_file(const std::string& path);
std::string print_graph(const GraphFile& g);

// Structural equality used by the round-trip checks.
bool same_language(const EqLanguage& a, const EqLanguage& b);
bool same_instance(const MinCspInstance& a, const MinCspInstance& b);
bool same_graph(const GraphFile& a, const GraphFile& b);

}  // namespace eqcut
