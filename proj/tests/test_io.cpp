#include <doctest.h>

#include <sstream>

#include "eqcut/gadgets.hpp"
#include "eqcut/io.hpp"
#include "eqcut/lemma_checks.hpp"
#include "eqcut/relations.hpp"

using namespace eqcut;

namespace {

EqLanguage parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_relations(in, "test");
}

int error_line(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("relation stanzas by tuples and by clauses") {
    const auto l = parse_text(
        "# two relations\n"
        "relation A arity 3\n"
        "tuple 1 1 2\n"
        "tuple 5 6 7\n"
        "\n"
        "relation B 2\n"
        "cnf x1!=x2\n");
    REQUIRE(l.size() == 2);
    CHECK(l.find("A")->size() == 2);
    CHECK(*l.find("B") == *neq_relation());
  }

  TEST_CASE("parse errors name the line") {
    CHECK(error_line("relation A arity 2\ntuple 1 2 3\n") == 2);
    CHECK(error_line("relation A arity 2\ntuple 1 2\ncnf x1=x2\n") == 3);
    CHECK(error_line("tuple 1 2\n") == 1);
    CHECK(error_line("relation A arity 2\ncnf x1=x5\n") == 2);
  }

  TEST_CASE("an empty file is an empty language") {
    CHECK(parse_text("").empty());
    CHECK(parse_text("# only a comment\n\n").empty());
  }

  TEST_CASE("the table file has fourteen relations") {
    const auto l = parse_relations_file(std::string(EQCUT_DATA_DIR) + "/table1.rel");
    REQUIRE(l.size() == 14);
    const auto rows = classification_table();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CAPTURE(rows[i].relation->name());
      CHECK(l.relations()[i]->name() == rows[i].relation->name());
      CHECK(*l.relations()[i] == *rows[i].relation);
    }
  }

  TEST_CASE("relation round trip") {
    gen::Rng rng(71);
    for (int t = 0; t < 50; ++t) {
      EqLanguage l;
      const int m = gen::uniform(rng, 1, 4);
      for (int i = 0; i < m; ++i) {
        auto r = gen::random_relation(rng, gen::uniform(rng, 1, 4), "R" + std::to_string(i));
        l.add(std::make_shared<EqRelation>(std::move(r)));
      }
      CHECK(same_language(parse_text(print_relations(l)), l));
    }
  }

  TEST_CASE("instance round trip and errors") {
    gen::Rng rng(72);
    const std::vector<RelationPtr> rels{eq_relation(), neq_relation(), nae3_relation(),
                                        std::make_shared<EqRelation>(gen::random_relation(rng, 3, "CUSTOM"))};
    for (int t = 0; t < 40; ++t) {
      auto inst = gen::random_instance(rng, rels, gen::uniform(rng, 2, 6), gen::uniform(rng, 1, 6), 0.3, 3);
      gen::add_random_assignments(rng, inst, gen::uniform(rng, 0, 2), 3, 0.3, 2);
      std::istringstream in(print_instance(inst));
      CHECK(same_instance(parse_instance(in), inst));
    }
    const auto w = wheel(3);
    std::istringstream in(print_instance(w.instance));
    CHECK(same_instance(parse_instance(in), w.instance));

    auto bad = [](const std::string& text) {
      std::istringstream s(text);
      try {
        parse_instance(s, "bad");
      } catch (const ParseError& e) {
        return e.line();
      }
      return -1;
    };
    CHECK(bad("instance I\nvar x y\nsoft NOPE x y\n") == 3);
    CHECK(bad("instance I\nvar x y\nsoft = x\n") == 3);
    CHECK(bad("instance I\nvar x\ncrisp != x z\n") == 3);
  }

  TEST_CASE("graph round trip") {
    gen::Rng rng(73);
    for (int t = 0; t < 40; ++t) {
      GraphFile f;
      f.name = "g";
      const int n = gen::uniform(rng, 3, 8);
      f.graph = gen::random_graph(rng, n, 0.4, 0.2, 3);
      f.lists = gen::random_lists(rng, f.graph, gen::uniform(rng, 0, 3), 2, 0.2);
      f.triples = gen::random_triples(rng, n, gen::uniform(rng, 0, 3), 0.3, 2);
      f.terminal_sets = gen::random_terminal_sets(rng, n, gen::uniform(rng, 0, 2), 2, 3);
      if (gen::coin(rng, 0.5)) f.hub = 0;
      std::istringstream in(print_graph(f));
      CHECK(same_graph(parse_graph(in), f));
    }
  }
}
