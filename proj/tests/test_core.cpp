#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mpg/errors.hpp"
#include "mpg/graph.hpp"
#include "mpg/instance.hpp"
#include "mpg/json_io.hpp"
#include "mpg/rational.hpp"

using namespace mpg;

TEST_CASE("rational literals parse exactly") {
  CHECK(parse_rational("7/4") == Rational(7, 4));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e2") == Rational(-150));
  CHECK(parse_rational("2e-3") == Rational(1, 500));
  CHECK(parse_rational(" 14/21 ") == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0x10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rational to_double rounds to nearest") {
  // shortest decimal printouts of doubles must come back bit-identical
  double root2 = std::sqrt(2.0);
  CHECK(parse_rational("1.4142135623730951").to_double() == root2);
  CHECK(parse_rational("-1.4142135623730951").to_double() == -root2);
  CHECK(Rational(1, 3).to_double() == 1.0 / 3.0);
  CHECK(Rational(2, 3).to_double() == 2.0 / 3.0);
  CHECK(Rational(1, 10).to_double() == 0.1);
  // exact binary values stay put
  CHECK(Rational(3, 4).to_double() == 0.75);
  CHECK(Rational(-7, 2).to_double() == -3.5);
}

TEST_CASE("rational arithmetic canonicalizes") {
  Rational a(2, 4);
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  CHECK((Rational(1, 6) + Rational(1, 3)).str() == "1/2");
  CHECK((Rational(5) / Rational(10)).str() == "1/2");
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
  CHECK(floor_z(Rational(-3, 2)) == -2);
  CHECK(ceil_z(Rational(-3, 2)) == -1);
  CHECK(abs(Rational(-5, 3)) == Rational(5, 3));
}

namespace {

Graph diamond() {
  // a -> b -> d, a -> c -> d, d -> a; two length-3 routes back to a
  return Graph({"a", "b", "c", "d"},
               {Edge{"ab", 0, 1, -1}, Edge{"ac", 0, 2, -1}, Edge{"bd", 1, 3, -1},
                Edge{"cd", 2, 3, -1}, Edge{"da", 3, 0, -1}});
}

}  // namespace

TEST_CASE("graph ordering and lookups") {
  Graph g({"x", "y"}, {Edge{"b", 0, 1, -1}, Edge{"a", 0, 0, -1}, Edge{"c", 1, 0, -1}});
  // out-edges come back sorted by id, not by document order
  REQUIRE(g.out_edges(0).size() == 2);
  CHECK(g.edge(g.out_edges(0)[0]).id == "a");
  CHECK(g.edge(g.out_edges(0)[1]).id == "b");
  CHECK(g.vertex_index("y") == 1);
  CHECK(g.vertex_index("z") == -1);
  CHECK(g.edge_index("c") == 2);
}

TEST_CASE("graph rejects sinks and duplicate ids") {
  CHECK_THROWS_AS(Graph({"a", "b"}, {Edge{"ab", 0, 1, -1}}), ValidationError);
  CHECK_THROWS_AS(Graph({"a"}, {Edge{"e", 0, 0, -1}, Edge{"e", 0, 0, -1}}), ValidationError);
  CHECK_THROWS_AS(Graph({"a", "a"}, {Edge{"e", 0, 0, -1}, Edge{"f", 1, 1, -1}}), ValidationError);
}

TEST_CASE("walk validity checks chaining and the pinned source") {
  Graph g = diamond();
  std::vector<int> ok{0, 2, 4};  // ab bd da
  CHECK(walk_valid(g, ok));
  CHECK(walk_valid(g, ok, 0));
  CHECK_FALSE(walk_valid(g, ok, 1));
  CHECK_FALSE(walk_valid(g, {0, 3}));  // ab then cd does not chain
  CHECK(walk_valid(g, {}));
}

TEST_CASE("scc decomposition splits a two-block graph") {
  // {a,b} cycle feeding {c} loop; c never returns
  Graph g({"a", "b", "c"},
          {Edge{"ab", 0, 1, -1}, Edge{"ba", 1, 0, -1}, Edge{"bc", 1, 2, -1}, Edge{"cc", 2, 2, -1}});
  auto scc = strongly_connected_components(g);
  REQUIRE(scc.components.size() == 2);
  CHECK_FALSE(irreducible(g));
  CHECK(scc.component_of[0] == scc.component_of[1]);
  CHECK(scc.component_of[2] != scc.component_of[0]);
  for (const auto& c : scc.components) CHECK(c.nontrivial);
}

TEST_CASE("component periods") {
  Graph even_cycle({"a", "b", "c", "d"}, {Edge{"1", 0, 1, -1}, Edge{"2", 1, 2, -1},
                                          Edge{"3", 2, 3, -1}, Edge{"4", 3, 0, -1}});
  CHECK(graph_period(even_cycle) == 4);
  Graph with_loop({"a", "b"}, {Edge{"ab", 0, 1, -1}, Edge{"ba", 1, 0, -1}, Edge{"aa", 0, 0, -1}});
  CHECK(graph_period(with_loop) == 1);
  CHECK(graph_period(diamond()) == 3);  // both cycles have length 3
}

TEST_CASE("exact length walks prefer small edge ids") {
  Graph g = diamond();
  auto w = exact_length_walk(g, 0, 3, 2);
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<int>{0, 2});  // ab,bd beats ac,cd lexicographically
  CHECK_FALSE(exact_length_walk(g, 0, 3, 3).has_value());  // diamond forces length 2 mod 3
  auto back = exact_length_walk(g, 0, 0, 6);
  REQUIRE(back.has_value());
  CHECK(walk_valid(g, *back, 0));
  CHECK(back->size() == 6);
}

TEST_CASE("score table norm includes the default only when some pair is unlisted") {
  ScoreTable t(Rational(-9), 1, 2);
  t.set(0, 0, Rational(2));
  CHECK(t.norm() == Rational(9));
  t.set(0, 1, Rational(-3));
  CHECK(t.norm() == Rational(3));
}

TEST_CASE("start resolution: embedded, overridden, edge form") {
  Graph g({"a"}, {Edge{"aa", 0, 0, -1}});
  Graph h({"x", "y"}, {Edge{"xy", 0, 1, -1}, Edge{"yx", 1, 0, -1}});
  ScoreTable t(Rational(0), 1, 2);
  GameInstance inst(g, h, t, StartSpec{StartSpec::Kind::vertices, "a", "y"});
  auto rs = inst.resolve_start();
  CHECK(rs.gv == 0);
  CHECK(rs.hv == 1);
  CHECK_FALSE(rs.from_edges());
  auto rs2 = inst.resolve_start(StartSpec{StartSpec::Kind::edges, "aa", "xy"});
  CHECK(rs2.from_edges());
  CHECK(rs2.hv == 1);  // start edge pins its target
  CHECK_THROWS_AS(inst.resolve_start(StartSpec{StartSpec::Kind::vertices, "a", "zz"}),
                  DomainError);
  GameInstance bare(g, h, t, std::nullopt);
  CHECK_THROWS_AS(bare.resolve_start(), DomainError);
}

TEST_CASE("float mode guards exact lookups but score_value adapts") {
  Graph g({"a"}, {Edge{"aa", 0, 0, -1}});
  Graph h({"x"}, {Edge{"xx", 0, 0, -1}});
  ScoreTable t(Rational(0), 1, 1);
  t.set_f64(0, 0, 0.5);
  GameInstance inst(g, h, t, std::nullopt, NumericMode::float64);
  CHECK_THROWS_AS(inst.score(0, 0), DomainError);
  CHECK(score_value(inst, 0, 0) == Rational(1, 2));
  CHECK(inst.score_f64(0, 0) == 0.5);
}

TEST_CASE("instance documents round-trip") {
  std::string doc = R"({
    "graph_g": {"vertices": ["p", "m"],
                "edges": [{"id": "pp", "src": "p", "dst": "p"},
                          {"id": "pm", "src": "p", "dst": "m"},
                          {"id": "mp", "src": "m", "dst": "p"}]},
    "graph_h": {"vertices": ["x"],
                "edges": [{"id": "xx", "src": "x", "dst": "x", "label": 1}]},
    "score": {"default": "1/3", "entries": [
      {"g": "pm", "h": "xx", "value": -2},
      {"g": "mp", "h": "xx", "value": "0.5"}]},
    "start": {"g_vertex": "p", "h_vertex": "x"}
  })";
  GameInstance inst = parse_instance(doc);
  CHECK(inst.scores().default_value() == Rational(1, 3));
  CHECK(inst.score(1, 0) == Rational(-2));
  CHECK(inst.score(2, 0) == Rational(1, 2));
  CHECK(inst.h().edge(0).label == 1);

  GameInstance again = parse_instance(serialize_instance(inst));
  CHECK(again.scores().default_value() == inst.scores().default_value());
  CHECK(again.scores().sorted_entries() == inst.scores().sorted_entries());
  CHECK(again.resolve_start().gv == inst.resolve_start().gv);
  CHECK(again.h().edge(0).label == 1);
}

TEST_CASE("float64 documents round-trip bit-exactly") {
  Graph g({"a"}, {Edge{"aa", 0, 0, -1}});
  Graph h({"x"}, {Edge{"xx", 0, 0, -1}});
  ScoreTable t(Rational(0), 1, 1);
  t.set_f64(0, 0, std::sqrt(2.0));
  GameInstance inst(g, h, t, std::nullopt, NumericMode::float64);
  GameInstance again = parse_instance(serialize_instance(inst));
  CHECK(again.mode() == NumericMode::float64);
  CHECK(again.score_f64(0, 0) == std::sqrt(2.0));
}

TEST_CASE("malformed documents are rejected with context") {
  CHECK_THROWS_AS(parse_instance("not json"), ValidationError);
  CHECK_THROWS_AS(parse_instance(R"({"graph_g": {}})"), ValidationError);
  std::string bad_label = R"({
    "graph_g": {"vertices": ["a"], "edges": [{"id": "e", "src": "a", "dst": "a", "label": 7}]},
    "graph_h": {"vertices": ["x"], "edges": [{"id": "f", "src": "x", "dst": "x"}]},
    "score": {"default": 0}
  })";
  CHECK_THROWS_AS(parse_instance(bad_label), ValidationError);
  std::string dangling_start = R"({
    "graph_g": {"vertices": ["a"], "edges": [{"id": "e", "src": "a", "dst": "a"}]},
    "graph_h": {"vertices": ["x"], "edges": [{"id": "f", "src": "x", "dst": "x"}]},
    "score": {"default": 0},
    "start": {"g_vertex": "a", "h_vertex": "nope"}
  })";
  CHECK_THROWS_AS(parse_instance(dangling_start), DomainError);
  std::string sink = R"({
    "graph_g": {"vertices": ["a", "b"], "edges": [{"id": "e", "src": "a", "dst": "b"}]},
    "graph_h": {"vertices": ["x"], "edges": [{"id": "f", "src": "x", "dst": "x"}]},
    "score": {"default": 0}
  })";
  CHECK_THROWS_AS(parse_instance(sink), ValidationError);
}
