#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mpg/errors.hpp"
#include "mpg/finite.hpp"
#include "mpg/gallery.hpp"
#include "mpg/json_io.hpp"

using namespace mpg;

TEST_CASE("the gallery lists four worked examples") {
  auto names = gallery_names();
  CHECK(names == std::vector<std::string>{"fig2", "chase", "irrational", "integer"});
  CHECK_THROWS_AS(build_example("nonesuch"), DomainError);
}

TEST_CASE("every checklist passes") {
  for (const auto& name : gallery_names()) {
    auto entry = build_example(name);
    CHECK(!entry.checklist.empty());
    for (const auto& chk : entry.checklist) {
      auto failure = chk.run();
      INFO(name << ": " << chk.name << ": " << (failure ? *failure : ""));
      CHECK_FALSE(failure.has_value());
    }
  }
}

TEST_CASE("exported documents replay to the same finite values") {
  for (const auto& name : {"fig2", "chase"}) {
    auto entry = build_example(name);
    GameInstance replayed = parse_instance(serialize_instance(entry.instance));
    auto a = value_nonalt_finite(entry.instance, 6, entry.start);
    auto b = value_nonalt_finite(replayed, 6, entry.start);
    CHECK(a.round_values == b.round_values);
  }
}

TEST_CASE("irrational entry round-trips its float table bit-exactly") {
  auto entry = build_example("irrational");
  GameInstance replayed = parse_instance(serialize_instance(entry.instance));
  CHECK(replayed.mode() == NumericMode::float64);
  const auto& g = entry.instance.g();
  const auto& h = entry.instance.h();
  for (int ge = 0; ge < g.edge_count(); ++ge)
    for (int he = 0; he < h.edge_count(); ++he)
      CHECK(entry.instance.score_f64(ge, he) == replayed.score_f64(ge, he));
}

TEST_CASE("plus and minus edge classes") {
  auto entry = build_example("integer");
  auto classes = plus_minus_classes(entry.instance);
  const auto& g = entry.instance.g();
  std::set<EdgeClass> seen;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).id == "e+") CHECK(classes[e] == EdgeClass::plus);
    if (g.edge(e).id == "e-") CHECK(classes[e] == EdgeClass::minus);
    seen.insert(classes[e]);
  }
  CHECK(seen.count(EdgeClass::zero) == 1);  // the two hop edges
}

TEST_CASE("walk statistics count exact frequencies") {
  auto entry = build_example("integer");
  auto classes = plus_minus_classes(entry.instance);
  auto walk = nonperiodic_walk("integer", 100);
  auto st = walk_statistics(walk, classes);
  CHECK(st.n == 100);
  CHECK(st.p_plus + st.p_minus + st.p_zero == Rational(1));
  CHECK(st.p_zero > Rational(0));

  const auto& g = entry.instance.g();
  REQUIRE(walk.size() >= 4);
  CHECK(g.edge(walk[0]).id == "e-");
  CHECK(g.edge(walk[1]).id == "ea");
  CHECK(g.edge(walk[2]).id == "e+");
  CHECK(g.edge(walk[3]).id == "eb");
  CHECK(walk_valid(g, walk, entry.instance.resolve_start(entry.start).gv));
}

TEST_CASE("the balanced walk tracks the root-two split") {
  auto entry = build_example("irrational");
  auto classes = plus_minus_classes(entry.instance);
  auto walk = nonperiodic_walk("irrational", 20000);
  CHECK(walk_valid(entry.instance.g(), walk));
  auto st = walk_statistics(walk, classes);
  CHECK(st.p_zero == Rational(0));
  // alpha*p+ = beta*p- in the limit, alpha = 1, beta = sqrt(2)
  double drift = st.p_plus.to_double() - 1.4142135623730951 * st.p_minus.to_double();
  CHECK(drift < 2e-4);
  CHECK(drift > -2e-4);
}

TEST_CASE("unclassified edges in a walk are an error") {
  auto entry = build_example("integer");
  std::vector<EdgeClass> classes(entry.instance.g().edge_count(), EdgeClass::zero);
  classes.pop_back();
  auto walk = nonperiodic_walk("integer", 8);
  CHECK_THROWS_AS(walk_statistics(walk, classes), ValidationError);
}
