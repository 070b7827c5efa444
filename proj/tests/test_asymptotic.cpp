#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mpg/asymptotic.hpp"
#include "mpg/errors.hpp"
#include "mpg/finite.hpp"
#include "mpg/gallery.hpp"
#include "mpg/mmc.hpp"
#include "mpg/product.hpp"
#include "support/support.hpp"

using namespace mpg;
using namespace mpg::testsupport;

TEST_CASE("mean cycle extremes on a two-loop graph") {
  // loop at 0 pays 1, the 0-1-0 round trip averages (−1+4)/2 = 3/2
  std::vector<WeightedEdge> edges{{0, 0, Rational(1), 10},
                                  {0, 1, Rational(-1), 11},
                                  {1, 0, Rational(4), 12}};
  auto mx = max_mean_cycle(2, edges);
  REQUIRE(mx.has_value());
  CHECK(mx->mean == Rational(3, 2));
  // the round trip, reported from either starting vertex
  std::vector<int> tags = mx->tags;
  std::sort(tags.begin(), tags.end());
  CHECK(tags == std::vector<int>{11, 12});
  auto mn = min_mean_cycle(2, edges);
  REQUIRE(mn.has_value());
  CHECK(mn->mean == Rational(1));
  CHECK(mn->tags == std::vector<int>{10});
  CHECK_FALSE(max_mean_cycle(2, {{0, 1, Rational(5), 0}}).has_value());
}

TEST_CASE("mean cycle witnesses close up and hit their mean") {
  std::mt19937_64 rng(424242);
  for (int i = 0; i < 30; ++i) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<WeightedEdge> edges;
    for (int v = 0; v < n; ++v)
      edges.push_back({v, (v + 1) % n, Rational(static_cast<long>(rng() % 11) - 5), v});
    for (int extra = 0; extra < 3; ++extra) {
      int s = static_cast<int>(rng() % n), d = static_cast<int>(rng() % n);
      edges.push_back({s, d, Rational(static_cast<long>(rng() % 11) - 5),
                       n + extra});
    }
    auto mx = max_mean_cycle(n, edges);
    REQUIRE(mx.has_value());
    Rational sum(0);
    int at = -1;
    for (size_t k = 0; k < mx->tags.size(); ++k) {
      const auto& e = edges[mx->tags[k]];
      if (k == 0)
        at = e.src;
      else
        CHECK(e.src == at);
      at = e.dst;
      sum += e.w;
    }
    CHECK(at == edges[mx->tags.front()].src);
    CHECK(sum == mx->mean * Rational(static_cast<long>(mx->tags.size())));
    // every single edge cycle is dominated
    for (const auto& e : edges)
      if (e.src == e.dst) CHECK(e.w <= mx->mean);
  }
}

TEST_CASE("block schedule closed forms match the recurrence") {
  for (int p : {1, 2, 3}) {
    for (int D : {1, 2, 4}) {
      auto s = make_schedule(p, D);
      long a = 0;
      for (int k = 1; k <= 8; ++k) {
        CHECK(s.a(k) == a);
        long b = a + static_cast<long>(p) * k;
        CHECK(s.b(k) == b);
        a = b + static_cast<long>(p) * D;
      }
    }
  }
}

TEST_CASE("chase: audit keeps the analytic constant") {
  auto entry = build_example("chase");
  auto comp = product_component(entry.instance, entry.instance.resolve_start());
  auto c = subadditive_constant(entry.instance, comp);
  CHECK(c.analytic == Rational(6));  // 3 * p * D * |P| = 3*1*2*1
  CHECK(c.value == Rational(6));
  CHECK(c.escalations == 0);
}

TEST_CASE("subadditivity holds with the audited constant") {
  std::mt19937_64 rng(90210);
  RandomSpec spec;
  spec.irreducible_both = true;
  for (int i = 0; i < 8; ++i) {
    GameInstance inst = random_instance(rng, spec);
    auto rs = inst.resolve_start();
    auto comp = product_component(inst, rs);
    auto c = subadditive_constant(inst, comp);
    auto res = value_nonalt_finite(inst, 12);
    const auto& r = res.round_values;
    for (int n = 1; n < 12; ++n)
      for (int m = 1; n + m <= 12; ++m)
        CHECK(r[n + m - 1] <= r[n - 1] + r[m - 1] + c.value);
  }
}

TEST_CASE("chase bounds bracket a committed value of at most two") {
  auto entry = build_example("chase");
  auto b = value_nonalt_bounds(entry.instance, 12, entry.start);
  CHECK(b.lower == Rational(0));
  CHECK(b.upper == Rational(1, 2));
  CHECK(b.lower_certificate == "locked cycle");
  CHECK(b.upper_certificate == "subadditive envelope");
  CHECK(b.horizon_used == 12);
}

TEST_CASE("bounds never cross and never leave the score range") {
  std::mt19937_64 rng(20250102);
  RandomSpec spec;
  spec.irreducible_both = true;
  for (int i = 0; i < 12; ++i) {
    GameInstance inst = random_instance(rng, spec);
    auto b = value_nonalt_bounds(inst, 10);
    CHECK(b.lower <= b.upper);
    Rational norm = inst.score_norm();
    CHECK(b.lower >= -norm);
    CHECK(b.upper <= norm);
    // free mode only keeps start-free certificates, and stays sound
    auto f = value_nonalt_bounds(inst, 10, std::nullopt, true);
    CHECK(f.lower <= f.upper);
    CHECK(f.lower <= b.upper);  // free Bob can only lower the value
  }
}

TEST_CASE("forced Bob collapses to an exact product mean") {
  std::mt19937_64 rng(660001);
  RandomSpec spec;
  spec.irreducible_both = true;
  for (int len : {1, 2, 3, 4, 2}) {
    spec.h_cycle = len;
    GameInstance inst = random_instance(rng, spec);
    auto b = value_nonalt_bounds(inst, 8);
    REQUIRE(b.exact.has_value());
    CHECK(b.lower == *b.exact);
    CHECK(b.upper == *b.exact);

    // the alternating game has the same value when Bob has no say
    auto alt = value_alt_infinite(inst);
    REQUIRE(alt.exact.has_value());
    CHECK(*alt.exact == *b.exact);

    // and both agree with the max mean cycle over the reachable product
    auto rs = inst.resolve_start();
    auto comp = product_component(inst, rs);
    ProductGraph pg = build_product(inst);
    auto w = pg.score_weights(inst);
    auto mx = max_mean_cycle(pg.graph, w, &comp.pair_vertices);
    REQUIRE(mx.has_value());
    CHECK(mx->mean == *b.exact);
  }
}

TEST_CASE("alternating iteration: chase pins its limit at one") {
  auto entry = build_example("chase");
  auto b = value_alt_infinite(entry.instance);
  REQUIRE(b.exact.has_value());
  CHECK(*b.exact == Rational(1));
  CHECK(b.lower <= Rational(1));
  CHECK(b.upper >= Rational(1));
  CHECK(b.iterations > 0);
}

TEST_CASE("alternating iteration handles oscillating horizon values") {
  // +1/−1 alternation: finite values oscillate, the limit is the cycle mean 0
  Graph g({"a", "b"}, {Edge{"ab", 0, 1, -1}, Edge{"ba", 1, 0, -1}});
  Graph h({"x"}, {Edge{"xx", 0, 0, -1}});
  ScoreTable t(Rational(0), 2, 1);
  t.set(0, 0, Rational(1));
  t.set(1, 0, Rational(-1));
  GameInstance inst(g, h, t, StartSpec{StartSpec::Kind::vertices, "a", "x"});
  auto b = value_alt_infinite(inst);
  REQUIRE(b.exact.has_value());
  CHECK(*b.exact == Rational(0));
}

TEST_CASE("alternating envelope honors a requested iteration count") {
  auto entry = build_example("chase");
  auto b = value_alt_infinite(entry.instance, 500);
  CHECK(b.iterations == 500);
  CHECK(b.lower <= Rational(1));
  CHECK(b.upper >= Rational(1));
}

TEST_CASE("reducible inputs are rejected for infinite-horizon analysis") {
  auto fig2 = build_example("fig2");
  CHECK_THROWS_AS(value_nonalt_bounds(fig2.instance, 8, fig2.start), DomainError);
  auto irr = build_example("irrational");
  CHECK_THROWS_AS(value_nonalt_bounds(irr.instance, 8, irr.start), DomainError);
}

TEST_CASE("fekete upper bounds dominate every later average") {
  auto entry = build_example("chase");
  auto b = value_nonalt_bounds(entry.instance, 12, entry.start);
  auto res = value_nonalt_finite(entry.instance, 12, entry.start);
  for (int n = 1; n <= 12; ++n) {
    Rational avg = res.round_values[n - 1] / Rational(n);
    CHECK(avg <= b.upper + b.constant_C / Rational(n));
    CHECK(avg >= b.lower - b.constant_C / Rational(n));
  }
}
