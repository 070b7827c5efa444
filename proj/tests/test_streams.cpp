#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpg/asymptotic.hpp"
#include "mpg/errors.hpp"
#include "mpg/finite.hpp"
#include "mpg/gallery.hpp"
#include "mpg/product.hpp"
#include "mpg/streams.hpp"

using namespace mpg;

namespace {

struct Setup {
  GameInstance inst;
  BlockSchedule sched;
  ResolvedStart rs;
};

Setup chase_setup() {
  auto entry = build_example("chase");
  auto rs = entry.instance.resolve_start();
  auto comp = product_component(entry.instance, rs);
  return Setup{entry.instance, block_schedule(entry.instance, comp), rs};
}

std::vector<int> take(EdgeStream& s, long n) {
  std::vector<int> out;
  out.reserve(n);
  for (long i = 0; i < n; ++i) out.push_back(s.next());
  return out;
}

}  // namespace

TEST_CASE("fixed streams replay a prefix then cycle") {
  FixedStream s({1, 2}, {7, 8});
  CHECK(take(s, 6) == std::vector<int>{1, 2, 7, 8, 7, 8});
  FixedStream finite({3}, {});
  CHECK(finite.next() == 3);
  CHECK_THROWS_AS(finite.next(), DomainError);
}

TEST_CASE("alice stream: pins, segments, connectors") {
  auto su = chase_setup();
  const auto& g = su.inst.g();
  int K = 5;
  long need = su.sched.a(K + 1) + 1;
  auto alice = alice_equilibrium_stream(su.inst, su.sched);
  auto walk = take(*alice, need);

  CHECK(walk_valid(g, walk, g.edge(su.rs.ge).src));
  for (int k = 1; k <= K + 1; ++k) CHECK(walk[su.sched.a(k)] == su.rs.ge);

  for (int k = 1; k <= K; ++k) {
    // the committed segment of block k is an optimal k-step walk
    std::vector<int> seg(walk.begin() + su.sched.a(k) + 1, walk.begin() + su.sched.b(k) + 1);
    auto best = value_nonalt_finite(su.inst, su.sched.p * k, std::nullopt);
    CHECK(seg == best.alice_witness);
  }
}

TEST_CASE("bob mirrors the block structure and answers optimally") {
  auto su = chase_setup();
  int K = 4;
  long need = su.sched.b(K) + 1;
  auto alice = alice_equilibrium_stream(su.inst, su.sched);
  auto prefix = take(*alice, need);

  auto bob = bob_equilibrium_response(su.inst, su.sched, prefix);
  auto reply = take(*bob, need);
  CHECK(walk_valid(su.inst.h(), reply, su.inst.h().edge(su.rs.he).src));
  for (int k = 1; k <= K; ++k) CHECK(reply[su.sched.a(k)] == su.rs.he);

  for (int k = 1; k <= K; ++k) {
    std::vector<int> alice_seg(prefix.begin() + su.sched.a(k) + 1,
                               prefix.begin() + su.sched.b(k) + 1);
    std::vector<int> bob_seg(reply.begin() + su.sched.a(k) + 1,
                             reply.begin() + su.sched.b(k) + 1);
    auto best = bob_best_response(su.inst, alice_seg,
                                  StartSpec{StartSpec::Kind::edges, "WW", "WW"});
    Rational got(0);
    for (size_t i = 0; i < bob_seg.size(); ++i)
      got += score_value(su.inst, alice_seg[i], bob_seg[i]);
    CHECK(got == best.value);
  }

  // the emitted reply is exactly as long as the provided prefix
  CHECK_THROWS_AS(bob->next(), DomainError);
}

TEST_CASE("bob cannot answer blocks his prefix does not cover") {
  auto su = chase_setup();
  auto alice = alice_equilibrium_stream(su.inst, su.sched);
  auto prefix = take(*alice, su.sched.b(1));  // stops one short of covering block 1
  auto bob = bob_equilibrium_response(su.inst, su.sched, prefix);
  CHECK_THROWS_AS(take(*bob, static_cast<long>(prefix.size())), ValidationError);
}

TEST_CASE("bob rejects prefixes that break the walk or the pin") {
  auto su = chase_setup();
  const auto& g = su.inst.g();
  // not a walk from the start edge's source
  std::vector<int> broken{g.edge_index("WW"), g.edge_index("XY")};
  CHECK_THROWS_AS(bob_equilibrium_response(su.inst, su.sched, broken), ValidationError);
  // a detour W->X->W that chains but misses the pinned start edge at a(2)
  long need = su.sched.b(2) + 1;
  auto alice = alice_equilibrium_stream(su.inst, su.sched);
  auto prefix = take(*alice, need);
  REQUIRE(g.edge(prefix[su.sched.a(2) - 1]).dst == g.vertex_index("W"));
  REQUIRE(g.edge(prefix[su.sched.a(2)]).id == "WW");
  prefix[su.sched.a(2) - 1] = g.edge_index("WX");
  prefix[su.sched.a(2)] = g.edge_index("XW");
  auto bob = bob_equilibrium_response(su.inst, su.sched, prefix);
  CHECK_THROWS_AS(take(*bob, need), ValidationError);
}

TEST_CASE("simulate scores pairs and carries exact running means") {
  auto entry = build_example("fig2");
  const auto& g = entry.instance.g();
  const auto& h = entry.instance.h();
  // committed loop play: Alice e+ forever, Bob hops to Z and loops f-
  FixedStream alice({}, {g.edge_index("e+")});
  FixedStream bob({h.edge_index("f2")}, {h.edge_index("f-")});
  auto rec = simulate(entry.instance, alice, bob, 5);
  REQUIRE(rec.size() == 5);
  CHECK(rec[0].cumulative == Rational(0));              // (e+, f2) scores 0
  CHECK(rec[4].cumulative == Rational(-4));             // four rounds of (e+, f-)
  CHECK(rec[4].average == Rational(-4, 5));
  CHECK(rec[4].average_f64 == -0.8);
  CHECK(rec[2].step == 3);

  // streams that stop chaining are called out
  FixedStream broken({g.edge_index("e-")}, {});  // e- does not leave P
  FixedStream bob2({h.edge_index("f1")}, {});
  GameInstance pinned(entry.instance.g(), entry.instance.h(), entry.instance.scores(),
                      StartSpec{StartSpec::Kind::vertices, "P", "Y"});
  CHECK_THROWS_AS(simulate(pinned, broken, bob2, 1), ValidationError);
}

TEST_CASE("equilibrium trace approaches the certified interval") {
  auto su = chase_setup();
  auto bounds = value_nonalt_bounds(su.inst, 12);
  int K = 12;
  long steps = su.sched.b(K);
  auto probe = alice_equilibrium_stream(su.inst, su.sched);
  auto prefix = take(*probe, steps + 1);
  auto bob = bob_equilibrium_response(su.inst, su.sched, prefix);
  auto alice = alice_equilibrium_stream(su.inst, su.sched);
  auto rec = simulate(su.inst, *alice, *bob, steps);
  double avg = rec.back().average_f64;
  CHECK(avg >= bounds.lower.to_double() - 0.35);
  CHECK(avg <= bounds.upper.to_double() + 0.35);
}

TEST_CASE("streams refuse vertex-only starts and reducible graphs") {
  auto su = chase_setup();
  CHECK_THROWS_AS(alice_equilibrium_stream(su.inst, su.sched,
                                           StartSpec{StartSpec::Kind::vertices, "W", "W"}),
                  DomainError);
  auto fig2 = build_example("fig2");
  auto sched = make_schedule(1, 1);
  CHECK_THROWS_AS(alice_equilibrium_stream(fig2.instance, sched, fig2.start), DomainError);
}
