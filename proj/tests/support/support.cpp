#include "support.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "mpg/errors.hpp"

namespace mpg::testsupport {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

Graph random_graph(std::mt19937_64& rng, const RandomSpec& spec, const std::string& prefix,
                   bool cycle_only, int cycle_len) {
  if (cycle_only) {
    std::vector<std::string> names;
    std::vector<Edge> edges;
    for (int v = 0; v < cycle_len; ++v) {
      names.push_back(prefix + "v" + std::to_string(v));
      edges.push_back(Edge{prefix + std::to_string(v), v, (v + 1) % cycle_len, -1});
    }
    return Graph(std::move(names), std::move(edges));
  }
  int nv = pick(rng, 1, spec.max_v);
  int ne = pick(rng, nv, std::max(nv, spec.max_e));
  std::vector<std::string> names;
  for (int v = 0; v < nv; ++v) names.push_back(prefix + "v" + std::to_string(v));
  std::vector<Edge> edges;
  for (int e = 0; e < ne; ++e) {
    // first nv edges give every vertex an out-edge; a cycle when irreducible
    int src = e < nv ? e : pick(rng, 0, nv - 1);
    int dst = (spec.irreducible_both && e < nv) ? (e + 1) % nv : pick(rng, 0, nv - 1);
    std::string id = prefix + (e < 10 ? "0" : "") + std::to_string(e);
    edges.push_back(Edge{std::move(id), src, dst, -1});
  }
  return Graph(std::move(names), std::move(edges));
}

}  // namespace

long count_walks(const Graph& g, int from, int length, long cap) {
  std::vector<long> cur(g.vertex_count(), 0);
  cur[from] = 1;
  long total = 1;
  for (int step = 0; step < length; ++step) {
    std::vector<long> next(g.vertex_count(), 0);
    total = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (cur[v] == 0) continue;
      for (int e : g.out_edges(v)) {
        next[g.edge(e).dst] += cur[v];
        total += cur[v];
        if (total > cap) return cap + 1;
      }
    }
    cur = std::move(next);
  }
  return total;
}

GameInstance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Graph g = random_graph(rng, spec, "g", false, 0);
    Graph h = spec.h_cycle > 0 ? random_graph(rng, spec, "h", true, spec.h_cycle)
                               : random_graph(rng, spec, "h", false, 0);
    if (spec.irreducible_both && (!irreducible(g) || !irreducible(h))) continue;

    ScoreTable table(Rational(pick(rng, spec.score_lo, spec.score_hi)), g.edge_count(),
                     h.edge_count());
    for (int ge = 0; ge < g.edge_count(); ++ge)
      for (int he = 0; he < h.edge_count(); ++he)
        if (rng() % 2 == 0) table.set(ge, he, Rational(pick(rng, spec.score_lo, spec.score_hi)));

    int gv = pick(rng, 0, g.vertex_count() - 1);
    int hv = pick(rng, 0, h.vertex_count() - 1);
    StartSpec start{StartSpec::Kind::vertices, g.vertex_name(gv), h.vertex_name(hv)};
    if (count_walks(g, gv, 6, 200000) > 200000) continue;
    return GameInstance(std::move(g), std::move(h), std::move(table), start);
  }
  throw std::runtime_error("random_instance failed to satisfy its guards");
}

namespace {

// min over Bob walks of `n` edges from `hv` of the pair cost against a fixed
// Alice walk; straight backward table over positions
Rational bob_min_cost(const GameInstance& inst, const std::vector<int>& alice,
                      const std::vector<char>& start_allowed) {
  const Graph& h = inst.h();
  int n = static_cast<int>(alice.size());
  std::vector<std::optional<Rational>> togo(h.vertex_count());
  for (int u = 0; u < h.vertex_count(); ++u) togo[u] = Rational(0);
  for (int i = n - 1; i >= 0; --i) {
    std::vector<std::optional<Rational>> prev(h.vertex_count());
    for (int u = 0; u < h.vertex_count(); ++u) {
      std::optional<Rational> best;
      for (int fe : h.out_edges(u)) {
        const auto& tail = togo[h.edge(fe).dst];
        if (!tail) continue;
        Rational c = score_value(inst, alice[i], fe) + *tail;
        if (!best || c < *best) best = c;
      }
      prev[u] = best;
    }
    togo = std::move(prev);
  }
  std::optional<Rational> best;
  for (int u = 0; u < h.vertex_count(); ++u) {
    if (!start_allowed[u] || !togo[u]) continue;
    if (!best || *togo[u] < *best) best = *togo[u];
  }
  if (!best) throw DomainError("brute oracle: Bob has no walk of the required length");
  return *best;
}

void enumerate_alice(const GameInstance& inst, int v, int depth, std::vector<int>& walk,
                     const std::vector<char>& bob_starts, std::optional<Rational>& best) {
  if (depth == 0) {
    Rational c = bob_min_cost(inst, walk, bob_starts);
    if (!best || c > *best) best = c;
    return;
  }
  for (int e : inst.g().out_edges(v)) {
    walk.push_back(e);
    enumerate_alice(inst, inst.g().edge(e).dst, depth - 1, walk, bob_starts, best);
    walk.pop_back();
  }
}

}  // namespace

std::vector<Rational> brute_nonalt(const GameInstance& inst, int rounds,
                                   const std::optional<StartSpec>& start, bool free_bob_start) {
  ResolvedStart rs = inst.resolve_start(start);
  std::vector<char> bob_starts(inst.h().vertex_count(), 0);
  if (free_bob_start)
    std::fill(bob_starts.begin(), bob_starts.end(), 1);
  else
    bob_starts[rs.hv] = 1;
  std::vector<Rational> out;
  for (int n = 1; n <= rounds; ++n) {
    if (count_walks(inst.g(), rs.gv, n, 200000) > 200000)
      throw std::runtime_error("brute oracle: too many Alice walks");
    std::vector<int> walk;
    std::optional<Rational> best;
    enumerate_alice(inst, rs.gv, n, walk, bob_starts, best);
    if (!best) throw DomainError("brute oracle: Alice has no walk of the required length");
    out.push_back(*best);
  }
  return out;
}

std::vector<Rational> brute_alt(const GameInstance& inst, int rounds,
                                const std::optional<StartSpec>& start) {
  ResolvedStart rs = inst.resolve_start(start);
  std::map<std::tuple<int, int, int>, Rational> memo;
  auto rec = [&](auto&& self, int n, int gv, int hv) -> Rational {
    if (n == 0) return Rational(0);
    auto key = std::make_tuple(n, gv, hv);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::optional<Rational> alice_best;
    for (int ge : inst.g().out_edges(gv)) {
      std::optional<Rational> bob_best;
      for (int he : inst.h().out_edges(hv)) {
        Rational v = score_value(inst, ge, he) +
                     self(self, n - 1, inst.g().edge(ge).dst, inst.h().edge(he).dst);
        if (!bob_best || v < *bob_best) bob_best = v;
      }
      if (!alice_best || *bob_best > *alice_best) alice_best = *bob_best;
    }
    memo.emplace(key, *alice_best);
    return *alice_best;
  };
  std::vector<Rational> out;
  for (int n = 1; n <= rounds; ++n) out.push_back(rec(rec, n, rs.gv, rs.hv));
  return out;
}

}  // namespace mpg::testsupport
