#include "mpg/finite.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "mpg/errors.hpp"

namespace mpg {

long default_node_cap() {
  if (const char* env = std::getenv("MPG_NODE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 5'000'000;
}

namespace {

template <class T>
struct NumOps;

template <>
struct NumOps<Rational> {
  static Rational from_score(const Rational& r) { return r; }
  static Rational to_rational(const Rational& r) { return r; }
};

template <>
struct NumOps<long> {
  static long from_score(const Rational& r) { return static_cast<long>(r.num().get_si()); }
  static Rational to_rational(long v) { return Rational(v); }
};

template <>
struct NumOps<double> {
  static Rational to_rational(double v) { return Rational(mpq_class(v)); }  // exact
};

template <class T>
T load_score(const GameInstance& inst, int ge, int he) {
  if constexpr (std::is_same_v<T, double>)
    return inst.score_f64(ge, he);
  else
    return NumOps<T>::from_score(inst.score(ge, he));
}

// All scores integral and small enough that `rounds * |P|` stays far from
// overflow; then the search can run on machine words.
bool int64_eligible(const GameInstance& inst, long rounds) {
  if (inst.mode() != NumericMode::exact) return false;
  Rational norm = inst.score_norm();
  auto check = [](const Rational& r) {
    return r.is_integer() && mpz_sizeinbase(r.num().get_mpz_t(), 2) <= 40;
  };
  if (!check(norm) || !check(inst.scores().default_value())) return false;
  for (const auto& [ge, he, v] : inst.scores().sorted_entries())
    if (!check(v)) return false;
  long n = std::max(rounds, 1L);
  return norm.num().get_si() < std::numeric_limits<long>::max() / (4 * (n + 1));
}

template <class T>
struct SearchNode {
  std::vector<T> cost;       // per H-vertex cheapest Bob walk cost so far
  std::vector<char> finite;  // entry valid iff set; unreachable entries win for Alice
  int parent = -1;
  int via_edge = -1;
  int min_idx = -1;  // position of the smallest finite entry
  bool alive = true;
};

template <class T>
void cache_min(SearchNode<T>& n) {
  n.min_idx = -1;
  for (size_t u = 0; u < n.cost.size(); ++u)
    if (n.finite[u] && (n.min_idx < 0 || n.cost[u] < n.cost[n.min_idx]))
      n.min_idx = static_cast<int>(u);
}

// a >= b componentwise, missing entries counting as +inf
template <class T>
bool cost_dominates(const SearchNode<T>& a, const SearchNode<T>& b) {
  for (size_t u = 0; u < a.cost.size(); ++u) {
    if (!a.finite[u]) continue;            // +inf >= anything
    if (!b.finite[u]) return false;        // finite < +inf
    if (a.cost[u] < b.cost[u]) return false;
  }
  return true;
}

template <class T>
struct Engine {
  const GameInstance& inst;
  const Graph& g;
  const Graph& h;
  std::vector<T> score;  // ge * hE + he
  T min_score{};
  int hV, hE;

  explicit Engine(const GameInstance& gi) : inst(gi), g(gi.g()), h(gi.h()) {
    hV = h.vertex_count();
    hE = h.edge_count();
    score.reserve(static_cast<size_t>(g.edge_count()) * hE);
    bool first = true;
    for (int ge = 0; ge < g.edge_count(); ++ge)
      for (int he = 0; he < hE; ++he) {
        T s = load_score<T>(inst, ge, he);
        if (first || s < min_score) min_score = s;
        first = false;
        score.push_back(std::move(s));
      }
  }

  const T& sc(int ge, int he) const { return score[static_cast<size_t>(ge) * hE + he]; }

  SearchNode<T> child_of(const SearchNode<T>& node, int ge) const {
    SearchNode<T> c;
    c.cost.assign(hV, T{});
    c.finite.assign(hV, 0);
    for (int u = 0; u < hV; ++u) {
      if (!node.finite[u]) continue;
      for (int fe : h.out_edges(u)) {
        T v = node.cost[u] + sc(ge, fe);
        int tv = h.edge(fe).dst;
        if (!c.finite[tv] || v < c.cost[tv]) {
          c.cost[tv] = std::move(v);
          c.finite[tv] = 1;
        }
      }
    }
    cache_min(c);
    return c;
  }

  NonAltFiniteResult run(int rounds, const ResolvedStart& start, const FiniteOptions& opts) {
    long cap = opts.node_cap > 0 ? opts.node_cap : default_node_cap();
    std::vector<std::vector<SearchNode<T>>> layers(1);
    SearchNode<T> root;
    root.cost.assign(hV, T{});
    root.finite.assign(hV, 0);
    if (opts.free_bob_start)
      std::fill(root.finite.begin(), root.finite.end(), 1);
    else
      root.finite[start.hv] = 1;
    cache_min(root);
    layers[0].push_back(std::move(root));
    std::vector<int> layer_vertex{start.gv};  // Alice vertex per node, parallel to layer

    NonAltFiniteResult out;
    long created = 1;

    for (int k = 1; k <= rounds && !out.capped; ++k) {
      const auto& prev = layers.back();
      const std::vector<int>& prev_vertex = layer_vertex;
      std::vector<SearchNode<T>> next;
      std::vector<int> next_vertex;
      // per-Alice-vertex member indices, in generation order
      std::vector<std::vector<int>> bucket(g.vertex_count());

      for (size_t pi = 0; pi < prev.size() && !out.capped; ++pi) {
        if (!prev[pi].alive) continue;
        for (int ge : g.out_edges(prev_vertex[pi])) {
          if (created + 1 > cap) {
            if (opts.partial_on_cap) {
              out.capped = true;
              break;
            }
            throw capped(layers, rounds, k - 1, created + 1);
          }
          ++created;
          SearchNode<T> child = child_of(prev[pi], ge);
          child.parent = static_cast<int>(pi);
          child.via_edge = ge;
          int gv = g.edge(ge).dst;
          if (opts.prune) {
            bool drop = false;
            for (int bi : bucket[gv]) {
              if (!next[bi].alive) continue;
              if (cost_dominates(next[bi], child)) {
                drop = true;
                break;
              }
            }
            if (drop) continue;
            for (int bi : bucket[gv])
              if (next[bi].alive && cost_dominates(child, next[bi])) next[bi].alive = false;
          }
          bucket[gv].push_back(static_cast<int>(next.size()));
          next.push_back(std::move(child));
          next_vertex.push_back(gv);
        }
      }
      if (out.capped) break;  // discard the incomplete layer

      long alive = 0;
      int best = -1;
      for (size_t i = 0; i < next.size(); ++i) {
        if (!next[i].alive) continue;
        ++alive;
        if (best < 0 || next[i].cost[next[i].min_idx] > next[best].cost[next[best].min_idx])
          best = static_cast<int>(i);
      }
      if (best < 0) throw InternalError("search layer emptied out");
      out.frontier_peak = std::max(out.frontier_peak, alive);
      out.round_values.push_back(NumOps<T>::to_rational(next[best].cost[next[best].min_idx]));

      layers.push_back(std::move(next));
      layer_vertex = std::move(next_vertex);

      if (k == rounds && opts.want_witness) {
        std::vector<int> walk;
        int li = static_cast<int>(layers.size()) - 1;
        for (int cur = best; li > 0; --li) {
          walk.push_back(layers[li][cur].via_edge);
          cur = layers[li][cur].parent;
        }
        std::reverse(walk.begin(), walk.end());
        out.alice_witness = std::move(walk);
      }
    }
    out.nodes_expanded = created;
    return out;
  }

  // lower bound from the last complete layer: whatever Alice does, each of
  // the remaining steps costs Bob at least min_score
  NodeCapExceeded capped(const std::vector<std::vector<SearchNode<T>>>& layers, int rounds,
                         int done, long created) const {
    const auto& layer = layers.back();
    bool have = false;
    T best{};
    for (const auto& node : layer) {
      if (!node.alive || node.min_idx < 0) continue;
      const T& v = node.cost[node.min_idx];
      if (!have || v > best) {
        best = v;
        have = true;
      }
    }
    Rational bound = NumOps<T>::to_rational(best) +
                     Rational(rounds - done) * NumOps<T>::to_rational(min_score);
    return NodeCapExceeded("node cap exceeded after " + std::to_string(done) + " of " +
                               std::to_string(rounds) + " rounds; value is at least " +
                               bound.str(),
                           bound, created);
  }
};

template <class T, class ScoreFn>
std::pair<T, std::vector<int>> response_dp(const Graph& h, const std::vector<int>& alice_walk,
                                           int start_hv, bool free_start, ScoreFn&& sc) {
  int n = static_cast<int>(alice_walk.size());
  int hV = h.vertex_count();
  // min-to-go from (step i, vertex u); +inf never occurs, H is sink-free
  std::vector<std::vector<T>> togo(n + 1, std::vector<T>(hV, T{}));
  for (int i = n - 1; i >= 0; --i)
    for (int u = 0; u < hV; ++u) {
      bool first = true;
      for (int fe : h.out_edges(u)) {
        T v = sc(alice_walk[i], fe) + togo[i + 1][h.edge(fe).dst];
        if (first || v < togo[i][u]) {
          togo[i][u] = std::move(v);
          first = false;
        }
      }
    }
  int at = start_hv;
  if (free_start) {
    at = 0;
    for (int u = 1; u < hV; ++u)
      if (togo[0][u] < togo[0][at]) at = u;
  }
  T value = togo[0][at];
  std::vector<int> walk;
  walk.reserve(n);
  for (int i = 0; i < n; ++i) {
    int pick = -1;  // id order plus strict improvement keeps ties lex-least
    T pick_val{};
    for (int fe : h.out_edges(at)) {
      T v = sc(alice_walk[i], fe) + togo[i + 1][h.edge(fe).dst];
      if (pick < 0 || v < pick_val) {
        pick = fe;
        pick_val = std::move(v);
      }
    }
    walk.push_back(pick);
    at = h.edge(pick).dst;
  }
  return {std::move(value), std::move(walk)};
}

void check_walk(const GameInstance& inst, const std::vector<int>& alice_walk,
                const ResolvedStart& start) {
  for (int e : alice_walk)
    if (e < 0 || e >= inst.g().edge_count())
      throw DomainError("walk refers to edge index " + std::to_string(e) +
                        " outside Alice's graph");
  if (!walk_valid(inst.g(), alice_walk, start.gv))
    throw DomainError("edge sequence does not chain from the start vertex");
}

}  // namespace

NonAltFiniteResult value_nonalt_finite(const GameInstance& inst, int rounds,
                                       const std::optional<StartSpec>& start,
                                       const FiniteOptions& opts) {
  if (rounds < 1) throw DomainError("rounds must be at least 1");
  ResolvedStart rs = inst.resolve_start(start);
  NonAltFiniteResult res;
  if (inst.mode() == NumericMode::float64) {
    Engine<double> eng(inst);
    res = eng.run(rounds, rs, opts);
  } else if (int64_eligible(inst, rounds)) {
    Engine<long> eng(inst);
    res = eng.run(rounds, rs, opts);
  } else {
    Engine<Rational> eng(inst);
    res = eng.run(rounds, rs, opts);
  }
  if (opts.want_witness && !res.alice_witness.empty()) {
    if (inst.mode() == NumericMode::float64)
      res.bob_reply =
          bob_best_response_f64(inst, res.alice_witness, start, opts.free_bob_start).walk;
    else
      res.bob_reply =
          bob_best_response(inst, res.alice_witness, start, opts.free_bob_start).walk;
  }
  return res;
}

BobResponse bob_best_response(const GameInstance& inst, const std::vector<int>& alice_walk,
                              const std::optional<StartSpec>& start, bool free_bob_start) {
  inst.require_exact("the best-response solve");
  ResolvedStart rs = inst.resolve_start(start);
  check_walk(inst, alice_walk, rs);
  auto [value, walk] = response_dp<Rational>(
      inst.h(), alice_walk, rs.hv, free_bob_start,
      [&](int ge, int he) -> const Rational& { return inst.score(ge, he); });
  return BobResponse{std::move(value), std::move(walk)};
}

BobResponseF64 bob_best_response_f64(const GameInstance& inst,
                                     const std::vector<int>& alice_walk,
                                     const std::optional<StartSpec>& start,
                                     bool free_bob_start) {
  ResolvedStart rs = inst.resolve_start(start);
  check_walk(inst, alice_walk, rs);
  auto [value, walk] =
      response_dp<double>(inst.h(), alice_walk, rs.hv, free_bob_start,
                          [&](int ge, int he) { return inst.score_f64(ge, he); });
  return BobResponseF64{value, std::move(walk)};
}

namespace {

template <class T>
std::vector<T> alt_rounds(const GameInstance& inst, int rounds, const ResolvedStart& rs) {
  const Graph& g = inst.g();
  const Graph& h = inst.h();
  int gV = g.vertex_count(), hV = h.vertex_count();
  auto idx = [hV](int v, int u) { return static_cast<size_t>(v) * hV + u; };
  std::vector<T> prev(static_cast<size_t>(gV) * hV, T{}), cur(prev);
  std::vector<T> at_start;
  at_start.reserve(rounds);
  for (int k = 1; k <= rounds; ++k) {
    for (int v = 0; v < gV; ++v)
      for (int u = 0; u < hV; ++u) {
        bool first_e = true;
        T best{};
        for (int ge : g.out_edges(v)) {
          bool first_f = true;
          T worst{};
          for (int fe : h.out_edges(u)) {
            T val = load_score<T>(inst, ge, fe) + prev[idx(g.edge(ge).dst, h.edge(fe).dst)];
            if (first_f || val < worst) {
              worst = std::move(val);
              first_f = false;
            }
          }
          if (first_e || worst > best) {
            best = std::move(worst);
            first_e = false;
          }
        }
        cur[idx(v, u)] = std::move(best);
      }
    at_start.push_back(cur[idx(rs.gv, rs.hv)]);
    std::swap(prev, cur);
  }
  return at_start;
}

}  // namespace

std::vector<Rational> value_alt_finite(const GameInstance& inst, int rounds,
                                       const std::optional<StartSpec>& start) {
  if (rounds < 1) throw DomainError("rounds must be at least 1");
  ResolvedStart rs = inst.resolve_start(start);
  std::vector<Rational> out;
  if (inst.mode() == NumericMode::float64) {
    for (double v : alt_rounds<double>(inst, rounds, rs)) out.push_back(NumOps<double>::to_rational(v));
  } else {
    out = alt_rounds<Rational>(inst, rounds, rs);
  }
  return out;
}

}  // namespace mpg
