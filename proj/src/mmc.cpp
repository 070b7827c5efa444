#include "mpg/mmc.hpp"

#include <algorithm>

#include "mpg/errors.hpp"

namespace mpg {

namespace {

struct Cell {
  Rational val;
  int pred_edge = -1;  // index into the edges argument
  bool finite = false;
};

}  // namespace

std::optional<MeanCycle> max_mean_cycle(int vertex_count, const std::vector<WeightedEdge>& edges) {
  int n = vertex_count;
  if (n <= 0 || edges.empty()) return std::nullopt;

  // F[k][v]: heaviest k-edge walk ending at v, free start anywhere
  std::vector<std::vector<Cell>> table(n + 1, std::vector<Cell>(n));
  for (int v = 0; v < n; ++v) table[0][v].finite = true;
  for (int k = 1; k <= n; ++k)
    for (size_t ei = 0; ei < edges.size(); ++ei) {
      const WeightedEdge& e = edges[ei];
      const Cell& from = table[k - 1][e.src];
      if (!from.finite) continue;
      Cell& to = table[k][e.dst];
      Rational cand = from.val + e.w;
      if (!to.finite || cand > to.val) {
        to.val = std::move(cand);
        to.pred_edge = static_cast<int>(ei);
        to.finite = true;
      }
    }

  // an n-edge walk exists iff some cycle does
  int best_v = -1;
  Rational best_ratio;
  for (int v = 0; v < n; ++v) {
    if (!table[n][v].finite) continue;
    bool have = false;
    Rational worst;
    for (int k = 0; k < n; ++k) {
      if (!table[k][v].finite) continue;
      Rational ratio = (table[n][v].val - table[k][v].val) / Rational(n - k);
      if (!have || ratio < worst) {
        worst = std::move(ratio);
        have = true;
      }
    }
    if (have && (best_v < 0 || worst > best_ratio)) {
      best_v = v;
      best_ratio = std::move(worst);
    }
  }
  if (best_v < 0) return std::nullopt;

  // walk the predecessor chain of F[n][best_v]; any repeated vertex closes a
  // cycle whose mean is exactly the optimum
  std::vector<int> chain_vertex(n + 1), chain_edge(n + 1, -1);
  chain_vertex[n] = best_v;
  for (int k = n; k >= 1; --k) {
    chain_edge[k] = table[k][chain_vertex[k]].pred_edge;
    chain_vertex[k - 1] = edges[chain_edge[k]].src;
  }
  std::vector<int> seen_at(n, -1);
  int lo = -1, hi = -1;
  for (int k = 0; k <= n && hi < 0; ++k) {
    int v = chain_vertex[k];
    if (seen_at[v] >= 0) {
      lo = seen_at[v];
      hi = k;
    } else {
      seen_at[v] = k;
    }
  }
  if (hi < 0) throw InternalError("n-step predecessor chain had no repeated vertex");

  MeanCycle out;
  out.mean = best_ratio;
  for (int k = lo + 1; k <= hi; ++k) out.tags.push_back(edges[chain_edge[k]].tag);
  return out;
}

std::optional<MeanCycle> min_mean_cycle(int vertex_count, const std::vector<WeightedEdge>& edges) {
  std::vector<WeightedEdge> neg = edges;
  for (WeightedEdge& e : neg) e.w = -e.w;
  auto res = max_mean_cycle(vertex_count, neg);
  if (res) res->mean = -res->mean;
  return res;
}

namespace {

std::vector<WeightedEdge> graph_edges(const Graph& g, const std::vector<Rational>& weights,
                                      const std::vector<int>* restrict_to) {
  std::vector<char> keep(g.vertex_count(), restrict_to == nullptr);
  if (restrict_to)
    for (int v : *restrict_to) keep[v] = 1;
  std::vector<WeightedEdge> edges;
  for (int ei = 0; ei < g.edge_count(); ++ei) {
    const Edge& e = g.edge(ei);
    if (keep[e.src] && keep[e.dst]) edges.push_back(WeightedEdge{e.src, e.dst, weights[ei], ei});
  }
  return edges;
}

}  // namespace

std::optional<MeanCycle> max_mean_cycle(const Graph& g, const std::vector<Rational>& weights,
                                        const std::vector<int>* restrict_to) {
  return max_mean_cycle(g.vertex_count(), graph_edges(g, weights, restrict_to));
}

std::optional<MeanCycle> min_mean_cycle(const Graph& g, const std::vector<Rational>& weights,
                                        const std::vector<int>* restrict_to) {
  return min_mean_cycle(g.vertex_count(), graph_edges(g, weights, restrict_to));
}

}  // namespace mpg
