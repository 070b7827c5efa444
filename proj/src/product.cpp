#include "mpg/product.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <string>

#include "mpg/errors.hpp"

namespace mpg {

BoolMatrix::BoolMatrix(int size) : n(size) {
  int words_per_row = (size + 63) / 64;
  bits.assign(static_cast<size_t>(size) * words_per_row, 0);
}

namespace {
inline int row_words(int n) { return (n + 63) / 64; }
}  // namespace

bool BoolMatrix::get(int r, int c) const {
  return (bits[static_cast<size_t>(r) * row_words(n) + c / 64] >> (c % 64)) & 1u;
}

void BoolMatrix::set(int r, int c) {
  bits[static_cast<size_t>(r) * row_words(n) + c / 64] |= std::uint64_t(1) << (c % 64);
}

BoolMatrix BoolMatrix::times(const BoolMatrix& o) const {
  BoolMatrix out(n);
  int w = row_words(n);
  for (int r = 0; r < n; ++r) {
    const std::uint64_t* row = &bits[static_cast<size_t>(r) * w];
    std::uint64_t* dst = &out.bits[static_cast<size_t>(r) * w];
    for (int c = 0; c < n; ++c) {
      if (!((row[c / 64] >> (c % 64)) & 1u)) continue;
      const std::uint64_t* other = &o.bits[static_cast<size_t>(c) * w];
      for (int i = 0; i < w; ++i) dst[i] |= other[i];
    }
  }
  return out;
}

BoolMatrix identity_relation(int n) {
  BoolMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i);
  return m;
}

namespace {

BoolMatrix bool_power(const BoolMatrix& a, long k) {
  BoolMatrix acc = identity_relation(a.n);
  BoolMatrix base = a;
  while (k > 0) {
    if (k & 1) acc = acc.times(base);
    k >>= 1;
    if (k) base = base.times(base);
  }
  return acc;
}

}  // namespace

int padding_exponent(const BoolMatrix& a, int p) {
  if (a.n <= 0) throw InternalError("padding exponent on an empty relation");
  if (p <= 0) throw InternalError("padding exponent needs a positive period");
  BoolMatrix step = bool_power(a, p);
  // once B^d == B^{d+1} every later power agrees, so the first fixpoint is
  // the stable support
  long cap = static_cast<long>(a.n - 1) * (a.n - 1) + 1;
  BoolMatrix cur = step;
  for (long d = 1; d <= cap; ++d) {
    BoolMatrix next = cur.times(step);
    if (next == cur) return static_cast<int>(d);
    cur = std::move(next);
  }
  throw InternalError("p-step relation failed to saturate within the Wielandt bound");
}

BoolMatrix restricted_adjacency(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> pos(g.vertex_count(), -1);
  for (size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
  BoolMatrix a(static_cast<int>(vertices.size()));
  for (const Edge& e : g.edges())
    if (pos[e.src] >= 0 && pos[e.dst] >= 0) a.set(pos[e.src], pos[e.dst]);
  return a;
}

ProductGraph build_product(const GameInstance& inst) {
  const Graph& g = inst.g();
  const Graph& h = inst.h();
  ProductGraph prod{Graph({"0"}, {Edge{"0", 0, 0}}), g.vertex_count(), h.vertex_count(),
                    g.edge_count(), h.edge_count()};

  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(prod.g_vertices) * prod.h_vertices);
  char buf[32];
  for (int gv = 0; gv < prod.g_vertices; ++gv)
    for (int hv = 0; hv < prod.h_vertices; ++hv) {
      std::snprintf(buf, sizeof buf, "q%06d", gv * prod.h_vertices + hv);
      names.emplace_back(buf);
    }

  // index ids keep adjacency order aligned with construction order
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(prod.g_edges) * prod.h_edges);
  for (int ge = 0; ge < prod.g_edges; ++ge)
    for (int he = 0; he < prod.h_edges; ++he) {
      const Edge& a = g.edge(ge);
      const Edge& b = h.edge(he);
      std::snprintf(buf, sizeof buf, "p%09d", ge * prod.h_edges + he);
      edges.push_back(Edge{buf, prod.pair_vertex(a.src, b.src), prod.pair_vertex(a.dst, b.dst),
                           b.label});
    }
  prod.graph = Graph(std::move(names), std::move(edges));
  return prod;
}

std::vector<Rational> ProductGraph::score_weights(const GameInstance& inst) const {
  std::vector<Rational> w;
  w.reserve(static_cast<size_t>(g_edges) * h_edges);
  for (int ge = 0; ge < g_edges; ++ge)
    for (int he = 0; he < h_edges; ++he) w.push_back(inst.score(ge, he));
  return w;
}

bool ProductComponent::contains_pair_vertex(int pv) const {
  return std::binary_search(pair_vertices.begin(), pair_vertices.end(), pv);
}

ProductComponent product_component(const GameInstance& inst, const ResolvedStart& start) {
  ProductGraph prod = build_product(inst);
  SccDecomposition dec = strongly_connected_components(prod.graph);
  int sv = prod.pair_vertex(start.gv, start.hv);
  int ci = dec.component_of[sv];
  const Scc& scc = dec.components[ci];
  if (!scc.nontrivial)
    throw DomainError("transient start: pair (" + inst.g().vertex_name(start.gv) + ", " +
                      inst.h().vertex_name(start.hv) +
                      ") lies in a trivial component of the product graph");
  if (start.from_edges()) {
    // the streams re-enter the start edges every block, so the edge pair
    // itself must recur: its source pair has to share the component
    int src_pair = prod.pair_vertex(inst.g().edge(start.ge).src, inst.h().edge(start.he).src);
    if (dec.component_of[src_pair] != ci)
      throw DomainError("transient start: edge pair (" + inst.g().edge(start.ge).id + ", " +
                        inst.h().edge(start.he).id + ") never returns to its source pair");
  }

  ProductComponent comp;
  comp.pair_vertices = scc.vertices;
  for (int pe = 0; pe < prod.graph.edge_count(); ++pe) {
    const Edge& e = prod.graph.edge(pe);
    if (dec.component_of[e.src] == ci && dec.component_of[e.dst] == ci)
      comp.members.push_back(prod.split_edge(pe));
  }
  std::sort(comp.members.begin(), comp.members.end());

  comp.p = component_period(prod.graph, scc);
  comp.padding = padding_exponent(restricted_adjacency(prod.graph, scc.vertices), comp.p);

  {
    // factor saturation at exponents p*d - 1, needed by stream connectors
    std::vector<int> all_g(inst.g().vertex_count()), all_h(inst.h().vertex_count());
    for (size_t i = 0; i < all_g.size(); ++i) all_g[i] = static_cast<int>(i);
    for (size_t i = 0; i < all_h.size(); ++i) all_h[i] = static_cast<int>(i);
    BoolMatrix ag = restricted_adjacency(inst.g(), all_g);
    BoolMatrix ah = restricted_adjacency(inst.h(), all_h);
    BoolMatrix ag_p = bool_power(ag, comp.p);
    BoolMatrix ah_p = bool_power(ah, comp.p);
    long first = static_cast<long>(comp.p) * comp.padding - 1;
    BoolMatrix mg = bool_power(ag, first);
    BoolMatrix mh = bool_power(ah, first);
    long cap = comp.padding + static_cast<long>(ag.n - 1) * (ag.n - 1) +
               static_cast<long>(ah.n - 1) * (ah.n - 1) + 2;
    for (long d = comp.padding; d <= cap; ++d) {
      BoolMatrix ng = mg.times(ag_p);
      BoolMatrix nh = mh.times(ah_p);
      if (ng == mg && nh == mh) {
        comp.stream_padding = static_cast<int>(d);
        break;
      }
      mg = std::move(ng);
      mh = std::move(nh);
    }
  }

  // eccentricity sweep over member pairs: successor pairs are the members
  // whose source pair equals this member's target pair
  int m = static_cast<int>(comp.members.size());
  std::vector<int> pos_of_vertex(prod.graph.vertex_count(), -1);
  for (size_t i = 0; i < comp.pair_vertices.size(); ++i)
    pos_of_vertex[comp.pair_vertices[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> members_from(comp.pair_vertices.size());
  std::vector<int> target_pos(m);
  for (int i = 0; i < m; ++i) {
    auto [ge, he] = comp.members[i];
    int src = prod.pair_vertex(inst.g().edge(ge).src, inst.h().edge(he).src);
    int dst = prod.pair_vertex(inst.g().edge(ge).dst, inst.h().edge(he).dst);
    members_from[pos_of_vertex[src]].push_back(i);
    target_pos[i] = pos_of_vertex[dst];
  }
  int diameter = 0;
  std::vector<int> dist(m);
  for (int s = 0; s < m; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      diameter = std::max(diameter, dist[cur]);
      for (int nxt : members_from[target_pos[cur]])
        if (dist[nxt] < 0) {
          dist[nxt] = dist[cur] + 1;
          queue.push_back(nxt);
        }
    }
  }
  comp.diameter = diameter;
  return comp;
}

}  // namespace mpg
