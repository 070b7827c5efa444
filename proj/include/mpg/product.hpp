#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mpg/instance.hpp"

namespace mpg {

// Square boolean relation, row-major bitset.  Small: component sizes here are
// desk scale, so O(n^3/64) products are fine.
struct BoolMatrix {
  int n = 0;
  std::vector<std::uint64_t> bits;

  explicit BoolMatrix(int size = 0);
  bool get(int r, int c) const;
  void set(int r, int c);
  BoolMatrix times(const BoolMatrix& o) const;
  bool operator==(const BoolMatrix& o) const = default;
};

BoolMatrix identity_relation(int n);

// Smallest d >= 1 with (A^p)^d == (A^p)^(d+1).  At that point the p-step
// relation has reached its stable support: any two vertices connected by some
// walk of p-divisible length are connected by one of length exactly p*d.
// Guarded by the Wielandt bound (n-1)^2 + 1.
int padding_exponent(const BoolMatrix& a, int p);

// One-step adjacency of `g` restricted to `vertices` (indices into g), rows
// and columns in the order given.
BoolMatrix restricted_adjacency(const Graph& g, const std::vector<int>& vertices);

// The synchronized product: vertices are (Alice vertex, Bob vertex) pairs,
// edges are (Alice edge, Bob edge) pairs moving both tokens at once.
struct ProductGraph {
  Graph graph;
  int g_vertices, h_vertices, g_edges, h_edges;

  int pair_vertex(int gv, int hv) const { return gv * h_vertices + hv; }
  int pair_edge(int ge, int he) const { return ge * h_edges + he; }
  std::pair<int, int> split_vertex(int pv) const { return {pv / h_vertices, pv % h_vertices}; }
  std::pair<int, int> split_edge(int pe) const { return {pe / h_edges, pe % h_edges}; }

  // edge-pair scores as weights, index-aligned with graph.edges()
  std::vector<Rational> score_weights(const GameInstance& inst) const;
};

ProductGraph build_product(const GameInstance& inst);

struct ProductComponent {
  // (Alice edge, Bob edge) pairs whose endpoints both lie inside the strongly
  // connected component of the start pair; sorted.
  std::vector<std::pair<int, int>> members;
  std::vector<int> pair_vertices;  // product vertex ids in the component, sorted
  int p = 1;                       // gcd of cycle lengths through the component
  int diameter = 0;                // longest shortest path between member pairs
  int padding = 1;                 // D: saturation exponent of the p-step vertex relation

  // Smallest d >= padding such that in each factor the (p*d - 1)-step relation
  // already equals its stable support.  Equilibrium streams re-enter the pinned
  // start edges each block, so their connectors run p*d - 1 free steps and then
  // the start edge itself; that final-edge anchoring is what needs the -1
  // offset.  -1 when no such d exists below the search cap (reducible factors).
  int stream_padding = -1;

  bool contains_pair_vertex(int pv) const;
};

// Component of the resolved start in the product graph.  Throws DomainError
// when the start pair sits in a trivial component, or when an edge-form start
// is transient (its source pair falls outside the component).
ProductComponent product_component(const GameInstance& inst, const ResolvedStart& start);

}  // namespace mpg
