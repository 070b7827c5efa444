#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace mpg {

struct Edge {
  std::string id;
  int src = -1;
  int dst = -1;
  int label = -1;  // optional 0/1 bit used by the constrained-code build, -1 when absent
};

// Finite directed graph, sink-free.  Parallel edges and self-loops are fine.
// Vertices and edges keep their document order; algorithms that need a
// deterministic expansion order walk out_edges, which is sorted by edge id.
class Graph {
 public:
  Graph(std::vector<std::string> vertices, std::vector<Edge> edges);

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  int vertex_index(const std::string& name) const;           // -1 when absent
  int edge_index(const std::string& id) const;               // -1 when absent
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_by_name_;
  std::unordered_map<std::string, int> edge_by_id_;
  std::vector<std::vector<int>> out_;  // sorted by edge id
  std::vector<std::vector<int>> in_;
};

// True iff the edge sequence chains head-to-tail; `start` additionally pins
// the source of the first edge.  Empty sequences are valid walks.
bool walk_valid(const Graph& g, const std::vector<int>& walk,
                std::optional<int> start = std::nullopt);

struct Scc {
  std::vector<int> vertices;  // sorted
  bool nontrivial = false;    // carries at least one cycle
};

struct SccDecomposition {
  std::vector<Scc> components;    // topological order, sources first
  std::vector<int> component_of;  // vertex index -> component index
};

SccDecomposition strongly_connected_components(const Graph& g);

bool irreducible(const Graph& g);

// Period of a nontrivial strongly connected component: gcd of its cycle
// lengths, computed from BFS depth labels.  Throws std::invalid_argument on a
// trivial component.
int component_period(const Graph& g, const Scc& scc);

// gcd of cycle lengths over the whole graph's nontrivial components; used by
// callers that want per(G) of an irreducible graph.
int graph_period(const Graph& g);

// Some walk of exactly `length` edges from `from` to `to`, lexicographically
// smallest by edge ids, or nullopt when none exists.
std::optional<std::vector<int>> exact_length_walk(const Graph& g, int from, int to,
                                                  int length);

}  // namespace mpg
