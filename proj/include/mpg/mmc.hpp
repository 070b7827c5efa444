#pragma once

#include <optional>
#include <vector>

#include "mpg/graph.hpp"
#include "mpg/rational.hpp"

namespace mpg {

struct WeightedEdge {
  int src = -1, dst = -1;
  Rational w;
  int tag = -1;  // caller's edge identity, echoed in the witness
};

struct MeanCycle {
  Rational mean;
  std::vector<int> tags;  // edges of a cycle achieving the mean, in walk order
};

// Maximum over directed cycles of (weight sum / length), exact arithmetic.
// Karp recurrence with every vertex as a free source, so the graph may be
// disconnected and may have sinks; nullopt when there is no cycle at all.
std::optional<MeanCycle> max_mean_cycle(int vertex_count, const std::vector<WeightedEdge>& edges);

// Same, negated.
std::optional<MeanCycle> min_mean_cycle(int vertex_count, const std::vector<WeightedEdge>& edges);

// Convenience views over a Graph: weights indexed like g.edges(), tags are
// edge indices; `restrict_to` keeps only edges with both endpoints listed.
std::optional<MeanCycle> max_mean_cycle(const Graph& g, const std::vector<Rational>& weights,
                                        const std::vector<int>* restrict_to = nullptr);
std::optional<MeanCycle> min_mean_cycle(const Graph& g, const std::vector<Rational>& weights,
                                        const std::vector<int>* restrict_to = nullptr);

}  // namespace mpg
