#pragma once

#include <optional>
#include <vector>

#include "mpg/instance.hpp"

namespace mpg {

// 5e6 unless the MPG_NODE_CAP environment variable overrides it.
long default_node_cap();

struct FiniteOptions {
  long node_cap = -1;  // -1 means default_node_cap()
  bool prune = true;   // dominance pruning; off only for cross-checking tests
  bool free_bob_start = false;  // Bob may open at any vertex of H at zero cost
  bool want_witness = true;
  bool partial_on_cap = false;  // return completed rounds instead of throwing
};

struct NonAltFiniteResult {
  // round_values[k-1] is the k-round value: Alice commits a k-edge walk up
  // front, Bob answers with full knowledge of it.
  std::vector<Rational> round_values;
  std::vector<int> alice_witness;  // lex-least optimal committed walk, edge indices
  std::vector<int> bob_reply;      // Bob's best response to that witness
  long nodes_expanded = 0;
  long frontier_peak = 0;
  bool capped = false;  // true when partial_on_cap cut the run short
};

// Layered search over (round, Alice vertex, per-H-vertex Bob cost) states.
// Pruning drops a state when a sibling's cost vector is >= componentwise,
// which never changes any round value.  Exceeding the node cap raises
// NodeCapExceeded carrying the best lower bound seen.
NonAltFiniteResult value_nonalt_finite(const GameInstance& inst, int rounds,
                                       const std::optional<StartSpec>& start = std::nullopt,
                                       const FiniteOptions& opts = {});

struct BobResponse {
  Rational value;
  std::vector<int> walk;  // H edge indices, lex-least among best responses
};

// Bob's cheapest reply to a fully revealed Alice walk: backward min-to-go
// table, then a forward greedy pass in edge-id order.
BobResponse bob_best_response(const GameInstance& inst, const std::vector<int>& alice_walk,
                              const std::optional<StartSpec>& start = std::nullopt,
                              bool free_bob_start = false);

struct BobResponseF64 {
  double value = 0.0;
  std::vector<int> walk;
};

// double twin for instances carrying float64 scores
BobResponseF64 bob_best_response_f64(const GameInstance& inst,
                                     const std::vector<int>& alice_walk,
                                     const std::optional<StartSpec>& start = std::nullopt,
                                     bool free_bob_start = false);

// Alternating values for rounds 1..n at the resolved start: both players see
// the position and move each round, Alice first within the round.
std::vector<Rational> value_alt_finite(const GameInstance& inst, int rounds,
                                       const std::optional<StartSpec>& start = std::nullopt);

}  // namespace mpg
