#pragma once

#include <optional>
#include <random>
#include <vector>

#include "mpg/instance.hpp"

namespace mpg::testsupport {

struct RandomSpec {
  int max_v = 3;
  int max_e = 6;
  int score_lo = -3;
  int score_hi = 3;
  bool irreducible_both = false;
  int h_cycle = 0;  // > 0 forces Bob's graph to be a plain directed cycle of that length
};

// Deterministic in the rng; always sink-free, always carries a vertex start.
// Resamples until Alice has at most 200000 walks of length 6 from the start.
GameInstance random_instance(std::mt19937_64& rng, const RandomSpec& spec = {});

// Definitional committed-walk values: enumerate every Alice walk, answer each
// with an exact min-cost Bob table.  Independent of the layered search.
std::vector<Rational> brute_nonalt(const GameInstance& inst, int rounds,
                                   const std::optional<StartSpec>& start = std::nullopt,
                                   bool free_bob_start = false);

// Definitional alternating values: plain minimax recursion with memoization.
std::vector<Rational> brute_alt(const GameInstance& inst, int rounds,
                                const std::optional<StartSpec>& start = std::nullopt);

// Walks of `length` edges leaving `from`, counted with a cap.
long count_walks(const Graph& g, int from, int length, long cap);

}  // namespace mpg::testsupport
