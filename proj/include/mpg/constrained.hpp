#pragma once

#include <string>
#include <vector>

#include "mpg/asymptotic.hpp"
#include "mpg/instance.hpp"

namespace mpg {

// forbidden binary patterns, all of the same length k >= 1
struct ForbiddenSet {
  int k = 1;
  std::vector<std::string> patterns;  // sorted, deduplicated
};

// Comma-separated bit strings ("11" or "00,11"); empty text means nothing is
// forbidden (k stays 1).
ForbiddenSet parse_forbidden(const std::string& text);
ForbiddenSet make_forbidden(std::vector<std::string> patterns, int k_if_empty = 1);

// The derived duel: Alice spells arbitrary bits on a one-vertex graph, Bob
// walks the trimmed follower graph, each round scores 1 on a bit mismatch.
struct ConstrainedSystem {
  ForbiddenSet forbidden;
  GameInstance instance;  // g = bit graph, h = follower graph, {0,1} scores
};

// Follower graph over length-(k-1) windows, one edge per allowed k-window
// (label = last bit), iteratively trimmed to its bi-extendable part.
// Throws DomainError("empty constrained system") when nothing survives.
ConstrainedSystem build_constrained_system(const ForbiddenSet& f);

// All length-n binary words avoiding the patterns, by literal filtering;
// lexicographic order.
std::vector<std::string> allowed_words(const ForbiddenSet& f, int n);

// Words spelled by length-n walks of the trimmed follower graph.  Equals
// allowed_words whenever every allowed word extends both ways indefinitely.
std::vector<std::string> spelled_words(const ConstrainedSystem& sys, int n);

struct CoveringRadiusResult {
  int n = 0;
  long radius = 0;
  std::string witness_u;  // a word attaining the max-min distance
  std::string mode;       // "game" or "brute"
};

// Game mode: n-round committed-walk value with Bob's start free over all
// follower vertices.  Falls back to brute mode for n < k - 1.
CoveringRadiusResult covering_radius(const ForbiddenSet& f, int n);

// Exhaustive max-min Hamming distance over all 2^n words against the literal
// allowed set.  Guarded by 2^n * |C_n| <= 1e8.
CoveringRadiusResult brute_covering_radius(const ForbiddenSet& f, int n);

// Bounds on lim R(C_n)/n via the committed-walk game with free Bob start.
// Requires the trimmed follower graph to be strongly connected.
ValueBounds asymptotic_covering_radius_bounds(const ForbiddenSet& f, int budget);

}  // namespace mpg
