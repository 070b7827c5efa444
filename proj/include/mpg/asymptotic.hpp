#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpg/instance.hpp"
#include "mpg/product.hpp"

namespace mpg {

// Certified interval for an infinite-horizon mean value.  The same shape
// serves the committed-walk game (certificate labels, constant C) and the
// alternating game (iteration count, exact value when the interval isolates
// a unique candidate).
struct ValueBounds {
  Rational lower, upper;
  long horizon_used = 0;  // largest finite horizon consumed
  Rational constant_C;
  int escalations = 0;  // audit events that grew C past its analytic default
  std::string lower_certificate, upper_certificate;
  std::optional<Rational> exact;
  long iterations = 0;  // alternating value-iteration steps, 0 elsewhere
};

// a(1) = 0, b(k) = a(k) + p*k, a(k+1) = b(k) + p*D
struct BlockSchedule {
  int p = 1;
  int D = 1;
  long a(int k) const;
  long b(int k) const;
};

BlockSchedule make_schedule(int p, int D);

// Schedule the equilibrium streams actually follow.  Uses the component's
// stream padding, which is >= the analytic padding constant whenever the
// factor relations need extra steps to support edge-pinned connectors.
BlockSchedule block_schedule(const GameInstance& inst, const ProductComponent& comp);

struct SubadditiveConstant {
  Rational value;     // final C after the audit
  Rational analytic;  // 3 * p * D * |P|
  int escalations = 0;
};

// Analytic default 3*p*D*|P|, escalated until every audited triple satisfies
// r_{n+m} <= r_n + r_m + C and every sampled same-component start pair keeps
// |V(n|x) - V(n|y)| <= C for n <= 12.
SubadditiveConstant subadditive_constant(const GameInstance& inst, const ProductComponent& comp);

// Certified interval around the committed-walk mean value, from finite values
// r_1..r_N (N <= budget).  Upper: subadditive envelope min (r_n + C)/n, capped
// by the alternating relaxation and the score ceiling.  Lower: best of the
// block construction, cycle repetition, and locked-cycle certificates.
//
// free_bob_start lets Bob choose his start vertex after seeing Alice's walk
// (the covering-radius reading).  The start-anchored certificates (block
// construction, cycle repetition, forced-walk collapse) are skipped there;
// the remaining ones minimize over Bob starts already.
ValueBounds value_nonalt_bounds(const GameInstance& inst, int budget,
                                const std::optional<StartSpec>& start = std::nullopt,
                                bool free_bob_start = false);

// Value iteration over reachable vertex pairs; iterations = 0 picks a count
// large enough to isolate the exact rational value when scores are rational.
ValueBounds value_alt_infinite(const GameInstance& inst, long iterations = 0,
                               const std::optional<StartSpec>& start = std::nullopt);

}  // namespace mpg
