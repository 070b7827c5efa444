#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mpg/asymptotic.hpp"
#include "mpg/instance.hpp"

namespace mpg {

// one simulated round; the rational fields are exact, the doubles shadow them
struct TraceRecord {
  long step = 0;  // 1-based
  int alice_edge = -1;
  int bob_edge = -1;
  Rational cumulative;
  Rational average;  // cumulative / step
  double cumulative_f64 = 0.0;
  double average_f64 = 0.0;
};

// pull-based supply of edge indices; implementations extend lazily
class EdgeStream {
 public:
  virtual ~EdgeStream() = default;
  virtual int next() = 0;
};

// explicit prefix, then the cycle forever; empty cycle makes the stream
// finite and next() past the end throws DomainError
class FixedStream : public EdgeStream {
 public:
  FixedStream(std::vector<int> prefix, std::vector<int> cycle);
  int next() override;

 private:
  std::vector<int> prefix_, cycle_;
  size_t at_ = 0;
};

// Alice's committed block stream: emits the start edge, then per block k an
// optimal committed segment of length p*k, then a connecting walk of exactly
// p*D steps whose last edge is the start edge again.  Start must name edges.
std::unique_ptr<EdgeStream> alice_equilibrium_stream(
    const GameInstance& inst, const BlockSchedule& schedule,
    const std::optional<StartSpec>& start = std::nullopt);

// Bob's reply to a committed prefix of Alice's stream: his start edge, per
// block a cheapest response to Alice's segment, connectors re-pinning his
// start edge at every block boundary.  Emits exactly prefix-many edges and
// needs the prefix to cover each block it is asked to answer.
std::unique_ptr<EdgeStream> bob_equilibrium_response(
    const GameInstance& inst, const BlockSchedule& schedule,
    const std::vector<int>& alice_prefix,
    const std::optional<StartSpec>& start = std::nullopt);

// Runs both streams for `steps` rounds, scoring each simultaneous pair and
// checking that each side's emissions chain into a valid walk anchored at
// the instance's start: an edge-form start must open with those very edges,
// a vertex-form start with edges leaving the start pair.
std::vector<TraceRecord> simulate(const GameInstance& inst, EdgeStream& alice, EdgeStream& bob,
                                  long steps);

}  // namespace mpg
