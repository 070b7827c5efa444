#include "mpg/streams.hpp"

#include <string>
#include <utility>

#include "mpg/errors.hpp"
#include "mpg/finite.hpp"

namespace mpg {

FixedStream::FixedStream(std::vector<int> prefix, std::vector<int> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {}

int FixedStream::next() {
  if (at_ < prefix_.size()) return prefix_[at_++];
  if (cycle_.empty()) throw DomainError("fixed stream exhausted its prefix and has no cycle");
  size_t i = (at_ - prefix_.size()) % cycle_.size();
  ++at_;
  return cycle_[i];
}

namespace {

void stream_gate(const GameInstance& inst, const ResolvedStart& rs) {
  if (!irreducible(inst.g()) || !irreducible(inst.h()))
    throw DomainError(
        "equilibrium streams require both graphs to be strongly connected "
        "(irreducible)");
  if (rs.ge < 0 || rs.he < 0)
    throw DomainError("equilibrium streams need the start given as an edge pair");
}

// shared block bookkeeping: start edge, then per block a segment of p*k
// edges and a connector of p*D edges ending with the start edge again
class BlockStream : public EdgeStream {
 public:
  BlockStream(GameInstance inst, BlockSchedule sched, std::optional<StartSpec> start)
      : inst_(std::move(inst)), sched_(sched), start_(std::move(start)) {
    rs_ = inst_.resolve_start(start_);
    stream_gate(inst_, rs_);
  }

  int next() override {
    if (pos_ == buffer_.size()) {
      ++block_;
      extend_block(block_);
    }
    return buffer_[pos_++];
  }

 protected:
  virtual std::vector<int> segment(int k) = 0;  // p*k edges from the pinned target
  virtual const Graph& own_graph() const = 0;
  virtual int own_start_edge() const = 0;

  // called with k = 1, 2, ...; appends segment k plus the trailing connector
  void extend_block(int k) {
    if (k == 1) buffer_.push_back(own_start_edge());
    std::vector<int> seg = segment(k);
    buffer_.insert(buffer_.end(), seg.begin(), seg.end());
    const Graph& g = own_graph();
    int from = g.edge(seg.back()).dst;
    int to = g.edge(own_start_edge()).src;
    long len = static_cast<long>(sched_.p) * sched_.D - 1;
    auto conn = exact_length_walk(g, from, to, len);
    if (!conn)
      throw InternalError("no connecting walk of length " + std::to_string(len) + " from '" +
                          g.vertex_name(from) + "' to '" + g.vertex_name(to) +
                          "' although the schedule's padding promised one");
    buffer_.insert(buffer_.end(), conn->begin(), conn->end());
    buffer_.push_back(own_start_edge());
  }

  GameInstance inst_;
  BlockSchedule sched_;
  std::optional<StartSpec> start_;
  ResolvedStart rs_;
  std::vector<int> buffer_;
  size_t pos_ = 0;
  int block_ = 0;
};

class AliceBlockStream final : public BlockStream {
 public:
  using BlockStream::BlockStream;

 protected:
  std::vector<int> segment(int k) override {
    FiniteOptions fo;
    fo.want_witness = true;
    auto res = value_nonalt_finite(inst_, sched_.p * k, start_, fo);
    return res.alice_witness;
  }
  const Graph& own_graph() const override { return inst_.g(); }
  int own_start_edge() const override { return rs_.ge; }
};

class BobBlockStream final : public BlockStream {
 public:
  BobBlockStream(GameInstance inst, BlockSchedule sched, std::vector<int> prefix,
                 std::optional<StartSpec> start)
      : BlockStream(std::move(inst), sched, std::move(start)), prefix_(std::move(prefix)) {
    for (int e : prefix_)
      if (e < 0 || e >= inst_.g().edge_count())
        throw ValidationError("alice prefix contains an unknown edge index");
    if (!walk_valid(inst_.g(), prefix_, inst_.g().edge(rs_.ge).src))
      throw ValidationError("alice prefix is not a walk from the start edge's source");
  }

  int next() override {
    if (served_ >= static_cast<long>(prefix_.size()))
      throw DomainError("alice prefix exhausted after " + std::to_string(served_) +
                        " edges; extend the prefix to keep responding");
    ++served_;
    return BlockStream::next();
  }

 protected:
  std::vector<int> segment(int k) override {
    long a = sched_.a(k), b = sched_.b(k);
    if (static_cast<long>(prefix_.size()) <= b)
      throw ValidationError("alice prefix covers only " + std::to_string(prefix_.size()) +
                            " edges, block " + std::to_string(k) + " needs " +
                            std::to_string(b + 1));
    if (prefix_[a] != rs_.ge)
      throw ValidationError("alice prefix does not pin the start edge at block " +
                            std::to_string(k));
    std::vector<int> seg(prefix_.begin() + a + 1, prefix_.begin() + b + 1);
    if (inst_.mode() == NumericMode::float64)
      return bob_best_response_f64(inst_, seg, start_).walk;
    return bob_best_response(inst_, seg, start_).walk;
  }
  const Graph& own_graph() const override { return inst_.h(); }
  int own_start_edge() const override { return rs_.he; }

 private:
  std::vector<int> prefix_;
  long served_ = 0;
};

}  // namespace

std::unique_ptr<EdgeStream> alice_equilibrium_stream(const GameInstance& inst,
                                                     const BlockSchedule& schedule,
                                                     const std::optional<StartSpec>& start) {
  return std::make_unique<AliceBlockStream>(inst, schedule, start);
}

std::unique_ptr<EdgeStream> bob_equilibrium_response(const GameInstance& inst,
                                                     const BlockSchedule& schedule,
                                                     const std::vector<int>& alice_prefix,
                                                     const std::optional<StartSpec>& start) {
  return std::make_unique<BobBlockStream>(inst, schedule, alice_prefix, start);
}

std::vector<TraceRecord> simulate(const GameInstance& inst, EdgeStream& alice, EdgeStream& bob,
                                  long steps) {
  std::vector<TraceRecord> trace;
  trace.reserve(steps > 0 && steps < 1'000'000 ? steps : 0);
  std::optional<ResolvedStart> rs;
  if (inst.start()) rs = inst.resolve_start();
  Rational cumulative(0);
  int prev_a = -1, prev_b = -1;
  for (long i = 1; i <= steps; ++i) {
    int ae = alice.next();
    int be = bob.next();
    if (ae < 0 || ae >= inst.g().edge_count())
      throw ValidationError("Alice's stream produced an unknown edge at step " +
                            std::to_string(i));
    if (be < 0 || be >= inst.h().edge_count())
      throw ValidationError("Bob's stream produced an unknown edge at step " + std::to_string(i));
    if (i == 1 && rs) {
      // play is anchored: an edge-form start opens with those very edges, a
      // vertex-form start with edges leaving the start pair
      if (rs->from_edges()) {
        if (ae != rs->ge)
          throw ValidationError("Alice's stream must open with the start edge '" +
                                inst.g().edge(rs->ge).id + "'");
        if (be != rs->he)
          throw ValidationError("Bob's stream must open with the start edge '" +
                                inst.h().edge(rs->he).id + "'");
      } else {
        if (inst.g().edge(ae).src != rs->gv)
          throw ValidationError("Alice's stream does not start at vertex '" +
                                inst.g().vertex_name(rs->gv) + "'");
        if (inst.h().edge(be).src != rs->hv)
          throw ValidationError("Bob's stream does not start at vertex '" +
                                inst.h().vertex_name(rs->hv) + "'");
      }
    }
    if (prev_a >= 0 && inst.g().edge(ae).src != inst.g().edge(prev_a).dst)
      throw ValidationError("Alice's stream breaks its walk at step " + std::to_string(i) +
                            ": edge '" + inst.g().edge(ae).id + "' does not leave vertex '" +
                            inst.g().vertex_name(inst.g().edge(prev_a).dst) + "'");
    if (prev_b >= 0 && inst.h().edge(be).src != inst.h().edge(prev_b).dst)
      throw ValidationError("Bob's stream breaks its walk at step " + std::to_string(i) +
                            ": edge '" + inst.h().edge(be).id + "' does not leave vertex '" +
                            inst.h().vertex_name(inst.h().edge(prev_b).dst) + "'");
    cumulative += score_value(inst, ae, be);
    TraceRecord rec;
    rec.step = i;
    rec.alice_edge = ae;
    rec.bob_edge = be;
    rec.cumulative = cumulative;
    rec.average = cumulative / Rational(i);
    rec.cumulative_f64 = rec.cumulative.to_double();
    rec.average_f64 = rec.average.to_double();
    trace.push_back(std::move(rec));
    prev_a = ae;
    prev_b = be;
  }
  return trace;
}

}  // namespace mpg
