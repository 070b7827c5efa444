#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mpg/graph.hpp"
#include "mpg/rational.hpp"

namespace mpg {

// float64 exists solely for score tables holding irrational values; every
// document parses to exact rationals.
enum class NumericMode { exact, float64 };

// Sparse score table over (Alice edge, Bob edge) pairs with a shared default.
class ScoreTable {
 public:
  ScoreTable(Rational default_value, int g_edges, int h_edges);

  void set(int ge, int he, Rational v);
  void set_f64(int ge, int he, double v);  // float-mode override
  void set_default_f64(double v);

  const Rational& at(int ge, int he) const;
  double at_f64(int ge, int he) const;
  const Rational& default_value() const { return default_; }
  double default_value_f64() const { return default_f64_; }

  // max |P| over the full pair rectangle; the default participates whenever
  // at least one pair is unlisted.
  Rational norm() const;
  double norm_f64() const;

  int entry_count() const { return static_cast<int>(entries_.size()); }
  // sorted by (g edge index, h edge index)
  std::vector<std::tuple<int, int, Rational>> sorted_entries() const;
  // union of both maps with float-mode precedence, for serializing float tables
  std::vector<std::tuple<int, int, double>> sorted_entries_f64() const;

 private:
  long key(int ge, int he) const { return static_cast<long>(ge) * h_edges_ + he; }
  Rational default_;
  double default_f64_;
  int g_edges_, h_edges_;
  std::unordered_map<long, Rational> entries_;
  std::unordered_map<long, double> entries_f64_;
};

struct StartSpec {
  enum class Kind { edges, vertices };
  Kind kind = Kind::vertices;
  // edge ids or vertex names, interpreted against the owning instance
  std::string g_ref, h_ref;
};

// Where play begins: always a vertex pair; the initiating edges are kept when
// the start was given in edge form (the block construction replays them).
struct ResolvedStart {
  int gv = -1, hv = -1;
  int ge = -1, he = -1;
  bool from_edges() const { return ge >= 0; }
};

class GameInstance {
 public:
  GameInstance(Graph g, Graph h, ScoreTable scores, std::optional<StartSpec> start,
               NumericMode mode = NumericMode::exact);

  const Graph& g() const { return g_; }
  const Graph& h() const { return h_; }
  const ScoreTable& scores() const { return scores_; }
  NumericMode mode() const { return mode_; }
  const std::optional<StartSpec>& start() const { return start_; }

  const Rational& score(int ge, int he) const;  // throws DomainError in float mode
  double score_f64(int ge, int he) const { return scores_.at_f64(ge, he); }
  Rational score_norm() const { return scores_.norm(); }
  double score_norm_f64() const { return scores_.norm_f64(); }

  // Applies the embedded start; `override_spec` (e.g. from CLI flags) wins
  // when present.  Throws DomainError when neither exists or refs are bad.
  ResolvedStart resolve_start(const std::optional<StartSpec>& override_spec = std::nullopt) const;

  void require_exact(const std::string& op_name) const;

 private:
  Graph g_, h_;
  ScoreTable scores_;
  std::optional<StartSpec> start_;
  NumericMode mode_;
};

// Mode-aware exact view of a score entry: the stored rational in exact mode,
// the stored double converted without rounding in float mode.
Rational score_value(const GameInstance& inst, int ge, int he);

}  // namespace mpg
