#include "mpg/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mpg/errors.hpp"

namespace mpg {

ScoreTable::ScoreTable(Rational default_value, int g_edges, int h_edges)
    : default_(std::move(default_value)),
      default_f64_(default_.to_double()),
      g_edges_(g_edges),
      h_edges_(h_edges) {}

void ScoreTable::set(int ge, int he, Rational v) {
  entries_[key(ge, he)] = std::move(v);
}

void ScoreTable::set_f64(int ge, int he, double v) { entries_f64_[key(ge, he)] = v; }

void ScoreTable::set_default_f64(double v) { default_f64_ = v; }

const Rational& ScoreTable::at(int ge, int he) const {
  auto it = entries_.find(key(ge, he));
  return it == entries_.end() ? default_ : it->second;
}

double ScoreTable::at_f64(int ge, int he) const {
  auto fit = entries_f64_.find(key(ge, he));
  if (fit != entries_f64_.end()) return fit->second;
  auto it = entries_.find(key(ge, he));
  return it == entries_.end() ? default_f64_ : it->second.to_double();
}

Rational ScoreTable::norm() const {
  Rational n(0);
  for (const auto& [k, v] : entries_) n = std::max(n, abs(v));
  long total = static_cast<long>(g_edges_) * h_edges_;
  if (static_cast<long>(entries_.size()) < total) n = std::max(n, abs(default_));
  return n;
}

double ScoreTable::norm_f64() const {
  double n = 0;
  std::set<long> keys;
  for (const auto& [k, v] : entries_) {
    n = std::max(n, std::fabs(v.to_double()));
    keys.insert(k);
  }
  for (const auto& [k, v] : entries_f64_) {
    n = std::max(n, std::fabs(v));
    keys.insert(k);
  }
  long total = static_cast<long>(g_edges_) * h_edges_;
  if (static_cast<long>(keys.size()) < total) n = std::max(n, std::fabs(default_f64_));
  return n;
}

std::vector<std::tuple<int, int, double>> ScoreTable::sorted_entries_f64() const {
  std::set<long> keys;
  for (const auto& [k, v] : entries_) keys.insert(k);
  for (const auto& [k, v] : entries_f64_) keys.insert(k);
  std::vector<std::tuple<int, int, double>> out;
  out.reserve(keys.size());
  for (long k : keys) {
    int ge = static_cast<int>(k / h_edges_), he = static_cast<int>(k % h_edges_);
    out.emplace_back(ge, he, at_f64(ge, he));
  }
  return out;
}

std::vector<std::tuple<int, int, Rational>> ScoreTable::sorted_entries() const {
  std::vector<std::tuple<int, int, Rational>> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_)
    out.emplace_back(static_cast<int>(k / h_edges_), static_cast<int>(k % h_edges_), v);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(std::get<0>(a), std::get<1>(a)) < std::pair(std::get<0>(b), std::get<1>(b));
  });
  return out;
}

GameInstance::GameInstance(Graph g, Graph h, ScoreTable scores,
                           std::optional<StartSpec> start, NumericMode mode)
    : g_(std::move(g)), h_(std::move(h)), scores_(std::move(scores)),
      start_(std::move(start)), mode_(mode) {}

const Rational& GameInstance::score(int ge, int he) const {
  require_exact("score lookup");
  return scores_.at(ge, he);
}

void GameInstance::require_exact(const std::string& op_name) const {
  if (mode_ != NumericMode::exact)
    throw DomainError(op_name + " needs exact-rational scores, instance is float64");
}

ResolvedStart GameInstance::resolve_start(const std::optional<StartSpec>& override_spec) const {
  const std::optional<StartSpec>& spec = override_spec.has_value() ? override_spec : start_;
  if (!spec.has_value())
    throw DomainError("no start position: give one in the instance or via flags");
  ResolvedStart r;
  if (spec->kind == StartSpec::Kind::edges) {
    r.ge = g_.edge_index(spec->g_ref);
    r.he = h_.edge_index(spec->h_ref);
    if (r.ge < 0) throw DomainError("start edge '" + spec->g_ref + "' not in Alice's graph");
    if (r.he < 0) throw DomainError("start edge '" + spec->h_ref + "' not in Bob's graph");
    r.gv = g_.edge(r.ge).dst;
    r.hv = h_.edge(r.he).dst;
  } else {
    r.gv = g_.vertex_index(spec->g_ref);
    r.hv = h_.vertex_index(spec->h_ref);
    if (r.gv < 0) throw DomainError("start vertex '" + spec->g_ref + "' not in Alice's graph");
    if (r.hv < 0) throw DomainError("start vertex '" + spec->h_ref + "' not in Bob's graph");
  }
  return r;
}

Rational score_value(const GameInstance& inst, int ge, int he) {
  if (inst.mode() == NumericMode::float64) return Rational(mpq_class(inst.score_f64(ge, he)));
  return inst.score(ge, he);
}

}  // namespace mpg
