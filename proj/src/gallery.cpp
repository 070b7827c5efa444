#include "mpg/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mpg/asymptotic.hpp"
#include "mpg/errors.hpp"
#include "mpg/finite.hpp"
#include "mpg/streams.hpp"

namespace mpg {

namespace {

int edge_of(const Graph& g, const std::string& id) {
  int i = g.edge_index(id);
  if (i < 0) throw InternalError("gallery edge '" + id + "' missing");
  return i;
}

// ---- the four instances --------------------------------------------------

GameInstance make_fig2() {
  Graph g({"P", "M"}, {Edge{"e+", 0, 0, -1}, Edge{"e-", 1, 1, -1}, Edge{"e0", 0, 1, -1}});
  Graph h({"X", "Y", "Z"}, {Edge{"f+", 0, 0, -1}, Edge{"f-", 2, 2, -1}, Edge{"f1", 1, 0, -1},
                            Edge{"f2", 1, 2, -1}});
  ScoreTable s(Rational(0), g.edge_count(), h.edge_count());
  s.set(edge_of(g, "e+"), edge_of(h, "f+"), Rational(1));
  s.set(edge_of(g, "e-"), edge_of(h, "f-"), Rational(1));
  s.set(edge_of(g, "e+"), edge_of(h, "f-"), Rational(-1));
  s.set(edge_of(g, "e-"), edge_of(h, "f+"), Rational(-1));
  StartSpec start;
  start.g_ref = "P";
  start.h_ref = "Y";
  return GameInstance(std::move(g), std::move(h), std::move(s), start);
}

GameInstance make_chase() {
  std::vector<std::string> names{"W", "X", "Y", "Z"};
  std::vector<Edge> ge, he;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::string id = names[a] + names[b];
      ge.push_back(Edge{id, a, b, -1});
      bool dropped = (id == "WY" || id == "YW" || id == "XZ" || id == "ZX");
      if (!dropped) he.push_back(Edge{id, a, b, -1});
    }
  Graph g(names, std::move(ge));
  Graph h(names, std::move(he));
  ScoreTable s(Rational(1), g.edge_count(), h.edge_count());
  for (int a = 0; a < g.edge_count(); ++a)
    for (int b = 0; b < h.edge_count(); ++b)
      if (g.edge(a).dst == h.edge(b).dst) s.set(a, b, Rational(-1));
  StartSpec start;
  start.kind = StartSpec::Kind::edges;
  start.g_ref = "WW";
  start.h_ref = "WW";
  return GameInstance(std::move(g), std::move(h), std::move(s), start);
}

Graph branch_follower_graph() {
  return Graph({"X", "Y", "Z"}, {Edge{"f-", 0, 0, -1}, Edge{"f+", 2, 2, -1},
                                 Edge{"fa", 1, 0, -1}, Edge{"fb", 1, 2, -1}});
}

GameInstance make_irrational() {
  Graph g({"O"}, {Edge{"e+", 0, 0, -1}, Edge{"e-", 0, 0, -1}});
  Graph h = branch_follower_graph();
  ScoreTable s(Rational(0), g.edge_count(), h.edge_count());
  s.set_default_f64(0.0);
  double root2 = std::sqrt(2.0);
  s.set_f64(edge_of(g, "e+"), edge_of(h, "f+"), 1.0);
  s.set_f64(edge_of(g, "e+"), edge_of(h, "f-"), -1.0);
  s.set_f64(edge_of(g, "e-"), edge_of(h, "f-"), root2);
  s.set_f64(edge_of(g, "e-"), edge_of(h, "f+"), -root2);
  StartSpec start;
  start.g_ref = "O";
  start.h_ref = "Y";
  return GameInstance(std::move(g), std::move(h), std::move(s), start,
                      NumericMode::float64);
}

GameInstance make_integer() {
  Graph g({"M", "P"}, {Edge{"e-", 0, 0, -1}, Edge{"e+", 1, 1, -1}, Edge{"ea", 0, 1, -1},
                       Edge{"eb", 1, 0, -1}});
  Graph h = branch_follower_graph();
  ScoreTable s(Rational(-1), g.edge_count(), h.edge_count());
  s.set(edge_of(g, "e+"), edge_of(h, "f+"), Rational(1));
  s.set(edge_of(g, "e-"), edge_of(h, "f-"), Rational(1));
  StartSpec start;
  start.g_ref = "M";
  start.h_ref = "Y";
  return GameInstance(std::move(g), std::move(h), std::move(s), start);
}

// ---- periodic opponents and counting ---------------------------------------

struct PeriodicStream {
  std::vector<int> pre, cyc;  // cyc nonempty
};

// every walk of <= max_pre edges from `start`, then every closed walk of
// 1..max_cyc edges at its endpoint
std::vector<PeriodicStream> periodic_family(const Graph& g, int start, int max_pre,
                                            int max_cyc) {
  std::vector<PeriodicStream> fam;
  std::vector<int> pre;
  auto cycles_at = [&](int anchor) {
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    auto dfs = [&](auto&& self, int v) -> void {
      for (int e : g.out_edges(v)) {
        path.push_back(e);
        if (g.edge(e).dst == anchor) out.push_back(path);
        if (static_cast<int>(path.size()) < max_cyc) self(self, g.edge(e).dst);
        path.pop_back();
      }
    };
    dfs(dfs, anchor);
    return out;
  };
  auto emit = [&](int end_vertex) {
    for (auto& c : cycles_at(end_vertex)) fam.push_back(PeriodicStream{pre, c});
  };
  auto grow = [&](auto&& self, int v, int depth) -> void {
    emit(v);
    if (depth == max_pre) return;
    for (int e : g.out_edges(v)) {
      pre.push_back(e);
      self(self, g.edge(e).dst, depth + 1);
      pre.pop_back();
    }
  };
  grow(grow, start, 0);
  return fam;
}

struct ClassCounts {
  long plus = 0, minus = 0, zero = 0;
};

ClassCounts count_classes(const std::vector<int>& edges, const std::vector<EdgeClass>& cls,
                          long upto) {
  ClassCounts c;
  for (long i = 0; i < upto && i < static_cast<long>(edges.size()); ++i) {
    switch (cls[edges[i]]) {
      case EdgeClass::plus: ++c.plus; break;
      case EdgeClass::minus: ++c.minus; break;
      case EdgeClass::zero: ++c.zero; break;
    }
  }
  return c;
}

// counts over the first n entries of pre followed by cyc repeated forever
ClassCounts stream_counts(const PeriodicStream& s, const std::vector<EdgeClass>& cls, long n) {
  ClassCounts total = count_classes(s.pre, cls, n);
  long rest = n - static_cast<long>(s.pre.size());
  if (rest <= 0) return total;
  long len = static_cast<long>(s.cyc.size());
  ClassCounts full = count_classes(s.cyc, cls, len);
  long reps = rest / len;
  total.plus += reps * full.plus;
  total.minus += reps * full.minus;
  total.zero += reps * full.zero;
  ClassCounts part = count_classes(s.cyc, cls, rest % len);
  total.plus += part.plus;
  total.minus += part.minus;
  total.zero += part.zero;
  return total;
}

// walks from `v` in H per length, for the two-branch structure checks
std::vector<long> walk_counts_from(const Graph& h, int v, int max_len) {
  std::vector<long> per_len(max_len + 1, 0);
  std::vector<long> cur(h.vertex_count(), 0), nxt(h.vertex_count(), 0);
  cur[v] = 1;
  per_len[0] = 1;
  for (int l = 1; l <= max_len; ++l) {
    std::fill(nxt.begin(), nxt.end(), 0);
    long tot = 0;
    for (int u = 0; u < h.vertex_count(); ++u)
      if (cur[u])
        for (int e : h.out_edges(u)) nxt[h.edge(e).dst] += cur[u];
    for (long c : nxt) tot += c;
    per_len[l] = tot;
    std::swap(cur, nxt);
  }
  return per_len;
}

std::optional<std::string> pass() { return std::nullopt; }
std::optional<std::string> fail(std::string why) { return std::optional<std::string>(std::move(why)); }

}  // namespace

std::vector<std::string> gallery_names() { return {"fig2", "chase", "irrational", "integer"}; }

std::vector<EdgeClass> plus_minus_classes(const GameInstance& inst) {
  std::vector<EdgeClass> cls(inst.g().edge_count(), EdgeClass::zero);
  for (int e = 0; e < inst.g().edge_count(); ++e) {
    if (inst.g().edge(e).id == "e+") cls[e] = EdgeClass::plus;
    if (inst.g().edge(e).id == "e-") cls[e] = EdgeClass::minus;
  }
  return cls;
}

WalkStatistics walk_statistics(const std::vector<int>& walk,
                               const std::vector<EdgeClass>& classes) {
  WalkStatistics st;
  st.n = static_cast<long>(walk.size());
  if (st.n == 0) throw ValidationError("walk statistics need a nonempty walk");
  ClassCounts c;
  for (int e : walk) {
    if (e < 0 || e >= static_cast<int>(classes.size()))
      throw ValidationError("walk statistics met an unclassified edge index " +
                            std::to_string(e));
    switch (classes[e]) {
      case EdgeClass::plus: ++c.plus; break;
      case EdgeClass::minus: ++c.minus; break;
      case EdgeClass::zero: ++c.zero; break;
    }
  }
  st.p_plus = Rational(c.plus) / Rational(st.n);
  st.p_minus = Rational(c.minus) / Rational(st.n);
  st.p_zero = Rational(c.zero) / Rational(st.n);
  return st;
}

std::vector<int> nonperiodic_walk(const std::string& name, long length) {
  if (length < 1) throw ValidationError("walk length must be at least 1");
  if (name == "integer") {
    GameInstance inst = make_integer();
    int em = edge_of(inst.g(), "e-"), ep = edge_of(inst.g(), "e+");
    int ea = edge_of(inst.g(), "ea"), eb = edge_of(inst.g(), "eb");
    std::vector<int> walk;
    walk.reserve(length);
    for (long k = 1; static_cast<long>(walk.size()) < length; ++k) {
      for (long i = 0; i < k && static_cast<long>(walk.size()) < length; ++i)
        walk.push_back(em);
      if (static_cast<long>(walk.size()) < length) walk.push_back(ea);
      for (long i = 0; i < k && static_cast<long>(walk.size()) < length; ++i)
        walk.push_back(ep);
      if (static_cast<long>(walk.size()) < length) walk.push_back(eb);
    }
    return walk;
  }
  if (name == "irrational") {
    GameInstance inst = make_irrational();
    int ep = edge_of(inst.g(), "e+"), em = edge_of(inst.g(), "e-");
    // e_j = e+ exactly when floor(j*(2-sqrt(2))) increments; integer sqrt
    // keeps the slope exact at any length
    std::vector<int> walk;
    walk.reserve(length);
    auto a_of = [](long j) {
      mpz_class s;
      mpz_class arg = 2 * mpz_class(j) * j;
      mpz_sqrt(s.get_mpz_t(), arg.get_mpz_t());
      return 2 * j - s.get_si() - 1;
    };
    long prev = 0;
    for (long j = 1; j <= length; ++j) {
      long cur = a_of(j);
      walk.push_back(cur > prev ? ep : em);
      prev = cur;
    }
    return walk;
  }
  throw DomainError("no non-periodic walk for gallery entry '" + name + "'");
}

GalleryEntry build_example(const std::string& name) {
  std::shared_ptr<const GameInstance> si;
  if (name == "fig2") si = std::make_shared<GameInstance>(make_fig2());
  else if (name == "chase") si = std::make_shared<GameInstance>(make_chase());
  else if (name == "irrational") si = std::make_shared<GameInstance>(make_irrational());
  else if (name == "integer") si = std::make_shared<GameInstance>(make_integer());
  else throw DomainError("unknown gallery entry '" + name + "'");

  StartSpec start;
  std::vector<GalleryCheck> cl;

  if (name == "fig2") {
    start.g_ref = "P";
    start.h_ref = "Y";
    cl.push_back({"finite values stay within one of zero through n=24", [si] {
      auto r = value_nonalt_finite(*si, 24).round_values;
      for (size_t n = 0; n < r.size(); ++n) {
        if (r[n] != Rational(0) && r[n] != Rational(1) && r[n] != Rational(-1))
          return fail("V(" + std::to_string(n + 1) + ") = " + r[n].str());
        if (abs(r[n]) > Rational(2))
          return fail("normalized value exceeds 2/n at n = " + std::to_string(n + 1));
      }
      return pass();
    }});
    cl.push_back({"switch-time sweep pins the infinite value at minus one", [si] {
      const Graph& g = si->g();
      const Graph& h = si->h();
      int ep = edge_of(g, "e+"), em = edge_of(g, "e-");
      int fp = edge_of(h, "f+"), fm = edge_of(h, "f-");
      Rational best(-1000);
      for (int t = 1; t <= 51; ++t) {
        // loops dominating beyond the switch: e- after a finite switch time,
        // e+ when Alice never leaves (t = 51 stands for infinity)
        int loop = t <= 50 ? em : ep;
        Rational lim_x = si->score(loop, fp);
        Rational lim_z = si->score(loop, fm);
        Rational worst = std::min(lim_x, lim_z);
        if (worst > best) best = worst;
      }
      if (best != Rational(-1))
        return fail("best switch-time value is " + best.str() + ", want -1");
      return pass();
    }});
    cl.push_back({"bob has exactly two replies at every horizon", [si] {
      int y = si->h().vertex_index("Y");
      auto counts = walk_counts_from(si->h(), y, 24);
      for (int l = 1; l <= 24; ++l)
        if (counts[l] != 2)
          return fail("walk count at length " + std::to_string(l) + " is " +
                      std::to_string(counts[l]));
      return pass();
    }});
    cl.push_back({"both graphs are reducible", [si] {
      if (irreducible(si->g())) return fail("Alice's graph is irreducible");
      if (irreducible(si->h())) return fail("Bob's graph is irreducible");
      return pass();
    }});
  }

  if (name == "chase") {
    start.kind = StartSpec::Kind::edges;
    start.g_ref = "WW";
    start.h_ref = "WW";
    cl.push_back({"alternating value grows one per round through n=10", [si] {
      auto v = value_alt_finite(*si, 10);
      for (size_t n = 0; n < v.size(); ++n)
        if (v[n] != Rational(static_cast<long>(n) + 1))
          return fail("alt value at n = " + std::to_string(n + 1) + " is " + v[n].str());
      return pass();
    }});
    cl.push_back({"committed value capped at two through n=10", [si] {
      auto r = value_nonalt_finite(*si, 10).round_values;
      for (size_t n = 0; n < r.size(); ++n)
        if (r[n] > Rational(2))
          return fail("committed value at n = " + std::to_string(n + 1) + " is " + r[n].str());
      return pass();
    }});
    cl.push_back({"alternating infinite value is exactly one", [si] {
      auto b = value_alt_infinite(*si);
      if (!b.exact) return fail("no exact value isolated; interval [" + b.lower.str() + ", " +
                                b.upper.str() + "]");
      if (*b.exact != Rational(1)) return fail("exact value is " + b.exact->str());
      return pass();
    }});
    cl.push_back({"scores are plus or minus one", [si] {
      for (int a = 0; a < si->g().edge_count(); ++a)
        for (int b = 0; b < si->h().edge_count(); ++b)
          if (abs(si->score(a, b)) != Rational(1)) return fail("score magnitude off at a pair");
      return pass();
    }});
    cl.push_back({"both graphs are irreducible", [si] {
      if (!irreducible(si->g()) || !irreducible(si->h())) return fail("reducible side found");
      return pass();
    }});
  }

  if (name == "irrational" || name == "integer") {
    start.g_ref = name == "irrational" ? "O" : "M";
    start.h_ref = "Y";
    const bool exact = name == "integer";
    auto cls = plus_minus_classes(*si);
    int start_v = si->g().vertex_index(start.g_ref);

    // branch scores per Alice edge class, first round scored separately
    double alpha = 1.0, beta = 1.0;
    if (!exact) {
      beta = si->score_f64(edge_of(si->g(), "e-"), edge_of(si->h(), "f-"));
      alpha = si->score_f64(edge_of(si->g(), "e+"), edge_of(si->h(), "f+"));
    }

    cl.push_back({"every short periodic stream concedes a margin", [si, cls, start_v, exact,
                                                                    alpha, beta] {
      const long n_steps = 100'000;
      auto fam = periodic_family(si->g(), start_v, 4, 6);
      for (const auto& s : fam) {
        ClassCounts c = stream_counts(s, cls, n_steps);
        // steps 2..N stay on the branch loop; step 1 scores the Y-exit
        ClassCounts first = stream_counts(s, cls, 1);
        long cp = c.plus - first.plus, cm = c.minus - first.minus;
        if (exact) {
          // branch loops pay +1 on a class match, -1 otherwise; the Y-exit
          // edge pays -1 against everything
          long rest = n_steps - 1;
          Rational avg_plus = Rational(-1 + cp - (rest - cp)) / Rational(n_steps);
          Rational avg_minus = Rational(-1 + cm - (rest - cm)) / Rational(n_steps);
          Rational worst = std::min(avg_plus, avg_minus);
          if (worst > Rational(-1, 1000))
            return fail("periodic stream with cycle length " +
                        std::to_string(s.cyc.size()) + " only concedes " + worst.str());
          // the limit identity: min branch mean equals -p0 - |p+ - p-|
          long len = static_cast<long>(s.cyc.size());
          ClassCounts cc = count_classes(s.cyc, cls, len);
          Rational pp = Rational(cc.plus) / Rational(len);
          Rational pm = Rational(cc.minus) / Rational(len);
          Rational pz = Rational(cc.zero) / Rational(len);
          Rational lim = Rational(2) * std::min(pp, pm) - Rational(1);
          if (lim != -pz - abs(pp - pm)) return fail("limit identity broke");
          if (lim > Rational(-1, 6))
            return fail("cycle limit " + lim.str() + " above -1/6");
        } else {
          double avg_plus = (alpha * cp - beta * cm) / n_steps;
          double avg_minus = (beta * cm - alpha * cp) / n_steps;
          double worst = std::min(avg_plus, avg_minus);
          if (worst > -1e-3)
            return fail("periodic stream concedes only " + std::to_string(worst));
        }
      }
      return pass();
    }});

    cl.push_back({"counted averages agree with full simulation", [si, start_v] {
      const long n_steps = 2000;
      auto fam = periodic_family(si->g(), start_v, 2, 3);
      const Graph& h = si->h();
      int fa = edge_of(h, "fa"), fb = edge_of(h, "fb");
      int fm = edge_of(h, "f-"), fp = edge_of(h, "f+");
      size_t step = std::max<size_t>(1, fam.size() / 5);
      for (size_t i = 0; i < fam.size(); i += step) {
        const auto& s = fam[i];
        for (int branch = 0; branch < 2; ++branch) {
          FixedStream alice(s.pre, s.cyc);
          FixedStream bob({branch ? fb : fa}, {branch ? fp : fm});
          auto trace = simulate(*si, alice, bob, n_steps);
          // recompute through raw scores
          Rational direct(0);
          {
            FixedStream again(s.pre, s.cyc);
            FixedStream bagain({branch ? fb : fa}, {branch ? fp : fm});
            for (long t = 0; t < n_steps; ++t)
              direct += score_value(*si, again.next(), bagain.next());
          }
          if (trace.back().cumulative != direct)
            return fail("simulation disagrees with direct scoring");
        }
      }
      return pass();
    }});

    cl.push_back({"the non-periodic walk nearly ties both branches", [si, cls, exact, alpha,
                                                                      beta, name] {
      const long n_steps = 100'000;
      auto walk = nonperiodic_walk(name, n_steps);
      ClassCounts c = count_classes(walk, cls, n_steps);
      ClassCounts first = count_classes(walk, cls, 1);
      long cp = c.plus - first.plus, cm = c.minus - first.minus;
      double worst;
      if (exact) {
        long rest = n_steps - 1;
        double ap = static_cast<double>(-1 + cp - (rest - cp)) / n_steps;
        double am = static_cast<double>(-1 + cm - (rest - cm)) / n_steps;
        worst = std::max(std::abs(ap), std::abs(am));
      } else {
        worst = std::abs(alpha * cp - beta * cm) / n_steps;
      }
      if (worst > 1e-2) return fail("branch average magnitude " + std::to_string(worst));
      return pass();
    }});

    if (exact) {
      cl.push_back({"block walk starts with the displayed prefix", [si] {
        auto w = nonperiodic_walk("integer", 4);
        const Graph& g = si->g();
        std::vector<std::string> ids;
        for (int e : w) ids.push_back(g.edge(e).id);
        std::vector<std::string> want{"e-", "ea", "e+", "eb"};
        if (ids != want)
          return fail("prefix is " + ids[0] + "," + ids[1] + "," + ids[2] + "," + ids[3]);
        return pass();
      }});
      cl.push_back({"block walk statistics at ten thousand and beyond", [si, cls] {
        auto w4 = nonperiodic_walk("integer", 10'000);
        auto st4 = walk_statistics(w4, cls);
        if (st4.p_plus != Rational(4853, 10'000) || st4.p_minus != Rational(4950, 10'000) ||
            st4.p_zero != Rational(197, 10'000))
          return fail("frequencies at 1e4 are " + st4.p_plus.str() + ", " + st4.p_minus.str() +
                      ", " + st4.p_zero.str());
        auto w5 = nonperiodic_walk("integer", 100'000);
        auto st5 = walk_statistics(w5, cls);
        Rational half(1, 2), tol(1, 100);
        if (abs(st5.p_plus - half) > tol || abs(st5.p_minus - half) > tol ||
            st5.p_zero > tol)
          return fail("frequencies at 1e5 drift: " + st5.p_plus.str() + ", " +
                      st5.p_minus.str() + ", " + st5.p_zero.str());
        return pass();
      }});
    } else {
      cl.push_back({"balanced walk matches the irrational split", [si, cls] {
        auto w = nonperiodic_walk("irrational", 100'000);
        auto st = walk_statistics(w, cls);
        double alpha = 1.0;
        double beta = si->score_f64(edge_of(si->g(), "e-"), edge_of(si->h(), "f-"));
        double drift = std::abs(alpha * st.p_plus.to_double() - beta * st.p_minus.to_double());
        if (drift > 1e-3) return fail("alpha*p+ - beta*p- = " + std::to_string(drift));
        if (st.p_zero != Rational(0)) return fail("zero-class edges appeared");
        return pass();
      }});
      cl.push_back({"float mode with unit and root-two magnitudes", [si] {
        if (si->mode() != NumericMode::float64) return fail("not in float mode");
        double beta = si->score_f64(edge_of(si->g(), "e-"), edge_of(si->h(), "f-"));
        if (std::abs(beta - std::sqrt(2.0)) > 1e-9) return fail("beta is not root two");
        return pass();
      }});
    }
  }

  return GalleryEntry{name, *si, std::move(start), std::move(cl)};
}

}  // namespace mpg
