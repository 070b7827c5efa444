#include "mpg/asymptotic.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "mpg/errors.hpp"
#include "mpg/finite.hpp"
#include "mpg/mmc.hpp"

namespace mpg {

long BlockSchedule::a(int k) const {
  return static_cast<long>(p) * k * (k - 1) / 2 + static_cast<long>(k - 1) * p * D;
}

long BlockSchedule::b(int k) const { return a(k) + static_cast<long>(p) * k; }

BlockSchedule make_schedule(int p, int D) {
  BlockSchedule s;
  s.p = p;
  s.D = D;
  return s;
}

BlockSchedule block_schedule(const GameInstance&, const ProductComponent& comp) {
  int d = comp.stream_padding > 0 ? comp.stream_padding : comp.padding;
  return make_schedule(comp.p, d);
}

namespace {

Rational score_rat(const GameInstance& inst, int ge, int he) {
  return score_value(inst, ge, he);
}

Rational norm_rat(const GameInstance& inst) {
  if (inst.mode() == NumericMode::float64) return Rational(mpq_class(inst.score_norm_f64()));
  return inst.score_norm();
}

std::pair<Rational, Rational> score_extremes(const GameInstance& inst) {
  Rational lo = score_rat(inst, 0, 0), hi = lo;
  for (int ge = 0; ge < inst.g().edge_count(); ++ge)
    for (int he = 0; he < inst.h().edge_count(); ++he) {
      Rational s = score_rat(inst, ge, he);
      if (s < lo) lo = s;
      if (s > hi) hi = s;
    }
  return {lo, hi};
}

bool single_choice(const Graph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.out_edges(v).size() != 1) return false;
  return true;
}

// vertex pairs reachable from (gv, hv) when both tokens move every step
std::vector<int> reachable_pairs(const Graph& g, const Graph& h, int gv, int hv) {
  int hV = h.vertex_count();
  std::vector<char> seen(static_cast<size_t>(g.vertex_count()) * hV, 0);
  std::deque<int> queue{gv * hV + hv};
  seen[gv * hV + hv] = 1;
  std::vector<int> order;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    order.push_back(cur);
    int v = cur / hV, u = cur % hV;
    for (int ge : g.out_edges(v))
      for (int he : h.out_edges(u)) {
        int nxt = g.edge(ge).dst * hV + h.edge(he).dst;
        if (!seen[nxt]) {
          seen[nxt] = 1;
          queue.push_back(nxt);
        }
      }
  }
  return order;
}

// ---- alternating value iteration -------------------------------------------

struct AltIterOut {
  Rational avg;   // v_K / K at the start pair
  long m = 0;     // reachable pair count
  long iters = 0; // K actually run
};

template <class T, class ScoreFn>
T alt_sweep(const Graph& g, const Graph& h, const std::vector<int>& pairs,
            const std::vector<int>& index_of, long k_rounds, ScoreFn&& sc) {
  int hV = h.vertex_count();
  size_t m = pairs.size();
  std::vector<T> val(m, T{}), nxt(m, T{});
  for (long it = 0; it < k_rounds; ++it) {
    for (size_t i = 0; i < m; ++i) {
      int v = pairs[i] / hV, u = pairs[i] % hV;
      bool first_e = true;
      T best{};
      for (int ge : g.out_edges(v)) {
        bool first_f = true;
        T worst{};
        for (int he : h.out_edges(u)) {
          T cand = sc(ge, he) + val[index_of[g.edge(ge).dst * hV + h.edge(he).dst]];
          if (first_f || cand < worst) {
            worst = std::move(cand);
            first_f = false;
          }
        }
        if (first_e || worst > best) {
          best = std::move(worst);
          first_e = false;
        }
      }
      nxt[i] = std::move(best);
    }
    std::swap(val, nxt);
  }
  return val[0];  // pairs[0] is the start pair
}

// lcm of score denominators, or 0 when it overflows the int64 budget
long score_denominator_lcm(const GameInstance& inst) {
  mpz_class l = 1;
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), inst.scores().default_value().den().get_mpz_t());
  for (const auto& [ge, he, v] : inst.scores().sorted_entries())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.den().get_mpz_t());
  if (!l.fits_slong_p() || l.get_si() > 1'000'000) return 0;
  return l.get_si();
}

AltIterOut alt_iterate(const GameInstance& inst, const ResolvedStart& rs, long k_rounds) {
  const Graph& g = inst.g();
  const Graph& h = inst.h();
  int hV = h.vertex_count();
  std::vector<int> pairs = reachable_pairs(g, h, rs.gv, rs.hv);
  std::vector<int> index_of(static_cast<size_t>(g.vertex_count()) * hV, -1);
  for (size_t i = 0; i < pairs.size(); ++i) index_of[pairs[i]] = static_cast<int>(i);

  AltIterOut out;
  out.m = static_cast<long>(pairs.size());

  if (inst.mode() == NumericMode::float64) {
    out.iters = k_rounds;
    double v = alt_sweep<double>(g, h, pairs, index_of, k_rounds,
                                 [&](int ge, int he) { return inst.score_f64(ge, he); });
    out.avg = Rational(mpq_class(v / static_cast<double>(k_rounds)));
    return out;
  }

  long lcm = score_denominator_lcm(inst);
  bool int_ok = false;
  if (lcm > 0) {
    // scaled values stay below k * lcm * (|P| + 1); keep that far from overflow
    mpz_class budget = mpz_class(k_rounds) * lcm * (ceil_z(norm_rat(inst)) + 1);
    int_ok = budget.fits_slong_p() && budget.get_si() < 4'000'000'000'000'000'000L;
  }
  if (int_ok) {
    std::vector<long> flat(static_cast<size_t>(g.edge_count()) * h.edge_count());
    for (int ge = 0; ge < g.edge_count(); ++ge)
      for (int he = 0; he < h.edge_count(); ++he) {
        Rational scaled = inst.score(ge, he) * Rational(lcm);
        flat[static_cast<size_t>(ge) * h.edge_count() + he] = scaled.num().get_si();
      }
    out.iters = k_rounds;
    long v = alt_sweep<long>(g, h, pairs, index_of, k_rounds, [&](int ge, int he) {
      return flat[static_cast<size_t>(ge) * h.edge_count() + he];
    });
    out.avg = Rational(v, 1) / Rational(k_rounds * lcm);
    return out;
  }

  out.iters = std::min(k_rounds, 1500L);
  Rational v = alt_sweep<Rational>(g, h, pairs, index_of, out.iters,
                                   [&](int ge, int he) { return inst.score(ge, he); });
  out.avg = v / Rational(out.iters);
  return out;
}

long auto_alt_iterations(const GameInstance& inst, long m) {
  // enough rounds that the +-2m|P|/K envelope separates rationals with
  // denominator <= m * lcm
  long lcm = inst.mode() == NumericMode::exact ? score_denominator_lcm(inst) : 1;
  if (lcm <= 0) lcm = 1;
  mpz_class normc = ceil_z(norm_rat(inst));
  if (normc < 1) normc = 1;
  mpz_class k = 8 * mpz_class(m) * m * m * lcm * lcm * normc;
  if (!k.fits_slong_p() || k.get_si() > 200'000) return 200'000;
  return std::max(k.get_si(), 64L);
}

ValueBounds alt_infinite_impl(const GameInstance& inst, const ResolvedStart& rs,
                              long iterations) {
  Rational norm = norm_rat(inst);
  std::vector<int> probe = reachable_pairs(inst.g(), inst.h(), rs.gv, rs.hv);
  long m = static_cast<long>(probe.size());
  long k_rounds = iterations > 0 ? iterations : auto_alt_iterations(inst, m);

  AltIterOut it = alt_iterate(inst, rs, k_rounds);
  Rational half = Rational(2 * it.m) * norm / Rational(it.iters);

  ValueBounds out;
  out.lower = it.avg - half;
  out.upper = it.avg + half;
  out.iterations = it.iters;
  out.lower_certificate = out.upper_certificate = "value iteration";
  out.constant_C = Rational(0);

  if (inst.mode() == NumericMode::exact) {
    long lcm = score_denominator_lcm(inst);
    if (lcm > 0) {
      mpz_class denom_cap = mpz_class(it.m) * lcm;
      // candidate scan cost ~ cap + width * cap^2 / 2
      double width = (out.upper - out.lower).to_double();
      double cost = denom_cap.get_d() + width * denom_cap.get_d() * denom_cap.get_d() / 2.0;
      if (denom_cap.fits_slong_p() && denom_cap.get_si() <= 1'000'000 && cost < 2e6) {
        std::set<Rational> candidates;
        bool overflow = false;
        for (long d = 1; d <= denom_cap.get_si() && !overflow; ++d) {
          mpz_class klo = ceil_z(out.lower * Rational(d));
          mpz_class khi = floor_z(out.upper * Rational(d));
          for (mpz_class k = klo; k <= khi; ++k) {
            candidates.insert(Rational(mpq_class(k, mpz_class(d))));
            if (candidates.size() > 1) {
              overflow = true;
              break;
            }
          }
        }
        if (!overflow && candidates.size() == 1) {
          out.exact = *candidates.begin();
          out.lower = out.upper = *out.exact;
          out.lower_certificate = out.upper_certificate = "value iteration, isolated rational";
        }
      }
    }
  }
  return out;
}

// ---- audit of the almost-subadditivity constant -----------------------------

struct AuditOut {
  Rational c;
  Rational analytic;
  int escalations = 0;
};

AuditOut audit_constant(const GameInstance& inst, const ProductComponent& comp,
                        const std::vector<Rational>& r) {
  Rational norm = norm_rat(inst);
  AuditOut out;
  out.analytic = Rational(3L * comp.p * comp.padding) * norm;
  out.c = out.analytic;

  int n_max = static_cast<int>(r.size());
  for (int n = 1; n <= n_max; ++n)
    for (int m = n; n + m <= n_max; ++m) {
      Rational excess = r[n + m - 1] - r[n - 1] - r[m - 1];
      if (excess > out.c) {
        out.c = excess;
        ++out.escalations;
      }
    }

  // same-component spread: all member-pair starts when few, else a spread-out
  // sample; horizons to 12 match the documented guarantee
  std::vector<std::pair<int, int>> starts;
  size_t total = comp.members.size();
  if (total <= 40) {
    starts = comp.members;
  } else {
    for (int i = 0; i < 8; ++i)
      starts.push_back(comp.members[i * (total - 1) / 7]);
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  }

  FiniteOptions fo;
  fo.want_witness = false;
  fo.partial_on_cap = true;
  std::vector<std::vector<Rational>> series;
  for (auto [ge, he] : starts) {
    StartSpec spec;
    spec.kind = StartSpec::Kind::edges;
    spec.g_ref = inst.g().edge(ge).id;
    spec.h_ref = inst.h().edge(he).id;
    series.push_back(value_nonalt_finite(inst, 12, spec, fo).round_values);
  }
  for (size_t x = 0; x < series.size(); ++x)
    for (size_t y = x + 1; y < series.size(); ++y) {
      size_t upto = std::min(series[x].size(), series[y].size());
      for (size_t n = 0; n < upto; ++n) {
        Rational diff = abs(series[x][n] - series[y][n]);
        if (diff > out.c) {
          out.c = diff;
          ++out.escalations;
        }
      }
    }
  return out;
}

// ---- locked-cycle lower certificate -----------------------------------------

// closed walks through their minimal vertex, at most max_len edges
void closed_walks(const Graph& g, const std::vector<char>& vertex_ok, int max_len, size_t cap,
                  std::vector<std::vector<int>>& out) {
  std::vector<int> path;
  for (int anchor = 0; anchor < g.vertex_count(); ++anchor) {
    if (!vertex_ok[anchor]) continue;
    auto dfs = [&](auto&& self, int v) -> void {
      if (out.size() >= cap) return;
      for (int e : g.out_edges(v)) {
        int t = g.edge(e).dst;
        if (t < anchor || !vertex_ok[t]) continue;
        path.push_back(e);
        if (t == anchor) out.push_back(path);
        if (static_cast<int>(path.size()) < max_len && out.size() < cap) self(self, t);
        path.pop_back();
      }
    };
    dfs(dfs, anchor);
  }
}

// best over short committed cycles of Bob's cheapest long-run reply
std::optional<Rational> locked_cycle_certificate(const GameInstance& inst,
                                                 const ResolvedStart& rs) {
  const Graph& g = inst.g();
  const Graph& h = inst.h();
  std::vector<char> reach(g.vertex_count(), 0);
  {
    std::deque<int> queue{rs.gv};
    reach[rs.gv] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int e : g.out_edges(v))
        if (!reach[g.edge(e).dst]) {
          reach[g.edge(e).dst] = 1;
          queue.push_back(g.edge(e).dst);
        }
    }
  }
  std::vector<std::vector<int>> cycles;
  closed_walks(g, reach, 3, 400, cycles);

  std::optional<Rational> best;
  int hV = h.vertex_count();
  for (const auto& cyc : cycles) {
    int q = static_cast<int>(cyc.size());
    std::vector<WeightedEdge> lock;
    lock.reserve(static_cast<size_t>(q) * h.edge_count());
    for (int i = 0; i < q; ++i)
      for (int he = 0; he < h.edge_count(); ++he)
        lock.push_back(WeightedEdge{i * hV + h.edge(he).src,
                                    ((i + 1) % q) * hV + h.edge(he).dst,
                                    score_rat(inst, cyc[i], he), he});
    auto mc = min_mean_cycle(q * hV, lock);
    if (mc && (!best || mc->mean > *best)) best = mc->mean;
  }
  return best;
}

void irreducibility_gate(const GameInstance& inst) {
  if (!irreducible(inst.g()) || !irreducible(inst.h()))
    throw DomainError(
        "infinite-horizon committed-walk analysis requires both graphs to be "
        "strongly connected (irreducible)");
}

}  // namespace

SubadditiveConstant subadditive_constant(const GameInstance& inst,
                                         const ProductComponent& comp) {
  FiniteOptions fo;
  fo.want_witness = false;
  fo.partial_on_cap = true;
  std::vector<Rational> r = value_nonalt_finite(inst, 12, std::nullopt, fo).round_values;
  AuditOut audit = audit_constant(inst, comp, r);
  return SubadditiveConstant{audit.c, audit.analytic, audit.escalations};
}

ValueBounds value_nonalt_bounds(const GameInstance& inst, int budget,
                                const std::optional<StartSpec>& start, bool free_bob_start) {
  irreducibility_gate(inst);
  ResolvedStart rs = inst.resolve_start(start);
  ProductComponent comp = product_component(inst, rs);
  Rational norm = norm_rat(inst);
  auto [score_floor, score_ceiling] = score_extremes(inst);

  ValueBounds out;
  out.constant_C = Rational(3L * comp.p * comp.padding) * norm;

  // one forced side makes the game a pure cycle-mean problem
  if (!free_bob_start && (single_choice(inst.h()) || single_choice(inst.g()))) {
    ProductGraph prod = build_product(inst);
    std::vector<Rational> weights;
    weights.reserve(static_cast<size_t>(prod.g_edges) * prod.h_edges);
    for (int ge = 0; ge < prod.g_edges; ++ge)
      for (int he = 0; he < prod.h_edges; ++he) weights.push_back(score_rat(inst, ge, he));
    std::vector<int> reach = reachable_pairs(inst.g(), inst.h(), rs.gv, rs.hv);
    auto mc = single_choice(inst.h()) ? max_mean_cycle(prod.graph, weights, &reach)
                                      : min_mean_cycle(prod.graph, weights, &reach);
    if (!mc) throw InternalError("sink-free product lost all its cycles");
    out.lower = out.upper = mc->mean;
    out.exact = mc->mean;
    out.lower_certificate = out.upper_certificate = "forced-walk cycle";
    return out;
  }

  if (budget < comp.p) {
    out.lower = -norm;
    out.upper = norm;
    out.lower_certificate = out.upper_certificate = "insufficient budget";
    return out;
  }

  FiniteOptions fo;
  fo.want_witness = false;
  fo.partial_on_cap = true;
  fo.free_bob_start = free_bob_start;
  std::vector<Rational> r = value_nonalt_finite(inst, budget, start, fo).round_values;
  int horizon = static_cast<int>(r.size());
  out.horizon_used = horizon;
  if (horizon < comp.p) {
    out.lower = -norm;
    out.upper = norm;
    out.lower_certificate = out.upper_certificate = "insufficient budget";
    return out;
  }

  AuditOut audit = audit_constant(inst, comp, r);
  out.constant_C = audit.c;
  out.escalations = audit.escalations;

  // upper candidates
  auto fekete = [&](const Rational& c) {
    Rational best = (r[0] + c) / Rational(1);
    for (int n = 2; n <= horizon; ++n) {
      Rational cand = (r[n - 1] + c) / Rational(n);
      if (cand < best) best = cand;
    }
    return best;
  };
  out.upper = fekete(audit.c);
  out.upper_certificate = "subadditive envelope";
  {
    std::vector<int> bob_starts{rs.hv};
    if (free_bob_start && inst.h().vertex_count() <= 12) {
      bob_starts.clear();
      for (int u = 0; u < inst.h().vertex_count(); ++u) bob_starts.push_back(u);
    }
    std::optional<Rational> alt_up;
    for (int u : bob_starts) {
      ResolvedStart pin = rs;
      pin.hv = u;
      pin.he = -1;
      Rational cand;
      long m = static_cast<long>(reachable_pairs(inst.g(), inst.h(), pin.gv, pin.hv).size());
      if (auto_alt_iterations(inst, m) <= 60'000) {
        cand = alt_infinite_impl(inst, pin, 0).upper;
      } else {
        AltIterOut it = alt_iterate(inst, pin, 2'000);
        cand = it.avg + Rational(2 * it.m) * norm / Rational(it.iters);
      }
      if (!alt_up || cand < *alt_up) alt_up = cand;
    }
    if (alt_up && *alt_up < out.upper) {
      out.upper = *alt_up;
      out.upper_certificate = "alternating relaxation";
    }
  }
  if (score_ceiling < out.upper) {
    out.upper = score_ceiling;
    out.upper_certificate = "score ceiling";
  }

  // lower candidates
  out.lower = score_floor;
  out.lower_certificate = "score floor";
  if (!free_bob_start) {
    long p = comp.p, d = comp.padding;
    Rational overhead_unit = Rational(p * d) * norm;
    Rational running_sum(0);
    for (int k0 = 1; static_cast<long>(k0) * p <= horizon; ++k0) {
      running_sum += r[static_cast<size_t>(k0) * p - 1];
      Rational numer =
          running_sum - Rational(k0 - 1) * overhead_unit - Rational(2L * k0) * overhead_unit;
      Rational cand = numer / Rational(make_schedule(comp.p, comp.padding).b(k0));
      if (cand > out.lower) {
        out.lower = cand;
        out.lower_certificate = "block construction";
      }
    }
    for (int n = 1; static_cast<long>(n) * p <= horizon; ++n) {
      Rational cand = (r[static_cast<size_t>(n) * p - 1] - Rational(3) * overhead_unit) /
                      Rational(n * p + p * d);
      if (cand > out.lower) {
        out.lower = cand;
        out.lower_certificate = "cycle repetition";
      }
    }
  }
  if (auto cert = locked_cycle_certificate(inst, rs); cert && *cert > out.lower) {
    out.lower = *cert;
    out.lower_certificate = "locked cycle";
  }

  // the envelope is only as good as the audited C; if an exact certificate
  // beats it, C was too small, so grow C until the envelope clears
  if (out.lower > out.upper) {
    Rational need = audit.c;
    for (int n = 1; n <= horizon; ++n) {
      Rational cand = out.lower * Rational(n) - r[n - 1];
      if (cand > need) need = cand;
    }
    if (need > audit.c) {
      out.constant_C = need;
      ++out.escalations;
      if (out.upper_certificate == "subadditive envelope") {
        // only the envelope depends on C; the other caps are unconditional
        out.upper = std::max(fekete(need), out.lower);
        out.upper_certificate = "subadditive envelope, lifted";
      }
    }
    if (out.lower > out.upper) {
      // float-mode residue: clip, never report a crossed interval
      out.lower = out.upper;
      out.lower_certificate += ", clipped";
    }
  }
  return out;
}

ValueBounds value_alt_infinite(const GameInstance& inst, long iterations,
                               const std::optional<StartSpec>& start) {
  ResolvedStart rs = inst.resolve_start(start);
  return alt_infinite_impl(inst, rs, iterations);
}

}  // namespace mpg
