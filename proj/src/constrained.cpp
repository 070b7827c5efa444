#include "mpg/constrained.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "mpg/errors.hpp"
#include "mpg/finite.hpp"

namespace mpg {

namespace {

void check_pattern(const std::string& p) {
  if (p.empty()) throw ValidationError("forbidden pattern must not be empty");
  for (char c : p)
    if (c != '0' && c != '1')
      throw ValidationError("forbidden pattern '" + p + "' contains a non-bit character");
}

// first character = lowest bit
unsigned word_mask(const std::string& w) {
  unsigned m = 0;
  for (size_t j = 0; j < w.size(); ++j)
    if (w[j] == '1') m |= 1u << j;
  return m;
}

std::string mask_word(unsigned m, int n) {
  std::string w(n, '0');
  for (int j = 0; j < n; ++j)
    if (m & (1u << j)) w[j] = '1';
  return w;
}

}  // namespace

ForbiddenSet make_forbidden(std::vector<std::string> patterns, int k_if_empty) {
  ForbiddenSet f;
  if (patterns.empty()) {
    if (k_if_empty < 1) throw ValidationError("pattern length must be at least 1");
    f.k = k_if_empty;
    return f;
  }
  for (const auto& p : patterns) check_pattern(p);
  f.k = static_cast<int>(patterns.front().size());
  for (const auto& p : patterns)
    if (static_cast<int>(p.size()) != f.k)
      throw ValidationError("forbidden patterns must share one length; got '" +
                            patterns.front() + "' and '" + p + "'");
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  f.patterns = std::move(patterns);
  return f;
}

ForbiddenSet parse_forbidden(const std::string& text) {
  std::vector<std::string> patterns;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      patterns.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !patterns.empty()) patterns.push_back(cur);
  return make_forbidden(std::move(patterns));
}

ConstrainedSystem build_constrained_system(const ForbiddenSet& f) {
  int k = f.k;
  if (k > 20) throw ResourceError("pattern length capped at 20");
  int wbits = k - 1;
  int n_windows = 1 << wbits;
  std::vector<char> forbidden(static_cast<size_t>(1) << k, 0);
  for (const auto& p : f.patterns) forbidden[word_mask(p)] = 1;

  struct Win {
    int src, dst;
    unsigned window;
  };
  std::vector<Win> raw;
  for (unsigned w = 0; w < (1u << k); ++w) {
    if (forbidden[w]) continue;
    raw.push_back(Win{static_cast<int>(w & ((1u << wbits) - 1)),
                      static_cast<int>(w >> 1), w});
  }

  // keep only vertices that stay bi-extendable
  std::vector<char> alive(n_windows, 1);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> outd(n_windows, 0), ind(n_windows, 0);
    for (const auto& e : raw)
      if (alive[e.src] && alive[e.dst]) {
        ++outd[e.src];
        ++ind[e.dst];
      }
    for (int v = 0; v < n_windows; ++v)
      if (alive[v] && (outd[v] == 0 || ind[v] == 0)) {
        alive[v] = 0;
        changed = true;
      }
  }
  if (std::count(alive.begin(), alive.end(), 1) == 0)
    throw DomainError("empty constrained system");

  std::vector<int> vertex_of(n_windows, -1);
  std::vector<std::string> names;
  for (int v = 0; v < n_windows; ++v)
    if (alive[v]) {
      vertex_of[v] = static_cast<int>(names.size());
      names.push_back(wbits == 0 ? "-" : mask_word(v, wbits));
    }
  std::vector<Edge> h_edges;
  for (const auto& e : raw)
    if (alive[e.src] && alive[e.dst])
      h_edges.push_back(Edge{mask_word(e.window, k), vertex_of[e.src], vertex_of[e.dst],
                             (e.window >> (k - 1)) & 1 ? 1 : 0});
  Graph h(std::move(names), std::move(h_edges));

  Graph g({"b"}, {Edge{"0", 0, 0, 0}, Edge{"1", 0, 0, 1}});

  ScoreTable scores(Rational(0), g.edge_count(), h.edge_count());
  for (int ge = 0; ge < g.edge_count(); ++ge)
    for (int he = 0; he < h.edge_count(); ++he)
      if (g.edge(ge).label != h.edge(he).label) scores.set(ge, he, Rational(1));

  StartSpec start;
  start.kind = StartSpec::Kind::vertices;
  start.g_ref = "b";
  start.h_ref = h.vertex_name(0);
  GameInstance inst(std::move(g), std::move(h), std::move(scores), start);
  return ConstrainedSystem{f, std::move(inst)};
}

std::vector<std::string> allowed_words(const ForbiddenSet& f, int n) {
  if (n < 0) throw ValidationError("word length must be nonnegative");
  if (n > 26) throw ResourceError("literal enumeration capped at length 26");
  std::vector<char> forbidden(static_cast<size_t>(1) << f.k, 0);
  for (const auto& p : f.patterns) forbidden[word_mask(p)] = 1;
  unsigned kmask = (1u << f.k) - 1;
  std::vector<std::string> out;
  for (unsigned long w = 0; w < (1ul << n); ++w) {
    bool ok = true;
    for (int i = 0; ok && i + f.k <= n; ++i)
      if (forbidden[(w >> i) & kmask]) ok = false;
    if (ok) out.push_back(mask_word(static_cast<unsigned>(w), n));
  }
  std::sort(out.begin(), out.end());  // lexicographic, like spelled_words
  return out;
}

std::vector<std::string> spelled_words(const ConstrainedSystem& sys, int n) {
  int k = sys.forbidden.k;
  if (n < k - 1) return {};
  const Graph& h = sys.instance.h();
  std::vector<std::string> out;
  std::string word;
  auto dfs = [&](auto&& self, int v, int remaining) -> void {
    if (out.size() > 1'000'000)
      throw ResourceError("spelled-word enumeration capped at 1e6 words");
    if (remaining == 0) {
      out.push_back(word);
      return;
    }
    for (int e : h.out_edges(v)) {
      word += h.edge(e).label ? '1' : '0';
      self(self, h.edge(e).dst, remaining - 1);
      word.pop_back();
    }
  };
  for (int v = 0; v < h.vertex_count(); ++v) {
    word = k >= 2 ? h.vertex_name(v) : std::string();
    dfs(dfs, v, n - (k - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoveringRadiusResult brute_covering_radius(const ForbiddenSet& f, int n) {
  if (n < 0) throw ValidationError("word length must be nonnegative");
  CoveringRadiusResult res;
  res.n = n;
  res.mode = "brute";
  if (n == 0) return res;
  if (n > 26) throw ResourceError("brute covering radius capped at length 26");

  std::vector<char> forbidden(static_cast<size_t>(1) << f.k, 0);
  for (const auto& p : f.patterns) forbidden[word_mask(p)] = 1;
  unsigned kmask = (1u << f.k) - 1;
  std::vector<unsigned> code;
  for (unsigned long w = 0; w < (1ul << n); ++w) {
    bool ok = true;
    for (int i = 0; ok && i + f.k <= n; ++i)
      if (forbidden[(w >> i) & kmask]) ok = false;
    if (ok) code.push_back(static_cast<unsigned>(w));
  }
  if (code.empty()) throw DomainError("no allowed words of length " + std::to_string(n));
  if (static_cast<double>(1ul << n) * static_cast<double>(code.size()) > 1e8)
    throw ResourceError("brute covering radius guard exceeded: 2^n * |C_n| > 1e8");

  long best = -1;
  unsigned best_u = 0;
  for (unsigned long u = 0; u < (1ul << n); ++u) {
    int closest = n + 1;
    for (unsigned w : code) {
      int d = std::popcount(static_cast<unsigned>(u) ^ w);
      if (d < closest) {
        closest = d;
        if (closest == 0) break;
      }
    }
    if (closest > best) {
      best = closest;
      best_u = static_cast<unsigned>(u);
    }
  }
  res.radius = best;
  res.witness_u = mask_word(best_u, n);
  return res;
}

CoveringRadiusResult covering_radius(const ForbiddenSet& f, int n) {
  if (n < 0) throw ValidationError("word length must be nonnegative");
  if (n == 0) return CoveringRadiusResult{0, 0, "", "brute"};
  if (n < f.k - 1) return brute_covering_radius(f, n);

  std::optional<ConstrainedSystem> sys;
  try {
    sys = build_constrained_system(f);
  } catch (const DomainError&) {
    // nothing bi-extendable; short words may still exist, the oracle decides
    return brute_covering_radius(f, n);
  }

  FiniteOptions fo;
  fo.free_bob_start = true;
  fo.want_witness = true;
  auto res = value_nonalt_finite(sys->instance, n, std::nullopt, fo);
  const Rational& value = res.round_values.back();
  if (!value.is_integer())
    throw InternalError("mismatch duel produced a non-integer covering radius");

  CoveringRadiusResult out;
  out.n = n;
  out.radius = value.num().get_si();
  out.mode = "game";
  out.witness_u.reserve(res.alice_witness.size());
  for (int e : res.alice_witness)
    out.witness_u += sys->instance.g().edge(e).label ? '1' : '0';
  return out;
}

ValueBounds asymptotic_covering_radius_bounds(const ForbiddenSet& f, int budget) {
  ConstrainedSystem sys = build_constrained_system(f);
  if (!irreducible(sys.instance.h())) {
    auto scc = strongly_connected_components(sys.instance.h());
    throw DomainError("per-component analysis unsupported: the trimmed follower graph has " +
                      std::to_string(scc.components.size()) +
                      " strongly connected components");
  }
  return value_nonalt_bounds(sys.instance, budget, std::nullopt, /*free_bob_start=*/true);
}

}  // namespace mpg
