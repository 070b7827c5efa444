#include "mpg/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mpg/errors.hpp"

namespace mpg {

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertex_names_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertex_names_.empty()) throw ValidationError("graph has no vertices");
  for (int v = 0; v < vertex_count(); ++v) {
    if (vertex_names_[v].empty()) throw ValidationError("empty vertex name");
    if (!vertex_by_name_.emplace(vertex_names_[v], v).second)
      throw ValidationError("duplicate vertex '" + vertex_names_[v] + "'");
  }
  out_.resize(vertex_count());
  in_.resize(vertex_count());
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.id.empty()) throw ValidationError("edge with empty id");
    if (!edge_by_id_.emplace(ed.id, e).second)
      throw ValidationError("duplicate edge id '" + ed.id + "'");
    if (ed.src < 0 || ed.src >= vertex_count() || ed.dst < 0 || ed.dst >= vertex_count())
      throw ValidationError("edge '" + ed.id + "' references a missing vertex");
    out_[ed.src].push_back(e);
    in_[ed.dst].push_back(e);
  }
  for (int v = 0; v < vertex_count(); ++v) {
    if (out_[v].empty())
      throw ValidationError("sink vertex '" + vertex_names_[v] + "': every vertex needs an outgoing edge");
    auto by_id = [this](int a, int b) { return edges_[a].id < edges_[b].id; };
    std::sort(out_[v].begin(), out_[v].end(), by_id);
    std::sort(in_[v].begin(), in_[v].end(), by_id);
  }
}

int Graph::vertex_index(const std::string& name) const {
  auto it = vertex_by_name_.find(name);
  return it == vertex_by_name_.end() ? -1 : it->second;
}

int Graph::edge_index(const std::string& id) const {
  auto it = edge_by_id_.find(id);
  return it == edge_by_id_.end() ? -1 : it->second;
}

bool walk_valid(const Graph& g, const std::vector<int>& walk, std::optional<int> start) {
  int at = start.value_or(walk.empty() ? -1 : g.edge(walk.front()).src);
  for (int e : walk) {
    if (e < 0 || e >= g.edge_count()) return false;
    if (g.edge(e).src != at) return false;
    at = g.edge(e).dst;
  }
  return true;
}

namespace {

// Iterative Tarjan; recursion depth is unbounded on long chains otherwise.
struct TarjanState {
  const Graph& g;
  std::vector<int> index, low, comp;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int next_index = 0;
  std::vector<std::vector<int>> raw_components;

  explicit TarjanState(const Graph& gr)
      : g(gr),
        index(gr.vertex_count(), -1),
        low(gr.vertex_count(), 0),
        comp(gr.vertex_count(), -1),
        on_stack(gr.vertex_count(), false) {}

  void run(int root) {
    // frame: vertex, position in its out-edge list
    std::vector<std::pair<int, size_t>> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, i] = frames.back();
      if (i < g.out_edges(v).size()) {
        int w = g.edge(g.out_edges(v)[i++]).dst;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          std::vector<int> members;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = static_cast<int>(raw_components.size());
            members.push_back(w);
          } while (w != v);
          raw_components.push_back(std::move(members));
        }
        int finished = v;
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().first;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }
  }
};

}  // namespace

SccDecomposition strongly_connected_components(const Graph& g) {
  TarjanState t(g);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (t.index[v] == -1) t.run(v);

  // Tarjan emits components after all their successors; reversing the list
  // puts sources first.
  int n = static_cast<int>(t.raw_components.size());
  SccDecomposition dec;
  dec.components.resize(n);
  dec.component_of.assign(g.vertex_count(), -1);
  for (int c = 0; c < n; ++c) {
    int target = n - 1 - c;
    Scc& scc = dec.components[target];
    scc.vertices = std::move(t.raw_components[c]);
    std::sort(scc.vertices.begin(), scc.vertices.end());
    for (int v : scc.vertices) dec.component_of[v] = target;
  }
  for (int c = 0; c < n; ++c) {
    Scc& scc = dec.components[c];
    scc.nontrivial = scc.vertices.size() > 1;
    if (!scc.nontrivial) {
      int v = scc.vertices.front();
      for (int e : g.out_edges(v))
        if (g.edge(e).dst == v) scc.nontrivial = true;
    }
  }
  return dec;
}

bool irreducible(const Graph& g) {
  auto dec = strongly_connected_components(g);
  return dec.components.size() == 1 && dec.components.front().nontrivial;
}

int component_period(const Graph& g, const Scc& scc) {
  if (!scc.nontrivial) throw std::invalid_argument("period undefined on a trivial component");
  std::vector<int> depth(g.vertex_count(), -1);
  std::vector<int> queue;
  int root = scc.vertices.front();
  depth[root] = 0;
  queue.push_back(root);
  std::vector<bool> inside(g.vertex_count(), false);
  for (int v : scc.vertices) inside[v] = true;
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (!inside[w] || depth[w] != -1) continue;
      depth[w] = depth[v] + 1;
      queue.push_back(w);
    }
  }
  // Every component edge closes a (virtual) cycle whose length is congruent
  // to depth(src) + 1 - depth(dst); the period is the gcd of those.
  long g_acc = 0;
  for (int v : scc.vertices)
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (!inside[w]) continue;
      long diff = depth[v] + 1 - depth[w];
      g_acc = std::gcd(g_acc, diff < 0 ? -diff : diff);
    }
  if (g_acc == 0) throw InternalError("period gcd collapsed to zero on a nontrivial component");
  return static_cast<int>(g_acc);
}

int graph_period(const Graph& g) {
  auto dec = strongly_connected_components(g);
  long acc = 0;
  for (const Scc& scc : dec.components)
    if (scc.nontrivial) acc = std::gcd(acc, static_cast<long>(component_period(g, scc)));
  if (acc == 0) throw DomainError("graph has no cycle, period undefined");
  return static_cast<int>(acc);
}

std::optional<std::vector<int>> exact_length_walk(const Graph& g, int from, int to,
                                                  int length) {
  // reach[k][v] = can v reach `to` in exactly k steps
  std::vector<std::vector<char>> reach(length + 1, std::vector<char>(g.vertex_count(), 0));
  reach[0][to] = 1;
  for (int k = 1; k <= length; ++k)
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int e : g.out_edges(v))
        if (reach[k - 1][g.edge(e).dst]) {
          reach[k][v] = 1;
          break;
        }
  if (!reach[length][from]) return std::nullopt;
  std::vector<int> walk;
  int at = from;
  for (int k = length; k >= 1; --k)
    for (int e : g.out_edges(at))  // id-sorted, so the first usable edge is lex-smallest
      if (reach[k - 1][g.edge(e).dst]) {
        walk.push_back(e);
        at = g.edge(e).dst;
        break;
      }
  return walk;
}

}  // namespace mpg
