#include "rablur/graph.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rablur {

bool Graph::has_edge(uint32_t u, uint32_t v) const {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

Graph make_graph(uint32_t n, std::vector<std::pair<uint32_t, uint32_t>> edges) {
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("graph: loop edge " + std::to_string(u));
    if (u >= n || v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range: " + std::to_string(std::max(u, v)));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.adj.assign(n, {});
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  return g;
}

Graph make_disjoint_cliques(uint32_t count, uint32_t size) {
  if (count == 0 || size == 0) throw std::invalid_argument("disjoint cliques: count and size must be positive");
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t c = 0; c < count; ++c)
    for (uint32_t a = 0; a < size; ++a)
      for (uint32_t b = a + 1; b < size; ++b) edges.emplace_back(c * size + a, c * size + b);
  return make_graph(count * size, std::move(edges));
}

Graph sample_random_graph(uint32_t n, double p, uint64_t seed) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  if (p >= 1.0) {
    for (uint32_t u = 0; u < n; ++u)
      for (uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return make_graph(n, std::move(edges));
  }
  if (p > 0.0) {
    std::mt19937_64 eng(seed);
    const auto threshold = static_cast<uint64_t>(p * 18446744073709551616.0);
    for (uint32_t u = 0; u < n; ++u)
      for (uint32_t v = u + 1; v < n; ++v)
        if (eng() < threshold) edges.emplace_back(u, v);
  }
  return make_graph(n, std::move(edges));
}

namespace {

struct DsaturState {
  const Graph& g;
  std::vector<uint32_t> colors;        // n = uncolored
  std::vector<uint32_t> best_colors;
  uint32_t best = 0;                   // current upper bound (valid coloring size)
  uint32_t colored = 0;

  explicit DsaturState(const Graph& g_) : g(g_), colors(g_.n, g_.n) {}

  uint32_t pick() const {
    uint32_t pick = g.n;
    int best_sat = -1, best_deg = -1;
    for (uint32_t v = 0; v < g.n; ++v) {
      if (colors[v] != g.n) continue;
      uint64_t seen = 0;  // colors fit in 64 bits while n <= 60
      int sat = 0;
      for (uint32_t w : g.adj[v])
        if (colors[w] != g.n && !(seen & (1ull << colors[w]))) {
          seen |= 1ull << colors[w];
          ++sat;
        }
      int deg = static_cast<int>(g.adj[v].size());
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best_sat = sat;
        best_deg = deg;
        pick = v;
      }
    }
    return pick;
  }

  void search(uint32_t used) {
    if (used >= best) return;
    if (colored == g.n) {
      best = used;
      best_colors = colors;
      return;
    }
    uint32_t v = pick();
    uint64_t blocked = 0;
    for (uint32_t w : g.adj[v])
      if (colors[w] != g.n) blocked |= 1ull << colors[w];
    uint32_t limit = std::min(used + 1, best - 1);  // new color only as color `used`
    for (uint32_t c = 0; c < limit; ++c) {
      if (blocked & (1ull << c)) continue;
      colors[v] = c;
      ++colored;
      search(std::max(used, c + 1));
      --colored;
      colors[v] = g.n;
    }
  }
};

}  // namespace

ColoringResult chromatic_number(const Graph& g) {
  if (g.n > 60) throw std::length_error("chromatic_number: exact search limited to 60 nodes");
  if (g.n == 0) return {0, {}};
  DsaturState st(g);
  // Greedy DSATUR pass for the initial upper bound.
  {
    std::vector<uint32_t> greedy(g.n, g.n);
    for (uint32_t step = 0; step < g.n; ++step) {
      uint32_t v = g.n;
      int best_sat = -1, best_deg = -1;
      for (uint32_t u = 0; u < g.n; ++u) {
        if (greedy[u] != g.n) continue;
        uint64_t seen = 0;
        int sat = 0;
        for (uint32_t w : g.adj[u])
          if (greedy[w] != g.n && !(seen & (1ull << greedy[w]))) {
            seen |= 1ull << greedy[w];
            ++sat;
          }
        int deg = static_cast<int>(g.adj[u].size());
        if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
          best_sat = sat;
          best_deg = deg;
          v = u;
        }
      }
      uint64_t blocked = 0;
      for (uint32_t w : g.adj[v])
        if (greedy[w] != g.n) blocked |= 1ull << greedy[w];
      uint32_t c = 0;
      while (blocked & (1ull << c)) ++c;
      greedy[v] = c;
    }
    st.best = *std::max_element(greedy.begin(), greedy.end()) + 1;
    st.best_colors = greedy;
  }
  st.search(0);
  return {st.best, st.best_colors};
}

std::optional<uint32_t> girth(const Graph& g) {
  uint32_t best = UINT32_MAX;
  std::vector<uint32_t> dist(g.n), parent(g.n);
  for (uint32_t root = 0; root < g.n; ++root) {
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    std::vector<uint32_t> queue{root};
    dist[root] = 0;
    parent[root] = root;
    for (size_t head = 0; head < queue.size(); ++head) {
      uint32_t u = queue[head];
      if (2 * dist[u] + 1 >= best) break;
      for (uint32_t w : g.adj[u]) {
        if (dist[w] == UINT32_MAX) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u] && dist[w] >= dist[u]) {
          // Non-tree edge closing a cycle through the root's BFS tree.
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == UINT32_MAX) return std::nullopt;
  return best;
}

std::vector<std::vector<uint32_t>> independent_partition(const Graph& g,
                                                         const std::vector<uint32_t>& coloring) {
  if (coloring.size() != g.n) throw std::invalid_argument("independent_partition: coloring size mismatch");
  for (auto [u, v] : g.edges)
    if (coloring[u] == coloring[v])
      throw std::invalid_argument("independent_partition: edge " + std::to_string(u) + "-" +
                                  std::to_string(v) + " is monochromatic");
  uint32_t classes = 0;
  for (uint32_t c : coloring) classes = std::max(classes, c + 1);
  std::vector<std::vector<uint32_t>> out(classes);
  for (uint32_t v = 0; v < g.n; ++v) out[coloring[v]].push_back(v);
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& cl) { return cl.empty(); }), out.end());
  return out;
}

std::string emit_graph(const Graph& g) {
  std::ostringstream out;
  out << "nodes " << g.n << "\n";
  for (auto [u, v] : g.edges) out << "edge " << u << " " << v << "\n";
  return out.str();
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_nodes = false;
  uint64_t n = 0;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;  // blank line
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("graph text line " + std::to_string(lineno) + ": " + why);
    };
    if (word == "nodes") {
      if (have_nodes) fail("repeated nodes line");
      if (!(ls >> n)) fail("expected node count");
      have_nodes = true;
    } else if (word == "edge") {
      if (!have_nodes) fail("edge before nodes line");
      uint64_t u, v;
      if (!(ls >> u >> v)) fail("expected two endpoints");
      if (u == v) fail("loop edge");
      if (u >= n || v >= n) fail("endpoint out of range");
      edges.emplace_back(static_cast<uint32_t>(u), static_cast<uint32_t>(v));
    } else {
      fail("unknown directive '" + word + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing tokens");
  }
  if (!have_nodes) throw std::invalid_argument("graph text: missing nodes line");
  return make_graph(static_cast<uint32_t>(n), std::move(edges));
}

}  // namespace rablur
