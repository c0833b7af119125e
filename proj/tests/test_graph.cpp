#include <doctest.h>

#include <algorithm>
#include <deque>
#include <optional>
#include <set>

#include "rablur/graph.hpp"

using namespace rablur;

namespace {

// Oracle: does g admit a proper coloring with k colors (plain backtracking)?
bool colorable(const Graph& g, uint32_t k, std::vector<uint32_t>& colors, uint32_t v) {
  if (v == g.n) return true;
  for (uint32_t c = 0; c < k; ++c) {
    bool ok = true;
    for (uint32_t u : g.adj[v])
      if (u < v && colors[u] == c) {
        ok = false;
        break;
      }
    if (!ok) continue;
    colors[v] = c;
    if (colorable(g, k, colors, v + 1)) return true;
  }
  return false;
}

uint32_t brute_chromatic(const Graph& g) {
  if (g.n == 0) return 0;
  for (uint32_t k = 1;; ++k) {
    std::vector<uint32_t> colors(g.n, 0);
    if (colorable(g, k, colors, 0)) return k;
  }
}

// Oracle: shortest cycle via per-edge shortest alternative path.
std::optional<uint32_t> brute_girth(const Graph& g) {
  std::optional<uint32_t> best;
  for (auto [u, v] : g.edges) {
    // BFS from u to v avoiding the edge (u, v) itself.
    std::vector<uint32_t> dist(g.n, UINT32_MAX);
    std::deque<uint32_t> queue{u};
    dist[u] = 0;
    while (!queue.empty()) {
      uint32_t x = queue.front();
      queue.pop_front();
      for (uint32_t y : g.adj[x]) {
        if ((x == u && y == v) || (x == v && y == u)) continue;
        if (dist[y] != UINT32_MAX) continue;
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
    if (dist[v] != UINT32_MAX) {
      uint32_t cycle = dist[v] + 1;
      if (!best || cycle < *best) best = cycle;
    }
  }
  return best;
}

Graph petersen() {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    edges.emplace_back(i, 5 + i);                // spokes
  }
  return make_graph(10, std::move(edges));
}

}  // namespace

TEST_CASE("chromatic number matches brute force") {
  for (uint64_t seed = 0; seed < 6; ++seed)
    for (double p : {0.2, 0.5, 0.8}) {
      Graph g = sample_random_graph(9, p, seed);
      CHECK_MESSAGE(chromatic_number(g).count == brute_chromatic(g), "seed " << seed << " p " << p);
    }
  CHECK(chromatic_number(make_graph(4, {})).count == 1);
  CHECK(chromatic_number(make_disjoint_cliques(2, 4)).count == 4);
  CHECK(chromatic_number(petersen()).count == 3);
}

TEST_CASE("coloring result is proper and optimal") {
  Graph g = petersen();
  ColoringResult r = chromatic_number(g);
  REQUIRE(r.colors.size() == g.n);
  for (auto [u, v] : g.edges) CHECK(r.colors[u] != r.colors[v]);
  for (uint32_t c : r.colors) CHECK(c < r.count);

  auto classes = independent_partition(g, r.colors);
  CHECK(classes.size() == r.count);
  size_t total = 0;
  for (const auto& cls : classes) total += cls.size();
  CHECK(total == g.n);
}

TEST_CASE("coloring guard") {
  CHECK(chromatic_number(make_disjoint_cliques(10, 6)).count == 6);  // 60 nodes, the limit
  CHECK_THROWS_AS(chromatic_number(make_graph(61, {})), std::length_error);
}

TEST_CASE("girth matches brute force") {
  for (uint64_t seed = 0; seed < 8; ++seed)
    for (double p : {0.15, 0.3, 0.6}) {
      Graph g = sample_random_graph(10, p, seed);
      CHECK_MESSAGE(girth(g) == brute_girth(g), "seed " << seed << " p " << p);
    }
  CHECK(girth(petersen()) == 5);
  CHECK(girth(make_disjoint_cliques(3, 3)) == 3);
  CHECK(girth(make_graph(4, {{0, 1}, {1, 2}, {2, 3}})) == std::nullopt);
  CHECK(girth(make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}})) == 6);
}

TEST_CASE("independent partition rejects improper input") {
  Graph g = make_graph(3, {{0, 1}});
  CHECK_THROWS_AS(independent_partition(g, {0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(independent_partition(g, {0, 1}), std::invalid_argument);
}

TEST_CASE("graph construction validates") {
  CHECK_THROWS_AS(make_graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 3}}), std::invalid_argument);
  Graph g = make_graph(3, {{1, 0}, {0, 1}, {1, 2}});
  CHECK(g.edges.size() == 2);  // normalized and deduplicated
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("sampling is deterministic and monotone in p") {
  Graph a = sample_random_graph(12, 0.4, 7);
  Graph b = sample_random_graph(12, 0.4, 7);
  CHECK(a.edges == b.edges);
  Graph c = sample_random_graph(12, 0.4, 8);
  CHECK(a.edges != c.edges);  // astronomically unlikely to coincide

  CHECK(sample_random_graph(10, 0.0, 3).edges.empty());
  CHECK(sample_random_graph(10, 1.0, 3).edges.size() == 45);

  // Same seed, larger p: the kept set can only grow (same draws, same order).
  Graph lo = sample_random_graph(12, 0.3, 7);
  Graph hi = sample_random_graph(12, 0.7, 7);
  std::set<std::pair<uint32_t, uint32_t>> hi_set(hi.edges.begin(), hi.edges.end());
  for (auto e : lo.edges) CHECK(hi_set.count(e));
}

TEST_CASE("graph text round-trip") {
  Graph g = sample_random_graph(9, 0.5, 11);
  Graph back = parse_graph(emit_graph(g));
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);

  CHECK_THROWS_AS(parse_graph("edge 0 1\n"), std::invalid_argument);         // missing nodes line
  CHECK_THROWS_AS(parse_graph("nodes 3\nnodes 3\n"), std::invalid_argument); // repeated header
  CHECK_THROWS_AS(parse_graph("nodes 3\nedge 0 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph("nodes 3\nedge 0 5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph("nodes 3\nedge 0 1 9\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph("nodes 3\nedge 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph("nodes 3\nwobble\n"), std::invalid_argument);
}
