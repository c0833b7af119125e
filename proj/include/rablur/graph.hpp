#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rablur {

// Simple undirected graph. Edges are stored as (u, v) with u < v, sorted and
// duplicate-free; `adj` mirrors them for traversal.
struct Graph {
  uint32_t n = 0;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::vector<std::vector<uint32_t>> adj;

  bool has_edge(uint32_t u, uint32_t v) const;
};

// Validates node bounds, rejects loops, deduplicates parallel edges.
Graph make_graph(uint32_t n, std::vector<std::pair<uint32_t, uint32_t>> edges);

// `count` disjoint cliques of `size` nodes each. Node c*size + p is position p
// of clique c.
Graph make_disjoint_cliques(uint32_t count, uint32_t size);

// Erdos-Renyi sample. Pairs (u, v), u < v, are visited in lexicographic order;
// each edge is kept iff the next raw 64-bit draw of a std::mt19937_64 seeded
// with `seed` falls below floor(p * 2^64). This is reproducible across
// platforms, unlike distribution adapters. p <= 0 keeps nothing, p >= 1 keeps
// everything.
Graph sample_random_graph(uint32_t n, double p, uint64_t seed);

struct ColoringResult {
  uint32_t count = 0;                // chromatic number
  std::vector<uint32_t> colors;      // proper coloring using colors 0..count-1
};

// Exact chromatic number: DSATUR branch and bound. Deterministic (saturation,
// then degree, then lowest index). Guarded to n <= 60; larger inputs throw.
ColoringResult chromatic_number(const Graph& g);

// Shortest cycle length; nullopt when the graph is acyclic.
std::optional<uint32_t> girth(const Graph& g);

// Splits nodes into the color classes of a proper coloring, ordered by color.
// Throws if the coloring is missing nodes or gives an edge one color.
std::vector<std::vector<uint32_t>> independent_partition(const Graph& g,
                                                         const std::vector<uint32_t>& coloring);

// Text format: "nodes <N>" line, then one "edge <u> <v>" line per edge.
std::string emit_graph(const Graph& g);
Graph parse_graph(const std::string& text);

}  // namespace rablur
