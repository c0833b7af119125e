#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rablur/blur_conditions.hpp"
#include "rablur/term.hpp"

namespace rablur {

// A composition demand at a node pair: some witnessed product lands in the
// pair's label, so a node z with l(z,x) = f and l(z,y) = k must exist.
struct Defect {
  uint32_t x = 0, y = 0;
  UfLabel f, k;
};

struct StepRecord {
  uint32_t step = 0;
  Defect defect;
  uint32_t new_node = 0;
  std::vector<uint32_t> filler_blurs;  // for the other nodes, in node order
};

// Raised when no blur class can label an edge from a fresh node without
// breaking a triangle; cannot happen when the blur conditions hold.
class NoBlurAvailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Complete graph with ultrafilter labels, diagonal fixed at U^Id. Grows one
// node per resolved defect; every triangle stays consistent throughout.
struct ColoredGraph {
  AtomSpec spec;
  uint32_t n = 0;
  std::vector<UfLabel> labels;  // triangular, index v*(v+1)/2 + u for u <= v
  std::deque<Defect> queue;
  std::vector<StepRecord> log;
  uint64_t enqueued = 0;
  uint64_t auto_resolved = 0;
  uint32_t demanded_through = 0;  // nodes whose pairs have produced demands

  const UfLabel& label(uint32_t u, uint32_t v) const;

  // Demand classes already scheduled, so each (label, f, k) class is enqueued
  // at its first witnessing pair only. Later pairs show up as "pending" in
  // verification rather than re-queueing the same demand.
  std::map<std::tuple<UfLabel, UfLabel, UfLabel>, bool> scheduled;
};

ColoredGraph new_colored_graph(const AtomSpec& spec);

// Identity, every atom with row < 2, and every E^W.
std::vector<TermElement> default_generators(const AtomSpec& spec);

// Adds the witness node for d and labels its edges: f and k toward d's pair,
// and for every other node the least blur class keeping both new triangles
// consistent. Throws NoBlurAvailable when none exists.
uint32_t extend(ColoredGraph& g, const Defect& d);

struct SaturationStats {
  uint32_t steps = 0;
  uint32_t nodes = 0;
  uint64_t enqueued = 0;
  uint64_t auto_resolved = 0;
  uint64_t queue_left = 0;
};

// Runs up to `steps` defect resolutions. Demands are generated per node pair
// from products of the generators, scheduled FIFO, and deduplicated globally
// by (label, f, k). Deterministic: repeated runs produce identical logs.
SaturationStats saturate(ColoredGraph& g, uint32_t steps, const std::vector<TermElement>& generators);

// Ordered node pairs whose label contains x.
std::vector<std::pair<uint32_t, uint32_t>> rep_pairs(const ColoredGraph& g, const TermElement& x);

// One line per step; byte-identical across runs with the same inputs.
std::string export_step_log(const ColoredGraph& g);

struct RepVerification {
  std::vector<std::string> violations;
  uint64_t pending = 0;            // demands still queued
  uint64_t triangles_checked = 0;
  uint64_t boolean_checks = 0;
  uint64_t product_checks = 0;
  uint64_t witnesses_checked = 0;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Checks that labeling is a representation as far as it has been built:
// boolean operations map exactly to set operations on rep_pairs over the
// samples, all label triangles are consistent (hence products only grow),
// spot-checked forward products hold on a node window, resolved defects have
// their witness edges, and dequeued atom demands made the atom nonempty.
RepVerification verify_representation(const ColoredGraph& g, const std::vector<TermElement>& samples,
                                      uint32_t sample_nodes = 80);

// Complete or partial graph with atoms of a finite structure as labels.
struct AtomLabeledGraph {
  uint32_t n = 0;
  std::vector<std::optional<uint32_t>> labels;  // triangular like ColoredGraph

  std::optional<uint32_t> label(uint32_t u, uint32_t v) const;
  void set_label(uint32_t u, uint32_t v, uint32_t atom);
};

AtomLabeledGraph make_atom_graph(uint32_t n);

struct MSquareResult {
  bool square = true;
  std::string detail;
};

// Clique extension property: every labeled clique of fewer than m nodes can
// reach any consistent atom pair over any of its node pairs through some
// witness node. Labels are read symmetrically (self-converse structures).
MSquareResult is_m_square(const AtomLabeledGraph& g, const FiniteAtomStructure& s, uint32_t m);

}  // namespace rablur
