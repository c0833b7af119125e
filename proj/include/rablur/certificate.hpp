#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rablur/atom_spec.hpp"
#include "rablur/blur_conditions.hpp"
#include "rablur/graph.hpp"

namespace rablur {

// Block of a coarse partition of the atoms: the identity on its own, all
// atoms over a fixed set of bases (blur kinds), or all atoms at one clique
// position carrying one color (alpha).
struct CoarseBlock {
  enum class Kind : uint8_t { Identity, Bases, ColorClass };
  Kind kind = Kind::Identity;
  std::vector<uint32_t> bases;        // Bases: base indices, ascending
  uint32_t position = 0, color = 0;   // ColorClass

  static CoarseBlock identity() { return {}; }
  static CoarseBlock of_bases(std::vector<uint32_t> b);
  static CoarseBlock color_class(uint32_t position, uint32_t color);

  bool contains(const SymbolicAtom& a) const;
  bool operator==(const CoarseBlock&) const = default;
};

// Identity block plus one block per base atom.
std::vector<CoarseBlock> build_partition(const AtomSpec& spec);

// Alpha form: `window` must be the finite disjoint-cliques graph of the spec
// (any copy count), `coloring` a proper clique_size-coloring that colors every
// copy identically. Blocks come out ordered by color class, then atom color.
std::vector<CoarseBlock> build_partition(const AtomSpec& spec, const Graph& window,
                                         const std::vector<uint32_t>& coloring);

// True iff the block sits inside the identity, one base, or one (position,
// color) class. A multi-base block is not monochromatic.
bool monochromatic(const CoarseBlock& b);

struct MonoZeroReport {
  bool zero = false;      // no consistent triple inside the block
  bool symbolic = false;  // closed-form verdict
  bool agree = false;     // enumeration confirmed the closed form
  uint64_t triples_checked = 0;
  std::vector<SymbolicAtom> witness;  // consistent triple when not zero
};

// Decides (B;B)·B = 0 by the closed form and confirms it by enumerating
// triples of block atoms up to `depth` rows (list truncated so the scan stays
// near 40M triples).
MonoZeroReport verify_mono_zero(const AtomSpec& spec, const CoarseBlock& b, uint32_t depth = 8);

// Row of the coarse composition table: which blocks sit below H^p ; H^q.
struct CoarseTableEntry {
  uint32_t p = 0, q = 0;
  bool id = false;
  std::vector<uint32_t> bases;
  bool operator==(const CoarseTableEntry&) const = default;
};

// Symbolic table, straight from the base structure: H^p;H^q covers H^r iff
// (p,q,r) is base-consistent, and the identity block iff (p,q,Id) is.
std::vector<CoarseTableEntry> coarse_embedding_table(const AtomSpec& spec);

// Re-derives the table from the symbolic-atom oracle on a truncation and
// compares: every covered block must be reachable from every target atom, no
// uncovered block may admit any consistent triple. On disagreement fills
// *diagnostics with a witness and returns false.
bool coarse_table_oracle_agrees(const AtomSpec& spec, const std::vector<CoarseTableEntry>& table,
                                uint32_t depth, std::string* diagnostics = nullptr);

// Assembles the full certificate for a blur-style spec (base must be the
// standard symmetric structure over its names; sabotaged specs are refused).
// Aborts with an exception if any sub-check disagrees with its oracle.
nlohmann::json certify(const AtomSpec& spec, uint32_t depth = 8, uint64_t seed = 0);

// Alpha form; window and coloring as in build_partition.
nlohmann::json certify(const AtomSpec& spec, const Graph& window,
                       const std::vector<uint32_t>& coloring, uint32_t depth = 8, uint64_t seed = 0);

// Serialization used for digests and files: two-space indent, sorted keys.
std::string canonical_dump(const nlohmann::json& cert);

// FNV-1a 64 over the canonical dump with the digest field removed, as 16 hex
// digits.
std::string certificate_digest(const nlohmann::json& cert);

struct CertCheck {
  bool ok = false;
  std::string reason;  // empty when ok
};

// Full re-verification: shape, version, digest, then a rebuild from the
// recorded parameters compared field by field.
CertCheck check_certificate(const nlohmann::json& cert);
CertCheck check_certificate(const std::string& text);

struct MonkMember {
  Graph graph;
  AtomSpec spec;
  uint32_t clique_size = 0;
  uint32_t chromatic = 0;
  nlohmann::json certificate;
};

// Members i < count use clique size colors*(colors-1)/2 + i over `copies`
// disjoint copies; each carries its exact chromatic number and certificate.
std::vector<MonkMember> monk_sequence(uint32_t colors, uint32_t count, uint32_t copies = 10,
                                      uint64_t seed = 0);

struct FMember {
  AtomSpec spec;
  BlurConditionReport report;
  nlohmann::json certificate;
};

// Members i < count are the minimum-size structures with blur sets of size
// i+2. Condition reports are exhaustive for the first member and sampled
// (seeded) beyond, where the exhaustive sweep would be quadratic in the
// atom count.
std::vector<FMember> f_sequence(uint32_t count, uint32_t depth = 8, uint64_t seed = 0);

}  // namespace rablur
