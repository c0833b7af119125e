#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rablur {

// Subset of the atoms of a finite structure, as a dynamic bitset.
struct AtomSet {
  uint32_t n = 0;
  std::vector<uint64_t> words;

  static AtomSet none(uint32_t n) { return {n, std::vector<uint64_t>((n + 63) / 64, 0)}; }
  static AtomSet all(uint32_t n);
  static AtomSet single(uint32_t n, uint32_t a);

  bool test(uint32_t a) const { return (words[a >> 6] >> (a & 63)) & 1; }
  void set(uint32_t a) { words[a >> 6] |= 1ull << (a & 63); }
  void reset(uint32_t a) { words[a >> 6] &= ~(1ull << (a & 63)); }
  bool any() const;
  uint32_t count() const;
  std::vector<uint32_t> members() const;

  AtomSet& operator|=(const AtomSet& o);
  AtomSet& operator&=(const AtomSet& o);
  bool operator==(const AtomSet&) const = default;
};

// Finite atom structure: named atoms, a designated identity, a converse
// permutation, and a dense consistent-triple table. consistent(a, b, c) reads
// as "c can sit below a;b".
struct FiniteAtomStructure {
  std::vector<std::string> names;
  uint32_t id_atom = 0;
  std::vector<uint32_t> conv;
  std::vector<uint64_t> triple_bits;  // n^3 bits, index (a*n + b)*n + c

  uint32_t n() const { return static_cast<uint32_t>(names.size()); }
  bool consistent(uint32_t a, uint32_t b, uint32_t c) const {
    uint64_t idx = (static_cast<uint64_t>(a) * n() + b) * n() + c;
    return (triple_bits[idx >> 6] >> (idx & 63)) & 1;
  }
  void set_consistent(uint32_t a, uint32_t b, uint32_t c, bool value);
};

// The one-atom structure {Id}.
FiniteAtomStructure make_trivial();

// Identity plus one atom per name, all self-converse; a triple of non-identity
// atoms is consistent exactly when its members are not all equal. Composition
// of distinct non-identity atoms misses the identity (forced by the identity
// law), so P;P covers everything but P except for Id, and P;Q covers every
// non-identity atom. Names must be distinct, nonempty, and not "Id";
// at least two are required.
FiniteAtomStructure make_M(const std::vector<std::string>& base_names);

struct AxiomViolation {
  enum class Kind { IdentityLaw, ConverseInvolution, IdentityConverse, PeirceanClosure } kind;
  uint32_t a = 0, b = 0, c = 0;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomViolation> items;
  bool empty() const { return items.empty(); }
  std::string to_string(const FiniteAtomStructure& s) const;
};

// Identity law ((Id,b,c) consistent iff b = c), converse involution and
// identity-fixing, and Peircean transform closure of the triple table.
AxiomReport check_axioms(const FiniteAtomStructure& s);

AtomSet cm_compose(const FiniteAtomStructure& s, const AtomSet& x, const AtomSet& y);
AtomSet cm_converse(const FiniteAtomStructure& s, const AtomSet& x);
// Row of the composition table: atoms below a;b.
AtomSet compose_atoms(const FiniteAtomStructure& s, uint32_t a, uint32_t b);

}  // namespace rablur
