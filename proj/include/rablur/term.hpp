#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "rablur/atom_spec.hpp"
#include "rablur/rowset.hpp"

namespace rablur {

// Position of base p inside blur w's ascending base list.
uint32_t blur_slot(const AtomSpec& spec, uint32_t w, uint32_t p);

// One blur's worth of an element: a row set per base of the blur, ordered as
// blur_bases(w).
struct BlurSlice {
  std::vector<RowSet> rows;
  bool operator==(const BlurSlice&) const = default;
};

// Element of the term algebra generated by the atoms and the sets E^W: an
// optional identity plus, per blur W, a subset of E^W that is finite or
// cofinite (per base, uniformly across the slice; `valid` checks the
// uniformity, and every constructor and operation here preserves it).
struct TermElement {
  bool has_id = false;
  std::vector<BlurSlice> slices;

  bool operator==(const TermElement&) const = default;
};

TermElement te_zero(const AtomSpec& spec);
TermElement te_one(const AtomSpec& spec);
TermElement te_identity(const AtomSpec& spec);
TermElement te_atom(const AtomSpec& spec, const SymbolicAtom& a);
TermElement te_full_blur(const AtomSpec& spec, uint32_t w);

bool te_valid(const AtomSpec& spec, const TermElement& x);
bool te_is_zero(const TermElement& x);
bool te_contains(const AtomSpec& spec, const TermElement& x, const SymbolicAtom& a);
bool te_slice_cofinite(const TermElement& x, uint32_t w);
bool te_slice_empty(const TermElement& x, uint32_t w);

TermElement te_join(const AtomSpec& spec, const TermElement& x, const TermElement& y);
TermElement te_meet(const AtomSpec& spec, const TermElement& x, const TermElement& y);
TermElement te_complement(const AtomSpec& spec, const TermElement& x);
// All atoms are self-converse, so converse is the identity map; kept for the
// operation surface.
TermElement te_converse(const AtomSpec& spec, const TermElement& x);

// Exact relative product. The disjoint-blur route fills whole slices; the
// evenly-distributed route moves row sets through e_image per base pair.
TermElement compose(const AtomSpec& spec, const TermElement& x, const TermElement& y);
// compose on two atoms.
TermElement atom_comp(const AtomSpec& spec, const SymbolicAtom& a, const SymbolicAtom& b);

// Ultrafilter of the term algebra: principal at an atom, or the class of
// elements whose W-slice is cofinite in E^W.
struct UfLabel {
  enum class Kind : uint8_t { Principal, BlurClass } kind = Kind::Principal;
  SymbolicAtom atom;   // Principal
  uint32_t blur = 0;   // BlurClass

  static UfLabel principal(const SymbolicAtom& a) { return {Kind::Principal, a, 0}; }
  static UfLabel blur_class(uint32_t w) { return {Kind::BlurClass, SymbolicAtom::id(), w}; }
  bool is_identity() const { return kind == Kind::Principal && atom.kind == SymbolicAtom::Kind::Identity; }

  auto operator<=>(const UfLabel&) const = default;
};

bool in_ultrafilter(const AtomSpec& spec, const TermElement& x, const UfLabel& u);
std::string uf_name(const AtomSpec& spec, const UfLabel& u);

}  // namespace rablur
