#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rablur/term.hpp"

namespace rablur {

// Consistency of a triple of ultrafilters: every choice of members composes
// into the third filter. Closed form over the blur-family structures (for all
// label signatures it reduces to a finite condition); agrees with the
// semantic membership test below, which a property test pins down.
bool uf_triple_consistent(const AtomSpec& spec, const UfLabel& f, const UfLabel& g, const UfLabel& k);

// Membership test on depth-truncated representatives: principal labels are
// represented by their atom, blur classes by E^W minus the rows below
// `depth`. All three Peircean rotations are required to pass.
bool uf_triple_consistent_semantic(const AtomSpec& spec, const UfLabel& f, const UfLabel& g,
                                   const UfLabel& k, uint32_t depth);

TermElement uf_representative(const AtomSpec& spec, const UfLabel& u, uint32_t depth);

struct BlurConditionOptions {
  uint32_t depth = 20;      // truncation depth for semantic witnesses
  uint32_t row_reps = 3;    // row-shift class representatives
  bool exhaustive = true;   // semantic sweep; false = closed forms + sampled semantics
  uint32_t samples = 200;   // semantic spot samples in sampled mode
  uint64_t seed = 0;
};

struct BlurConditionViolation {
  int condition = 0;  // 1, 2 or 3
  std::string detail;
};

struct BlurConditionReport {
  std::vector<BlurConditionViolation> items;
  bool exhaustive = true;
  uint64_t checked_composition = 0;  // condition (i) instances
  uint64_t checked_classes = 0;      // condition (ii) instances
  uint64_t checked_meets = 0;        // condition (iii) instances
  bool empty() const { return items.empty(); }
  std::string summary() const;
};

// The three conditions a blur family must satisfy for the blown-up term
// algebra to glue back together:
//  (i)  atoms whose blurs miss some W compose across all of E^W,
//  (ii) triples of non-principal, non-identity classes are consistent
//       whenever at least two of the three labels are blur classes,
//  (iii) any two products of atom pairs share a full blur class.
// Violations carry printable witnesses.
BlurConditionReport check_blur_conditions(const AtomSpec& spec, const BlurConditionOptions& opts = {});

// Every n-tuple of composition rows meets some blur: for all a_1..a_n,
// b_1..b_n in the base, some W in `blurs` intersects the meet of the a_i;b_i.
// The universal variant asks every W to intersect it.
bool n_complex_blur(const FiniteAtomStructure& m, const std::vector<Blur>& blurs, uint32_t n,
                    bool universal = false);

}  // namespace rablur
