#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rablur/atom_spec.hpp"
#include "rablur/finite_structure.hpp"

namespace rablur {

// n-by-n matrix of atoms of a finite structure with identity diagonal,
// symmetric under converse, and every triangle consistent.
struct BasicMatrix {
  uint32_t n = 0;
  std::vector<uint32_t> e;  // row-major, n*n entries

  uint32_t at(uint32_t i, uint32_t j) const { return e[static_cast<size_t>(i) * n + j]; }
  bool operator==(const BasicMatrix&) const = default;
};

// All basic n-by-n matrices over s, in lexicographic order of the upper
// triangle read (j, i) with j outer. Throws length_error past the guard.
std::vector<BasicMatrix> enumerate_matrices(const FiniteAtomStructure& s, uint32_t n,
                                            uint64_t guard = 5000000);

struct BasisFailure {
  uint32_t i = 0, j = 0;        // substitution axis
  BasicMatrix m, m_prime;       // agree off axis, no common patch exists
  std::string detail;
};

struct BasisReport {
  std::vector<BasisFailure> failures;
  uint64_t pairs_checked = 0;
  bool ok() const { return failures.empty(); }
};

// Amalgamation test over the blurred structure: whenever two matrices agree
// outside column/row pair {i, j}, some uniform choice of blur classes patches
// the (i, j) entry against both. Identity demands must be matched literally.
BasisReport check_cylindric_basis(const FiniteAtomStructure& s, const std::vector<Blur>& blurs,
                                  uint32_t n, const std::vector<BasicMatrix>& matrices);

// Conjunction describing a matrix, one conjunct per pair i < j in
// lexicographic order: "xi=xj" for identity entries, "A(xi,xj)" otherwise.
// Parsing round-trips and insists every pair appears exactly once.
std::string alpha_m_descriptor(const FiniteAtomStructure& s, const BasicMatrix& m);
BasicMatrix parse_alpha_m_descriptor(const FiniteAtomStructure& s, const std::string& text);

}  // namespace rablur
