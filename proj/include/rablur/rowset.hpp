#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rablur {

// A finite or cofinite set of row indices (natural numbers).
//
// `items` is always sorted and duplicate-free. When `cofinite` is false it
// lists the members; when true it lists the non-members. This is the only
// closure of finite sets under complement that composition of blown-up
// elements can produce, so every set-valued row computation stays exact.
struct RowSet {
  bool cofinite = false;
  std::vector<uint32_t> items;

  static RowSet none() { return {}; }
  static RowSet all() { return {true, {}}; }
  static RowSet of(std::vector<uint32_t> rows);
  static RowSet all_but(std::vector<uint32_t> rows);

  bool contains(uint32_t row) const;
  bool empty() const { return !cofinite && items.empty(); }
  bool is_all() const { return cofinite && items.empty(); }
  bool infinite() const { return cofinite; }

  // Number of members strictly below `bound`.
  size_t count_below(uint32_t bound) const;
  // 1 + the largest listed index (member or excluded member), 0 when none.
  uint32_t listed_bound() const { return items.empty() ? 0 : items.back() + 1; }

  bool operator==(const RowSet&) const = default;
};

RowSet row_union(const RowSet& a, const RowSet& b);
RowSet row_intersect(const RowSet& a, const RowSet& b);
RowSet row_complement(const RowSet& a);

// Evenly distributed index triples. True iff (i, j, k) can be reordered into
// an arithmetic progression of naturals, i.e. one of the three is the average
// of the other two. Degenerate cases: (i, i, i) holds, (i, i, k) with k != i
// does not.
bool evenly_distributed(uint32_t i, uint32_t j, uint32_t k);

// Exact image {k : evenly_distributed(i, j, k) for some i in a, j in b}.
RowSet e_image(const RowSet& a, const RowSet& b);

}  // namespace rablur
