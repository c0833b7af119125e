#include "rablur/rowset.hpp"

#include <algorithm>

namespace rablur {

namespace {

std::vector<uint32_t> vec_sorted(std::vector<uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<uint32_t> vec_union(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<uint32_t> vec_intersect(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<uint32_t> vec_diff(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

RowSet RowSet::of(std::vector<uint32_t> rows) { return {false, vec_sorted(std::move(rows))}; }

RowSet RowSet::all_but(std::vector<uint32_t> rows) { return {true, vec_sorted(std::move(rows))}; }

bool RowSet::contains(uint32_t row) const {
  bool listed = std::binary_search(items.begin(), items.end(), row);
  return cofinite ? !listed : listed;
}

size_t RowSet::count_below(uint32_t bound) const {
  size_t listed = std::lower_bound(items.begin(), items.end(), bound) - items.begin();
  return cofinite ? bound - listed : listed;
}

RowSet row_union(const RowSet& a, const RowSet& b) {
  if (!a.cofinite && !b.cofinite) return {false, vec_union(a.items, b.items)};
  if (a.cofinite && b.cofinite) return {true, vec_intersect(a.items, b.items)};
  const RowSet& fin = a.cofinite ? b : a;
  const RowSet& cof = a.cofinite ? a : b;
  return {true, vec_diff(cof.items, fin.items)};
}

RowSet row_intersect(const RowSet& a, const RowSet& b) {
  if (!a.cofinite && !b.cofinite) return {false, vec_intersect(a.items, b.items)};
  if (a.cofinite && b.cofinite) return {true, vec_union(a.items, b.items)};
  const RowSet& fin = a.cofinite ? b : a;
  const RowSet& cof = a.cofinite ? a : b;
  return {false, vec_diff(fin.items, cof.items)};
}

RowSet row_complement(const RowSet& a) { return {!a.cofinite, a.items}; }

bool evenly_distributed(uint32_t i, uint32_t j, uint32_t k) {
  uint64_t I = i, J = j, K = k;
  return I + J == 2 * K || I + K == 2 * J || J + K == 2 * I;
}

namespace {

// Image of (cofinite set) x {j}. Any k with 2k >= j and 2k - j outside the
// exclusion list is hit through i = 2k - j, so only finitely many candidates
// can be missing; each is tested through the two remaining witness shapes.
RowSet cof_fin_image(const RowSet& a, uint32_t j) {
  std::vector<uint32_t> candidates;
  for (uint32_t k = 0; 2ull * k < j; ++k) candidates.push_back(k);
  for (uint32_t e : a.items)
    if ((static_cast<uint64_t>(e) + j) % 2 == 0) candidates.push_back(static_cast<uint32_t>((static_cast<uint64_t>(e) + j) / 2));
  candidates = vec_sorted(std::move(candidates));

  std::vector<uint32_t> excluded;
  for (uint32_t k : candidates) {
    bool member = false;
    if (2ull * j >= k && a.contains(static_cast<uint32_t>(2ull * j - k))) member = true;
    if (!member && (static_cast<uint64_t>(k) + j) % 2 == 0 &&
        a.contains(static_cast<uint32_t>((static_cast<uint64_t>(k) + j) / 2)))
      member = true;
    if (!member) excluded.push_back(k);
  }
  return {true, std::move(excluded)};
}

}  // namespace

RowSet e_image(const RowSet& a, const RowSet& b) {
  if (a.empty() || b.empty()) return RowSet::none();
  if (a.cofinite && b.cofinite) {
    // For any k pick d past both exclusion bounds: i = k + d, j = k + 2d.
    return RowSet::all();
  }
  if (!a.cofinite && !b.cofinite) {
    std::vector<uint32_t> out;
    for (uint32_t i : a.items)
      for (uint32_t j : b.items) {
        uint64_t I = i, J = j;
        if (2 * J >= I) out.push_back(static_cast<uint32_t>(2 * J - I));
        if (2 * I >= J) out.push_back(static_cast<uint32_t>(2 * I - J));
        if ((I + J) % 2 == 0) out.push_back(static_cast<uint32_t>((I + J) / 2));
      }
    return RowSet::of(std::move(out));
  }
  const RowSet& cof = a.cofinite ? a : b;
  const RowSet& fin = a.cofinite ? b : a;  // evenly_distributed is symmetric in i, j
  RowSet out = RowSet::none();
  for (uint32_t j : fin.items) out = row_union(out, cof_fin_image(cof, j));
  return out;
}

}  // namespace rablur
