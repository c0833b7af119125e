#include "rablur/term.hpp"

#include <bit>
#include <stdexcept>

namespace rablur {

namespace {

void require_blur_kind(const AtomSpec& spec, const char* who) {
  if (spec.kind == SpecKind::Alpha)
    throw std::invalid_argument(std::string(who) + ": term algebra requires a blur-style structure");
}

}  // namespace

uint32_t blur_slot(const AtomSpec& spec, uint32_t w, uint32_t p) {
  uint64_t mask = spec.blurs[w].mask;
  return static_cast<uint32_t>(std::popcount(mask & ((1ull << p) - 1)));
}

TermElement te_zero(const AtomSpec& spec) {
  require_blur_kind(spec, "te_zero");
  TermElement x;
  x.slices.resize(spec.blur_count());
  for (uint32_t w = 0; w < spec.blur_count(); ++w)
    x.slices[w].rows.assign(std::popcount(spec.blurs[w].mask), RowSet::none());
  return x;
}

TermElement te_one(const AtomSpec& spec) {
  TermElement x = te_zero(spec);
  x.has_id = true;
  for (auto& slice : x.slices)
    for (auto& rows : slice.rows) rows = RowSet::all();
  return x;
}

TermElement te_identity(const AtomSpec& spec) {
  TermElement x = te_zero(spec);
  x.has_id = true;
  return x;
}

TermElement te_atom(const AtomSpec& spec, const SymbolicAtom& a) {
  if (!spec.valid_atom(a)) throw std::invalid_argument("te_atom: atom does not belong to the structure");
  if (a.kind == SymbolicAtom::Kind::Identity) return te_identity(spec);
  TermElement x = te_zero(spec);
  x.slices[a.blur].rows[blur_slot(spec, a.blur, a.base)] = RowSet::of({a.row});
  return x;
}

TermElement te_full_blur(const AtomSpec& spec, uint32_t w) {
  TermElement x = te_zero(spec);
  if (w >= spec.blur_count()) throw std::invalid_argument("te_full_blur: blur index out of range");
  for (auto& rows : x.slices[w].rows) rows = RowSet::all();
  return x;
}

bool te_valid(const AtomSpec& spec, const TermElement& x) {
  if (x.slices.size() != spec.blur_count()) return false;
  for (uint32_t w = 0; w < spec.blur_count(); ++w) {
    const auto& slice = x.slices[w];
    if (slice.rows.size() != static_cast<size_t>(std::popcount(spec.blurs[w].mask))) return false;
    bool any_cof = false, any_fin = false;
    for (const auto& rows : slice.rows) (rows.cofinite ? any_cof : any_fin) = true;
    if (any_cof && any_fin) return false;
  }
  return true;
}

bool te_is_zero(const TermElement& x) {
  if (x.has_id) return false;
  for (const auto& slice : x.slices)
    for (const auto& rows : slice.rows)
      if (!rows.empty()) return false;
  return true;
}

bool te_contains(const AtomSpec& spec, const TermElement& x, const SymbolicAtom& a) {
  if (a.kind == SymbolicAtom::Kind::Identity) return x.has_id;
  if (!spec.valid_atom(a)) throw std::invalid_argument("te_contains: atom does not belong to the structure");
  return x.slices[a.blur].rows[blur_slot(spec, a.blur, a.base)].contains(a.row);
}

bool te_slice_cofinite(const TermElement& x, uint32_t w) {
  for (const auto& rows : x.slices[w].rows)
    if (!rows.cofinite) return false;
  return true;
}

bool te_slice_empty(const TermElement& x, uint32_t w) {
  for (const auto& rows : x.slices[w].rows)
    if (!rows.empty()) return false;
  return true;
}

TermElement te_join(const AtomSpec& spec, const TermElement& x, const TermElement& y) {
  (void)spec;
  TermElement r = x;
  r.has_id = x.has_id || y.has_id;
  for (size_t w = 0; w < r.slices.size(); ++w)
    for (size_t i = 0; i < r.slices[w].rows.size(); ++i)
      r.slices[w].rows[i] = row_union(x.slices[w].rows[i], y.slices[w].rows[i]);
  return r;
}

TermElement te_meet(const AtomSpec& spec, const TermElement& x, const TermElement& y) {
  (void)spec;
  TermElement r = x;
  r.has_id = x.has_id && y.has_id;
  for (size_t w = 0; w < r.slices.size(); ++w)
    for (size_t i = 0; i < r.slices[w].rows.size(); ++i)
      r.slices[w].rows[i] = row_intersect(x.slices[w].rows[i], y.slices[w].rows[i]);
  return r;
}

TermElement te_complement(const AtomSpec& spec, const TermElement& x) {
  (void)spec;
  TermElement r = x;
  r.has_id = !x.has_id;
  for (auto& slice : r.slices)
    for (auto& rows : slice.rows) rows = row_complement(rows);
  return r;
}

TermElement te_converse(const AtomSpec& spec, const TermElement& x) {
  (void)spec;
  return x;
}

TermElement compose(const AtomSpec& spec, const TermElement& x, const TermElement& y) {
  require_blur_kind(spec, "compose");
  TermElement r = te_zero(spec);
  if (x.has_id) r = te_join(spec, r, y);
  if (y.has_id) r = te_join(spec, r, x);
  if (!r.has_id) {
    // Identity sits below u;u for every common non-identity atom u.
    TermElement common = te_meet(spec, x, y);
    for (uint32_t w = 0; w < spec.blur_count() && !r.has_id; ++w)
      if (!te_slice_empty(common, w)) r.has_id = true;
  }

  std::vector<uint32_t> supp_x, supp_y;
  for (uint32_t w = 0; w < spec.blur_count(); ++w) {
    if (!te_slice_empty(x, w)) supp_x.push_back(w);
    if (!te_slice_empty(y, w)) supp_y.push_back(w);
  }

  std::vector<char> full(spec.blur_count(), 0);
  if (spec.sabotage != AtomSpec::Sabotage::DropDisjointRoute) {
    for (uint32_t sx : supp_x)
      for (uint32_t sy : supp_y) {
        uint64_t meet = spec.blurs[sx].mask & spec.blurs[sy].mask;
        for (uint32_t w = 0; w < spec.blur_count(); ++w)
          if ((meet & spec.blurs[w].mask) == 0) full[w] = 1;
      }
  }

  for (uint32_t sx : supp_x) {
    auto bases_x = spec.blur_bases(sx);
    for (uint32_t sy : supp_y) {
      auto bases_y = spec.blur_bases(sy);
      for (size_t pi = 0; pi < bases_x.size(); ++pi) {
        const RowSet& xr = x.slices[sx].rows[pi];
        if (xr.empty()) continue;
        for (size_t qi = 0; qi < bases_y.size(); ++qi) {
          const RowSet& yr = y.slices[sy].rows[qi];
          if (yr.empty()) continue;
          RowSet ks = e_image(xr, yr);
          if (ks.empty()) continue;
          for (uint32_t w = 0; w < spec.blur_count(); ++w) {
            if (full[w]) continue;
            auto bases_w = spec.blur_bases(w);
            for (size_t ri = 0; ri < bases_w.size(); ++ri)
              if (spec.base_consistent(bases_x[pi], bases_y[qi], bases_w[ri]))
                r.slices[w].rows[ri] = row_union(r.slices[w].rows[ri], ks);
          }
        }
      }
    }
  }

  for (uint32_t w = 0; w < spec.blur_count(); ++w)
    if (full[w])
      for (auto& rows : r.slices[w].rows) rows = RowSet::all();
  return r;
}

TermElement atom_comp(const AtomSpec& spec, const SymbolicAtom& a, const SymbolicAtom& b) {
  return compose(spec, te_atom(spec, a), te_atom(spec, b));
}

bool in_ultrafilter(const AtomSpec& spec, const TermElement& x, const UfLabel& u) {
  if (u.kind == UfLabel::Kind::Principal) return te_contains(spec, x, u.atom);
  if (u.blur >= spec.blur_count()) throw std::invalid_argument("in_ultrafilter: blur index out of range");
  return te_slice_cofinite(x, u.blur);
}

std::string uf_name(const AtomSpec& spec, const UfLabel& u) {
  if (u.kind == UfLabel::Kind::Principal) return "U^" + spec.atom_name(u.atom);
  return "U^E" + spec.blur_name(u.blur);
}

}  // namespace rablur
