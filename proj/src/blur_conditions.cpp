#include "rablur/blur_conditions.hpp"

#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rablur {

namespace {

void require_blur_kind(const AtomSpec& spec, const char* who) {
  if (spec.kind == SpecKind::Alpha)
    throw std::invalid_argument(std::string(who) + ": requires a blur-style structure");
}

}  // namespace

bool uf_triple_consistent(const AtomSpec& spec, const UfLabel& f, const UfLabel& g, const UfLabel& k) {
  require_blur_kind(spec, "uf_triple_consistent");
  const UfLabel* labels[3] = {&f, &g, &k};
  std::vector<const SymbolicAtom*> atoms;
  std::vector<uint32_t> classes;
  for (const auto* u : labels) {
    if (u->kind == UfLabel::Kind::Principal)
      atoms.push_back(&u->atom);
    else
      classes.push_back(u->blur);
  }
  switch (atoms.size()) {
    case 3:
      return spec.consistent(*atoms[0], *atoms[1], *atoms[2]);
    case 2: {
      // Two atoms must compose across all of E^W; only the disjoint-blur
      // route produces cofinitely many rows there.
      if (atoms[0]->kind == SymbolicAtom::Kind::Identity ||
          atoms[1]->kind == SymbolicAtom::Kind::Identity)
        return false;
      if (spec.sabotage == AtomSpec::Sabotage::DropDisjointRoute) return false;
      return (spec.blurs[atoms[0]->blur].mask & spec.blurs[atoms[1]->blur].mask &
              spec.blurs[classes[0]].mask) == 0;
    }
    case 1:
      // Cofinite slices compose onto every non-identity atom; the identity
      // needs the two classes to share their carrier.
      if (atoms[0]->kind == SymbolicAtom::Kind::Identity) return classes[0] == classes[1];
      return true;
    default:
      return true;
  }
}

TermElement uf_representative(const AtomSpec& spec, const UfLabel& u, uint32_t depth) {
  if (u.kind == UfLabel::Kind::Principal) return te_atom(spec, u.atom);
  TermElement x = te_zero(spec);
  std::vector<uint32_t> low(depth);
  for (uint32_t r = 0; r < depth; ++r) low[r] = r;
  for (auto& rows : x.slices[u.blur].rows) rows = RowSet::all_but(low);
  return x;
}

bool uf_triple_consistent_semantic(const AtomSpec& spec, const UfLabel& f, const UfLabel& g,
                                   const UfLabel& k, uint32_t depth) {
  TermElement rf = uf_representative(spec, f, depth);
  TermElement rg = uf_representative(spec, g, depth);
  TermElement rk = uf_representative(spec, k, depth);
  return in_ultrafilter(spec, compose(spec, rf, rg), k) &&
         in_ultrafilter(spec, compose(spec, rf, rk), g) &&
         in_ultrafilter(spec, compose(spec, rk, rg), f);
}

namespace {

struct Combo {
  uint32_t base = 0;
  uint32_t blur = 0;
};

std::vector<Combo> base_blur_combos(const AtomSpec& spec) {
  std::vector<Combo> out;
  for (uint32_t w = 0; w < spec.blur_count(); ++w)
    for (uint32_t p : spec.blur_bases(w)) out.push_back({p, w});
  return out;
}

std::string atom_label_name(const AtomSpec& spec, const UfLabel& u) { return uf_name(spec, u); }

}  // namespace

std::string BlurConditionReport::summary() const {
  std::ostringstream out;
  out << (empty() ? "blur conditions hold" : "blur conditions violated") << " ("
      << (exhaustive ? "exhaustive" : "sampled") << "; i=" << checked_composition
      << " ii=" << checked_classes << " iii=" << checked_meets << " violations=" << items.size()
      << ")";
  return out.str();
}

BlurConditionReport check_blur_conditions(const AtomSpec& spec, const BlurConditionOptions& opts) {
  require_blur_kind(spec, "check_blur_conditions");
  BlurConditionReport report;
  report.exhaustive = opts.exhaustive;
  auto combos = base_blur_combos(spec);
  const uint32_t nblur = spec.blur_count();
  const uint32_t row_reps = std::max<uint32_t>(1, opts.row_reps);

  std::vector<std::pair<uint32_t, uint32_t>> row_pairs{{0, 0}};
  for (uint32_t d = 1; d < row_reps; ++d) {
    row_pairs.emplace_back(0, d);
    row_pairs.emplace_back(d, 0);
  }

  auto check_i_instance = [&](const SymbolicAtom& a, const SymbolicAtom& b, uint32_t w3) {
    ++report.checked_composition;
    UfLabel ua = UfLabel::principal(a), ub = UfLabel::principal(b), uw = UfLabel::blur_class(w3);
    if (!uf_triple_consistent_semantic(spec, ua, ub, uw, opts.depth)) {
      report.items.push_back(
          {1, "atoms " + atom_label_name(spec, ua) + ", " + atom_label_name(spec, ub) +
                  " with disjoint blur class " + atom_label_name(spec, uw) +
                  " fail semantic composition"});
    }
  };

  auto check_ii_instance = [&](const UfLabel& l1, const UfLabel& l2, const UfLabel& l3) {
    ++report.checked_classes;
    if (!uf_triple_consistent_semantic(spec, l1, l2, l3, opts.depth)) {
      report.items.push_back({2, "classes " + atom_label_name(spec, l1) + ", " +
                                     atom_label_name(spec, l2) + ", " + atom_label_name(spec, l3) +
                                     " fail semantic consistency"});
    }
  };

  if (opts.exhaustive) {
    // (i) over base/blur combos modulo row shifts.
    for (const auto& c1 : combos)
      for (const auto& c2 : combos) {
        uint64_t meet = spec.blurs[c1.blur].mask & spec.blurs[c2.blur].mask;
        for (uint32_t w3 = 0; w3 < nblur; ++w3) {
          if (meet & spec.blurs[w3].mask) continue;
          for (auto [i, j] : row_pairs)
            check_i_instance(SymbolicAtom::blur_atom(i, c1.base, c1.blur),
                             SymbolicAtom::blur_atom(j, c2.base, c2.blur), w3);
        }
      }
    // (ii): triples with at least two blur classes, no identity label.
    for (uint32_t w1 = 0; w1 < nblur; ++w1)
      for (uint32_t w2 = w1; w2 < nblur; ++w2) {
        for (uint32_t w3 = w2; w3 < nblur; ++w3)
          check_ii_instance(UfLabel::blur_class(w1), UfLabel::blur_class(w2),
                            UfLabel::blur_class(w3));
        for (const auto& c : combos)
          for (uint32_t d = 0; d < row_reps; ++d)
            check_ii_instance(UfLabel::blur_class(w1), UfLabel::blur_class(w2),
                              UfLabel::principal(SymbolicAtom::blur_atom(d, c.base, c.blur)));
      }
  } else {
    std::mt19937_64 rng(opts.seed);
    auto pick_combo = [&]() { return combos[rng() % combos.size()]; };
    uint32_t done = 0;
    uint64_t guard = 0;
    while (done < opts.samples && ++guard < 200ull * opts.samples) {
      auto c1 = pick_combo();
      auto c2 = pick_combo();
      uint32_t w3 = static_cast<uint32_t>(rng() % nblur);
      if ((spec.blurs[c1.blur].mask & spec.blurs[c2.blur].mask & spec.blurs[w3].mask) != 0) continue;
      check_i_instance(
          SymbolicAtom::blur_atom(rng() % row_reps, c1.base, c1.blur),
          SymbolicAtom::blur_atom(rng() % row_reps, c2.base, c2.blur), w3);
      ++done;
    }
    for (uint32_t t = 0; t < opts.samples; ++t) {
      uint32_t w1 = static_cast<uint32_t>(rng() % nblur);
      uint32_t w2 = static_cast<uint32_t>(rng() % nblur);
      if (rng() & 1) {
        check_ii_instance(UfLabel::blur_class(w1), UfLabel::blur_class(w2),
                          UfLabel::blur_class(static_cast<uint32_t>(rng() % nblur)));
      } else {
        auto c = pick_combo();
        check_ii_instance(UfLabel::blur_class(w1), UfLabel::blur_class(w2),
                          UfLabel::principal(SymbolicAtom::blur_atom(rng() % row_reps, c.base, c.blur)));
      }
    }
  }

  // (iii): meets of composition results still land in a common blur class.
  // The meet's cofinite part only depends on the blur masks, so distinct mask
  // pairs classify all atom quadruples.
  {
    std::set<uint64_t> seen;
    std::vector<std::pair<uint64_t, std::pair<uint32_t, uint32_t>>> meets;
    for (uint32_t s = 0; s < nblur; ++s)
      for (uint32_t z = 0; z < nblur; ++z) {
        uint64_t m = spec.blurs[s].mask & spec.blurs[z].mask;
        if (seen.insert(m).second) meets.push_back({m, {s, z}});
      }
    uint32_t semantic_budget = 50;
    for (const auto& [m1, sz1] : meets)
      for (const auto& [m2, sz2] : meets) {
        ++report.checked_meets;
        uint32_t found = nblur;
        for (uint32_t w = 0; w < nblur; ++w)
          if ((spec.blurs[w].mask & (m1 | m2)) == 0) {
            found = w;
            break;
          }
        if (found == nblur) {
          report.items.push_back(
              {3, "no blur class avoids both " + spec.blur_name(sz1.first) + "*" +
                      spec.blur_name(sz1.second) + " and " + spec.blur_name(sz2.first) + "*" +
                      spec.blur_name(sz2.second)});
          continue;
        }
        if (semantic_budget > 0) {
          --semantic_budget;
          auto first_base = [&](uint32_t w) { return spec.blur_bases(w)[0]; };
          SymbolicAtom a = SymbolicAtom::blur_atom(0, first_base(sz1.first), sz1.first);
          SymbolicAtom b = SymbolicAtom::blur_atom(0, first_base(sz1.second), sz1.second);
          SymbolicAtom c = SymbolicAtom::blur_atom(0, first_base(sz2.first), sz2.first);
          SymbolicAtom d = SymbolicAtom::blur_atom(0, first_base(sz2.second), sz2.second);
          TermElement t = te_meet(spec, atom_comp(spec, a, b), atom_comp(spec, c, d));
          if (!in_ultrafilter(spec, t, UfLabel::blur_class(found)))
            report.items.push_back({3, "witness meet not cofinite in " + spec.blur_name(found)});
        }
      }
  }
  return report;
}

bool n_complex_blur(const FiniteAtomStructure& m, const std::vector<Blur>& blurs, uint32_t n,
                    bool universal) {
  if (n == 0) throw std::invalid_argument("n_complex_blur: n must be positive");
  uint32_t bases = m.n() - 1;
  if (bases == 0) return true;  // no tuples to check
  if (bases > 64) throw std::length_error("n_complex_blur: base size limited to 64");
  std::set<uint64_t> level;
  for (uint32_t p = 0; p < bases; ++p)
    for (uint32_t q = 0; q < bases; ++q) {
      uint64_t mask = 0;
      for (uint32_t r = 0; r < bases; ++r)
        if (m.consistent(p + 1, q + 1, r + 1)) mask |= 1ull << r;
      level.insert(mask);
    }
  const std::set<uint64_t> rows = level;
  std::set<uint64_t> reachable = level;
  for (uint32_t t = 1; t < n; ++t) {
    std::set<uint64_t> next;
    for (uint64_t a : level)
      for (uint64_t b : rows) next.insert(a & b);
    level = std::move(next);
    reachable.insert(level.begin(), level.end());
    if (reachable.size() > 200000) throw std::length_error("n_complex_blur: state explosion");
  }
  for (uint64_t meet : reachable) {
    if (universal) {
      for (const auto& w : blurs)
        if ((w.mask & meet) == 0) return false;
    } else {
      bool hit = false;
      for (const auto& w : blurs)
        if (w.mask & meet) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
  }
  return true;
}

}  // namespace rablur
