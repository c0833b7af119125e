#include "rablur/representation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rablur {

namespace {

size_t pair_index(uint32_t u, uint32_t v) {
  if (u > v) std::swap(u, v);
  return static_cast<size_t>(v) * (v + 1) / 2 + u;
}

}  // namespace

const UfLabel& ColoredGraph::label(uint32_t u, uint32_t v) const { return labels[pair_index(u, v)]; }

ColoredGraph new_colored_graph(const AtomSpec& spec) {
  if (spec.kind == SpecKind::Alpha)
    throw std::invalid_argument("new_colored_graph: requires a blur-style structure");
  ColoredGraph g;
  g.spec = spec;
  g.n = 1;
  g.labels.assign(1, UfLabel::principal(SymbolicAtom::id()));
  return g;
}

std::vector<TermElement> default_generators(const AtomSpec& spec) {
  std::vector<TermElement> gens{te_identity(spec)};
  for (const auto& a : atoms_up_to(spec, 2))
    if (a.kind != SymbolicAtom::Kind::Identity) gens.push_back(te_atom(spec, a));
  for (uint32_t w = 0; w < spec.blur_count(); ++w) gens.push_back(te_full_blur(spec, w));
  return gens;
}

namespace {

// Least member of a finite-or-cofinite set.
uint32_t least_row(const RowSet& rows) {
  if (!rows.cofinite) return rows.items[0];
  uint32_t r = 0;
  while (rows.contains(r) == false) ++r;
  return r;
}

// Least atom of slice w of x by (row, base slot).
SymbolicAtom least_atom_in_slice(const AtomSpec& spec, const TermElement& x, uint32_t w) {
  auto bases = spec.blur_bases(w);
  uint32_t best_row = UINT32_MAX, best_slot = 0;
  for (size_t slot = 0; slot < bases.size(); ++slot) {
    const RowSet& rows = x.slices[w].rows[slot];
    if (rows.empty()) continue;
    uint32_t r = least_row(rows);
    if (r < best_row) {
      best_row = r;
      best_slot = static_cast<uint32_t>(slot);
    }
  }
  return SymbolicAtom::blur_atom(best_row, bases[best_slot], w);
}

// Least non-identity atom of x by (row, blur, base slot); requires one exists.
SymbolicAtom least_atom(const AtomSpec& spec, const TermElement& x) {
  uint32_t best_row = UINT32_MAX, best_w = 0, best_slot = 0;
  for (uint32_t w = 0; w < spec.blur_count(); ++w) {
    for (size_t slot = 0; slot < x.slices[w].rows.size(); ++slot) {
      const RowSet& rows = x.slices[w].rows[slot];
      if (rows.empty()) continue;
      uint32_t r = least_row(rows);
      if (r < best_row || (r == best_row && w < best_w)) {
        best_row = r;
        best_w = w;
        best_slot = static_cast<uint32_t>(slot);
      }
    }
  }
  if (best_row == UINT32_MAX) throw std::logic_error("least_atom: element has no atoms");
  return SymbolicAtom::blur_atom(best_row, spec.blur_bases(best_w)[best_slot], best_w);
}

bool has_any_atom(const TermElement& x) {
  for (const auto& slice : x.slices)
    for (const auto& rows : slice.rows)
      if (!rows.empty()) return true;
  return false;
}

struct DemandEntry {
  UfLabel f, k;
  bool auto_resolved = false;
  bool queued_once = false;
};

// Deterministic defect witnesses for a product known to lie in `target`.
DemandEntry find_witness(const AtomSpec& spec, const UfLabel& target, const TermElement& x,
                         const TermElement& y) {
  const bool sabotaged = spec.sabotage == AtomSpec::Sabotage::DropDisjointRoute;
  std::vector<uint32_t> supp_x, supp_y;
  for (uint32_t w = 0; w < spec.blur_count(); ++w) {
    if (!te_slice_empty(x, w)) supp_x.push_back(w);
    if (!te_slice_empty(y, w)) supp_y.push_back(w);
  }

  if (target.is_identity()) {
    TermElement common = te_meet(spec, x, y);
    if (has_any_atom(common)) {
      SymbolicAtom a = least_atom(spec, common);
      return {UfLabel::principal(a), UfLabel::principal(a), false};
    }
    return {target, target, true};  // identity through identity
  }

  if (target.kind == UfLabel::Kind::Principal) {
    const SymbolicAtom& a = target.atom;
    if (x.has_id && te_contains(spec, y, a)) return {UfLabel::principal(SymbolicAtom::id()), target, true};
    if (y.has_id && te_contains(spec, x, a)) return {target, UfLabel::principal(SymbolicAtom::id()), true};
    if (!sabotaged) {
      for (uint32_t sx : supp_x)
        for (uint32_t sy : supp_y)
          if ((spec.blurs[sx].mask & spec.blurs[sy].mask & spec.blurs[a.blur].mask) == 0)
            return {UfLabel::principal(least_atom_in_slice(spec, x, sx)),
                    UfLabel::principal(least_atom_in_slice(spec, y, sy)), false};
    }
    // Evenly distributed route toward row a.row at base a.base. Fixed search
    // order; the two finite-side scans enumerate every candidate row shape.
    const uint64_t k = a.row;
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
            if (!spec.base_consistent(bases_x[pi], bases_y[qi], a.base)) continue;
            auto done = [&](uint64_t i, uint64_t j) {
              return DemandEntry{
                  UfLabel::principal(SymbolicAtom::blur_atom(static_cast<uint32_t>(i), bases_x[pi], sx)),
                  UfLabel::principal(SymbolicAtom::blur_atom(static_cast<uint32_t>(j), bases_y[qi], sy)),
                  false};
            };
            // For fixed i, the rows j with evenly_distributed(i, j, k) are
            // exactly 2k-i, (i+k)/2, and 2i-k (those that land in range).
            auto partners = [](uint64_t i, uint64_t k, uint64_t (&cands)[3]) {
              size_t nc = 0;
              if (2 * k >= i) cands[nc++] = 2 * k - i;
              if ((i + k) % 2 == 0) cands[nc++] = (i + k) / 2;
              if (2 * i >= k) cands[nc++] = 2 * i - k;
              return nc;
            };
            if (!xr.cofinite) {
              for (uint32_t i : xr.items) {
                uint64_t cands[3];
                size_t nc = partners(i, k, cands);
                for (size_t t = 0; t < nc; ++t)
                  if (yr.contains(static_cast<uint32_t>(cands[t]))) return done(i, cands[t]);
              }
            } else if (!yr.cofinite) {
              for (uint32_t j : yr.items) {
                uint64_t cands[3];
                size_t nc = partners(j, k, cands);
                for (size_t t = 0; t < nc; ++t)
                  if (xr.contains(static_cast<uint32_t>(cands[t]))) return done(cands[t], j);
              }
            } else {
              uint64_t bound = k + xr.listed_bound() + yr.listed_bound() + 2;
              for (uint64_t d = 0; d <= bound; ++d) {
                if (xr.contains(static_cast<uint32_t>(k + d)) &&
                    yr.contains(static_cast<uint32_t>(k + 2 * d)))
                  return done(k + d, k + 2 * d);
                if (xr.contains(static_cast<uint32_t>(k + 2 * d)) &&
                    yr.contains(static_cast<uint32_t>(k + d)))
                  return done(k + 2 * d, k + d);
              }
            }
          }
        }
      }
    }
    throw std::logic_error("find_witness: no route to principal demand");
  }

  // Blur class target.
  const uint32_t w_target = target.blur;
  if (!sabotaged) {
    for (uint32_t sx : supp_x)
      for (uint32_t sy : supp_y)
        if ((spec.blurs[sx].mask & spec.blurs[sy].mask & spec.blurs[w_target].mask) == 0)
          return {UfLabel::principal(least_atom_in_slice(spec, x, sx)),
                  UfLabel::principal(least_atom_in_slice(spec, y, sy)), false};
  }
  for (uint32_t sx : supp_x)
    if (te_slice_cofinite(x, sx)) {
      if (has_any_atom(y)) return {UfLabel::blur_class(sx), UfLabel::principal(least_atom(spec, y)), false};
      return {target, UfLabel::principal(SymbolicAtom::id()), true};  // y is the identity
    }
  for (uint32_t sy : supp_y)
    if (te_slice_cofinite(y, sy)) {
      if (has_any_atom(x)) return {UfLabel::principal(least_atom(spec, x)), UfLabel::blur_class(sy), false};
      return {UfLabel::principal(SymbolicAtom::id()), target, true};  // x is the identity
    }
  throw std::logic_error("find_witness: no route to blur demand");
}

}  // namespace

uint32_t extend(ColoredGraph& g, const Defect& d) {
  const AtomSpec& spec = g.spec;
  if (d.x >= g.n || d.y >= g.n) throw std::invalid_argument("extend: defect nodes out of range");
  if (d.f.is_identity() || d.k.is_identity())
    throw std::invalid_argument("extend: identity-labeled defects are already resolved");
  if (!uf_triple_consistent(spec, g.label(d.x, d.y), d.f, d.k))
    throw std::logic_error("extend: defect labels are not consistent with the pair label");

  uint32_t z = g.n;
  g.labels.resize(pair_index(z, z) + 1);
  g.n = z + 1;
  g.labels[pair_index(z, z)] = UfLabel::principal(SymbolicAtom::id());
  g.labels[pair_index(z, d.x)] = d.f;
  g.labels[pair_index(z, d.y)] = d.k;

  StepRecord rec;
  rec.step = static_cast<uint32_t>(g.log.size());
  rec.defect = d;
  rec.new_node = z;
  for (uint32_t p = 0; p < z; ++p) {
    if (p == d.x || p == d.y) continue;
    uint32_t chosen = spec.blur_count();
    for (uint32_t w = 0; w < spec.blur_count(); ++w) {
      UfLabel cand = UfLabel::blur_class(w);
      if (uf_triple_consistent(spec, cand, d.f, g.label(d.x, p)) &&
          uf_triple_consistent(spec, cand, d.k, g.label(d.y, p))) {
        chosen = w;
        break;
      }
    }
    if (chosen == spec.blur_count()) {
      std::ostringstream why;
      why << "no blur class labels edge (" << z << "," << p << ") consistently; defect at (" << d.x
          << "," << d.y << ") f=" << uf_name(spec, d.f) << " k=" << uf_name(spec, d.k);
      throw NoBlurAvailable(why.str());
    }
    g.labels[pair_index(z, p)] = UfLabel::blur_class(chosen);
    rec.filler_blurs.push_back(chosen);
  }
  g.log.push_back(std::move(rec));
  return z;
}

SaturationStats saturate(ColoredGraph& g, uint32_t steps, const std::vector<TermElement>& generators) {
  const AtomSpec& spec = g.spec;
  const size_t gcount = generators.size();
  std::vector<std::vector<TermElement>> products(gcount);
  for (size_t i = 0; i < gcount; ++i) {
    products[i].reserve(gcount);
    for (size_t j = 0; j < gcount; ++j) products[i].push_back(compose(spec, generators[i], generators[j]));
  }

  std::map<UfLabel, std::vector<DemandEntry>> demand_cache;
  auto demands_for = [&](const UfLabel& label) -> std::vector<DemandEntry>& {
    auto it = demand_cache.find(label);
    if (it != demand_cache.end()) return it->second;
    std::vector<DemandEntry> list;
    std::set<std::pair<UfLabel, UfLabel>> seen;
    for (size_t i = 0; i < gcount; ++i)
      for (size_t j = 0; j < gcount; ++j) {
        if (!in_ultrafilter(spec, products[i][j], label)) continue;
        DemandEntry entry = find_witness(spec, label, generators[i], generators[j]);
        if (seen.insert({entry.f, entry.k}).second) list.push_back(entry);
      }
    return demand_cache.emplace(label, std::move(list)).first->second;
  };

  auto process_pair = [&](uint32_t u, uint32_t v) {
    const UfLabel& label = g.label(u, v);
    for (auto& entry : demands_for(label)) {
      if (entry.auto_resolved) {
        ++g.auto_resolved;
        continue;
      }
      if (entry.queued_once) continue;
      auto key = std::make_tuple(label, entry.f, entry.k);
      if (g.scheduled.count(key)) {
        entry.queued_once = true;  // scheduled in an earlier saturate call
        continue;
      }
      g.scheduled[key] = true;
      entry.queued_once = true;
      g.queue.push_back({u, v, entry.f, entry.k});
      ++g.enqueued;
    }
  };

  for (uint32_t v = g.demanded_through; v < g.n; ++v)
    for (uint32_t u = 0; u <= v; ++u) process_pair(u, v);
  g.demanded_through = g.n;

  SaturationStats stats;
  while (stats.steps < steps && !g.queue.empty()) {
    Defect d = g.queue.front();
    g.queue.pop_front();
    uint32_t z = extend(g, d);
    for (uint32_t u = 0; u <= z; ++u) process_pair(u, z);
    g.demanded_through = g.n;
    ++stats.steps;
  }
  stats.nodes = g.n;
  stats.enqueued = g.enqueued;
  stats.auto_resolved = g.auto_resolved;
  stats.queue_left = g.queue.size();
  return stats;
}

std::vector<std::pair<uint32_t, uint32_t>> rep_pairs(const ColoredGraph& g, const TermElement& x) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint32_t u = 0; u < g.n; ++u)
    for (uint32_t v = 0; v < g.n; ++v)
      if (in_ultrafilter(g.spec, x, g.label(u, v))) out.emplace_back(u, v);
  return out;
}

std::string export_step_log(const ColoredGraph& g) {
  std::ostringstream out;
  for (const auto& rec : g.log) {
    out << "step " << rec.step << " at " << rec.defect.x << "," << rec.defect.y << " label "
        << uf_name(g.spec, g.label(rec.defect.x, rec.defect.y)) << " f " << uf_name(g.spec, rec.defect.f)
        << " k " << uf_name(g.spec, rec.defect.k) << " new " << rec.new_node << " fill ";
    if (rec.filler_blurs.empty()) {
      out << "-";
    } else {
      for (size_t i = 0; i < rec.filler_blurs.size(); ++i) {
        if (i) out << ",";
        out << rec.filler_blurs[i];
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string RepVerification::summary() const {
  std::ostringstream out;
  out << (ok() ? "representation checks passed" : "representation checks FAILED") << " (triangles="
      << triangles_checked << " booleans=" << boolean_checks << " products=" << product_checks
      << " witnesses=" << witnesses_checked << " pending=" << pending
      << " violations=" << violations.size() << ")";
  return out.str();
}

RepVerification verify_representation(const ColoredGraph& g, const std::vector<TermElement>& samples,
                                      uint32_t sample_nodes) {
  const AtomSpec& spec = g.spec;
  RepVerification rep;
  rep.pending = g.queue.size();

  // Membership bitsets over ordered node pairs.
  auto bits_of = [&](const TermElement& x) {
    AtomSet bits = AtomSet::none(g.n * g.n);
    for (uint32_t u = 0; u < g.n; ++u)
      for (uint32_t v = u; v < g.n; ++v)
        if (in_ultrafilter(spec, x, g.label(u, v))) {
          bits.set(u * g.n + v);
          bits.set(v * g.n + u);
        }
    return bits;
  };

  const size_t nb = std::min<size_t>(samples.size(), 12);
  std::vector<AtomSet> sample_bits;
  for (size_t i = 0; i < nb; ++i) sample_bits.push_back(bits_of(samples[i]));
  for (size_t i = 0; i < nb; ++i) {
    {
      AtomSet expect = bits_of(te_complement(spec, samples[i]));
      AtomSet got = AtomSet::all(g.n * g.n);
      for (size_t wd = 0; wd < got.words.size(); ++wd) got.words[wd] &= ~sample_bits[i].words[wd];
      ++rep.boolean_checks;
      if (!(expect == got)) rep.violations.push_back("complement mismatch at sample " + std::to_string(i));
    }
    for (size_t j = i + 1; j < nb; ++j) {
      AtomSet meet = sample_bits[i];
      meet &= sample_bits[j];
      ++rep.boolean_checks;
      if (!(bits_of(te_meet(spec, samples[i], samples[j])) == meet))
        rep.violations.push_back("meet mismatch at samples " + std::to_string(i) + "," + std::to_string(j));
      AtomSet join = sample_bits[i];
      join |= sample_bits[j];
      ++rep.boolean_checks;
      if (!(bits_of(te_join(spec, samples[i], samples[j])) == join))
        rep.violations.push_back("join mismatch at samples " + std::to_string(i) + "," + std::to_string(j));
    }
  }

  for (uint32_t u = 0; u < g.n; ++u)
    for (uint32_t v = u; v < g.n; ++v)
      for (uint32_t w = v; w < g.n; ++w) {
        ++rep.triangles_checked;
        if (!uf_triple_consistent(spec, g.label(u, v), g.label(v, w), g.label(u, w))) {
          rep.violations.push_back("inconsistent triangle (" + std::to_string(u) + "," +
                                   std::to_string(v) + "," + std::to_string(w) + ")");
          if (rep.violations.size() > 32) return rep;
        }
      }

  // Forward product containment on a node window.
  const uint32_t window = std::min(g.n, sample_nodes);
  const size_t np = std::min<size_t>(samples.size(), 6);
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j) {
      TermElement prod = compose(spec, samples[i], samples[j]);
      ++rep.product_checks;
      bool bad = false;
      for (uint32_t u = 0; u < window && !bad; ++u)
        for (uint32_t z = 0; z < window && !bad; ++z) {
          if (!in_ultrafilter(spec, samples[i], g.label(u, z))) continue;
          for (uint32_t v = 0; v < window && !bad; ++v) {
            if (!in_ultrafilter(spec, samples[j], g.label(z, v))) continue;
            if (!in_ultrafilter(spec, prod, g.label(u, v))) {
              rep.violations.push_back("product not reflected at samples " + std::to_string(i) + "," +
                                       std::to_string(j) + " nodes (" + std::to_string(u) + "," +
                                       std::to_string(z) + "," + std::to_string(v) + ")");
              bad = true;
            }
          }
        }
    }

  std::set<UfLabel> present;
  for (uint32_t u = 0; u < g.n; ++u)
    for (uint32_t v = u; v < g.n; ++v) present.insert(g.label(u, v));
  std::set<std::tuple<UfLabel, UfLabel, UfLabel>> dequeued;
  for (const auto& recd : g.log) {
    ++rep.witnesses_checked;
    if (!(g.label(recd.new_node, recd.defect.x) == recd.defect.f) ||
        !(g.label(recd.new_node, recd.defect.y) == recd.defect.k))
      rep.violations.push_back("witness edges of step " + std::to_string(recd.step) + " were not kept");
    size_t fi = 0;
    bool fill_ok = true;
    for (uint32_t p = 0; p < recd.new_node && fill_ok; ++p) {
      if (p == recd.defect.x || p == recd.defect.y) continue;
      fill_ok = fi < recd.filler_blurs.size() &&
                g.label(recd.new_node, p) == UfLabel::blur_class(recd.filler_blurs[fi]);
      ++fi;
    }
    if (!fill_ok || fi != recd.filler_blurs.size())
      rep.violations.push_back("filler edges of step " + std::to_string(recd.step) +
                               " disagree with the record");
    dequeued.insert({g.label(recd.defect.x, recd.defect.y), recd.defect.f, recd.defect.k});
  }
  for (const auto& a : atoms_up_to(spec, 2)) {
    if (a.kind == SymbolicAtom::Kind::Identity) continue;
    UfLabel ua = UfLabel::principal(a);
    UfLabel id = UfLabel::principal(SymbolicAtom::id());
    if (dequeued.count({id, ua, ua}) && !present.count(ua))
      rep.violations.push_back("atom " + spec.atom_name(a) + " resolved but carries no edge");
  }
  return rep;
}

std::optional<uint32_t> AtomLabeledGraph::label(uint32_t u, uint32_t v) const {
  return labels[pair_index(u, v)];
}

void AtomLabeledGraph::set_label(uint32_t u, uint32_t v, uint32_t atom) {
  labels[pair_index(u, v)] = atom;
}

AtomLabeledGraph make_atom_graph(uint32_t n) {
  AtomLabeledGraph g;
  g.n = n;
  g.labels.assign(static_cast<size_t>(n) * (n + 1) / 2, std::nullopt);
  return g;
}

MSquareResult is_m_square(const AtomLabeledGraph& g, const FiniteAtomStructure& s, uint32_t m) {
  if (m <= 1) return {true, "no cliques below size 1"};
  // Subset count guard.
  double subsets = 0, binom = 1;
  for (uint32_t k = 0; k < m && k <= g.n; ++k) {
    subsets += binom;
    binom = binom * (g.n - k) / (k + 1);
  }
  if (subsets > 2e6) throw std::length_error("is_m_square: too many cliques to enumerate");

  auto check_clique = [&](const std::vector<uint32_t>& cset) -> std::optional<std::string> {
    for (size_t i = 0; i < cset.size(); ++i)
      for (size_t j = i; j < cset.size(); ++j)
        if (!g.label(cset[i], cset[j])) return std::nullopt;  // not fully labeled, skip
    for (uint32_t x : cset)
      for (uint32_t y : cset) {
        uint32_t lxy = *g.label(x, y);
        for (uint32_t a = 0; a < s.n(); ++a)
          for (uint32_t b = 0; b < s.n(); ++b) {
            if (!s.consistent(a, b, lxy)) continue;
            bool found = false;
            for (uint32_t z = 0; z < g.n && !found; ++z) {
              if (g.label(x, z) != std::optional<uint32_t>(a)) continue;
              if (g.label(z, y) != std::optional<uint32_t>(b)) continue;
              bool attached = true;
              for (uint32_t p : cset)
                if (!g.label(z, p)) {
                  attached = false;
                  break;
                }
              if (attached) found = true;
            }
            if (!found) {
              std::ostringstream why;
              why << "clique {";
              for (size_t t = 0; t < cset.size(); ++t) why << (t ? "," : "") << cset[t];
              why << "} cannot reach (" << s.names[a] << "," << s.names[b] << ") over (" << x << ","
                  << y << ")";
              return why.str();
            }
          }
      }
    return std::nullopt;
  };

  std::string detail;
  bool square = true;
  for (uint32_t size = 1; size < m && size <= g.n && square; ++size) {
    std::vector<uint32_t> cset(size);
    for (uint32_t i = 0; i < size; ++i) cset[i] = i;
    while (true) {
      if (auto why = check_clique(cset)) {
        square = false;
        detail = *why;
        break;
      }
      // Advance to the next size-subset of {0..n-1} in lexicographic order.
      uint32_t pos = size;
      while (pos > 0 && cset[pos - 1] == g.n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++cset[pos - 1];
      for (uint32_t i = pos; i < size; ++i) cset[i] = cset[i - 1] + 1;
    }
  }
  return {square, detail};
}

}  // namespace rablur
