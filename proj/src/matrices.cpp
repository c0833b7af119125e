#include "rablur/matrices.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rablur {

std::vector<BasicMatrix> enumerate_matrices(const FiniteAtomStructure& s, uint32_t n,
                                            uint64_t guard) {
  if (n == 0) return {};
  const uint32_t id = s.id_atom;
  BasicMatrix m;
  m.n = n;
  m.e.assign(static_cast<size_t>(n) * n, id);

  std::vector<BasicMatrix> out;
  uint64_t trials = 0;
  auto entry = [&](uint32_t i, uint32_t j) -> uint32_t& { return m.e[static_cast<size_t>(i) * n + j]; };

  // Assign the pair (i, j), i < j, after every pair with a smaller j and every
  // (u, j) with u < i. A triangle {k, i, j} is checked (all six orientations)
  // at the slot that completes it, which is the one with k < i here; triangles
  // through a node between i and j complete at a later slot of the same j.
  auto admissible = [&](uint32_t i, uint32_t j, uint32_t a) {
    uint32_t ac = s.conv[a];
    if (!s.consistent(id, a, a) || !s.consistent(a, id, a)) return false;
    if (!s.consistent(id, ac, ac) || !s.consistent(ac, id, ac)) return false;
    if (!s.consistent(a, ac, id) || !s.consistent(ac, a, id)) return false;
    for (uint32_t k = 0; k < i; ++k) {
      uint32_t ik = entry(i, k), ki = entry(k, i), jk = entry(j, k), kj = entry(k, j);
      if (!s.consistent(ik, kj, a) || !s.consistent(jk, ki, ac)) return false;
      if (!s.consistent(a, jk, ik) || !s.consistent(kj, ac, ki)) return false;
      if (!s.consistent(ac, ik, jk) || !s.consistent(ki, a, kj)) return false;
    }
    return true;
  };

  struct Slot {
    uint32_t i, j;
  };
  std::vector<Slot> slots;
  for (uint32_t j = 1; j < n; ++j)
    for (uint32_t i = 0; i < j; ++i) slots.push_back({i, j});

  auto dfs = [&](auto&& self, size_t depth) -> void {
    if (depth == slots.size()) {
      out.push_back(m);
      if (out.size() > guard) throw std::length_error("enumerate_matrices: too many matrices");
      return;
    }
    auto [i, j] = slots[depth];
    for (uint32_t a = 0; a < s.n(); ++a) {
      if (++trials > guard * 64) throw std::length_error("enumerate_matrices: search too large");
      if (!admissible(i, j, a)) continue;
      entry(i, j) = a;
      entry(j, i) = s.conv[a];
      self(self, depth + 1);
    }
    entry(i, j) = id;
    entry(j, i) = id;
  };
  dfs(dfs, 0);
  return out;
}

namespace {

// Distinct intersection masks mask(Z) & mask(S) over blurs Z containing base d
// and S containing base e. Bases here are structure atoms minus the identity.
std::vector<uint64_t> intersection_masks(const std::vector<Blur>& blurs, uint32_t d_base,
                                         uint32_t e_base) {
  std::set<uint64_t> seen;
  for (const auto& z : blurs) {
    if (!((z.mask >> d_base) & 1)) continue;
    for (const auto& sblur : blurs)
      if ((sblur.mask >> e_base) & 1) seen.insert(z.mask & sblur.mask);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

BasisReport check_cylindric_basis(const FiniteAtomStructure& s, const std::vector<Blur>& blurs,
                                  uint32_t n, const std::vector<BasicMatrix>& matrices) {
  if (n < 2) throw std::invalid_argument("check_cylindric_basis: need dimension at least 2");
  for (const auto& m : matrices)
    if (m.n != n) throw std::invalid_argument("check_cylindric_basis: matrix dimension mismatch");
  const uint32_t id = s.id_atom;

  BasisReport report;
  // Memoized verdicts per demand multiset; demands are unordered because the
  // possible intersection masks do not depend on the side the atom sits on.
  std::map<std::vector<std::pair<uint32_t, uint32_t>>, std::pair<bool, std::string>> memo;

  auto patchable = [&](const std::vector<std::pair<uint32_t, uint32_t>>& raw_demands)
      -> std::pair<bool, std::string> {
    std::vector<std::pair<uint32_t, uint32_t>> sig;
    for (auto [d, e] : raw_demands) sig.emplace_back(std::min(d, e), std::max(d, e));
    std::sort(sig.begin(), sig.end());
    auto it = memo.find(sig);
    if (it != memo.end()) return it->second;

    auto conclude = [&](bool ok, std::string why) {
      return memo.emplace(sig, std::make_pair(ok, std::move(why))).first->second;
    };

    // An identity demand welds the new node to an old one and forces the
    // patch to be that literal atom; everything must then match atomically.
    uint32_t forced = UINT32_MAX;
    for (auto [d, e] : raw_demands) {
      uint32_t c = (d == id) ? e : (e == id) ? d : UINT32_MAX;
      if (c == UINT32_MAX) continue;
      if (forced != UINT32_MAX && forced != c)
        return conclude(false, "identity demands force both " + s.names[forced] + " and " + s.names[c]);
      forced = c;
    }
    if (forced != UINT32_MAX) {
      for (auto [d, e] : raw_demands)
        if (!s.consistent(d, e, forced))
          return conclude(false, "forced patch " + s.names[forced] + " breaks demand (" + s.names[d] +
                                     "," + s.names[e] + ")");
      return conclude(true, "");
    }

    // All demands blurred: a single class W must survive every way the two
    // sides can be blurred, i.e. every tuple of per-demand intersection masks.
    std::vector<std::vector<uint64_t>> tk;
    uint64_t product = 1;
    for (auto [d, e] : sig) {
      tk.push_back(intersection_masks(blurs, d - 1, e - 1));
      if (tk.back().empty()) return conclude(false, "no blur covers " + s.names[d] + " or " + s.names[e]);
      product *= tk.back().size();
      if (product > 100000)
        throw std::length_error("check_cylindric_basis: demand tuple space too large");
    }
    std::vector<size_t> pick(tk.size(), 0);
    while (true) {
      uint64_t blocked = 0;
      for (size_t t = 0; t < tk.size(); ++t) blocked |= tk[t][pick[t]];
      bool found = false;
      for (const auto& w : blurs)
        if ((w.mask & blocked) == 0) {
          found = true;
          break;
        }
      if (!found) {
        std::ostringstream why;
        why << "no class avoids mask 0x" << std::hex << blocked;
        return conclude(false, why.str());
      }
      size_t pos = 0;
      while (pos < pick.size() && ++pick[pos] == tk[pos].size()) pick[pos++] = 0;
      if (pos == pick.size()) break;
    }
    return conclude(true, "");
  };

  for (uint32_t i = 0; i + 1 < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) {
      // Group by the entries that do not touch rows i and j.
      std::map<std::vector<uint32_t>, std::vector<size_t>> buckets;
      for (size_t idx = 0; idx < matrices.size(); ++idx) {
        std::vector<uint32_t> core;
        for (uint32_t u = 0; u < n; ++u) {
          if (u == i || u == j) continue;
          for (uint32_t v = 0; v < n; ++v) {
            if (v == i || v == j) continue;
            core.push_back(matrices[idx].at(u, v));
          }
        }
        buckets[std::move(core)].push_back(idx);
      }
      for (const auto& [core, members] : buckets)
        for (size_t a : members)
          for (size_t b : members) {
            ++report.pairs_checked;
            const BasicMatrix& m = matrices[a];
            const BasicMatrix& mp = matrices[b];
            std::vector<std::pair<uint32_t, uint32_t>> demands;
            for (uint32_t k = 0; k < n; ++k) {
              if (k == i || k == j) continue;
              demands.emplace_back(mp.at(i, k), m.at(j, k));
            }
            auto [ok, why] = patchable(demands);
            if (!ok && report.failures.size() < 64)
              report.failures.push_back({i, j, m, mp, why});
          }
    }
  return report;
}

std::string alpha_m_descriptor(const FiniteAtomStructure& s, const BasicMatrix& m) {
  if (m.n < 2) throw std::invalid_argument("alpha_m_descriptor: need at least two points");
  std::ostringstream out;
  bool first = true;
  for (uint32_t i = 0; i < m.n; ++i)
    for (uint32_t j = i + 1; j < m.n; ++j) {
      uint32_t a = m.at(i, j);
      if (a >= s.n()) throw std::invalid_argument("alpha_m_descriptor: entry out of range");
      if (!first) out << " & ";
      first = false;
      if (a == s.id_atom)
        out << "x" << i << "=x" << j;
      else
        out << s.names[a] << "(x" << i << ",x" << j << ")";
    }
  return out.str();
}

BasicMatrix parse_alpha_m_descriptor(const FiniteAtomStructure& s, const std::string& text) {
  std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> conjuncts;  // (i, j, atom)
  uint32_t max_index = 0;

  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("parse_alpha_m_descriptor: " + why + " near position " +
                                std::to_string(pos));
  };
  auto read_var = [&](const std::string& tok, size_t& at) -> uint32_t {
    if (at >= tok.size() || tok[at] != 'x') fail("expected variable");
    ++at;
    size_t start = at;
    while (at < tok.size() && isdigit(static_cast<unsigned char>(tok[at]))) ++at;
    if (at == start) fail("expected variable index");
    return static_cast<uint32_t>(std::stoul(tok.substr(start, at - start)));
  };

  while (pos < text.size()) {
    size_t next = text.find(" & ", pos);
    std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (tok.empty()) fail("empty conjunct");
    uint32_t i, j, atom;
    size_t at = 0;
    size_t paren = tok.find('(');
    if (paren == std::string::npos) {
      i = read_var(tok, at);
      if (at >= tok.size() || tok[at] != '=') fail("expected '='");
      ++at;
      j = read_var(tok, at);
      if (at != tok.size()) fail("trailing characters in equality");
      atom = s.id_atom;
    } else {
      std::string name = tok.substr(0, paren);
      auto found = std::find(s.names.begin(), s.names.end(), name);
      if (found == s.names.end()) fail("unknown relation '" + name + "'");
      atom = static_cast<uint32_t>(found - s.names.begin());
      if (atom == s.id_atom) fail("identity written as a relation");
      at = paren + 1;
      i = read_var(tok, at);
      if (at >= tok.size() || tok[at] != ',') fail("expected ','");
      ++at;
      j = read_var(tok, at);
      if (at + 1 != tok.size() || tok[at] != ')') fail("expected ')' at end");
    }
    if (i >= j) fail("variables must appear in increasing order");
    conjuncts.emplace_back(i, j, atom);
    max_index = std::max(max_index, j);
    pos = (next == std::string::npos) ? text.size() : next + 3;
  }
  if (conjuncts.empty()) fail("no conjuncts");

  uint32_t n = max_index + 1;
  BasicMatrix m;
  m.n = n;
  m.e.assign(static_cast<size_t>(n) * n, s.id_atom);
  std::vector<bool> seen(static_cast<size_t>(n) * n, false);
  for (auto [i, j, atom] : conjuncts) {
    size_t slot = static_cast<size_t>(i) * n + j;
    if (seen[slot]) throw std::invalid_argument("parse_alpha_m_descriptor: duplicate pair");
    seen[slot] = true;
    m.e[slot] = atom;
    m.e[static_cast<size_t>(j) * n + i] = s.conv[atom];
  }
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j)
      if (!seen[static_cast<size_t>(i) * n + j])
        throw std::invalid_argument("parse_alpha_m_descriptor: missing pair x" + std::to_string(i) +
                                    ",x" + std::to_string(j));
  return m;
}

}  // namespace rablur
