#include "rablur/finite_structure.hpp"

#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rablur {

AtomSet AtomSet::all(uint32_t n) {
  AtomSet s = none(n);
  for (auto& w : s.words) w = ~0ull;
  if (n & 63) s.words.back() = (1ull << (n & 63)) - 1;
  if (s.words.empty()) s.words.push_back(0);  // n == 0 keeps one empty word
  return s;
}

AtomSet AtomSet::single(uint32_t n, uint32_t a) {
  AtomSet s = none(n);
  s.set(a);
  return s;
}

bool AtomSet::any() const {
  for (uint64_t w : words)
    if (w) return true;
  return false;
}

uint32_t AtomSet::count() const {
  uint32_t c = 0;
  for (uint64_t w : words) c += static_cast<uint32_t>(std::popcount(w));
  return c;
}

std::vector<uint32_t> AtomSet::members() const {
  std::vector<uint32_t> out;
  for (uint32_t a = 0; a < n; ++a)
    if (test(a)) out.push_back(a);
  return out;
}

AtomSet& AtomSet::operator|=(const AtomSet& o) {
  for (size_t i = 0; i < words.size(); ++i) words[i] |= o.words[i];
  return *this;
}

AtomSet& AtomSet::operator&=(const AtomSet& o) {
  for (size_t i = 0; i < words.size(); ++i) words[i] &= o.words[i];
  return *this;
}

void FiniteAtomStructure::set_consistent(uint32_t a, uint32_t b, uint32_t c, bool value) {
  uint64_t idx = (static_cast<uint64_t>(a) * n() + b) * n() + c;
  if (value)
    triple_bits[idx >> 6] |= 1ull << (idx & 63);
  else
    triple_bits[idx >> 6] &= ~(1ull << (idx & 63));
}

namespace {

FiniteAtomStructure blank_structure(std::vector<std::string> names) {
  FiniteAtomStructure s;
  s.names = std::move(names);
  uint64_t n = s.names.size();
  s.conv.resize(n);
  for (uint32_t a = 0; a < n; ++a) s.conv[a] = a;
  s.triple_bits.assign((n * n * n + 63) / 64, 0);
  return s;
}

}  // namespace

FiniteAtomStructure make_trivial() {
  FiniteAtomStructure s = blank_structure({"Id"});
  s.set_consistent(0, 0, 0, true);
  return s;
}

FiniteAtomStructure make_M(const std::vector<std::string>& base_names) {
  if (base_names.size() < 2) throw std::invalid_argument("make_M: at least two base atoms required");
  std::set<std::string> seen;
  for (const auto& name : base_names) {
    if (name.empty() || name == "Id") throw std::invalid_argument("make_M: bad atom name '" + name + "'");
    if (!seen.insert(name).second) throw std::invalid_argument("make_M: duplicate atom name '" + name + "'");
  }
  std::vector<std::string> names{"Id"};
  names.insert(names.end(), base_names.begin(), base_names.end());
  FiniteAtomStructure s = blank_structure(std::move(names));
  uint32_t n = s.n();
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      for (uint32_t c = 0; c < n; ++c) {
        bool ok;
        if (a == 0)
          ok = b == c;
        else if (b == 0)
          ok = a == c;
        else if (c == 0)
          ok = a == b;
        else
          ok = !(a == b && b == c);
        if (ok) s.set_consistent(a, b, c, true);
      }
  return s;
}

std::string AxiomReport::to_string(const FiniteAtomStructure& s) const {
  std::ostringstream out;
  for (const auto& v : items) {
    switch (v.kind) {
      case AxiomViolation::Kind::IdentityLaw:
        out << "identity law: (" << s.names[v.a] << "," << s.names[v.b] << "," << s.names[v.c] << ") "
            << v.detail << "\n";
        break;
      case AxiomViolation::Kind::ConverseInvolution:
        out << "converse involution fails at " << s.names[v.a] << "\n";
        break;
      case AxiomViolation::Kind::IdentityConverse:
        out << "identity is not self-converse\n";
        break;
      case AxiomViolation::Kind::PeirceanClosure:
        out << "Peircean closure: (" << s.names[v.a] << "," << s.names[v.b] << "," << s.names[v.c] << ") "
            << v.detail << "\n";
        break;
    }
  }
  return out.str();
}

AxiomReport check_axioms(const FiniteAtomStructure& s) {
  AxiomReport report;
  uint32_t n = s.n();
  if (s.conv[s.id_atom] != s.id_atom)
    report.items.push_back({AxiomViolation::Kind::IdentityConverse, s.id_atom, 0, 0, ""});
  for (uint32_t a = 0; a < n; ++a)
    if (s.conv[s.conv[a]] != a)
      report.items.push_back({AxiomViolation::Kind::ConverseInvolution, a, 0, 0, ""});
  for (uint32_t b = 0; b < n; ++b)
    for (uint32_t c = 0; c < n; ++c) {
      bool cons = s.consistent(s.id_atom, b, c);
      if (cons != (b == c))
        report.items.push_back({AxiomViolation::Kind::IdentityLaw, s.id_atom, b, c,
                                cons ? "consistent but atoms differ" : "inconsistent though atoms agree"});
    }
  // Transforms of (a, b, c), read as c <= a;b. Each must stay in the table.
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      for (uint32_t c = 0; c < n; ++c) {
        if (!s.consistent(a, b, c)) continue;
        uint32_t ca = s.conv[a], cb = s.conv[b], cc = s.conv[c];
        const uint32_t transforms[5][3] = {
            {ca, c, b}, {c, cb, a}, {cb, ca, cc}, {cc, a, cb}, {b, cc, ca}};
        for (const auto& t : transforms)
          if (!s.consistent(t[0], t[1], t[2])) {
            report.items.push_back({AxiomViolation::Kind::PeirceanClosure, a, b, c,
                                    "transform (" + s.names[t[0]] + "," + s.names[t[1]] + "," +
                                        s.names[t[2]] + ") missing"});
          }
      }
  return report;
}

AtomSet compose_atoms(const FiniteAtomStructure& s, uint32_t a, uint32_t b) {
  AtomSet out = AtomSet::none(s.n());
  for (uint32_t c = 0; c < s.n(); ++c)
    if (s.consistent(a, b, c)) out.set(c);
  return out;
}

AtomSet cm_compose(const FiniteAtomStructure& s, const AtomSet& x, const AtomSet& y) {
  AtomSet out = AtomSet::none(s.n());
  for (uint32_t a = 0; a < s.n(); ++a) {
    if (!x.test(a)) continue;
    for (uint32_t b = 0; b < s.n(); ++b) {
      if (!y.test(b)) continue;
      for (uint32_t c = 0; c < s.n(); ++c)
        if (s.consistent(a, b, c)) out.set(c);
    }
  }
  return out;
}

AtomSet cm_converse(const FiniteAtomStructure& s, const AtomSet& x) {
  AtomSet out = AtomSet::none(s.n());
  for (uint32_t a = 0; a < s.n(); ++a)
    if (x.test(a)) out.set(s.conv[a]);
  return out;
}

}  // namespace rablur
