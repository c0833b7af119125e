#include "rablur/certificate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rablur/version.hpp"

namespace rablur {

CoarseBlock CoarseBlock::of_bases(std::vector<uint32_t> b) {
  if (b.empty()) throw std::invalid_argument("CoarseBlock: empty base set");
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  CoarseBlock out;
  out.kind = Kind::Bases;
  out.bases = std::move(b);
  return out;
}

CoarseBlock CoarseBlock::color_class(uint32_t position, uint32_t color) {
  CoarseBlock out;
  out.kind = Kind::ColorClass;
  out.position = position;
  out.color = color;
  return out;
}

bool CoarseBlock::contains(const SymbolicAtom& a) const {
  switch (kind) {
    case Kind::Identity:
      return a.kind == SymbolicAtom::Kind::Identity;
    case Kind::Bases:
      return a.kind == SymbolicAtom::Kind::BlurAtom &&
             std::binary_search(bases.begin(), bases.end(), a.base);
    case Kind::ColorClass:
      return a.kind == SymbolicAtom::Kind::GraphAtom && a.pos() == position && a.color() == color;
  }
  return false;
}

std::vector<CoarseBlock> build_partition(const AtomSpec& spec) {
  if (spec.kind == SpecKind::Alpha)
    throw std::invalid_argument("build_partition: alpha specs need a window and coloring");
  std::vector<CoarseBlock> blocks{CoarseBlock::identity()};
  for (uint32_t p = 0; p < spec.base_count(); ++p) blocks.push_back(CoarseBlock::of_bases({p}));
  return blocks;
}

std::vector<CoarseBlock> build_partition(const AtomSpec& spec, const Graph& window,
                                         const std::vector<uint32_t>& coloring) {
  if (spec.kind != SpecKind::Alpha)
    throw std::invalid_argument("build_partition: coloring form is for alpha specs");
  const uint32_t s = spec.clique_size;
  if (s == 0 || window.n == 0 || window.n % s != 0)
    throw std::invalid_argument("build_partition: window is not a union of spec-sized cliques");
  const uint32_t copies = window.n / s;
  Graph expect = make_disjoint_cliques(copies, s);
  if (window.edges != expect.edges)
    throw std::invalid_argument("build_partition: window edges are not the disjoint cliques");
  if (coloring.size() != window.n)
    throw std::invalid_argument("build_partition: coloring size mismatch");
  for (const auto& [u, v] : window.edges)
    if (coloring[u] == coloring[v]) throw std::invalid_argument("build_partition: improper coloring");
  for (uint32_t v = 0; v < window.n; ++v) {
    if (coloring[v] >= s) throw std::invalid_argument("build_partition: coloring uses too many colors");
    if (coloring[v] != coloring[v % s])
      throw std::invalid_argument("build_partition: copies are not colored identically");
  }

  // Proper + s colors on a size-s clique makes color -> position a bijection.
  std::vector<CoarseBlock> blocks{CoarseBlock::identity()};
  for (uint32_t j = 0; j < s; ++j) {
    uint32_t pos = s;
    for (uint32_t p = 0; p < s; ++p)
      if (coloring[p] == j) pos = p;
    if (pos == s) throw std::invalid_argument("build_partition: color class " + std::to_string(j) +
                                              " is unused");
    for (uint32_t k = 0; k < spec.colors; ++k) blocks.push_back(CoarseBlock::color_class(pos, k));
  }
  return blocks;
}

bool monochromatic(const CoarseBlock& b) {
  switch (b.kind) {
    case CoarseBlock::Kind::Identity:
      return true;
    case CoarseBlock::Kind::Bases:
      return b.bases.size() == 1;
    case CoarseBlock::Kind::ColorClass:
      return true;
  }
  return false;
}

MonoZeroReport verify_mono_zero(const AtomSpec& spec, const CoarseBlock& b, uint32_t depth) {
  MonoZeroReport report;
  switch (b.kind) {
    case CoarseBlock::Kind::Identity:
      report.symbolic = false;  // Id;Id meets Id
      break;
    case CoarseBlock::Kind::Bases:
      // One base P: a triple inside shares P, so every blur triple meets in P
      // and the row route needs (P,P,P) in the base.
      report.symbolic = b.bases.size() == 1 && !spec.base_consistent(b.bases[0], b.bases[0], b.bases[0]);
      break;
    case CoarseBlock::Kind::ColorClass:
      // Same color and same position: neither consistency route opens.
      report.symbolic = true;
      break;
  }

  std::vector<SymbolicAtom> members;
  for (const auto& a : atoms_up_to(spec, depth)) {
    if (!b.contains(a)) continue;
    members.push_back(a);
    if (members.size() == 200) break;  // keeps the cube scan near 8M triples
  }
  bool found = false;
  for (const auto& x : members) {
    for (const auto& y : members) {
      for (const auto& z : members) {
        ++report.triples_checked;
        if (spec.consistent(x, y, z)) {
          report.witness = {x, y, z};
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found) break;
  }
  report.zero = !found;
  report.agree = report.zero == report.symbolic;
  return report;
}

std::vector<CoarseTableEntry> coarse_embedding_table(const AtomSpec& spec) {
  if (spec.kind == SpecKind::Alpha)
    throw std::invalid_argument("coarse_embedding_table: blur-style specs only");
  std::vector<CoarseTableEntry> table;
  for (uint32_t p = 0; p < spec.base_count(); ++p)
    for (uint32_t q = 0; q < spec.base_count(); ++q) {
      CoarseTableEntry entry;
      entry.p = p;
      entry.q = q;
      entry.id = spec.base.consistent(p + 1, q + 1, spec.base.id_atom);
      for (uint32_t r = 0; r < spec.base_count(); ++r)
        if (spec.base_consistent(p, q, r)) entry.bases.push_back(r);
      table.push_back(std::move(entry));
    }
  return table;
}

bool coarse_table_oracle_agrees(const AtomSpec& spec, const std::vector<CoarseTableEntry>& table,
                                uint32_t depth, std::string* diagnostics) {
  if (spec.kind == SpecKind::Alpha)
    throw std::invalid_argument("coarse_table_oracle_agrees: blur-style specs only");
  auto complain = [&](const std::string& why) {
    if (diagnostics) *diagnostics = why;
    return false;
  };
  if (table.size() != static_cast<size_t>(spec.base_count()) * spec.base_count())
    return complain("table does not cover every base pair");

  // Window per base: full blur fan-out, rows shrunk so a base stays near 60
  // atoms (full depth for the small structures the exact criteria pin).
  const uint32_t per_row = spec.base_count() ? static_cast<uint32_t>(spec.blur_bases(0).size()) : 0;
  std::vector<std::vector<SymbolicAtom>> window(spec.base_count());
  {
    uint32_t fanout = 0;
    for (uint32_t w = 0; w < spec.blur_count(); ++w)
      if (spec.blur_has_base(w, 0)) ++fanout;
    uint32_t rows = fanout ? std::clamp<uint32_t>(60 / fanout, 1, depth) : depth;
    for (uint32_t p = 0; p < spec.base_count(); ++p) {
      for (uint32_t row = 0; row < rows; ++row)
        for (uint32_t w = 0; w < spec.blur_count(); ++w)
          if (spec.blur_has_base(w, p)) window[p].push_back(SymbolicAtom::blur_atom(row, p, w));
      if (window[p].size() > 200) window[p].resize(200);
    }
  }
  (void)per_row;

  const SymbolicAtom id = SymbolicAtom::id();
  for (const auto& entry : table) {
    const auto& hp = window[entry.p];
    const auto& hq = window[entry.q];
    bool id_seen = false;
    for (const auto& a : hp) {
      for (const auto& b : hq)
        if (spec.consistent(a, b, id)) {
          id_seen = true;
          break;
        }
      if (id_seen) break;
    }
    if (id_seen != entry.id)
      return complain("identity flag of (" + spec.base_name(entry.p) + "," + spec.base_name(entry.q) +
                      ") does not match the oracle");
    for (uint32_t r = 0; r < spec.base_count(); ++r) {
      bool listed = std::binary_search(entry.bases.begin(), entry.bases.end(), r);
      if (listed) {
        // Every target atom must be reachable from some pair.
        for (const auto& c : window[r]) {
          bool hit = false;
          for (const auto& a : hp) {
            for (const auto& b : hq)
              if (spec.consistent(a, b, c)) {
                hit = true;
                break;
              }
            if (hit) break;
          }
          if (!hit)
            return complain("table lists " + spec.base_name(r) + " under (" + spec.base_name(entry.p) +
                            ";" + spec.base_name(entry.q) + ") but " + spec.atom_name(c) +
                            " is unreachable");
        }
      } else {
        for (const auto& a : hp)
          for (const auto& b : hq)
            for (const auto& c : window[r])
              if (spec.consistent(a, b, c))
                return complain("table omits " + spec.base_name(r) + " under (" +
                                spec.base_name(entry.p) + ";" + spec.base_name(entry.q) +
                                ") but the triple (" + spec.atom_name(a) + "," + spec.atom_name(b) +
                                "," + spec.atom_name(c) + ") is consistent");
      }
    }
  }
  return true;
}

namespace {

nlohmann::json block_json(const AtomSpec& spec, const CoarseBlock& b) {
  nlohmann::json j;
  switch (b.kind) {
    case CoarseBlock::Kind::Identity:
      j["kind"] = "identity";
      break;
    case CoarseBlock::Kind::Bases: {
      j["kind"] = "bases";
      auto& arr = j["bases"] = nlohmann::json::array();
      for (uint32_t p : b.bases) arr.push_back(spec.base_name(p));
      break;
    }
    case CoarseBlock::Kind::ColorClass:
      j["kind"] = "color";
      j["position"] = b.position;
      j["color"] = b.color;
      break;
  }
  return j;
}

nlohmann::json mono_json(const AtomSpec& spec, size_t index, const MonoZeroReport& r) {
  nlohmann::json j;
  j["block"] = index;
  j["zero"] = r.zero;
  j["symbolic"] = r.symbolic;
  j["triples_checked"] = r.triples_checked;
  auto& w = j["witness"] = nlohmann::json::array();
  for (const auto& a : r.witness) w.push_back(spec.atom_name(a));
  return j;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void require_standard_base(const AtomSpec& spec) {
  if (spec.sabotage != AtomSpec::Sabotage::None)
    throw std::invalid_argument("certify: refusing a sabotaged spec");
  std::vector<std::string> names(spec.base.names.begin() + 1, spec.base.names.end());
  FiniteAtomStructure expect = make_M(names);
  if (spec.base.id_atom != expect.id_atom || spec.base.conv != expect.conv ||
      spec.base.triple_bits != expect.triple_bits)
    throw std::invalid_argument("certify: base structure is not the standard symmetric one");
}

nlohmann::json assemble(const AtomSpec& spec, nlohmann::json spec_json,
                        const std::vector<CoarseBlock>& blocks, uint32_t depth, uint64_t seed) {
  nlohmann::json cert;
  cert["format"] = "rablur-cert";
  cert["format_version"] = 1;
  cert["tool_version"] = kToolVersion;
  cert["seed"] = seed;
  cert["depth"] = depth;
  cert["spec"] = std::move(spec_json);
  cert["flags"] = {{"unbounded_carrier", true}, {"finite_partition", true}};

  auto& jblocks = cert["blocks"] = nlohmann::json::array();
  for (const auto& b : blocks) jblocks.push_back(block_json(spec, b));

  auto& jmono = cert["mono_zero"] = nlohmann::json::array();
  for (size_t i = 0; i < blocks.size(); ++i) {
    MonoZeroReport r = verify_mono_zero(spec, blocks[i], depth);
    if (!r.agree)
      throw std::logic_error("certify: mono-zero enumeration disagrees with the closed form at block " +
                             std::to_string(i));
    if (blocks[i].kind != CoarseBlock::Kind::Identity && !r.zero)
      throw std::logic_error("certify: block " + std::to_string(i) + " is not monochromatic-zero");
    jmono.push_back(mono_json(spec, i, r));
  }

  auto& jtable = cert["coarse_table"] = nlohmann::json::array();
  if (spec.kind != SpecKind::Alpha) {
    auto table = coarse_embedding_table(spec);
    std::string diag;
    if (!coarse_table_oracle_agrees(spec, table, depth, &diag))
      throw std::logic_error("certify: coarse table oracle disagreement: " + diag);
    for (const auto& entry : table) {
      nlohmann::json e;
      e["p"] = spec.base_name(entry.p);
      e["q"] = spec.base_name(entry.q);
      e["id"] = entry.id;
      auto& arr = e["bases"] = nlohmann::json::array();
      for (uint32_t r : entry.bases) arr.push_back(spec.base_name(r));
      jtable.push_back(std::move(e));
    }
  }

  cert["counts"] = {{"atoms", atoms_up_to(spec, depth).size()},
                    {"blocks", blocks.size()},
                    {"blurs", spec.blur_count()}};
  cert["digest"] = certificate_digest(cert);
  return cert;
}

}  // namespace

nlohmann::json certify(const AtomSpec& spec, uint32_t depth, uint64_t seed) {
  if (spec.kind == SpecKind::Alpha)
    throw std::invalid_argument("certify: alpha specs need a window and coloring");
  require_standard_base(spec);

  nlohmann::json spec_json;
  if (spec.kind == SpecKind::Blur) {
    spec_json["construction"] = "blur";
    auto& names = spec_json["bases"] = nlohmann::json::array();
    for (uint32_t p = 0; p < spec.base_count(); ++p) names.push_back(spec.base_name(p));
  } else {
    spec_json["construction"] = "flmu";
    spec_json["l"] = spec.l;
    spec_json["mu"] = spec.mu;
    spec_json["i_size"] = spec.base_count();
  }
  return assemble(spec, std::move(spec_json), build_partition(spec), depth, seed);
}

nlohmann::json certify(const AtomSpec& spec, const Graph& window,
                       const std::vector<uint32_t>& coloring, uint32_t depth, uint64_t seed) {
  if (spec.kind != SpecKind::Alpha)
    throw std::invalid_argument("certify: coloring form is for alpha specs");
  if (spec.sabotage != AtomSpec::Sabotage::None)
    throw std::invalid_argument("certify: refusing a sabotaged spec");
  auto blocks = build_partition(spec, window, coloring);

  nlohmann::json spec_json;
  spec_json["construction"] = "alpha";
  spec_json["clique_size"] = spec.clique_size;
  spec_json["colors"] = spec.colors;
  spec_json["copies"] = window.n / spec.clique_size;
  spec_json["coloring"] = coloring;
  return assemble(spec, std::move(spec_json), blocks, depth, seed);
}

std::string canonical_dump(const nlohmann::json& cert) { return cert.dump(2); }

std::string certificate_digest(const nlohmann::json& cert) {
  nlohmann::json copy = cert;
  copy.erase("digest");
  uint64_t h = fnv1a(canonical_dump(copy));
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CertCheck check_certificate(const nlohmann::json& cert) {
  if (!cert.is_object()) return {false, "certificate is not an object"};
  for (const char* field : {"format", "format_version", "tool_version", "seed", "depth", "spec",
                            "flags", "counts", "blocks", "mono_zero", "coarse_table", "digest"})
    if (!cert.contains(field)) return {false, std::string("missing field '") + field + "'"};

  try {
    if (cert["format"] != "rablur-cert") return {false, "unknown format"};
    if (cert["format_version"] != 1) return {false, "unsupported format_version"};
    if (cert["tool_version"] != kToolVersion) return {false, "tool_version mismatch"};

    const auto& sj = cert["spec"];
    uint32_t depth = cert["depth"].get<uint32_t>();
    uint64_t seed = cert["seed"].get<uint64_t>();
    nlohmann::json fresh;
    std::string construction = sj.at("construction").get<std::string>();
    if (construction == "blur") {
      std::vector<std::string> names = sj.at("bases").get<std::vector<std::string>>();
      fresh = certify(blur_structure(make_M(names)), depth, seed);
    } else if (construction == "flmu") {
      fresh = certify(f_l_mu(sj.at("i_size").get<uint32_t>(), sj.at("l").get<uint32_t>(),
                             sj.at("mu").get<uint32_t>()),
                      depth, seed);
    } else if (construction == "alpha") {
      uint32_t s = sj.at("clique_size").get<uint32_t>();
      uint32_t copies = sj.at("copies").get<uint32_t>();
      AtomSpec spec = alpha_of_graph(s, sj.at("colors").get<uint32_t>());
      Graph window = make_disjoint_cliques(copies, s);
      fresh = certify(spec, window, sj.at("coloring").get<std::vector<uint32_t>>(), depth, seed);
    } else {
      return {false, "unknown construction '" + construction + "'"};
    }

    for (auto it = fresh.begin(); it != fresh.end(); ++it) {
      if (it.key() == "digest") continue;  // compared against the stored document below
      if (!cert.contains(it.key())) return {false, "missing field '" + it.key() + "'"};
      const auto& got = cert[it.key()];
      if (got == it.value()) continue;
      std::string where = "field '" + it.key() + "' does not match a rebuild";
      if (got.is_array() && it.value().is_array()) {
        size_t n = std::min(got.size(), it.value().size());
        size_t k = 0;
        while (k < n && got[k] == it.value()[k]) ++k;
        if (it.key() == "mono_zero" && k < n && got[k].is_object() && got[k].contains("block"))
          where += " (block " + got[k]["block"].dump() + ")";
        else
          where += " (entry " + std::to_string(k) + ")";
      }
      return {false, where};
    }
    for (auto it = cert.begin(); it != cert.end(); ++it)
      if (!fresh.contains(it.key())) return {false, "unexpected field '" + it.key() + "'"};
    if (cert["digest"] != certificate_digest(cert)) return {false, "digest mismatch"};
  } catch (const std::exception& e) {
    return {false, std::string("rebuild failed: ") + e.what()};
  }
  return {true, ""};
}

CertCheck check_certificate(const std::string& text) {
  nlohmann::json cert = nlohmann::json::parse(text, nullptr, false);
  if (cert.is_discarded()) return {false, "malformed JSON"};
  return check_certificate(cert);
}

std::vector<MonkMember> monk_sequence(uint32_t colors, uint32_t count, uint32_t copies,
                                      uint64_t seed) {
  if (colors < 2) throw std::invalid_argument("monk_sequence: need at least two colors");
  if (copies == 0) throw std::invalid_argument("monk_sequence: need at least one copy");
  std::vector<MonkMember> out;
  for (uint32_t i = 0; i < count; ++i) {
    MonkMember member;
    member.clique_size = colors * (colors - 1) / 2 + i;
    member.graph = make_disjoint_cliques(copies, member.clique_size);
    member.chromatic = chromatic_number(member.graph).count;
    if (member.chromatic != member.clique_size)
      throw std::logic_error("monk_sequence: coloring search disagrees with the clique size");
    // Canonical coloring: position within the copy. Proper, uniform, exact.
    std::vector<uint32_t> coloring(member.graph.n);
    for (uint32_t v = 0; v < member.graph.n; ++v) coloring[v] = v % member.clique_size;
    member.spec = alpha_of_graph(member.clique_size, colors);
    member.certificate = certify(member.spec, member.graph, coloring, 8, seed);
    out.push_back(std::move(member));
  }
  return out;
}

std::vector<FMember> f_sequence(uint32_t count, uint32_t depth, uint64_t seed) {
  std::vector<FMember> out;
  for (uint32_t i = 0; i < count; ++i) {
    FMember member;
    uint32_t l = i + 2;
    member.spec = f_l_mu(3 * l, l, 1);
    BlurConditionOptions opts;
    opts.exhaustive = l == 2;  // the sweep is quadratic in atoms; sample beyond
    opts.seed = seed;
    member.report = check_blur_conditions(member.spec, opts);
    member.certificate = certify(member.spec, depth, seed);
    out.push_back(std::move(member));
  }
  return out;
}

}  // namespace rablur
