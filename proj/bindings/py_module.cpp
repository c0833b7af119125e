#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rablur/blur_conditions.hpp"
#include "rablur/certificate.hpp"
#include "rablur/graph.hpp"
#include "rablur/matrices.hpp"
#include "rablur/representation.hpp"
#include "rablur/version.hpp"

namespace py = pybind11;
using namespace rablur;

namespace {

std::vector<std::string> base_names(uint32_t count) {
  std::vector<std::string> names;
  for (uint32_t i = 0; i < count; ++i) names.push_back("P" + std::to_string(i));
  return names;
}

std::vector<Blur> all_pair_blurs(uint32_t count) {
  std::vector<Blur> blurs;
  for (uint32_t a = 0; a < count; ++a)
    for (uint32_t b = a + 1; b < count; ++b) blurs.push_back({(1ull << a) | (1ull << b), 0});
  return blurs;
}

AtomSpec make_spec(uint32_t i_size, uint32_t l, uint32_t mu) {
  if (l == 2 && mu == 1) return blur_structure(make_M(base_names(i_size)));
  return f_l_mu(i_size, l, mu);
}

}  // namespace

PYBIND11_MODULE(_rablur, m) {
  m.doc() = "blow-up atom structures, saturation, and certificates";
  m.attr("__version__") = kToolVersion;

  m.def(
      "sample_graph",
      [](uint32_t n, double p, uint64_t seed) {
        Graph g = sample_random_graph(n, p, seed);
        return g.edges;
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 0);
  m.def(
      "chromatic_number",
      [](uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
        return chromatic_number(make_graph(n, edges)).count;
      },
      py::arg("n"), py::arg("edges"));
  m.def(
      "girth",
      [](uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
        return girth(make_graph(n, edges));
      },
      py::arg("n"), py::arg("edges"));

  m.def(
      "axiom_violations",
      [](uint32_t i_size) { return check_axioms(make_M(base_names(i_size))).items.size(); },
      py::arg("i_size"));
  m.def(
      "atom_count",
      [](uint32_t i_size, uint32_t l, uint32_t mu, uint32_t depth) {
        return atoms_up_to(make_spec(i_size, l, mu), depth).size();
      },
      py::arg("i_size"), py::arg("l") = 2, py::arg("mu") = 1, py::arg("depth") = 8);
  m.def(
      "blur_conditions_ok",
      [](uint32_t i_size, uint32_t l, uint32_t mu, bool exhaustive, uint64_t seed) {
        BlurConditionOptions opts;
        opts.exhaustive = exhaustive;
        opts.seed = seed;
        return check_blur_conditions(make_spec(i_size, l, mu), opts).empty();
      },
      py::arg("i_size"), py::arg("l") = 2, py::arg("mu") = 1, py::arg("exhaustive") = true,
      py::arg("seed") = 0);
  m.def(
      "n_complex_blur",
      [](uint32_t i_size, uint32_t n) {
        return n_complex_blur(make_M(base_names(i_size)), all_pair_blurs(i_size), n);
      },
      py::arg("i_size"), py::arg("n"));

  m.def(
      "represent",
      [](uint32_t i_size, uint32_t steps) {
        AtomSpec spec = make_spec(i_size, 2, 1);
        ColoredGraph g = new_colored_graph(spec);
        auto gens = default_generators(spec);
        SaturationStats stats = saturate(g, steps, gens);
        RepVerification rep = verify_representation(g, gens);
        py::dict out;
        out["steps"] = stats.steps;
        out["nodes"] = stats.nodes;
        out["enqueued"] = stats.enqueued;
        out["auto_resolved"] = stats.auto_resolved;
        out["queue_left"] = stats.queue_left;
        out["ok"] = rep.ok();
        out["violations"] = rep.violations;
        return out;
      },
      py::arg("i_size"), py::arg("steps") = 300);

  m.def(
      "certify_blur",
      [](uint32_t i_size, uint32_t depth, uint64_t seed) {
        return canonical_dump(certify(blur_structure(make_M(base_names(i_size))), depth, seed));
      },
      py::arg("i_size"), py::arg("depth") = 8, py::arg("seed") = 0);
  m.def(
      "certify_alpha",
      [](uint32_t clique, uint32_t colors, uint32_t copies, uint32_t depth, uint64_t seed) {
        AtomSpec spec = alpha_of_graph(clique, colors);
        Graph window = make_disjoint_cliques(copies, clique);
        std::vector<uint32_t> coloring(window.n);
        for (uint32_t v = 0; v < window.n; ++v) coloring[v] = v % clique;
        return canonical_dump(certify(spec, window, coloring, depth, seed));
      },
      py::arg("clique"), py::arg("colors"), py::arg("copies") = 10, py::arg("depth") = 8,
      py::arg("seed") = 0);
  m.def(
      "check_certificate",
      [](const std::string& text) {
        CertCheck result = check_certificate(text);
        return std::make_pair(result.ok, result.reason);
      },
      py::arg("text"));

  m.def(
      "matrix_count",
      [](uint32_t i_size, uint32_t n) {
        return enumerate_matrices(make_M(base_names(i_size)), n).size();
      },
      py::arg("i_size"), py::arg("n"));
  m.def(
      "cylindric_basis_ok",
      [](uint32_t i_size, uint32_t n) {
        FiniteAtomStructure s = make_M(base_names(i_size));
        return check_cylindric_basis(s, all_pair_blurs(i_size), n, enumerate_matrices(s, n)).ok();
      },
      py::arg("i_size"), py::arg("n"));
}
