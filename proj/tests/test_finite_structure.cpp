#include <doctest.h>

#include <random>
#include <stdexcept>

#include "rablur/finite_structure.hpp"

using namespace rablur;

namespace {

std::vector<std::string> names(uint32_t k) {
  std::vector<std::string> out;
  for (uint32_t i = 0; i < k; ++i) out.push_back("P" + std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("make_M shape") {
  FiniteAtomStructure m = make_M(names(6));
  REQUIRE(m.n() == 7);
  CHECK(m.names[0] == "Id");
  CHECK(m.id_atom == 0);
  for (uint32_t a = 0; a < m.n(); ++a) CHECK(m.conv[a] == a);

  CHECK_THROWS_AS(make_M({"P"}), std::invalid_argument);
  CHECK_THROWS_AS(make_M({"P", "P"}), std::invalid_argument);
  CHECK_THROWS_AS(make_M({"P", "Id"}), std::invalid_argument);
  CHECK_THROWS_AS(make_M({"P", ""}), std::invalid_argument);
}

TEST_CASE("make_M composition rows") {
  FiniteAtomStructure m = make_M(names(6));
  // P;P covers everything but P, plus the identity.
  AtomSet pp = compose_atoms(m, 1, 1);
  CHECK(pp.test(0));
  CHECK_FALSE(pp.test(1));
  for (uint32_t c = 2; c < m.n(); ++c) CHECK(pp.test(c));
  // P;Q covers every non-identity atom and misses the identity.
  AtomSet pq = compose_atoms(m, 1, 2);
  CHECK_FALSE(pq.test(0));
  for (uint32_t c = 1; c < m.n(); ++c) CHECK(pq.test(c));
  // Identity rows are delta.
  for (uint32_t a = 0; a < m.n(); ++a) {
    AtomSet ida = compose_atoms(m, 0, a);
    AtomSet aid = compose_atoms(m, a, 0);
    for (uint32_t c = 0; c < m.n(); ++c) {
      CHECK(ida.test(c) == (c == a));
      CHECK(aid.test(c) == (c == a));
    }
  }
}

TEST_CASE("axioms hold for the whole family") {
  for (uint32_t k = 2; k <= 8; ++k) {
    AxiomReport r = check_axioms(make_M(names(k)));
    CHECK_MESSAGE(r.empty(), "k=" << k << "\n" << r.to_string(make_M(names(k))));
  }
  CHECK(check_axioms(make_trivial()).empty());
}

TEST_CASE("axiom checker catches doctored tables") {
  FiniteAtomStructure m = make_M(names(4));

  SUBCASE("broken identity law") {
    m.set_consistent(0, 1, 2, true);  // Id;P may not cover Q
    CHECK_FALSE(check_axioms(m).empty());
  }
  SUBCASE("broken Peircean closure") {
    m.set_consistent(1, 2, 3, false);  // kill one rotation only
    AxiomReport r = check_axioms(m);
    CHECK_FALSE(r.empty());
    bool peircean = false;
    for (const auto& v : r.items)
      if (v.kind == AxiomViolation::Kind::PeirceanClosure) peircean = true;
    CHECK(peircean);
  }
  SUBCASE("identity triple removed") {
    m.set_consistent(0, 2, 2, false);
    CHECK_FALSE(check_axioms(m).empty());
  }
}

TEST_CASE("complex composition is associative") {
  // Exhaustive over atoms for small sizes.
  for (uint32_t k = 2; k <= 4; ++k) {
    FiniteAtomStructure m = make_M(names(k));
    for (uint32_t a = 0; a < m.n(); ++a)
      for (uint32_t b = 0; b < m.n(); ++b)
        for (uint32_t c = 0; c < m.n(); ++c) {
          AtomSet left = cm_compose(m, compose_atoms(m, a, b), AtomSet::single(m.n(), c));
          AtomSet right = cm_compose(m, AtomSet::single(m.n(), a), compose_atoms(m, b, c));
          CHECK_MESSAGE(left == right, "k=" << k << " (" << a << "," << b << "," << c << ")");
        }
  }
  // Sampled subsets for |I| = 6.
  FiniteAtomStructure m = make_M(names(6));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    AtomSet x = AtomSet::none(m.n()), y = AtomSet::none(m.n()), z = AtomSet::none(m.n());
    for (uint32_t a = 0; a < m.n(); ++a) {
      if (rng() & 1) x.set(a);
      if (rng() & 1) y.set(a);
      if (rng() & 1) z.set(a);
    }
    CHECK(cm_compose(m, cm_compose(m, x, y), z) == cm_compose(m, x, cm_compose(m, y, z)));
  }
}

TEST_CASE("converse distributes over complex composition") {
  FiniteAtomStructure m = make_M(names(5));
  for (uint32_t a = 0; a < m.n(); ++a)
    for (uint32_t b = 0; b < m.n(); ++b) {
      AtomSet lhs = cm_converse(m, compose_atoms(m, a, b));
      AtomSet rhs = cm_compose(m, AtomSet::single(m.n(), m.conv[b]), AtomSet::single(m.n(), m.conv[a]));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("atom set plumbing") {
  AtomSet s = AtomSet::none(70);
  CHECK_FALSE(s.any());
  s.set(0);
  s.set(69);
  CHECK(s.any());
  CHECK(s.count() == 2);
  CHECK(s.members() == std::vector<uint32_t>{0, 69});
  s.reset(0);
  CHECK(s.count() == 1);
  CHECK(AtomSet::all(70).count() == 70);
  CHECK(AtomSet::single(70, 33).members() == std::vector<uint32_t>{33});

  AtomSet a = AtomSet::single(10, 1);
  a |= AtomSet::single(10, 5);
  CHECK(a.members() == std::vector<uint32_t>{1, 5});
  a &= AtomSet::single(10, 5);
  CHECK(a.members() == std::vector<uint32_t>{5});
}
