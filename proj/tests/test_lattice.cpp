#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "conlat/lattice.hpp"
#include "oracles.hpp"

using namespace conlat;

TEST_CASE("lattice_from_covers builds chains and M3") {
  const FiniteLattice chain = lattice_from_covers(3, {{0, 1}, {1, 2}});
  chain.validate();
  CHECK(chain.join(0, 2) == 2);
  CHECK(chain.meet(0, 2) == 0);

  const FiniteLattice m3 = lattice_from_covers(
      5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  m3.validate();
  CHECK(m3.join(1, 2) == 4);
  CHECK(m3.meet(1, 2) == 0);
}

TEST_CASE("lattice_from_covers rejects bad input") {
  try {
    lattice_from_covers(3, {{0, 1}, {0, 2}});
    FAIL("expected NotALattice");
  } catch (const NotALattice& e) {
    CHECK(e.a == 1);
    CHECK(e.b == 2);
  }
  CHECK_THROWS_AS(lattice_from_covers(2, {{0, 1}, {1, 0}}), CycleDetected);
  CHECK_THROWS_AS(lattice_from_covers(2, {{0, 0}}), Error);
  CHECK_THROWS_AS(lattice_from_covers(2, {{0, 5}}), Error);
}

TEST_CASE("builtin lattices") {
  const FiniteLattice s = builtin("s");
  s.validate();
  REQUIRE(s.size == 7);
  using namespace s_elements;
  CHECK(s.join(p, p_prime) == q);
  CHECK(s.join(r, r_prime) == one);
  CHECK_FALSE(is_modular(s));
  CHECK_FALSE(is_distributive(s));

  CHECK(is_isomorphic(builtin("boolean(2)"),
                      product(chain_lattice(2), chain_lattice(2)).lattice)
            .has_value());
  CHECK(builtin("chain(4)").size == 4);
  CHECK_THROWS_AS(builtin("hexagon"), ParseError);
  CHECK_THROWS_AS(builtin("chain(x)"), ParseError);
}

TEST_CASE("product sizes, projections, and overflow") {
  const auto pr = product(boolean_lattice(4), s_lattice());
  CHECK(pr.lattice.size == 112);
  pr.lattice.validate();
  CHECK(pr.proj_left.is_valid());
  CHECK(pr.proj_right.is_valid());
  CHECK(pr.proj_left.is_surjective());
  CHECK(pr.proj_right.is_surjective());

  const auto one_l = product(chain_lattice(1), m3_lattice());
  CHECK(is_isomorphic(one_l.lattice, m3_lattice()).has_value());

  CHECK_THROWS_AS(product(boolean_lattice(4), boolean_lattice(4), 100),
                  SizeOverflow);
}

TEST_CASE("sublattice closure") {
  const FiniteLattice m3 = m3_lattice();
  const auto cl = sublattice_closure(m3, {1, 2, 3});
  CHECK(cl.lattice.size == 5);
  CHECK(cl.embedding.is_valid());

  const auto pair = sublattice_closure(boolean_lattice(2), {0, 3});
  CHECK(pair.lattice.size == 2);

  // closing a closure adds nothing
  const auto again = sublattice_closure(m3, cl.ambient_of);
  CHECK(again.ambient_of == cl.ambient_of);

  CHECK_THROWS_AS(sublattice_closure(m3, {}), Error);
}

TEST_CASE("isomorphism search with the all-bijections oracle") {
  CHECK(is_isomorphic(chain_lattice(3), chain_lattice(3)).has_value());
  CHECK(is_isomorphic(boolean_lattice(4),
                      product(boolean_lattice(2), boolean_lattice(2)).lattice)
            .has_value());

  // m3 vs n5: no bijection matches the join tables
  const FiniteLattice a = m3_lattice(), b = n5_lattice();
  CHECK_FALSE(is_isomorphic(a, b).has_value());
  std::vector<Element> perm = {0, 1, 2, 3, 4};
  bool any = false;
  do {
    bool ok = true;
    for (Element x = 0; x < 5 && ok; ++x)
      for (Element y = 0; y < 5 && ok; ++y)
        if (perm[a.join(x, y)] != b.join(perm[x], perm[y])) ok = false;
    any = any || ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK_FALSE(any);
}

TEST_CASE("isomorphism is reflexive on builtins and symmetric on samples") {
  for (const char* name : {"chain(5)", "boolean(3)", "m3", "n5", "s"}) {
    const FiniteLattice l = builtin(name);
    const auto iso = is_isomorphic(l, l);
    REQUIRE(iso.has_value());
    CHECK(iso->is_isomorphism());
  }
  std::mt19937 rng(7);
  const std::vector<FiniteLattice> pool = {chain_lattice(4), boolean_lattice(2),
                                           m3_lattice(), n5_lattice(),
                                           s_lattice()};
  for (int t = 0; t < 20; ++t) {
    const auto& x = pool[rng() % pool.size()];
    const auto& y = pool[rng() % pool.size()];
    CHECK(is_isomorphic(x, y).has_value() == is_isomorphic(y, x).has_value());
  }
}

TEST_CASE("distributivity and modularity") {
  CHECK(is_distributive(boolean_lattice(3)));
  CHECK(is_modular(m3_lattice()));
  CHECK_FALSE(is_distributive(m3_lattice()));
  CHECK_FALSE(is_modular(n5_lattice()));
  CHECK_FALSE(is_modular(s_lattice()));
}

TEST_CASE("intervals") {
  CHECK(interval(chain_lattice(3), 0, 2).lattice.size == 3);
  CHECK(interval(m3_lattice(), 0, 1).lattice.size == 2);
  const auto up = interval(boolean_lattice(3), 0, 3);  // a coatom's ideal
  CHECK(is_isomorphic(up.lattice, boolean_lattice(2)).has_value());
  CHECK_THROWS_AS(interval(m3_lattice(), 1, 2), NotComparable);
}

TEST_CASE("algebraic laws hold on every builtin and sampled product") {
  std::vector<FiniteLattice> pool = {chain_lattice(1), chain_lattice(4),
                                     boolean_lattice(3), m3_lattice(),
                                     n5_lattice(), s_lattice()};
  pool.push_back(product(m3_lattice(), chain_lattice(2)).lattice);
  pool.push_back(product(n5_lattice(), chain_lattice(3)).lattice);
  for (const auto& l : pool) {
    CHECK_NOTHROW(l.validate());
    for (Element a = 0; a < l.size; ++a)
      for (Element b = 0; b < l.size; ++b) {
        CHECK(l.join(a, b) == l.join(b, a));
        CHECK(l.meet(a, b) == l.meet(b, a));
        CHECK(l.join(a, a) == a);
        CHECK(l.meet(a, l.join(a, b)) == a);
        CHECK(l.join(a, l.meet(a, b)) == a);
      }
  }
}
