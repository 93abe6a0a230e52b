#include <catch2/catch_amalgamated.hpp>

#include "conlat/congruence.hpp"
#include "conlat/semilattice.hpp"

using namespace conlat;

TEST_CASE("powerset semilattice") {
  CHECK(powerset_semilattice(5).size == 32);
  CHECK(powerset_semilattice(0).size == 1);
  const auto s = powerset_semilattice(3);
  s.validate();
  for (Element a = 0; a < s.size; ++a)
    for (Element b = 0; b < s.size; ++b)
      CHECK(s.leq(a, b) == ((a & b) == a));
}

TEST_CASE("generated subsemilattices") {
  const auto u = powerset_semilattice(5);
  auto set = [](std::initializer_list<int> xs) {
    Element m = 0;
    for (int x : xs) m |= 1 << x;
    return m;
  };
  const auto t0 = subsemilattice_generated(
      u, {set({0, 4}), set({3}), set({2}), set({1, 4})});
  CHECK(t0.semilattice.size == 16);
  CHECK(t0.inclusion.is_valid());
  CHECK(t0.inclusion.is_injective());

  const auto s0 = subsemilattice_generated(u, {set({0, 1, 4}), set({2, 3, 4})});
  CHECK(s0.semilattice.size == 4);

  const auto trivial = subsemilattice_generated(u, {});
  CHECK(trivial.semilattice.size == 1);
}

TEST_CASE("free tuples") {
  const auto u5 = powerset_semilattice(5);
  auto set5 = [](std::initializer_list<int> xs) {
    Element m = 0;
    for (int x : xs) m |= 1 << x;
    return m;
  };
  CHECK(is_free_tuple(
      u5, {set5({0, 4}), set5({3}), set5({2}), set5({1, 4})}));
  CHECK_FALSE(is_free_tuple(u5, {3, 3}));

  const auto u8 = powerset_semilattice(8);
  auto set8 = set5;
  CHECK(is_free_tuple(u8, {set8({0, 4, 5, 7}), set8({1, 4, 6, 7}),
                           set8({2, 5, 6, 7}), set8({3, 4, 5, 6})}));
}

TEST_CASE("semilattice distributivity") {
  CHECK(is_distributive_semilattice(powerset_semilattice(3)));
  // the join reduct of M3 is not distributive: an atom below the join of the
  // other two admits no decomposition
  const auto m3join = join_reduct(m3_lattice());
  CHECK_FALSE(is_distributive_semilattice(m3join));
  const auto t0 = subsemilattice_generated(
      powerset_semilattice(5), {0b10001, 0b01000, 0b00100, 0b10010});
  CHECK(is_distributive_semilattice(t0.semilattice));
}

TEST_CASE("weak distributivity") {
  const auto u = powerset_semilattice(2);
  CHECK(is_weakly_distributive_at(identity_hom(u), 3));

  // a surjective quotient-induced map is weakly distributive at every point
  const FiniteLattice chain = chain_lattice(3);
  const Congruence theta = principal_congruence(chain, 0, 1);
  const auto q = quotient(chain, theta);
  const ConLattice cs = con_lattice(chain);
  const ConLattice ct = con_lattice(q.lattice);
  const JoinZeroHom mu = con_functor_map(q.projection, cs, ct);
  for (Element eps = 0; eps < mu.source.size; ++eps)
    CHECK(is_weakly_distributive_at(mu, eps));

  // constant-to-zero map: degenerate but weakly distributive
  const JoinZeroHom zero_map{u, u, {0, 0, 0, 0}};
  REQUIRE(zero_map.is_valid());
  CHECK(is_weakly_distributive_at(zero_map, 3));
}

TEST_CASE("semilattice isomorphism") {
  const auto u = powerset_semilattice(5);
  const auto s0 = subsemilattice_generated(u, {0b10011, 0b11100});
  CHECK(semilattice_isomorphic(s0.semilattice, powerset_semilattice(2))
            .has_value());
  const auto idp = semilattice_isomorphic(u, powerset_semilattice(5));
  REQUIRE(idp.has_value());
  CHECK(idp->is_isomorphism());
  const auto t0 = subsemilattice_generated(
      u, {0b10001, 0b01000, 0b00100, 0b10010});
  CHECK_FALSE(
      semilattice_isomorphic(t0.semilattice, s0.semilattice).has_value());
}

TEST_CASE("lattice view of a finite join-semilattice") {
  const auto u = powerset_semilattice(3);
  const FiniteLattice l = lattice_view(u);
  l.validate();
  for (Element a = 0; a < l.size; ++a)
    for (Element b = 0; b < l.size; ++b) CHECK(l.meet(a, b) == (a & b));
}
