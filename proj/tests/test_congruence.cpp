#include <catch2/catch_amalgamated.hpp>

#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"
#include "oracles.hpp"

using namespace conlat;

namespace {

const std::vector<FiniteLattice>& small_pool() {
  static const std::vector<FiniteLattice> pool = {
      chain_lattice(2), chain_lattice(3), chain_lattice(4),
      boolean_lattice(2), m3_lattice(), n5_lattice(),
      product(chain_lattice(2), chain_lattice(3)).lattice};
  return pool;
}

}  // namespace

TEST_CASE("principal congruences agree with the brute-force oracle") {
  for (const auto& l : small_pool()) {
    for (Element a = 0; a < l.size; ++a)
      for (Element b = 0; b < l.size; ++b)
        CHECK(principal_congruence(l, a, b) == oracle::principal(l, a, b));
  }
}

TEST_CASE("principal congruence examples") {
  const FiniteLattice chain = chain_lattice(3);
  const Congruence t01 = principal_congruence(chain, 0, 1);
  CHECK(t01.same(0, 1));
  CHECK_FALSE(t01.same(1, 2));

  const FiniteLattice m3 = m3_lattice();
  CHECK(principal_congruence(m3, 0, 1).is_full());
  CHECK(principal_congruence(m3, 2, 2).is_identity());
}

TEST_CASE("theta plus") {
  const FiniteLattice chain = chain_lattice(3);
  CHECK(theta_plus(chain, 0, 2).is_identity());  // comparable: a ^ b = a
  const FiniteLattice m3 = m3_lattice();
  CHECK(theta_plus(m3, 1, 2).is_full());
  const FiniteLattice b2 = boolean_lattice(2);
  const Congruence t = theta_plus(b2, 1, 2);  // Theta(0, first atom)
  CHECK(t.same(0, 1));
  CHECK(t.same(2, 3));
  CHECK_FALSE(t.same(0, 2));
}

TEST_CASE("con_lattice matches the compatible-partition filter") {
  for (const auto& l : small_pool()) {
    const ConLattice con = con_lattice(l);
    const auto brute = oracle::all_congruences(l);
    REQUIRE(con.size() == static_cast<int>(brute.size()));
    for (const auto& c : brute) CHECK_NOTHROW(con.index_of(c));
    CHECK_NOTHROW(con.lattice_of_congruences.validate());
    // bottom is the identity partition, top the one-block partition
    CHECK(con.congruence_of[con.bottom()].is_identity());
    CHECK(con.congruence_of[con.top()].is_full());
    CHECK(is_distributive(con.lattice_of_congruences));
  }
}

TEST_CASE("con_lattice examples") {
  CHECK(con_lattice(chain_lattice(3)).size() == 4);
  CHECK(con_lattice(m3_lattice()).size() == 2);
  CHECK(is_isomorphic(con_lattice(chain_lattice(3)).lattice_of_congruences,
                      boolean_lattice(2))
            .has_value());
  CHECK(is_isomorphic(con_lattice(boolean_lattice(2)).lattice_of_congruences,
                      boolean_lattice(2))
            .has_value());
}

TEST_CASE("relational composition") {
  const FiniteLattice chain = chain_lattice(3);
  const Congruence a = principal_congruence(chain, 0, 1);
  const Congruence b = principal_congruence(chain, 1, 2);
  const Relation ab = compose(a, b);
  CHECK(ab.get(0, 2));
  CHECK_FALSE(compose(b, a).get(0, 2));
  const Relation ai = compose(a, identity_congruence(3));
  CHECK(ai == relation_of(a));
  CHECK(join_cong(a, b).is_full());
  CHECK_THROWS_AS(compose(a, identity_congruence(4)), MixedLattices);
}

TEST_CASE("permutability predicates") {
  const auto chain = chain_lattice(3);
  const auto perm = has_permutable_congruences(chain);
  CHECK_FALSE(perm.holds);
  REQUIRE(perm.witness_congruences.has_value());
  REQUIRE(perm.witness_elements.has_value());
  CHECK(has_permutable_congruences(m3_lattice()).holds);
  CHECK(has_permutable_congruences(boolean_lattice(2)).holds);
}

TEST_CASE("the splitting criterion agrees with permutability") {
  const auto crit = permutable_via_criterion(chain_lattice(3));
  CHECK_FALSE(crit.holds);
  REQUIRE(crit.witness_triple.has_value());
  CHECK((*crit.witness_triple)[0] == 0);
  CHECK((*crit.witness_triple)[1] == 1);
  CHECK((*crit.witness_triple)[2] == 2);
  CHECK(permutable_via_criterion(m3_lattice()).holds);
  for (const auto& l : small_pool())
    CHECK(permutable_via_criterion(l).holds ==
          has_permutable_congruences(l).holds);
}

TEST_CASE("almost permutable congruences") {
  CHECK(has_almost_permutable_congruences(chain_lattice(3)).holds);
  CHECK(has_almost_permutable_congruences(m3_lattice()).holds);
  CHECK(has_almost_permutable_congruences(boolean_lattice(2)).holds);
  // a failing case: two interleaved interval collapses on a longer chain
  const auto c5 = chain_lattice(5);
  const auto res = has_almost_permutable_congruences(c5);
  CHECK_FALSE(res.holds);
}

TEST_CASE("congruence splitting") {
  CHECK(is_congruence_splitting(m3_lattice()).holds);
  CHECK(is_congruence_splitting(boolean_lattice(2)).holds);
  const auto res = is_congruence_splitting(chain_lattice(3));
  CHECK_FALSE(res.holds);
  REQUIRE(res.witness_interval.has_value());
}

TEST_CASE("quotients") {
  const FiniteLattice chain = chain_lattice(3);
  const auto trivial = quotient(chain, identity_congruence(3));
  CHECK(is_isomorphic(trivial.lattice, chain).has_value());
  const auto collapsed = quotient(chain, full_congruence(3));
  CHECK(collapsed.lattice.size == 1);
  const auto half = quotient(chain, principal_congruence(chain, 0, 1));
  CHECK(is_isomorphic(half.lattice, chain_lattice(2)).has_value());
  CHECK(half.projection.is_valid());
  CHECK(half.projection.is_surjective());
}

TEST_CASE("quotient congruence correspondence") {
  // Con(L/theta) is the interval [theta, full] of Con L
  for (const auto& l : small_pool()) {
    const ConLattice con = con_lattice(l);
    for (int t = 0; t < con.size(); ++t) {
      const Congruence& theta = con.congruence_of[t];
      const auto q = quotient(l, theta);
      const ConLattice conq = con_lattice(q.lattice);
      const auto up = interval(con.lattice_of_congruences, t, con.top());
      REQUIRE(conq.size() == up.lattice.size);
      // the canonical map theta' -> theta'/theta is an order isomorphism
      for (std::size_t i = 0; i < up.ambient_of.size(); ++i)
        for (std::size_t j = 0; j < up.ambient_of.size(); ++j) {
          const Congruence qi = push_congruence(
              q.projection, con.congruence_of[up.ambient_of[i]]);
          const Congruence qj = push_congruence(
              q.projection, con.congruence_of[up.ambient_of[j]]);
          CHECK(leq_cong(qi, qj) ==
                con.lattice_of_congruences.leq(up.ambient_of[i],
                                               up.ambient_of[j]));
        }
    }
  }
}

TEST_CASE("con functor map") {
  const FiniteLattice chain = chain_lattice(3);
  const ConLattice cs = con_lattice(chain);
  const JoinZeroHom idmap = con_functor_map(identity_hom(chain), cs, cs);
  for (Element i = 0; i < idmap.source.size; ++i) CHECK(idmap.map[i] == i);

  // inclusion {0,2} -> chain(3): Theta(0,2) maps to the full congruence
  const auto sub = sublattice_closure(chain, {0, 2});
  const ConLattice csub = con_lattice(sub.lattice);
  const JoinZeroHom incl = con_functor_map(sub.embedding, csub, cs);
  const int theta02 = csub.index_of(principal_congruence(sub.lattice, 0, 1));
  CHECK(cs.congruence_of[incl.map[theta02]].is_full());
  CHECK(incl.is_valid());
}

TEST_CASE("res functor map and the adjunction unit") {
  const FiniteLattice chain = chain_lattice(3);
  const auto sub = sublattice_closure(chain, {0, 2});
  const ConLattice cs = con_lattice(sub.lattice);
  const ConLattice ct = con_lattice(chain);
  // restriction of Theta(0,1) to the sublattice {0,2} is the identity
  const Congruence restricted =
      pull_congruence(sub.embedding, principal_congruence(chain, 0, 1));
  CHECK(restricted.is_identity());
  // Res f o Con f lies above the identity pointwise
  const JoinZeroHom cf = con_functor_map(sub.embedding, cs, ct);
  const auto rf = res_functor_map(sub.embedding, cs, ct);
  for (int i = 0; i < cs.size(); ++i)
    CHECK(cs.lattice_of_congruences.leq(i, rf[cf.map[i]]));
  // Res of the identity is the identity
  const auto rid = res_functor_map(identity_hom(chain), ct, ct);
  for (int i = 0; i < ct.size(); ++i) CHECK(rid[i] == i);
}

TEST_CASE("coatoms and simplicity") {
  CHECK(is_simple(m3_lattice()));
  CHECK(is_simple(s_lattice()));
  CHECK_FALSE(is_simple(chain_lattice(3)));
  CHECK(coatoms(con_lattice(chain_lattice(3))).size() == 2);
}

TEST_CASE("interval above coatom meets in a distributive lattice is boolean") {
  for (const auto& l : {boolean_lattice(3), chain_lattice(4),
                        product(chain_lattice(3), chain_lattice(2)).lattice}) {
    if (!is_distributive(l)) continue;
    const auto coats = coatoms(l);
    for (unsigned mask = 1; mask < (1u << coats.size()); ++mask) {
      Element m = l.top();
      int count = 0;
      for (std::size_t i = 0; i < coats.size(); ++i)
        if (mask & (1u << i)) {
          m = l.meet(m, coats[i]);
          ++count;
        }
      const auto up = interval(l, m, l.top());
      CHECK(is_isomorphic(up.lattice, boolean_lattice(count)).has_value());
    }
  }
}
