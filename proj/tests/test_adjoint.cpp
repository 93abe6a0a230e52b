#include <catch2/catch_amalgamated.hpp>

#include "conlat/adjoint.hpp"
#include "conlat/constructions.hpp"

using namespace conlat;

namespace {

MonotoneMap diagonal_two() {
  // 2 -> 2^2, x -> (x, x)
  return {chain_lattice(2), boolean_lattice(2), {0, 3}};
}

}  // namespace

TEST_CASE("complete join and meet hom checks") {
  const auto id2 = identity_map(boolean_lattice(2));
  CHECK(is_complete_join_hom(id2));
  CHECK(is_complete_meet_hom(id2));

  const MonotoneMap eps = diagonal_two();
  CHECK(is_complete_join_hom(eps));
  CHECK(is_complete_meet_hom(eps));  // the diagonal preserves meets too

  const MonotoneMap bad{chain_lattice(2), boolean_lattice(2), {1, 3}};
  CHECK_FALSE(is_complete_join_hom(bad));  // bottom moves
}

TEST_CASE("upper adjoint of the diagonal is the meet") {
  const MonotoneMap eps = diagonal_two();
  const MonotoneMap g = upper_adjoint(eps);
  const FiniteLattice b2 = boolean_lattice(2);
  for (Element x = 0; x < 4; ++x)
    CHECK(g.map[x] == ((b2.meet(x, 1) == 1 && b2.meet(x, 2) == 2) ? 1 : 0));
}

TEST_CASE("upper adjoint of the join map is the diagonal") {
  // pi: 2^2 -> 2, (x, y) -> x v y is a complete join-hom
  const MonotoneMap pi{boolean_lattice(2), chain_lattice(2), {0, 1, 1, 1}};
  REQUIRE(is_complete_join_hom(pi));
  const MonotoneMap g = upper_adjoint(pi);
  CHECK(g.map == std::vector<Element>({0, 3}));
}

TEST_CASE("upper adjoint validates the adjunction") {
  // monotone but not a join-hom: send both atoms up without their join
  const MonotoneMap not_hom{boolean_lattice(2), chain_lattice(3),
                            {0, 1, 1, 2}};
  REQUIRE(not_hom.is_monotone());
  CHECK_THROWS_AS(upper_adjoint(not_hom), NotJoinHom);
}

TEST_CASE("lower adjoint round trips") {
  const MonotoneMap eps = diagonal_two();
  const MonotoneMap again = lower_adjoint(upper_adjoint(eps));
  CHECK(again == eps);

  const auto id3 = identity_map(chain_lattice(3));
  CHECK(lower_adjoint(id3) == id3);

  // top-constant meet-hom: lower adjoint is bottom-constant
  const MonotoneMap top_const{chain_lattice(2), chain_lattice(3), {2, 2}};
  REQUIRE(is_complete_meet_hom(top_const));
  const MonotoneMap f = lower_adjoint(top_const);
  CHECK(f.map == std::vector<Element>({0, 0, 0}));
}

TEST_CASE("contravariant functoriality on composable join-homs") {
  const MonotoneMap eps = diagonal_two();                            // 2 -> 2^2
  const MonotoneMap incl{boolean_lattice(2), boolean_lattice(3),
                         {0, 1, 2, 3}};                              // 2^2 -> 2^3
  REQUIRE(is_complete_join_hom(incl));
  const MonotoneMap composite = compose(incl, eps);
  const MonotoneMap lhs = upper_adjoint(composite);
  const MonotoneMap rhs = compose(upper_adjoint(eps), upper_adjoint(incl));
  CHECK(lhs == rhs);
}

TEST_CASE("psi0 at bar 4 on the basic cube") {
  const DcLikeData dc = build_dc();
  const FiniteLattice u_lat = lattice_view(dc.U);
  const FiniteLattice t0_lat = lattice_view(dc.T[0].semilattice);
  const MonotoneMap incl{t0_lat, u_lat, dc.T[0].ambient_of};
  const MonotoneMap psi0 = upper_adjoint(incl);
  const Element bar4 = 31 ^ (1 << 4);
  CHECK(dc.T[0].ambient_of[psi0.map[bar4]] == ((1 << 2) | (1 << 3)));
}

TEST_CASE("Con f and Res f are dual") {
  CHECK(verify_dual_ext(identity_hom(chain_lattice(3))).pass);
  const auto sub = sublattice_closure(chain_lattice(3), {0, 1});
  CHECK(verify_dual_ext(sub.embedding).pass);
  // a non-injective hom as well
  const auto q = quotient(chain_lattice(3),
                          principal_congruence(chain_lattice(3), 0, 1));
  CHECK(verify_dual_ext(q.projection).pass);
}

TEST_CASE("every arrow of the lifting cube passes duality") {
  const LiftingData ld = build_lifting();
  for (const auto& [pq, hom] : ld.cube.arrow_at)
    CHECK(verify_dual_ext(hom).pass);
}

TEST_CASE("the restriction square commutes through the quotients") {
  const FiniteLattice chain = chain_lattice(3);
  const auto sub = sublattice_closure(chain, {0, 2});
  const ConLattice ct = con_lattice(chain);
  for (int b = 0; b < ct.size(); ++b)
    CHECK(verify_res_interval_square(sub.embedding, ct.congruence_of[b]).pass);

  const LiftingData ld = build_lifting();
  const LatticeHom g01 =
      ld.cube.arrow(LiftingData::node_k(0), LiftingData::node_l(1));
  const ConLattice conl1 = con_lattice(ld.L[1].lattice);
  for (Element c : coatoms(conl1))
    CHECK(verify_res_interval_square(g01, conl1.congruence_of[c]).pass);
  CHECK(verify_res_interval_square(g01, identity_congruence(ld.L[1].lattice.size))
            .pass);
  CHECK(verify_res_interval_square(g01, full_congruence(ld.L[1].lattice.size))
            .pass);
}
