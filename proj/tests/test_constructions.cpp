#include <catch2/catch_amalgamated.hpp>

#include "conlat/constructions.hpp"

using namespace conlat;

namespace {

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (c.status != CheckStatus::Pass) return false;
  return true;
}

}  // namespace

TEST_CASE("build_dc components") {
  const DcLikeData dc = build_dc();
  CHECK(dc.U.size == 32);
  for (int j = 0; j < 3; ++j) CHECK(dc.T[j].semilattice.size == 16);
  for (int i = 0; i < 3; ++i) CHECK(dc.S[i].semilattice.size == 4);
  // alpha0 = zeta0 v zeta1 = eta0 v eta1
  CHECK(dc.U.join(dc.zeta[0], dc.zeta[1]) == dc.alpha[0]);
  CHECK(dc.U.join(dc.eta[0], dc.eta[1]) == dc.alpha[0]);
  // beta1 = xi2 v xi3 = zeta1 v zeta3
  CHECK(dc.U.join(dc.xi[2], dc.xi[3]) == dc.beta[1]);
  CHECK(dc.U.join(dc.zeta[1], dc.zeta[3]) == dc.beta[1]);
}

TEST_CASE("verify_dc passes and catches a perturbed quadruple") {
  CHECK(all_pass(verify_dc(build_dc())));
  DcLikeData broken = build_dc();
  broken.xi[1] = (1 << 3) | (1 << 4);  // {3} becomes {3,4}
  const Report r = verify_dc(broken);
  bool refinement_failed = false;
  for (const auto& c : r.checks)
    if (c.status == CheckStatus::Fail &&
        c.name.find("refinement matrix") != std::string::npos)
      refinement_failed = true;
  CHECK(refinement_failed);
}

TEST_CASE("verify_dac passes with the element witnesses") {
  const DcLikeData dac = build_dac();
  CHECK(dac.U.size == 256);
  const Report r = verify_dac(dac);
  CHECK(all_pass(r));
  int witnessed = 0;
  for (const auto& c : r.checks)
    if (c.witness.find("witness element") != std::string::npos) ++witnessed;
  CHECK(witnessed == 4);
  // alpha1 = xi0 v xi1 as subsets of the eight-element ground set
  CHECK(dac.U.join(dac.xi[0], dac.xi[1]) == dac.alpha[1]);
}

TEST_CASE("dual tables") { CHECK(all_pass(dual_tables_dc(build_dc()))); }

TEST_CASE("build_lifting realizes the generators") {
  const LiftingData ld = build_lifting();
  // the tuple of generator c reads (1,0,1,0,p)
  const Element c = ld.gen[2];
  CHECK(ld.coordinate(c, 0) == 1);
  CHECK(ld.coordinate(c, 1) == 0);
  CHECK(ld.coordinate(c, 2) == 1);
  CHECK(ld.coordinate(c, 3) == 0);
  CHECK(ld.coordinate(c, 4) == s_elements::p);
  CHECK(ld.Kbase.lattice.size == 2);
  for (int i = 0; i < 3; ++i) CHECK(ld.K[i].lattice.size == 3);
  CHECK(ld.P.lattice.size == 27);
  for (int j = 0; j < 3; ++j) CHECK(ld.L[j].lattice.size == 6);
}

TEST_CASE("verify_lifting and the audit pass") {
  const LiftingData ld = build_lifting();
  const DcLikeData dc = build_dc();
  CHECK(all_pass(verify_lifting(ld, dc)));
  CHECK(all_pass(permutability_audit(ld)));
}

TEST_CASE("case table") {
  CHECK(all_pass(case_table_check(build_dc())));
  CHECK(all_pass(case_table_check(build_dac())));
  // eight rows each, with the designated routes matching the case list
  const auto rows = case_table_rows(build_dac());
  REQUIRE(rows.size() == 8);
  for (const auto& row : rows) CHECK(row.matches);
  const auto dc_rows = case_table_rows(build_dc());
  int failing = 0;
  for (const auto& row : dc_rows)
    if (row.primal_fails || row.dual_fails) ++failing;
  CHECK(failing == 2);  // only the two uniform orientations
}

TEST_CASE("the engine is inapplicable on the genuine lifting") {
  const LiftingData ld = build_lifting();
  const DcLikeData dc = build_dc();
  const ConImage ci = con_image_with_data(ld.cube);
  const auto iso = diagram_isomorphism(ci.diagram, dc.cube);
  REQUIRE(iso.has_value());
  const EngineOutcome out = contradiction_engine_dc(ld.cube, *iso, dc);
  CHECK_FALSE(out.certificate.has_value());
  CHECK(out.inapplicable.find("lacks a split") != std::string::npos);
  // with both orientations allowed the forced inequality holds in U for the
  // mixed orientation the lifting realizes, so there is still no certificate
  const EngineOutcome both = contradiction_engine_dac(ld.cube, *iso, dc);
  CHECK_FALSE(both.certificate.has_value());
  CHECK(both.inapplicable.find("holds in U") != std::string::npos);
}

namespace {

// A synthetic cube whose small lattices are squares with matching congruence
// semilattices. Locally every forced value checks out, so the engine runs to
// the final inequality; globally it is not a lifting, which is the point.
struct Fixture {
  LatticeDiagram cube;
  DiagramIso<JoinZeroHom> iso;
};

Fixture synthetic_cube(const DcLikeData& dc) {
  Fixture fx;
  std::vector<std::string> names(8);
  names[0] = "K";
  for (int i = 0; i < 3; ++i) names[DcLikeData::node_s(i)] = "K" + std::to_string(i);
  for (int j = 0; j < 3; ++j) names[DcLikeData::node_t(j)] = "L" + std::to_string(j);
  names[7] = "P";
  fx.cube.index = cube_poset(names);
  const FiniteLattice two = chain_lattice(2);
  const FiniteLattice square = boolean_lattice(2);
  const FiniteLattice four = boolean_lattice(4);
  const FiniteLattice five = boolean_lattice(5);
  fx.cube.object_at.resize(8);
  fx.cube.object_at[0] = two;
  for (int i = 0; i < 3; ++i) fx.cube.object_at[DcLikeData::node_s(i)] = square;
  for (int j = 0; j < 3; ++j) fx.cube.object_at[DcLikeData::node_t(j)] = four;
  fx.cube.object_at[7] = five;

  auto mask_hom = [](const FiniteLattice& a, const FiniteLattice& b,
                     auto&& fn) {
    std::vector<Element> m(a.size);
    for (Element x = 0; x < a.size; ++x) m[x] = fn(x);
    return LatticeHom{a, b, std::move(m)};
  };
  // bottom to the small squares: the diagonal
  for (int i = 0; i < 3; ++i)
    fx.cube.arrow_at.emplace(
        std::make_pair(0, DcLikeData::node_s(i)),
        mask_hom(two, square, [](Element x) { return x ? 3 : 0; }));
  // small squares to the middle cubes: the first-listed index spreads over
  // bits {0,1}, the second over bits {0,2}
  auto spread01 = [](Element x) {
    return ((x & 1) ? 3 : 0) | ((x & 2) ? 12 : 0);
  };
  auto spread02 = [](Element x) {
    return ((x & 1) ? 5 : 0) | ((x & 2) ? 10 : 0);
  };
  for (int j = 0; j < 3; ++j) {
    const auto [jp, jpp] = std::pair(j == 0 ? 1 : 0, j == 2 ? 1 : 2);
    fx.cube.arrow_at.emplace(
        std::make_pair(DcLikeData::node_s(jp), DcLikeData::node_t(j)),
        mask_hom(square, four, spread01));
    fx.cube.arrow_at.emplace(
        std::make_pair(DcLikeData::node_s(jpp), DcLikeData::node_t(j)),
        mask_hom(square, four, spread02));
  }
  // middle cubes to the top: coordinates 0..2 read bit 0, coordinates 3..4
  // read bit 3
  auto top_map = [](Element x) {
    return ((x & 1) ? 7 : 0) | ((x & 8) ? 24 : 0);
  };
  for (int j = 0; j < 3; ++j)
    fx.cube.arrow_at.emplace(std::make_pair(DcLikeData::node_t(j), 7),
                             mask_hom(four, five, top_map));

  // object isomorphisms onto the cube carriers: atoms of each congruence
  // lattice go to the named generators
  const ConImage ci = con_image_with_data(fx.cube);
  auto iso_for = [&](int node, const std::vector<Element>& atom_images) {
    const ConLattice& con = ci.con_at[node];
    const FiniteJoinSemilattice0& target = dc.cube.object_at[node];
    // atoms of Con: the congruences collapsing exactly one coordinate pair
    std::vector<Element> atom_idx;
    for (Element c : coatoms(lattice_view(con.semilattice())))
      (void)c;  // silence unused warning path; atoms found below
    const FiniteLattice& cl = con.lattice_of_congruences;
    for (Element x = 0; x < cl.size; ++x)
      if (cl.covers(cl.bottom(), x)) atom_idx.push_back(x);
    REQUIRE(atom_idx.size() == atom_images.size());
    std::vector<Element> m(con.size());
    for (int x = 0; x < con.size(); ++x) {
      Element acc = target.zero;
      for (std::size_t t = 0; t < atom_idx.size(); ++t)
        if (cl.leq(atom_idx[t], x)) acc = target.join(acc, atom_images[t]);
      m[x] = acc;
    }
    JoinZeroHom h{con.semilattice(), target, std::move(m)};
    REQUIRE(h.is_isomorphism());
    return h;
  };

  fx.iso.at.resize(8);
  fx.iso.at[0] = iso_for(0, {dc.U.top()});
  // Con(2^2) atoms in index order: collapsing bit 0 first, then bit 1; the
  // first atom is Theta(0, 1) which fixes the alpha label
  for (int i = 0; i < 3; ++i) {
    const int node = DcLikeData::node_s(i);
    const ConLattice& con = ci.con_at[node];
    const FiniteLattice& cl = con.lattice_of_congruences;
    std::vector<Element> atom_idx;
    for (Element x = 0; x < cl.size; ++x)
      if (cl.covers(cl.bottom(), x)) atom_idx.push_back(x);
    REQUIRE(atom_idx.size() == 2);
    // orient: the atom collapsing {0,1} (bit-0 change) must carry alpha_i
    const Congruence& first = con.congruence_of[atom_idx[0]];
    std::vector<Element> images(2);
    const Element a_loc = dc.S[i].local_of[dc.alpha[i]];
    const Element b_loc = dc.S[i].local_of[dc.beta[i]];
    if (first.same(0, 1)) {
      images = {a_loc, b_loc};
    } else {
      images = {b_loc, a_loc};
    }
    std::vector<Element> images_amb(2);
    images_amb[0] = images[0];
    images_amb[1] = images[1];
    fx.iso.at[node] = iso_for(node, images_amb);
  }
  // middle: atom collapsing coordinate t carries the t-th quadruple element
  for (int j = 0; j < 3; ++j) {
    const int node = DcLikeData::node_t(j);
    const ConLattice& con = ci.con_at[node];
    const FiniteLattice& cl = con.lattice_of_congruences;
    std::vector<Element> atom_idx;
    for (Element x = 0; x < cl.size; ++x)
      if (cl.covers(cl.bottom(), x)) atom_idx.push_back(x);
    REQUIRE(atom_idx.size() == 4);
    std::vector<Element> images(4);
    for (std::size_t t = 0; t < 4; ++t) {
      // which coordinate does this atom collapse?
      const Congruence& c = con.congruence_of[atom_idx[t]];
      int coord = -1;
      for (int bit = 0; bit < 4; ++bit)
        if (c.same(0, 1 << bit)) coord = bit;
      REQUIRE(coord >= 0);
      images[t] = dc.T[j].local_of[dc.quadruple(j)[coord]];
    }
    fx.iso.at[node] = iso_for(node, images);
  }
  {
    const ConLattice& con = ci.con_at[7];
    const FiniteLattice& cl = con.lattice_of_congruences;
    std::vector<Element> atom_idx;
    for (Element x = 0; x < cl.size; ++x)
      if (cl.covers(cl.bottom(), x)) atom_idx.push_back(x);
    REQUIRE(atom_idx.size() == 5);
    std::vector<Element> images(5);
    for (std::size_t t = 0; t < 5; ++t) {
      const Congruence& c = con.congruence_of[atom_idx[t]];
      int coord = -1;
      for (int bit = 0; bit < 5; ++bit)
        if (c.same(0, 1 << bit)) coord = bit;
      REQUIRE(coord >= 0);
      images[t] = 1 << coord;
    }
    fx.iso.at[7] = iso_for(7, images);
  }
  return fx;
}

}  // namespace

TEST_CASE("the engine reports the violated inequality on a synthetic cube") {
  const DcLikeData dc = build_dc();
  const Fixture fx = synthetic_cube(dc);
  REQUIRE(is_commutative(fx.cube).commutes);
  const EngineOutcome out = contradiction_engine_dc(fx.cube, fx.iso, dc);
  REQUIRE(out.certificate.has_value());
  const ContradictionCertificate& cert = *out.certificate;
  CHECK(cert.inequality == "eta1 <= xi1 v zeta1");
  CHECK(cert.m02 == dc.eta[1]);
  CHECK(cert.m12 == dc.xi[1]);
  CHECK(cert.m01 == dc.zeta[1]);
  CHECK_FALSE(dc.U.leq(cert.lhs, cert.rhs));
  // the certificate is self-verifying: its matrix rows join to the headers
  for (int j = 0; j < 3; ++j) {
    const auto [jp, jpp] = std::pair(j == 0 ? 1 : 0, j == 2 ? 1 : 2);
    CHECK(dc.U.join(cert.matrix[j][0], cert.matrix[j][1]) == dc.alpha[jp]);
    CHECK(dc.U.join(cert.matrix[j][0], cert.matrix[j][2]) == dc.alpha[jpp]);
  }
}

TEST_CASE("a perturbed object map is rejected") {
  const DcLikeData dc = build_dc();
  Fixture fx = synthetic_cube(dc);
  std::swap(fx.iso.at[7].map[1], fx.iso.at[7].map[2]);
  CHECK_THROWS_AS(contradiction_engine_dc(fx.cube, fx.iso, dc), InvalidIso);
}

TEST_CASE("the generalized top option evaluates in the larger semilattice") {
  const DcLikeData dc = build_dc();
  const Fixture fx = synthetic_cube(dc);
  // embed the powerset of 5 into the powerset of 6
  const auto u6 = powerset_semilattice(6);
  std::vector<Element> emb(32);
  for (Element x = 0; x < 32; ++x) emb[x] = x;
  const JoinZeroHom embed{dc.U, u6, emb};
  const EngineOutcome out =
      contradiction_engine_dc(fx.cube, fx.iso, dc, embed);
  REQUIRE(out.certificate.has_value());
  CHECK_FALSE(u6.leq(out.certificate->lhs, out.certificate->rhs));
}

TEST_CASE("triangle verification") {
  const Report r = verify_m3_lifting();
  CHECK(all_pass(r));
  bool phrase = false;
  for (const auto& c : r.checks)
    phrase = phrase || c.name.find("obstruction trace") != std::string::npos;
  CHECK(phrase);
}

TEST_CASE("obstruction checker passes the M3 lifting and rejects iso lifts") {
  LatticeDiagram lift;
  lift.index = triangle_poset();
  lift.object_at = {chain_lattice(2), boolean_lattice(2), m3_lattice()};
  lift.arrow_at.emplace(std::make_pair(0, 1),
                        LatticeHom{lift.object_at[0], lift.object_at[1], {0, 3}});
  lift.arrow_at.emplace(std::make_pair(1, 2),
                        LatticeHom{lift.object_at[1], lift.object_at[2],
                                   {0, 1, 2, 4}});
  CHECK_FALSE(verify_triangle_obstruction(lift).obstruction);

  LatticeDiagram bad;
  bad.index = triangle_poset();
  const FiniteLattice two = chain_lattice(2);
  bad.object_at = {two, two, two};
  bad.arrow_at.emplace(std::make_pair(0, 1), identity_hom(two));
  bad.arrow_at.emplace(std::make_pair(1, 2), identity_hom(two));
  const auto rejected = verify_triangle_obstruction(bad);
  CHECK(rejected.obstruction);
  bool phrase = false;
  for (const auto& line : rejected.trace)
    phrase = phrase || line.find("p is an isomorphism, which is impossible") !=
                           std::string::npos;
  CHECK(phrase);
}
