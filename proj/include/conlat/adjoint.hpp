#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "conlat/base.hpp"
#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

/// Order-preserving map between finite lattices. In the finite case a
/// complete join-homomorphism is one preserving binary joins and bottom.
struct MonotoneMap {
  FiniteLattice source;
  FiniteLattice target;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }

  bool is_monotone() const {
    for (Element a = 0; a < source.size; ++a)
      for (Element b = 0; b < source.size; ++b)
        if (source.leq(a, b) && !target.leq(map[a], map[b])) return false;
    return true;
  }

  bool operator==(const MonotoneMap& o) const { return map == o.map; }
};

inline MonotoneMap identity_map(const FiniteLattice& l) {
  std::vector<Element> m(l.size);
  std::iota(m.begin(), m.end(), 0);
  return {l, l, std::move(m)};
}

inline MonotoneMap compose(const MonotoneMap& second, const MonotoneMap& first) {
  if (first.target.size != second.source.size) throw MixedLattices();
  std::vector<Element> m(first.source.size);
  for (Element x = 0; x < first.source.size; ++x) m[x] = second.map[first.map[x]];
  return {first.source, second.target, std::move(m)};
}

inline bool is_complete_join_hom(const MonotoneMap& f) {
  if (f.map[f.source.bottom()] != f.target.bottom()) return false;
  for (Element a = 0; a < f.source.size; ++a)
    for (Element b = 0; b < f.source.size; ++b)
      if (f.map[f.source.join(a, b)] != f.target.join(f.map[a], f.map[b]))
        return false;
  return true;
}

inline bool is_complete_meet_hom(const MonotoneMap& f) {
  if (f.map[f.source.top()] != f.target.top()) return false;
  for (Element a = 0; a < f.source.size; ++a)
    for (Element b = 0; b < f.source.size; ++b)
      if (f.map[f.source.meet(a, b)] != f.target.meet(f.map[a], f.map[b]))
        return false;
  return true;
}

namespace detail {

inline bool adjunction_holds(const MonotoneMap& f, const MonotoneMap& g) {
  for (Element a = 0; a < f.source.size; ++a)
    for (Element b = 0; b < f.target.size; ++b)
      if (f.target.leq(f.map[a], b) != f.source.leq(a, g.map[b]))
        return false;
  return true;
}

}  // namespace detail

/// g(b) is the largest a with f(a) <= b. The full adjunction equivalence is
/// verified before returning, which also catches non-join-homs that slip past
/// the binary check in degenerate tables.
inline MonotoneMap upper_adjoint(const MonotoneMap& f) {
  if (!is_complete_join_hom(f)) throw NotJoinHom();
  std::vector<Element> g(f.target.size);
  for (Element b = 0; b < f.target.size; ++b) {
    Element acc = f.source.bottom();
    for (Element a = 0; a < f.source.size; ++a)
      if (f.target.leq(f.map[a], b)) acc = f.source.join(acc, a);
    g[b] = acc;
  }
  MonotoneMap out{f.target, f.source, std::move(g)};
  if (!detail::adjunction_holds(f, out)) throw NotJoinHom();
  return out;
}

/// f(a) is the least b with a <= g(b).
inline MonotoneMap lower_adjoint(const MonotoneMap& g) {
  if (!is_complete_meet_hom(g)) throw NotMeetHom();
  std::vector<Element> f(g.target.size);
  for (Element a = 0; a < g.target.size; ++a) {
    Element acc = g.source.top();
    for (Element b = 0; b < g.source.size; ++b)
      if (g.target.leq(a, g.map[b])) acc = g.source.meet(acc, b);
    f[a] = acc;
  }
  MonotoneMap out{g.target, g.source, std::move(f)};
  if (!detail::adjunction_holds(out, g)) throw NotMeetHom();
  return out;
}

struct DualityReport {
  bool pass = true;
  std::string detail;
};

/// Con f and Res f are dual: Con f(alpha) <= beta iff alpha <= Res f(beta),
/// exhaustively over both congruence lattices.
inline DualityReport verify_dual_ext(const LatticeHom& f) {
  const ConLattice cs = con_lattice(f.source);
  const ConLattice ct = con_lattice(f.target);
  const JoinZeroHom cf = con_functor_map(f, cs, ct);
  const std::vector<Element> rf = res_functor_map(f, cs, ct);
  for (int a = 0; a < cs.size(); ++a)
    for (int b = 0; b < ct.size(); ++b) {
      const bool lhs = ct.lattice_of_congruences.leq(cf.map[a], b);
      const bool rhs = cs.lattice_of_congruences.leq(a, rf[b]);
      if (lhs != rhs)
        return {false, "adjunction fails at congruence pair (" +
                           std::to_string(a) + "," + std::to_string(b) + ")"};
    }
  return {};
}

/// The interval [beta, top] of Con L is canonically isomorphic to Con(L/beta);
/// theta maps to its image under the quotient projection.
inline Congruence quotient_congruence(const LatticeHom& projection,
                                      const Congruence& theta) {
  return push_congruence(projection, theta);
}

/// Checks the commuting square relating Res f to the induced map between the
/// quotients K/alpha -> L/beta, where alpha = Res f(beta).
inline DualityReport verify_res_interval_square(const LatticeHom& f,
                                                const Congruence& beta) {
  const FiniteLattice& k = f.source;
  const FiniteLattice& l = f.target;
  const Congruence alpha = pull_congruence(f, beta);
  const QuotientResult ka = quotient(k, alpha);
  const QuotientResult lb = quotient(l, beta);
  // induced hom f': K/alpha -> L/beta, [x] -> [f(x)]
  std::vector<Element> fm(ka.lattice.size);
  for (Element x = 0; x < k.size; ++x)
    fm[alpha.block[x]] = beta.block[f.map[x]];
  const LatticeHom fprime{ka.lattice, lb.lattice, std::move(fm)};
  if (!fprime.is_valid()) return {false, "induced quotient map is not a hom"};
  const ConLattice con_ka = con_lattice(ka.lattice);
  const ConLattice con_l = con_lattice(l);
  // walk the interval [beta, top] of Con L
  const int beta_idx = con_l.index_of(beta);
  for (int t = 0; t < con_l.size(); ++t) {
    if (!con_l.lattice_of_congruences.leq(beta_idx, t)) continue;
    const Congruence& theta = con_l.congruence_of[t];
    // route 1: restrict along f, then pass to the quotient K/alpha
    const Congruence restricted = pull_congruence(f, theta);
    const Congruence route1 = quotient_congruence(ka.projection, restricted);
    // route 2: pass to the quotient L/beta, then restrict along f'
    const Congruence in_quotient = quotient_congruence(lb.projection, theta);
    const Congruence route2 = pull_congruence(fprime, in_quotient);
    if (!(con_ka.index_of(route1) == con_ka.index_of(route2)))
      return {false, "square does not commute at congruence index " +
                         std::to_string(t)};
  }
  return {};
}

}  // namespace conlat
