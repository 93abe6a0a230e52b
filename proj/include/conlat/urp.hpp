#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/base.hpp"
#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"
#include "conlat/semilattice.hpp"

namespace conlat {

/// Starred pairs and gamma family witnessing a uniform refinement property.
/// subset_x is present only in the URP1- flavor.
struct UrpWitness {
  std::vector<std::pair<Element, Element>> starred;  // (alpha*_i, beta*_i)
  std::vector<Element> gamma;                        // I*I, row-major
  std::optional<std::vector<int>> subset_x;          // members of X

  Element gamma_at(int i, int j, int width) const {
    return gamma[static_cast<std::size_t>(i) * width + j];
  }
};

using UrpFamily = std::vector<std::pair<Element, Element>>;

struct UrpOutcome {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<UrpWitness> witness;
  std::uint64_t nodes = 0;
};

namespace detail {

inline bool in_set(const std::optional<std::vector<int>>& x, int i) {
  return x && std::find(x->begin(), x->end(), i) != x->end();
}

// Condition (iv) is enforced for (i,j,k) unless the subset guard exempts it:
// {i,k} in X requires j in X, and {i,k} outside X requires j outside X.
inline bool triangle_enforced(const std::optional<std::vector<int>>& x, int i,
                              int j, int k) {
  if (!x) return true;
  const bool xi = in_set(x, i), xj = in_set(x, j), xk = in_set(x, k);
  if (xi && xk && !xj) return false;
  if (!xi && !xk && xj) return false;
  return true;
}

}  // namespace detail

/// Re-checks every numbered condition of the relevant definition pointwise.
/// Returns the list of violated conditions (empty means the witness is good).
inline std::vector<std::string> urp_witness_violations(
    const FiniteJoinSemilattice0& s, Element eps, const UrpFamily& family,
    const UrpWitness& w) {
  std::vector<std::string> bad;
  const int n = static_cast<int>(family.size());
  if (static_cast<int>(w.starred.size()) != n ||
      static_cast<int>(w.gamma.size()) != n * n) {
    bad.push_back("witness shape mismatch");
    return bad;
  }
  auto tag = [](const char* cond, int i, int j, int k = -1) {
    std::string t = std::string(cond) + " at (" + std::to_string(i) + "," +
                    std::to_string(j);
    if (k >= 0) t += "," + std::to_string(k);
    return t + ")";
  };
  for (int i = 0; i < n; ++i) {
    const auto [as, bs] = w.starred[i];
    if (!s.leq(as, family[i].first) || !s.leq(bs, family[i].second) ||
        s.join(as, bs) != eps)
      bad.push_back(tag("(i)", i, i));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Element g = w.gamma_at(i, j, n);
      if (!s.leq(g, w.starred[i].first) || !s.leq(g, w.starred[j].second))
        bad.push_back(tag("(ii)", i, j));
      if (!s.leq(w.starred[i].first, s.join(w.starred[j].first, g)) ||
          !s.leq(w.starred[j].second, s.join(w.starred[i].second, g)))
        bad.push_back(tag("(iii)", i, j));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!detail::triangle_enforced(w.subset_x, i, j, k)) continue;
        if (!s.leq(w.gamma_at(i, k, n),
                   s.join(w.gamma_at(i, j, n), w.gamma_at(j, k, n))))
          bad.push_back(tag("(iv)", i, j, k));
      }
  return bad;
}

namespace detail {

struct UrpSearch {
  const FiniteJoinSemilattice0& s;
  Element eps;
  const UrpFamily& family;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::optional<std::vector<int>> subset_x;

  int n;
  std::vector<std::vector<std::pair<Element, Element>>> starred_candidates;
  std::vector<std::pair<Element, Element>> starred;
  std::vector<Element> gamma;
  // triples grouped by the lexicographically last of their three pairs
  std::vector<std::vector<std::array<int, 3>>> triples_by_last_pair;

  explicit UrpSearch(const FiniteJoinSemilattice0& s_, Element eps_,
                     const UrpFamily& family_, std::uint64_t budget_)
      : s(s_), eps(eps_), family(family_), budget(budget_),
        n(static_cast<int>(family_.size())) {
    for (const auto& [a, b] : family)
      if (s.join(a, b) != eps)
        throw FamilyInvalid("family pair does not join to epsilon");
    starred_candidates.resize(n);
    for (int i = 0; i < n; ++i)
      for (Element as = 0; as < s.size; ++as) {
        if (!s.leq(as, family[i].first)) continue;
        for (Element bs = 0; bs < s.size; ++bs)
          if (s.leq(bs, family[i].second) && s.join(as, bs) == eps)
            starred_candidates[i].emplace_back(as, bs);
      }
    starred.resize(n);
    gamma.assign(static_cast<std::size_t>(n) * n, -1);
    triples_by_last_pair.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const int p1 = i * n + k, p2 = i * n + j, p3 = j * n + k;
          triples_by_last_pair[std::max({p1, p2, p3})].push_back({i, j, k});
        }
  }

  bool spend() {
    ++nodes;
    return nodes <= budget;
  }

  bool triangle_ok(int i, int j, int k) const {
    if (!triangle_enforced(subset_x, i, j, k)) return true;
    return s.leq(gamma[static_cast<std::size_t>(i) * n + k],
                 s.join(gamma[static_cast<std::size_t>(i) * n + j],
                        gamma[static_cast<std::size_t>(j) * n + k]));
  }

  // Assign gamma for pair index p (= i*n+j) and recurse; candidates try the
  // meet alpha*_i ^ beta*_j first (maximal under (ii)), then everything else.
  SearchStatus assign_gamma(int p) {
    if (p == n * n) return SearchStatus::Found;
    const int i = p / n, j = p % n;
    const Element ai = starred[i].first, bj = starred[j].second;
    Element meet = s.zero;
    for (Element c = 0; c < s.size; ++c)
      if (s.leq(c, ai) && s.leq(c, bj)) meet = s.join(meet, c);
    auto admissible = [&](Element g) {
      if (!s.leq(g, ai) || !s.leq(g, bj)) return false;
      if (!s.leq(starred[i].first, s.join(starred[j].first, g))) return false;
      if (!s.leq(starred[j].second, s.join(starred[i].second, g))) return false;
      return true;
    };
    auto attempt = [&](Element g) -> SearchStatus {
      if (!spend()) return SearchStatus::BudgetExceeded;
      if (!admissible(g)) return SearchStatus::NotFound;
      gamma[p] = g;
      for (const auto& t : triples_by_last_pair[p])
        if (!triangle_ok(t[0], t[1], t[2])) {
          gamma[p] = -1;
          return SearchStatus::NotFound;
        }
      const SearchStatus rec = assign_gamma(p + 1);
      if (rec != SearchStatus::NotFound) return rec;
      gamma[p] = -1;
      return SearchStatus::NotFound;
    };
    SearchStatus st = attempt(meet);
    if (st != SearchStatus::NotFound) return st;
    for (Element g = 0; g < s.size; ++g) {
      if (g == meet) continue;
      st = attempt(g);
      if (st != SearchStatus::NotFound) return st;
    }
    return SearchStatus::NotFound;
  }

  SearchStatus assign_starred(int i) {
    if (i == n) return assign_gamma(0);
    for (const auto& cand : starred_candidates[i]) {
      if (!spend()) return SearchStatus::BudgetExceeded;
      starred[i] = cand;
      const SearchStatus st = assign_starred(i + 1);
      if (st != SearchStatus::NotFound) return st;
    }
    return SearchStatus::NotFound;
  }

  UrpOutcome run() {
    if (n == 0)
      return {SearchStatus::Found, UrpWitness{{}, {}, subset_x}, nodes};
    const SearchStatus st = assign_starred(0);
    UrpOutcome out;
    out.status = st;
    out.nodes = nodes;
    if (st == SearchStatus::Found) out.witness = UrpWitness{starred, gamma, subset_x};
    return out;
  }
};

}  // namespace detail

constexpr std::uint64_t kDefaultUrpBudget = 2'000'000;

/// Complete search for a URP1 witness at eps for the given family; the
/// outcome is three-valued (found / provably none / budget exhausted).
inline UrpOutcome check_urp1_at(const FiniteJoinSemilattice0& s, Element eps,
                                const UrpFamily& family,
                                std::uint64_t budget = kDefaultUrpBudget) {
  detail::UrpSearch search(s, eps, family, budget);
  return search.run();
}

/// URP1- adds a subset X of the index set and weakens the triangle condition
/// to the guarded triples. X is searched over all subsets unless fixed.
inline UrpOutcome check_urp1_minus_at(
    const FiniteJoinSemilattice0& s, Element eps, const UrpFamily& family,
    std::uint64_t budget = kDefaultUrpBudget,
    std::optional<std::vector<int>> fixed_x = std::nullopt) {
  const int n = static_cast<int>(family.size());
  std::uint64_t used = 0;
  if (fixed_x) {
    detail::UrpSearch search(s, eps, family, budget);
    search.subset_x = fixed_x;
    return search.run();
  }
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> x;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) x.push_back(i);
    detail::UrpSearch search(s, eps, family, budget - used);
    search.subset_x = x;
    UrpOutcome out = search.run();
    used += out.nodes;
    out.nodes = used;
    if (out.status != SearchStatus::NotFound) return out;
    if (used >= budget) return {SearchStatus::BudgetExceeded, std::nullopt, used};
  }
  return {SearchStatus::NotFound, std::nullopt, used};
}

/// A URP witness expressed by indices into a congruence lattice.
struct ConUrpWitness {
  Element epsilon;
  UrpFamily family;  // indices into the given ConLattice
  UrpWitness witness;
};

/// The constructive witness from the permutable-congruence proof:
/// alpha*_i = Theta(u, x_i), beta*_i = Theta(x_i, v),
/// gamma_{i,j} = Theta(x_i, x_i ^ x_j).
inline ConUrpWitness urp1_witness_from_splitting(
    const FiniteLattice& l, const ConLattice& con, Element u, Element v,
    const std::vector<std::pair<Congruence, Congruence>>& family,
    const std::vector<Element>& xs) {
  if (family.size() != xs.size())
    throw PreconditionViolated("family and split elements differ in length");
  if (!l.leq(u, v)) throw PreconditionViolated("u must lie below v");
  const Congruence eps = principal_congruence(l, u, v);
  const int n = static_cast<int>(family.size());
  for (int i = 0; i < n; ++i) {
    const auto& [a, b] = family[i];
    if (!(l.leq(u, xs[i]) && l.leq(xs[i], v)))
      throw PreconditionViolated("split element outside [u,v]");
    if (!a.same(u, xs[i]))
      throw PreconditionViolated("u and x_i are not alpha_i-congruent");
    if (!b.same(xs[i], v))
      throw PreconditionViolated("x_i and v are not beta_i-congruent");
    if (!(join_cong(a, b) == eps))
      throw PreconditionViolated("family pair does not join to Theta(u,v)");
  }
  ConUrpWitness out;
  out.epsilon = con.index_of(eps);
  UrpWitness w;
  for (int i = 0; i < n; ++i) {
    out.family.emplace_back(con.index_of(family[i].first),
                            con.index_of(family[i].second));
    w.starred.emplace_back(con.index_of(principal_congruence(l, u, xs[i])),
                           con.index_of(principal_congruence(l, xs[i], v)));
  }
  w.gamma.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w.gamma[static_cast<std::size_t>(i) * n + j] =
          con.index_of(theta_plus(l, xs[i], xs[j]));
  const auto bad = urp_witness_violations(con.semilattice(), out.epsilon,
                                          out.family, w);
  if (!bad.empty())
    throw Error("constructed URP1 witness fails condition " + bad.front());
  out.witness = std::move(w);
  return out;
}

inline ConUrpWitness urp1_witness_from_splitting(
    const FiniteLattice& l, Element u, Element v,
    const std::vector<std::pair<Congruence, Congruence>>& family,
    const std::vector<Element>& xs) {
  return urp1_witness_from_splitting(l, con_lattice(l), u, v, family, xs);
}

/// The constructive witness from the almost-permutable proof, with the
/// orientation subset X and the four-case gamma table built from Theta and
/// Theta^+.
inline ConUrpWitness urp1_minus_witness_from_chain_splits(
    const FiniteLattice& l, const ConLattice& con, Element u, Element v,
    const std::vector<std::pair<Congruence, Congruence>>& family,
    const std::vector<int>& x_set, const std::vector<Element>& xs) {
  if (family.size() != xs.size())
    throw PreconditionViolated("family and split elements differ in length");
  if (!l.leq(u, v)) throw PreconditionViolated("u must lie below v");
  const Congruence eps = principal_congruence(l, u, v);
  const int n = static_cast<int>(family.size());
  auto in_x = [&](int i) {
    return std::find(x_set.begin(), x_set.end(), i) != x_set.end();
  };
  for (int i = 0; i < n; ++i) {
    const auto& [a, b] = family[i];
    if (!(l.leq(u, xs[i]) && l.leq(xs[i], v)))
      throw PreconditionViolated("split element outside [u,v]");
    if (in_x(i)) {
      if (!a.same(u, xs[i]) || !b.same(xs[i], v))
        throw PreconditionViolated("orientation fails for index in X");
    } else {
      if (!b.same(u, xs[i]) || !a.same(xs[i], v))
        throw PreconditionViolated("orientation fails for index outside X");
    }
    if (!(join_cong(a, b) == eps))
      throw PreconditionViolated("family pair does not join to Theta(u,v)");
  }
  ConUrpWitness out;
  out.epsilon = con.index_of(eps);
  UrpWitness w;
  w.subset_x = x_set;
  for (int i = 0; i < n; ++i) {
    out.family.emplace_back(con.index_of(family[i].first),
                            con.index_of(family[i].second));
    const Congruence low = principal_congruence(l, u, xs[i]);
    const Congruence high = principal_congruence(l, xs[i], v);
    if (in_x(i))
      w.starred.emplace_back(con.index_of(low), con.index_of(high));
    else
      w.starred.emplace_back(con.index_of(high), con.index_of(low));
  }
  w.gamma.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Congruence g;
      if (in_x(i) && in_x(j))
        g = theta_plus(l, xs[i], xs[j]);
      else if (in_x(i) && !in_x(j))
        g = principal_congruence(l, u, l.meet(xs[i], xs[j]));
      else if (!in_x(i) && in_x(j))
        g = principal_congruence(l, l.join(xs[i], xs[j]), v);
      else
        g = theta_plus(l, xs[j], xs[i]);
      w.gamma[static_cast<std::size_t>(i) * n + j] = con.index_of(g);
    }
  const auto bad = urp_witness_violations(con.semilattice(), out.epsilon,
                                          out.family, w);
  if (!bad.empty())
    throw Error("constructed URP1- witness fails condition " + bad.front());
  out.witness = std::move(w);
  return out;
}

inline ConUrpWitness urp1_minus_witness_from_chain_splits(
    const FiniteLattice& l, Element u, Element v,
    const std::vector<std::pair<Congruence, Congruence>>& family,
    const std::vector<int>& x_set, const std::vector<Element>& xs) {
  return urp1_minus_witness_from_chain_splits(l, con_lattice(l), u, v, family,
                                              x_set, xs);
}

/// Enumerates the families of size at most two at eps and checks each by
/// bounded search (the budget applies per family). Used for the join-closure
/// property and catalog sweeps.
inline UrpOutcome check_urp1_all_small_families(
    const FiniteJoinSemilattice0& s, Element eps,
    std::uint64_t budget = kDefaultUrpBudget, bool minus = false) {
  std::vector<std::pair<Element, Element>> decompositions;
  for (Element a = 0; a < s.size; ++a)
    for (Element b = 0; b < s.size; ++b)
      if (s.join(a, b) == eps) decompositions.emplace_back(a, b);
  std::uint64_t used = 0;
  auto run = [&](const UrpFamily& fam) -> UrpOutcome {
    UrpOutcome out = minus ? check_urp1_minus_at(s, eps, fam, budget)
                           : check_urp1_at(s, eps, fam, budget);
    used += out.nodes;
    out.nodes = used;
    return out;
  };
  for (std::size_t i = 0; i < decompositions.size(); ++i) {
    UrpOutcome out = run({decompositions[i]});
    if (out.status != SearchStatus::Found) return out;
    for (std::size_t j = i; j < decompositions.size(); ++j) {
      out = run({decompositions[i], decompositions[j]});
      if (out.status != SearchStatus::Found) return out;
    }
  }
  return {SearchStatus::Found, UrpWitness{}, used};
}

/// In a distributive semilattice the set of elements where URP1 holds is
/// closed under join; confirms this on the given points by bounded search.
inline bool urp1_point_join_closure_check(const FiniteJoinSemilattice0& s,
                                          const std::vector<Element>& points,
                                          std::uint64_t budget = kDefaultUrpBudget) {
  for (Element p : points)
    if (check_urp1_all_small_families(s, p, budget).status !=
        SearchStatus::Found)
      return false;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i; j < points.size(); ++j)
      if (check_urp1_all_small_families(s, s.join(points[i], points[j]), budget)
              .status != SearchStatus::Found)
        return false;
  return true;
}

/// The two offending unguarded-triple containments, evaluated on the three
/// atoms of M3 with u = 0, v = 1. Both must fail.
struct M3RemarkResult {
  bool first_fails = false;   // Theta+(x_i,x_k) vs Theta(u, x_i^x_j) v Theta(x_j v x_k, v)
  bool second_fails = false;  // Theta+(x_k,x_i) vs Theta(x_i v x_j, v) v Theta(x_j v x_k, v)
};

inline M3RemarkResult m3_remark_check() {
  const FiniteLattice m3 = m3_lattice();
  const Element u = 0, v = 4, xi = 1, xj = 2, xk = 3;
  M3RemarkResult out;
  const Congruence lhs1 = theta_plus(m3, xi, xk);
  const Congruence rhs1 =
      join_cong(principal_congruence(m3, u, m3.meet(xi, xj)),
                principal_congruence(m3, m3.join(xj, xk), v));
  out.first_fails = !leq_cong(lhs1, rhs1);
  const Congruence lhs2 = theta_plus(m3, xk, xi);
  const Congruence rhs2 =
      join_cong(principal_congruence(m3, m3.join(xi, xj), v),
                principal_congruence(m3, m3.join(xj, xk), v));
  out.second_fails = !leq_cong(lhs2, rhs2);
  return out;
}

}  // namespace conlat
