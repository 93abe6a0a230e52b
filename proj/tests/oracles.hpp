// Brute-force oracles, independent of the library's algorithms. These favor
// exhaustive enumeration over cleverness and are only run at desk scale.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"
#include "conlat/semilattice.hpp"
#include "conlat/urp.hpp"

namespace oracle {

using conlat::Congruence;
using conlat::Element;
using conlat::FiniteJoinSemilattice0;
using conlat::FiniteLattice;

// All partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  auto rec = [&](auto&& self, int i, int maxid) -> void {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int b = 0; b <= maxid + 1; ++b) {
      a[i] = b;
      self(self, i + 1, std::max(maxid, b));
    }
  };
  rec(rec, 0, -1);
  return out;
}

inline bool compatible(const FiniteLattice& l, const std::vector<int>& part) {
  for (Element a = 0; a < l.size; ++a)
    for (Element b = 0; b < l.size; ++b) {
      if (part[a] != part[b]) continue;
      for (Element c = 0; c < l.size; ++c) {
        if (part[l.join(a, c)] != part[l.join(b, c)]) return false;
        if (part[l.meet(a, c)] != part[l.meet(b, c)]) return false;
      }
    }
  return true;
}

inline std::vector<Congruence> all_congruences(const FiniteLattice& l) {
  std::vector<Congruence> out;
  for (const auto& part : all_partitions(l.size))
    if (compatible(l, part))
      out.push_back(conlat::canonical_congruence(l.size, part));
  return out;
}

// Least congruence merging (a, b): the common refinement of all compatible
// partitions that merge them.
inline Congruence principal(const FiniteLattice& l, Element a, Element b) {
  std::optional<Congruence> acc;
  for (const auto& cong : all_congruences(l)) {
    if (!cong.same(a, b)) continue;
    acc = acc ? conlat::meet_cong(*acc, cong) : cong;
  }
  return *acc;  // the full partition always qualifies
}

// Unlabeled lattice count via naturally labeled posets: every element's
// strict down-set is chosen among the down-closed subsets of its
// predecessors; lattices are filtered by a direct bound scan and classes are
// counted with a minimum over all n! relabelings.
namespace detail {

inline bool direct_is_lattice(int n, const std::vector<char>& leq) {
  auto at = [&](int a, int b) { return leq[a * n + b] != 0; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int lub = -1, glb = -1, lubs = 0, glbs = 0;
      for (int c = 0; c < n; ++c) {
        if (at(a, c) && at(b, c)) {
          bool minimal = true;
          for (int d = 0; d < n; ++d)
            if (d != c && at(a, d) && at(b, d) && at(d, c)) minimal = false;
          if (minimal) {
            ++lubs;
            lub = c;
          }
        }
        if (at(c, a) && at(c, b)) {
          bool maximal = true;
          for (int d = 0; d < n; ++d)
            if (d != c && at(d, a) && at(d, b) && at(c, d)) maximal = false;
          if (maximal) {
            ++glbs;
            glb = c;
          }
        }
      }
      (void)lub;
      (void)glb;
      if (lubs != 1 || glbs != 1) return false;
    }
  return true;
}

inline std::string min_code_all_perms(int n, const std::vector<char>& leq) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string s(n * n, '0');
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (leq[a * n + b]) s[perm[a] * n + perm[b]] = '1';
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

inline int count_lattices(int n) {
  std::set<std::string> classes;
  std::vector<char> leq(n * n, 0);
  for (int i = 0; i < n; ++i) leq[i * n + i] = 1;
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      if (detail::direct_is_lattice(n, leq))
        classes.insert(detail::min_code_all_perms(n, leq));
      return;
    }
    // choose the strict down-set of k among down-closed subsets of 0..k-1
    std::vector<char> down(k, 0);
    auto choose = [&](auto&& inner, int i) -> void {
      if (i == k) {
        for (int t = 0; t < k; ++t) {
          leq[t * n + k] = down[t];
          for (int s = 0; s < k; ++s)
            if (down[t] && leq[s * n + t]) leq[s * n + k] = 1;
        }
        self(self, k + 1);
        for (int t = 0; t < k; ++t) leq[t * n + k] = 0;
        return;
      }
      bool closed = true;
      for (int t = 0; t < i; ++t)
        if (leq[t * n + i] && !down[t]) closed = false;
      if (closed) {
        down[i] = 1;
        inner(inner, i + 1);
        down[i] = 0;
      }
      inner(inner, i + 1);
    };
    choose(choose, 0);
  };
  rec(rec, 0);
  return static_cast<int>(classes.size());
}

// Independent count for very small sizes: enumerate all commutative
// idempotent join tables, filter associativity, bottom, and unique meets.
inline int count_lattices_by_join_tables(int n) {
  std::vector<Element> join(n * n, 0);
  for (int i = 0; i < n; ++i) join[i * n + i] = i;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::set<std::string> classes;

  auto is_lattice_table = [&]() {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (join[join[a * n + b] * n + c] != join[a * n + join[b * n + c]])
            return false;
    auto leq = [&](int a, int b) { return join[a * n + b] == b; };
    int bottoms = 0;
    for (int z = 0; z < n; ++z) {
      bool least = true;
      for (int x = 0; x < n; ++x)
        if (!leq(z, x)) least = false;
      if (least) ++bottoms;
    }
    if (bottoms != 1) return false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int maximal_lower = 0;
        for (int c = 0; c < n; ++c) {
          if (!(leq(c, a) && leq(c, b))) continue;
          bool maximal = true;
          for (int d = 0; d < n; ++d)
            if (d != c && leq(d, a) && leq(d, b) && leq(c, d)) maximal = false;
          if (maximal) ++maximal_lower;
        }
        if (maximal_lower != 1) return false;
      }
    return true;
  };
  auto canonical = [&]() {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
      std::string s;
      s.reserve(n * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          // position (perm[a], perm[b]) holds perm[join(a,b)]
          s.push_back('0');
        }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          s[perm[a] * n + perm[b]] =
              static_cast<char>('0' + perm[join[a * n + b]]);
      if (best.empty() || s < best) best = std::move(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == pairs.size()) {
      if (is_lattice_table()) classes.insert(canonical());
      return;
    }
    const auto [a, b] = pairs[k];
    for (int v = 0; v < n; ++v) {
      join[a * n + b] = v;
      join[b * n + a] = v;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return static_cast<int>(classes.size());
}

// Exhaustive witness existence for tiny URP instances.
inline bool urp1_witness_exists(const FiniteJoinSemilattice0& s, Element eps,
                                const conlat::UrpFamily& family,
                                const std::optional<std::vector<int>>& x_set) {
  const int n = static_cast<int>(family.size());
  auto in_x = [&](int i) {
    return x_set &&
           std::find(x_set->begin(), x_set->end(), i) != x_set->end();
  };
  auto enforced = [&](int i, int j, int k) {
    if (!x_set) return true;
    const bool xi = in_x(i), xj = in_x(j), xk = in_x(k);
    if (xi && xk && !xj) return false;
    if (!xi && !xk && xj) return false;
    return true;
  };
  std::vector<std::pair<Element, Element>> starred(n);
  std::vector<Element> gamma(n * n);
  auto gamma_rec = [&](auto&& self, int p) -> bool {
    if (p == n * n) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (enforced(i, j, k) &&
                !s.leq(gamma[i * n + k],
                       s.join(gamma[i * n + j], gamma[j * n + k])))
              return false;
      return true;
    }
    const int i = p / n, j = p % n;
    for (Element g = 0; g < s.size; ++g) {
      if (!s.leq(g, starred[i].first) || !s.leq(g, starred[j].second)) continue;
      if (!s.leq(starred[i].first, s.join(starred[j].first, g))) continue;
      if (!s.leq(starred[j].second, s.join(starred[i].second, g))) continue;
      gamma[p] = g;
      if (self(self, p + 1)) return true;
    }
    return false;
  };
  auto starred_rec = [&](auto&& self, int i) -> bool {
    if (i == n) return gamma_rec(gamma_rec, 0);
    for (Element as = 0; as < s.size; ++as) {
      if (!s.leq(as, family[i].first)) continue;
      for (Element bs = 0; bs < s.size; ++bs) {
        if (!s.leq(bs, family[i].second) || s.join(as, bs) != eps) continue;
        starred[i] = {as, bs};
        if (self(self, i + 1)) return true;
      }
    }
    return false;
  };
  return starred_rec(starred_rec, 0);
}

inline bool urp1_minus_witness_exists(const FiniteJoinSemilattice0& s,
                                      Element eps,
                                      const conlat::UrpFamily& family) {
  const int n = static_cast<int>(family.size());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> x;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) x.push_back(i);
    if (urp1_witness_exists(s, eps, family, x)) return true;
  }
  return false;
}

}  // namespace oracle
