#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conlat/base.hpp"
#include "conlat/lattice.hpp"
#include "conlat/semilattice.hpp"

namespace conlat {

/// A join/meet-compatible partition in canonical form: blocks are numbered in
/// order of their least member, so equality and hashing are structural.
struct Congruence {
  int n = 0;
  std::vector<int> block;  // element -> block id

  bool operator==(const Congruence&) const = default;

  bool same(Element a, Element b) const { return block[a] == block[b]; }
  int block_count() const {
    int m = -1;
    for (int b : block) m = std::max(m, b);
    return m + 1;
  }
  bool is_identity() const { return block_count() == n; }
  bool is_full() const { return block_count() == 1; }
};

struct CongruenceHash {
  std::size_t operator()(const Congruence& c) const {
    std::size_t h = 1469598103934665603ull;
    for (int b : c.block) {
      h ^= static_cast<std::size_t>(b) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Accepts arbitrary block ids and renumbers them by least member.
inline Congruence canonical_congruence(int n, std::vector<int> raw) {
  std::unordered_map<int, int> remap;
  Congruence c;
  c.n = n;
  c.block.resize(n);
  for (int i = 0; i < n; ++i) {
    auto it = remap.find(raw[i]);
    if (it == remap.end())
      it = remap.emplace(raw[i], static_cast<int>(remap.size())).first;
    c.block[i] = it->second;
  }
  return c;
}

inline Congruence identity_congruence(int n) {
  std::vector<int> b(n);
  for (int i = 0; i < n; ++i) b[i] = i;
  return Congruence{n, std::move(b)};
}

inline Congruence full_congruence(int n) {
  return Congruence{n, std::vector<int>(n, 0)};
}

inline std::vector<std::vector<Element>> blocks_of(const Congruence& c) {
  std::vector<std::vector<Element>> out(c.block_count());
  for (Element i = 0; i < c.n; ++i) out[c.block[i]].push_back(i);
  return out;
}

/// alpha refines beta.
inline bool leq_cong(const Congruence& alpha, const Congruence& beta) {
  if (alpha.n != beta.n) throw MixedLattices();
  std::vector<int> rep(alpha.block_count(), -1);
  for (Element i = 0; i < alpha.n; ++i) {
    if (rep[alpha.block[i]] < 0)
      rep[alpha.block[i]] = beta.block[i];
    else if (rep[alpha.block[i]] != beta.block[i])
      return false;
  }
  return true;
}

namespace detail {

/// Merge-and-propagate closure: keeps merging x v c with y v c and x ^ c with
/// y ^ c for every merged pair until fixpoint. Seeds are merged first.
inline Congruence congruence_closure(
    const FiniteLattice& l,
    const std::vector<std::pair<Element, Element>>& seeds) {
  UnionFind uf(l.size);
  std::deque<std::pair<Element, Element>> work;
  auto merge = [&](Element a, Element b) {
    if (uf.unite(a, b)) work.emplace_back(a, b);
  };
  for (auto [a, b] : seeds) merge(a, b);
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    for (Element c = 0; c < l.size; ++c) {
      merge(l.join(x, c), l.join(y, c));
      merge(l.meet(x, c), l.meet(y, c));
    }
  }
  return canonical_congruence(l.size, uf.blocks());
}

}  // namespace detail

/// Theta(a, b): the least congruence identifying a and b.
inline Congruence principal_congruence(const FiniteLattice& l, Element a,
                                       Element b) {
  return detail::congruence_closure(l, {{a, b}});
}

/// Theta^+(a, b) = Theta(a ^ b, a).
inline Congruence theta_plus(const FiniteLattice& l, Element a, Element b) {
  return principal_congruence(l, l.meet(a, b), a);
}

inline Congruence join_cong(const Congruence& alpha, const Congruence& beta) {
  if (alpha.n != beta.n) throw MixedLattices();
  UnionFind uf(alpha.n);
  for (Element i = 1; i < alpha.n; ++i)
    for (Element j = 0; j < i; ++j)
      if (alpha.same(i, j) || beta.same(i, j)) uf.unite(i, j);
  return canonical_congruence(alpha.n, uf.blocks());
}

inline Congruence meet_cong(const Congruence& alpha, const Congruence& beta) {
  if (alpha.n != beta.n) throw MixedLattices();
  std::vector<int> raw(alpha.n);
  std::unordered_map<long long, int> key;
  for (Element i = 0; i < alpha.n; ++i) {
    const long long k =
        static_cast<long long>(alpha.block[i]) * alpha.n + beta.block[i];
    auto it = key.find(k);
    if (it == key.end()) it = key.emplace(k, static_cast<int>(key.size())).first;
    raw[i] = it->second;
  }
  return canonical_congruence(alpha.n, std::move(raw));
}

/// Binary relation on a lattice carrier, stored as bitset rows.
struct Relation {
  int n = 0;
  int words = 0;
  std::vector<std::uint64_t> bits;  // n rows of `words` words

  static Relation empty(int n) {
    Relation r;
    r.n = n;
    r.words = (n + 63) / 64;
    r.bits.assign(static_cast<std::size_t>(n) * r.words, 0);
    return r;
  }
  bool get(Element a, Element b) const {
    return (bits[static_cast<std::size_t>(a) * words + b / 64] >>
            (b % 64)) & 1u;
  }
  void set(Element a, Element b) {
    bits[static_cast<std::size_t>(a) * words + b / 64] |= 1ull << (b % 64);
  }
  bool operator==(const Relation&) const = default;
};

inline Relation relation_of(const Congruence& c) {
  Relation r = Relation::empty(c.n);
  for (Element a = 0; a < c.n; ++a)
    for (Element b = 0; b < c.n; ++b)
      if (c.same(a, b)) r.set(a, b);
  return r;
}

/// Relational product alpha beta = { (x,y) : exists z, x alpha z beta y }.
/// Not necessarily a congruence.
inline Relation compose(const Congruence& alpha, const Congruence& beta) {
  if (alpha.n != beta.n) throw MixedLattices();
  const int n = alpha.n;
  Relation r = Relation::empty(n);
  // row of the product for x = union of beta-rows over the alpha-block of x
  std::vector<std::vector<std::uint64_t>> beta_block_row(beta.block_count());
  Relation rb = relation_of(beta);
  for (Element z = 0; z < n; ++z) {
    auto& row = beta_block_row[beta.block[z]];
    if (row.empty())
      row.assign(rb.bits.begin() + static_cast<std::size_t>(z) * rb.words,
                 rb.bits.begin() + static_cast<std::size_t>(z + 1) * rb.words);
  }
  std::vector<std::vector<int>> alpha_blocks(alpha.block_count());
  for (Element z = 0; z < n; ++z) alpha_blocks[alpha.block[z]].push_back(z);
  for (Element x = 0; x < n; ++x) {
    for (Element z : alpha_blocks[alpha.block[x]]) {
      const auto& row = beta_block_row[beta.block[z]];
      for (int w = 0; w < r.words; ++w)
        r.bits[static_cast<std::size_t>(x) * r.words + w] |= row[w];
    }
  }
  return r;
}

inline Relation relation_union(const Relation& a, const Relation& b) {
  Relation r = a;
  for (std::size_t i = 0; i < r.bits.size(); ++i) r.bits[i] |= b.bits[i];
  return r;
}

/// The congruence lattice of L, ordered by refinement. Built by closing the
/// principal congruences under binary join with a seen-set; in a finite
/// lattice every congruence is a join of principal ones.
struct ConLattice {
  FiniteLattice lattice_of_congruences;
  std::vector<Congruence> congruence_of;
  std::unordered_map<Congruence, int, CongruenceHash> index;

  int size() const { return static_cast<int>(congruence_of.size()); }
  int index_of(const Congruence& c) const {
    auto it = index.find(c);
    if (it == index.end()) throw Error("congruence not in lattice");
    return it->second;
  }
  Element bottom() const { return lattice_of_congruences.bottom(); }
  Element top() const { return lattice_of_congruences.top(); }
  FiniteJoinSemilattice0 semilattice() const {
    return join_reduct(lattice_of_congruences);
  }
};

inline ConLattice con_lattice(const FiniteLattice& l) {
  std::vector<Congruence> all;
  std::unordered_map<Congruence, int, CongruenceHash> seen;
  auto add = [&](const Congruence& c) {
    if (seen.emplace(c, static_cast<int>(all.size())).second) all.push_back(c);
  };
  add(identity_congruence(l.size));
  for (Element a = 0; a < l.size; ++a)
    for (Element b = a + 1; b < l.size; ++b)
      add(principal_congruence(l, a, b));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(join_cong(all[i], all[j]));
  // Deterministic order: coarser partitions have fewer blocks; identity first.
  std::sort(all.begin(), all.end(), [](const Congruence& a, const Congruence& b) {
    const int ba = a.block_count(), bb = b.block_count();
    if (ba != bb) return ba > bb;
    return a.block < b.block;
  });
  const int n = static_cast<int>(all.size());
  ConLattice con;
  con.congruence_of = all;
  for (int i = 0; i < n; ++i) con.index.emplace(all[i], i);
  FiniteLattice& cl = con.lattice_of_congruences;
  cl.size = n;
  cl.name = l.name.empty() ? "con" : "con(" + l.name + ")";
  cl.leq_table.assign(static_cast<std::size_t>(n) * n, 0);
  cl.join_table.assign(static_cast<std::size_t>(n) * n, 0);
  cl.meet_table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cl.leq_table[static_cast<std::size_t>(i) * n + j] =
          leq_cong(all[i], all[j]);
      cl.join_table[static_cast<std::size_t>(i) * n + j] =
          con.index_of(join_cong(all[i], all[j]));
      cl.meet_table[static_cast<std::size_t>(i) * n + j] =
          con.index_of(meet_cong(all[i], all[j]));
    }
  return con;
}

inline std::vector<Element> coatoms(const FiniteLattice& l) {
  std::vector<Element> out;
  const Element t = l.top();
  for (Element x = 0; x < l.size; ++x)
    if (l.covers(x, t)) out.push_back(x);
  return out;
}

inline std::vector<Element> coatoms(const ConLattice& con) {
  return coatoms(con.lattice_of_congruences);
}

inline bool is_simple(const FiniteLattice& l) {
  return con_lattice(l).size() == 2;
}

struct PermutabilityResult {
  bool holds = true;
  // on failure: the offending congruence pair and an element pair in the
  // asymmetric difference of the two relational products
  std::optional<std::pair<int, int>> witness_congruences;
  std::optional<std::pair<Element, Element>> witness_elements;
};

/// Checks alpha beta = beta alpha over all congruence pairs.
inline PermutabilityResult has_permutable_congruences(const FiniteLattice& l,
                                                      const ConLattice& con) {
  for (int i = 0; i < con.size(); ++i)
    for (int j = i + 1; j < con.size(); ++j) {
      const Relation ab = compose(con.congruence_of[i], con.congruence_of[j]);
      const Relation ba = compose(con.congruence_of[j], con.congruence_of[i]);
      if (!(ab == ba)) {
        for (Element x = 0; x < l.size; ++x)
          for (Element y = 0; y < l.size; ++y)
            if (ab.get(x, y) != ba.get(x, y))
              return {false, {{i, j}}, {{x, y}}};
      }
    }
  return {};
}

inline PermutabilityResult has_permutable_congruences(const FiniteLattice& l) {
  return has_permutable_congruences(l, con_lattice(l));
}

/// The Dilworth-style criterion: for a <= c <= b there is x with
/// a = x mod Theta(c,b) and x = b mod Theta(a,c).
struct CriterionResult {
  bool holds = true;
  std::optional<std::array<Element, 3>> witness_triple;  // a, c, b with no x
};

inline CriterionResult permutable_via_criterion(const FiniteLattice& l) {
  for (Element a = 0; a < l.size; ++a)
    for (Element c = 0; c < l.size; ++c) {
      if (!l.leq(a, c)) continue;
      for (Element b = 0; b < l.size; ++b) {
        if (!l.leq(c, b)) continue;
        const Congruence cb = principal_congruence(l, c, b);
        const Congruence ac = principal_congruence(l, a, c);
        bool found = false;
        for (Element x = 0; x < l.size && !found; ++x)
          found = cb.same(a, x) && ac.same(x, b);
        if (!found) return {false, {{a, c, b}}};
      }
    }
  return {};
}

struct AlmostPermutabilityResult {
  bool holds = true;
  std::optional<std::pair<int, int>> witness_congruences;
  std::optional<std::pair<Element, Element>> witness_elements;
};

/// Checks alpha v beta = (alpha beta) u (beta alpha) for all pairs.
inline AlmostPermutabilityResult has_almost_permutable_congruences(
    const FiniteLattice& l, const ConLattice& con) {
  for (int i = 0; i < con.size(); ++i)
    for (int j = i; j < con.size(); ++j) {
      const Relation ab = compose(con.congruence_of[i], con.congruence_of[j]);
      const Relation ba = compose(con.congruence_of[j], con.congruence_of[i]);
      const Relation both = relation_union(ab, ba);
      const Relation jr =
          relation_of(join_cong(con.congruence_of[i], con.congruence_of[j]));
      if (!(both == jr)) {
        for (Element x = 0; x < l.size; ++x)
          for (Element y = 0; y < l.size; ++y)
            if (jr.get(x, y) && !both.get(x, y))
              return {false, {{i, j}}, {{x, y}}};
      }
    }
  return {};
}

inline AlmostPermutabilityResult has_almost_permutable_congruences(
    const FiniteLattice& l) {
  return has_almost_permutable_congruences(l, con_lattice(l));
}

struct SplittingResult {
  bool holds = true;
  std::optional<std::pair<Element, Element>> witness_interval;  // u, v
  std::optional<std::pair<int, int>> witness_congruences;
};

/// Congruence-splitting: whenever Theta(u,v) = alpha v beta there are
/// x, y in [u,v] with x v y = v, u = x mod alpha, u = y mod beta.
inline SplittingResult is_congruence_splitting(const FiniteLattice& l,
                                               const ConLattice& con) {
  for (Element u = 0; u < l.size; ++u)
    for (Element v = 0; v < l.size; ++v) {
      if (!l.leq(u, v)) continue;
      const Congruence theta = principal_congruence(l, u, v);
      const int theta_idx = con.index_of(theta);
      for (int i = 0; i < con.size(); ++i)
        for (int j = 0; j < con.size(); ++j) {
          if (con.lattice_of_congruences.join(i, j) != theta_idx) continue;
          const Congruence& alpha = con.congruence_of[i];
          const Congruence& beta = con.congruence_of[j];
          bool found = false;
          for (Element x = 0; x < l.size && !found; ++x) {
            if (!(l.leq(u, x) && l.leq(x, v) && alpha.same(u, x))) continue;
            for (Element y = 0; y < l.size; ++y)
              if (l.leq(u, y) && l.leq(y, v) && beta.same(u, y) &&
                  l.join(x, y) == v) {
                found = true;
                break;
              }
          }
          if (!found) return {false, {{u, v}}, {{i, j}}};
        }
    }
  return {};
}

inline SplittingResult is_congruence_splitting(const FiniteLattice& l) {
  return is_congruence_splitting(l, con_lattice(l));
}

struct QuotientResult {
  FiniteLattice lattice;
  LatticeHom projection;
};

inline QuotientResult quotient(const FiniteLattice& l, const Congruence& theta) {
  if (theta.n != l.size) throw MixedLattices();
  const int n = theta.block_count();
  std::vector<Element> rep(n, -1);
  for (Element i = 0; i < l.size; ++i)
    if (rep[theta.block[i]] < 0) rep[theta.block[i]] = i;
  FiniteLattice q;
  q.size = n;
  q.name = l.name.empty() ? "quotient" : l.name + "/theta";
  q.leq_table.assign(static_cast<std::size_t>(n) * n, 0);
  q.join_table.assign(static_cast<std::size_t>(n) * n, 0);
  q.meet_table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Element ji = theta.block[l.join(rep[i], rep[j])];
      const Element mi = theta.block[l.meet(rep[i], rep[j])];
      q.join_table[static_cast<std::size_t>(i) * n + j] = ji;
      q.meet_table[static_cast<std::size_t>(i) * n + j] = mi;
      q.leq_table[static_cast<std::size_t>(i) * n + j] = (ji == j);
    }
  LatticeHom proj{l, q, theta.block};
  return {std::move(q), std::move(proj)};
}

/// Con f: the congruence of the target generated by the f-image of alpha.
inline Congruence push_congruence(const LatticeHom& f, const Congruence& alpha) {
  if (alpha.n != f.source.size) throw MixedLattices();
  std::vector<std::pair<Element, Element>> seeds;
  std::vector<Element> first(alpha.block_count(), -1);
  for (Element i = 0; i < alpha.n; ++i) {
    const int b = alpha.block[i];
    if (first[b] < 0)
      first[b] = i;
    else
      seeds.emplace_back(f.map[first[b]], f.map[i]);
  }
  return detail::congruence_closure(f.target, seeds);
}

/// Res f: the preimage congruence.
inline Congruence pull_congruence(const LatticeHom& f, const Congruence& beta) {
  if (beta.n != f.target.size) throw MixedLattices();
  std::vector<int> raw(f.source.size);
  for (Element i = 0; i < f.source.size; ++i) raw[i] = beta.block[f.map[i]];
  return canonical_congruence(f.source.size, std::move(raw));
}

/// Con f as a {v,0}-homomorphism between the congruence semilattices.
inline JoinZeroHom con_functor_map(const LatticeHom& f, const ConLattice& cs,
                                   const ConLattice& ct) {
  std::vector<Element> m(cs.size());
  for (int i = 0; i < cs.size(); ++i)
    m[i] = ct.index_of(push_congruence(f, cs.congruence_of[i]));
  return JoinZeroHom{cs.semilattice(), ct.semilattice(), std::move(m)};
}

inline JoinZeroHom con_functor_map(const LatticeHom& f) {
  return con_functor_map(f, con_lattice(f.source), con_lattice(f.target));
}

/// Res f as an index map Con(target) -> Con(source); preserves meets and the
/// full congruence.
inline std::vector<Element> res_functor_map(const LatticeHom& f,
                                            const ConLattice& cs,
                                            const ConLattice& ct) {
  std::vector<Element> m(ct.size());
  for (int i = 0; i < ct.size(); ++i)
    m[i] = cs.index_of(pull_congruence(f, ct.congruence_of[i]));
  return m;
}

}  // namespace conlat
