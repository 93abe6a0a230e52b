#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/base.hpp"

namespace conlat {

/// A finite lattice on elements 0..size-1 with dense order/join/meet tables.
/// All paper objects are small (<= 112 elements ambient), so table lookups
/// keep every later algorithm cheap. Values are immutable after construction.
struct FiniteLattice {
  int size = 0;
  std::vector<std::uint8_t> leq_table;  // size*size
  std::vector<Element> join_table;     // size*size
  std::vector<Element> meet_table;     // size*size
  std::vector<std::string> labels;     // optional, metadata only
  std::string name;

  bool leq(Element a, Element b) const {
    return leq_table[static_cast<std::size_t>(a) * size + b] != 0;
  }
  bool lt(Element a, Element b) const { return a != b && leq(a, b); }
  Element join(Element a, Element b) const {
    return join_table[static_cast<std::size_t>(a) * size + b];
  }
  Element meet(Element a, Element b) const {
    return meet_table[static_cast<std::size_t>(a) * size + b];
  }

  Element bottom() const {
    Element acc = 0;
    for (Element x = 1; x < size; ++x) acc = meet(acc, x);
    return acc;
  }
  Element top() const {
    Element acc = 0;
    for (Element x = 1; x < size; ++x) acc = join(acc, x);
    return acc;
  }

  bool covers(Element lo, Element hi) const {
    if (lo == hi || !leq(lo, hi)) return false;
    for (Element m = 0; m < size; ++m)
      if (m != lo && m != hi && leq(lo, m) && leq(m, hi)) return false;
    return true;
  }

  std::vector<std::pair<Element, Element>> cover_pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element a = 0; a < size; ++a)
      for (Element b = 0; b < size; ++b)
        if (covers(a, b)) out.emplace_back(a, b);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string label(Element x) const {
    if (x >= 0 && x < static_cast<int>(labels.size()) && !labels[x].empty())
      return labels[x];
    return std::to_string(x);
  }

  detail::JoinCarrierView join_view() const {
    return {size, join_table.data(), bottom()};
  }

  /// Exhaustive structural check: partial order, lub/glb correctness,
  /// absorption, and bounds. Throws on violation.
  void validate() const {
    if (size <= 0) throw Error("lattice must be nonempty");
    for (Element a = 0; a < size; ++a) {
      if (!leq(a, a)) throw Error("order not reflexive");
      for (Element b = 0; b < size; ++b) {
        if (a != b && leq(a, b) && leq(b, a))
          throw Error("order not antisymmetric");
        for (Element c = 0; c < size; ++c)
          if (leq(a, b) && leq(b, c) && !leq(a, c))
            throw Error("order not transitive");
      }
    }
    for (Element a = 0; a < size; ++a)
      for (Element b = 0; b < size; ++b) {
        const Element j = join(a, b), m = meet(a, b);
        if (!leq(a, j) || !leq(b, j)) throw Error("join not an upper bound");
        if (!leq(m, a) || !leq(m, b)) throw Error("meet not a lower bound");
        for (Element c = 0; c < size; ++c) {
          if (leq(a, c) && leq(b, c) && !leq(j, c))
            throw Error("join not least");
          if (leq(c, a) && leq(c, b) && !leq(c, m))
            throw Error("meet not greatest");
        }
        if (meet(a, join(a, b)) != a || join(a, meet(a, b)) != a)
          throw Error("absorption fails");
      }
  }
};

/// Structure-preserving total map between lattices.
struct LatticeHom {
  FiniteLattice source;
  FiniteLattice target;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }

  bool is_valid() const {
    if (static_cast<int>(map.size()) != source.size) return false;
    for (Element x : map)
      if (x < 0 || x >= target.size) return false;
    for (Element a = 0; a < source.size; ++a)
      for (Element b = 0; b < source.size; ++b) {
        if (map[source.join(a, b)] != target.join(map[a], map[b]))
          return false;
        if (map[source.meet(a, b)] != target.meet(map[a], map[b]))
          return false;
      }
    return true;
  }

  bool is_injective() const {
    std::vector<char> seen(target.size, 0);
    for (Element x : map) {
      if (seen[x]) return false;
      seen[x] = 1;
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<char> seen(target.size, 0);
    for (Element x : map) seen[x] = 1;
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }

  bool is_isomorphism() const {
    return source.size == target.size && is_injective() && is_valid();
  }
};

inline LatticeHom make_lattice_hom(FiniteLattice source, FiniteLattice target,
                                   std::vector<Element> map) {
  LatticeHom h{std::move(source), std::move(target), std::move(map)};
  if (!h.is_valid()) throw Error("map is not a lattice homomorphism");
  return h;
}

inline LatticeHom identity_hom(const FiniteLattice& l) {
  std::vector<Element> m(l.size);
  std::iota(m.begin(), m.end(), 0);
  return LatticeHom{l, l, std::move(m)};
}

inline LatticeHom compose(const LatticeHom& second, const LatticeHom& first) {
  if (first.target.size != second.source.size) throw MixedLattices();
  std::vector<Element> m(first.source.size);
  for (Element x = 0; x < first.source.size; ++x) m[x] = second.map[first.map[x]];
  return LatticeHom{first.source, second.target, std::move(m)};
}

namespace detail {

inline FiniteLattice lattice_from_leq(int n, std::vector<std::uint8_t> leq,
                                      std::string name = {},
                                      std::vector<std::string> labels = {}) {
  FiniteLattice l;
  l.size = n;
  l.leq_table = std::move(leq);
  l.join_table.assign(static_cast<std::size_t>(n) * n, -1);
  l.meet_table.assign(static_cast<std::size_t>(n) * n, -1);
  l.name = std::move(name);
  l.labels = std::move(labels);
  auto leq_at = [&](Element a, Element b) {
    return l.leq_table[static_cast<std::size_t>(a) * n + b] != 0;
  };
  // NotALattice reports the first offending pair in lexicographic order.
  for (Element a = 0; a < n; ++a)
    for (Element b = a; b < n; ++b) {
      // Track a minimal upper-bound candidate; if a least one exists it ends
      // up in lub because it replaces any candidate it is below.
      Element lub = -1, glb = -1;
      for (Element c = 0; c < n; ++c) {
        if (leq_at(a, c) && leq_at(b, c) && (lub < 0 || leq_at(c, lub)))
          lub = c;
        if (leq_at(c, a) && leq_at(c, b) && (glb < 0 || leq_at(glb, c)))
          glb = c;
      }
      bool lub_unique = true, glb_unique = true;
      if (lub >= 0)
        for (Element c = 0; c < n; ++c)
          if (leq_at(a, c) && leq_at(b, c) && !leq_at(lub, c))
            lub_unique = false;
      if (glb >= 0)
        for (Element c = 0; c < n; ++c)
          if (leq_at(c, a) && leq_at(c, b) && !leq_at(c, glb))
            glb_unique = false;
      if (lub < 0) throw NotALattice(a, b, "has no upper bound");
      if (!lub_unique) throw NotALattice(a, b, "has no least upper bound");
      if (glb < 0) throw NotALattice(a, b, "has no lower bound");
      if (!glb_unique) throw NotALattice(a, b, "has no greatest lower bound");
      l.join_table[static_cast<std::size_t>(a) * n + b] = lub;
      l.join_table[static_cast<std::size_t>(b) * n + a] = lub;
      l.meet_table[static_cast<std::size_t>(a) * n + b] = glb;
      l.meet_table[static_cast<std::size_t>(b) * n + a] = glb;
    }
  return l;
}

}  // namespace detail

inline FiniteLattice lattice_from_covers(
    int n, const std::vector<std::pair<Element, Element>>& covers,
    std::string name = {}, std::vector<std::string> labels = {}) {
  if (n <= 0) throw Error("lattice must be nonempty");
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
  for (Element a = 0; a < n; ++a) leq[static_cast<std::size_t>(a) * n + a] = 1;
  for (auto [a, b] : covers) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Error("cover pair out of range");
    if (a == b) throw Error("cover relation contains a self-pair");
    leq[static_cast<std::size_t>(a) * n + b] = 1;
  }
  // Floyd–Warshall style transitive closure.
  for (Element m = 0; m < n; ++m)
    for (Element a = 0; a < n; ++a)
      if (leq[static_cast<std::size_t>(a) * n + m])
        for (Element b = 0; b < n; ++b)
          if (leq[static_cast<std::size_t>(m) * n + b])
            leq[static_cast<std::size_t>(a) * n + b] = 1;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (a != b && leq[static_cast<std::size_t>(a) * n + b] &&
          leq[static_cast<std::size_t>(b) * n + a])
        throw CycleDetected();
  return detail::lattice_from_leq(n, std::move(leq), std::move(name),
                                  std::move(labels));
}

inline FiniteLattice chain_lattice(int k) {
  if (k <= 0) throw Error("chain must have at least one element");
  std::vector<std::pair<Element, Element>> covers;
  for (int i = 0; i + 1 < k; ++i) covers.emplace_back(i, i + 1);
  return lattice_from_covers(k, covers, "chain(" + std::to_string(k) + ")");
}

inline FiniteLattice boolean_lattice(int k) {
  if (k < 0 || k > 20) throw Error("boolean exponent out of range");
  const int n = 1 << k;
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a & b) == a) leq[static_cast<std::size_t>(a) * n + b] = 1;
  return detail::lattice_from_leq(n, std::move(leq),
                                  "boolean(" + std::to_string(k) + ")");
}

inline FiniteLattice m3_lattice() {
  return lattice_from_covers(
      5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, "m3",
      {"0", "a", "b", "c", "1"});
}

inline FiniteLattice n5_lattice() {
  return lattice_from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}, "n5",
                             {"0", "a", "c", "b", "1"});
}

/// The seven-element simple non-modular lattice used by the lifting
/// construction: covers 0<p, 0<p', 0<r, 0<r', p<q, p'<q, q<1, r<1, r'<1.
inline FiniteLattice s_lattice() {
  return lattice_from_covers(
      7,
      {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {5, 6}, {3, 6}, {4, 6}},
      "s", {"0", "p", "p'", "r", "r'", "q", "1"});
}

namespace s_elements {
constexpr Element zero = 0, p = 1, p_prime = 2, r = 3, r_prime = 4, q = 5,
                  one = 6;
}  // namespace s_elements

inline FiniteLattice builtin(const std::string& name) {
  if (name == "m3") return m3_lattice();
  if (name == "n5") return n5_lattice();
  if (name == "s") return s_lattice();
  auto paren = name.find('(');
  if (paren != std::string::npos && name.back() == ')') {
    const std::string head = name.substr(0, paren);
    const std::string arg = name.substr(paren + 1, name.size() - paren - 2);
    int k = 0;
    try {
      k = std::stoi(arg);
    } catch (const std::exception&) {
      throw ParseError("bad builtin argument: " + name);
    }
    if (head == "chain") return chain_lattice(k);
    if (head == "boolean") return boolean_lattice(k);
  }
  throw ParseError("unknown builtin lattice: " + name);
}

constexpr std::size_t kProductSizeBound = 1 << 18;

struct ProductResult {
  FiniteLattice lattice;
  LatticeHom proj_left;
  LatticeHom proj_right;
};

inline ProductResult product(const FiniteLattice& a, const FiniteLattice& b,
                             std::size_t max_size = kProductSizeBound) {
  const std::size_t n = static_cast<std::size_t>(a.size) * b.size;
  if (n > max_size) throw SizeOverflow(n, max_size);
  const int nn = static_cast<int>(n);
  FiniteLattice l;
  l.size = nn;
  l.leq_table.assign(n * n, 0);
  l.join_table.assign(n * n, 0);
  l.meet_table.assign(n * n, 0);
  l.name = (a.name.empty() ? "?" : a.name) + "x" + (b.name.empty() ? "?" : b.name);
  auto id = [&](Element x, Element y) { return x * b.size + y; };
  for (Element x1 = 0; x1 < a.size; ++x1)
    for (Element y1 = 0; y1 < b.size; ++y1)
      for (Element x2 = 0; x2 < a.size; ++x2)
        for (Element y2 = 0; y2 < b.size; ++y2) {
          const std::size_t at =
              static_cast<std::size_t>(id(x1, y1)) * nn + id(x2, y2);
          l.leq_table[at] = a.leq(x1, x2) && b.leq(y1, y2);
          l.join_table[at] = id(a.join(x1, x2), b.join(y1, y2));
          l.meet_table[at] = id(a.meet(x1, x2), b.meet(y1, y2));
        }
  std::vector<Element> pl(n), pr(n);
  for (Element x = 0; x < a.size; ++x)
    for (Element y = 0; y < b.size; ++y) {
      pl[id(x, y)] = x;
      pr[id(x, y)] = y;
    }
  LatticeHom left{l, a, std::move(pl)};
  LatticeHom right{l, b, std::move(pr)};
  return {std::move(l), std::move(left), std::move(right)};
}

struct SublatticeResult {
  FiniteLattice lattice;
  LatticeHom embedding;                 // into the ambient lattice
  std::vector<Element> ambient_of;      // local index -> ambient element
  std::vector<Element> local_of;        // ambient element -> local index or -1
};

/// Smallest subset containing the generators and closed under join and meet,
/// with deterministic element order (sorted by ambient index).
inline SublatticeResult sublattice_closure(const FiniteLattice& ambient,
                                           std::vector<Element> gens) {
  if (gens.empty()) throw Error("generator set must be nonempty");
  std::vector<char> in(ambient.size, 0);
  std::deque<Element> work;
  std::vector<Element> members;
  auto add = [&](Element x) {
    if (x < 0 || x >= ambient.size) throw Error("generator out of range");
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
      members.push_back(x);
    }
  };
  for (Element g : gens) add(g);
  while (!work.empty()) {
    const Element x = work.front();
    work.pop_front();
    const std::size_t snapshot = members.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      add(ambient.join(x, members[i]));
      add(ambient.meet(x, members[i]));
    }
  }
  std::sort(members.begin(), members.end());
  const int n = static_cast<int>(members.size());
  std::vector<Element> local(ambient.size, -1);
  for (int i = 0; i < n; ++i) local[members[i]] = i;
  FiniteLattice l;
  l.size = n;
  l.leq_table.assign(static_cast<std::size_t>(n) * n, 0);
  l.join_table.assign(static_cast<std::size_t>(n) * n, 0);
  l.meet_table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(ambient.labels.size()) == ambient.size)
      l.labels.push_back(ambient.label(members[i]));
    for (int j = 0; j < n; ++j) {
      const std::size_t at = static_cast<std::size_t>(i) * n + j;
      l.leq_table[at] = ambient.leq(members[i], members[j]);
      l.join_table[at] = local[ambient.join(members[i], members[j])];
      l.meet_table[at] = local[ambient.meet(members[i], members[j])];
    }
  }
  LatticeHom embed{l, ambient, members};
  return {std::move(l), std::move(embed), std::move(members),
          std::move(local)};
}

/// Backtracking isomorphism search with invariant pruning. Returns the first
/// isomorphism in lexicographic join-irreducible order, or nothing.
inline std::optional<LatticeHom> is_isomorphic(const FiniteLattice& a,
                                               const FiniteLattice& b) {
  if (a.size != b.size) return std::nullopt;
  std::optional<std::vector<Element>> found;
  detail::enumerate_join_isos(a.join_view(), b.join_view(),
                              [&](const std::vector<Element>& m) {
                                found = m;
                                return true;
                              });
  if (!found) return std::nullopt;
  return LatticeHom{a, b, *found};
}

inline bool is_distributive(const FiniteLattice& l) {
  for (Element a = 0; a < l.size; ++a)
    for (Element b = 0; b < l.size; ++b)
      for (Element c = 0; c < l.size; ++c)
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)))
          return false;
  return true;
}

inline bool is_modular(const FiniteLattice& l) {
  for (Element a = 0; a < l.size; ++a)
    for (Element b = 0; b < l.size; ++b)
      for (Element c = 0; c < l.size; ++c)
        if (l.leq(a, c) && l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c))
          return false;
  return true;
}

inline SublatticeResult interval(const FiniteLattice& l, Element a, Element b) {
  if (!l.leq(a, b)) throw NotComparable(a, b);
  std::vector<Element> members;
  for (Element x = 0; x < l.size; ++x)
    if (l.leq(a, x) && l.leq(x, b)) members.push_back(x);
  return sublattice_closure(l, members);  // already closed; keeps plumbing uniform
}

}  // namespace conlat
