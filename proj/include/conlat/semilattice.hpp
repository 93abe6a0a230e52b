#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/base.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

/// Finite commutative idempotent monoid with zero; the codomain of Con.
/// The induced order is a <= b iff a v b = b.
struct FiniteJoinSemilattice0 {
  int size = 0;
  std::vector<Element> join_table;  // size*size
  Element zero = 0;
  std::vector<std::string> labels;
  std::string name;

  Element join(Element a, Element b) const {
    return join_table[static_cast<std::size_t>(a) * size + b];
  }
  bool leq(Element a, Element b) const { return join(a, b) == b; }
  bool lt(Element a, Element b) const { return a != b && leq(a, b); }

  Element top() const {
    Element acc = zero;
    for (Element x = 0; x < size; ++x) acc = join(acc, x);
    return acc;
  }

  std::string label(Element x) const {
    if (x >= 0 && x < static_cast<int>(labels.size()) && !labels[x].empty())
      return labels[x];
    return std::to_string(x);
  }

  detail::JoinCarrierView join_view() const {
    return {size, join_table.data(), zero};
  }

  void validate() const {
    if (size <= 0) throw Error("semilattice must be nonempty");
    for (Element a = 0; a < size; ++a) {
      if (join(a, a) != a) throw Error("join not idempotent");
      if (join(zero, a) != a) throw Error("zero not neutral");
      for (Element b = 0; b < size; ++b) {
        if (join(a, b) != join(b, a)) throw Error("join not commutative");
        for (Element c = 0; c < size; ++c)
          if (join(join(a, b), c) != join(a, join(b, c)))
            throw Error("join not associative");
      }
    }
  }
};

struct JoinZeroHom {
  FiniteJoinSemilattice0 source;
  FiniteJoinSemilattice0 target;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }

  bool is_valid() const {
    if (static_cast<int>(map.size()) != source.size) return false;
    for (Element x : map)
      if (x < 0 || x >= target.size) return false;
    if (map[source.zero] != target.zero) return false;
    for (Element a = 0; a < source.size; ++a)
      for (Element b = 0; b < source.size; ++b)
        if (map[source.join(a, b)] != target.join(map[a], map[b]))
          return false;
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

inline JoinZeroHom make_join_zero_hom(FiniteJoinSemilattice0 source,
                                      FiniteJoinSemilattice0 target,
                                      std::vector<Element> map) {
  JoinZeroHom h{std::move(source), std::move(target), std::move(map)};
  if (!h.is_valid()) throw Error("map is not a {v,0}-homomorphism");
  return h;
}

inline JoinZeroHom identity_hom(const FiniteJoinSemilattice0& s) {
  std::vector<Element> m(s.size);
  std::iota(m.begin(), m.end(), 0);
  return JoinZeroHom{s, s, std::move(m)};
}

inline JoinZeroHom compose(const JoinZeroHom& second, const JoinZeroHom& first) {
  if (first.target.size != second.source.size) throw MixedLattices();
  std::vector<Element> m(first.source.size);
  for (Element x = 0; x < first.source.size; ++x) m[x] = second.map[first.map[x]];
  return JoinZeroHom{first.source, second.target, std::move(m)};
}

/// Powerset semilattice of an n-set; elements are bitmasks, join is union.
inline FiniteJoinSemilattice0 powerset_semilattice(int n) {
  if (n < 0 || n > 16) throw Error("powerset exponent out of range");
  const int sz = 1 << n;
  FiniteJoinSemilattice0 s;
  s.size = sz;
  s.zero = 0;
  s.name = "powerset(" + std::to_string(n) + ")";
  s.join_table.assign(static_cast<std::size_t>(sz) * sz, 0);
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b)
      s.join_table[static_cast<std::size_t>(a) * sz + b] = a | b;
  return s;
}

inline FiniteJoinSemilattice0 join_reduct(const FiniteLattice& l) {
  FiniteJoinSemilattice0 s;
  s.size = l.size;
  s.join_table = l.join_table;
  s.zero = l.bottom();
  s.labels = l.labels;
  s.name = l.name;
  return s;
}

/// Every finite join-semilattice with zero is a lattice: the meet is the join
/// of all common lower bounds.
inline FiniteLattice lattice_view(const FiniteJoinSemilattice0& s) {
  const int n = s.size;
  FiniteLattice l;
  l.size = n;
  l.name = s.name;
  l.labels = s.labels;
  l.leq_table.assign(static_cast<std::size_t>(n) * n, 0);
  l.join_table = s.join_table;
  l.meet_table.assign(static_cast<std::size_t>(n) * n, 0);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      l.leq_table[static_cast<std::size_t>(a) * n + b] = s.leq(a, b);
      Element m = s.zero;
      for (Element c = 0; c < n; ++c)
        if (s.leq(c, a) && s.leq(c, b)) m = s.join(m, c);
      l.meet_table[static_cast<std::size_t>(a) * n + b] = m;
    }
  return l;
}

struct SubSemilattice {
  FiniteJoinSemilattice0 semilattice;
  JoinZeroHom inclusion;            // into the ambient semilattice
  std::vector<Element> ambient_of;  // local index -> ambient element
  std::vector<Element> local_of;    // ambient element -> local index or -1
};

/// Closure of gens united with {0} under join, ordered by ambient index.
inline SubSemilattice subsemilattice_generated(const FiniteJoinSemilattice0& s,
                                               std::vector<Element> gens) {
  std::vector<char> in(s.size, 0);
  std::deque<Element> work;
  std::vector<Element> members;
  auto add = [&](Element x) {
    if (x < 0 || x >= s.size) throw Error("generator out of range");
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
      members.push_back(x);
    }
  };
  add(s.zero);
  for (Element g : gens) add(g);
  while (!work.empty()) {
    const Element x = work.front();
    work.pop_front();
    const std::size_t snapshot = members.size();
    for (std::size_t i = 0; i < snapshot; ++i) add(s.join(x, members[i]));
  }
  std::sort(members.begin(), members.end());
  const int n = static_cast<int>(members.size());
  std::vector<Element> local(s.size, -1);
  for (int i = 0; i < n; ++i) local[members[i]] = i;
  FiniteJoinSemilattice0 sub;
  sub.size = n;
  sub.zero = local[s.zero];
  sub.join_table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(s.labels.size()) == s.size)
      sub.labels.push_back(s.label(members[i]));
    for (int j = 0; j < n; ++j)
      sub.join_table[static_cast<std::size_t>(i) * n + j] =
          local[s.join(members[i], members[j])];
  }
  JoinZeroHom incl{sub, s, members};
  return {std::move(sub), std::move(incl), std::move(members),
          std::move(local)};
}

/// A tuple is free when its 2^n subset-joins are pairwise distinct, i.e. the
/// induced map from the powerset semilattice is a {v,0}-embedding.
inline bool is_free_tuple(const FiniteJoinSemilattice0& s,
                          const std::vector<Element>& tuple) {
  const int n = static_cast<int>(tuple.size());
  if (n > 20) throw Error("tuple too long");
  std::vector<Element> value(1u << n);
  std::vector<char> seen(s.size, 0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Element v = s.zero;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) v = s.join(v, tuple[i]);
    if (seen[v]) return false;
    seen[v] = 1;
    value[mask] = v;
  }
  return true;
}

/// c <= a v b always splits as c = a' v b' with a' <= a, b' <= b.
inline bool is_distributive_semilattice(const FiniteJoinSemilattice0& s) {
  for (Element a = 0; a < s.size; ++a)
    for (Element b = 0; b < s.size; ++b) {
      const Element ab = s.join(a, b);
      for (Element c = 0; c < s.size; ++c) {
        if (!s.leq(c, ab)) continue;
        bool found = false;
        for (Element ap = 0; ap < s.size && !found; ++ap) {
          if (!s.leq(ap, a)) continue;
          for (Element bp = 0; bp < s.size; ++bp)
            if (s.leq(bp, b) && s.join(ap, bp) == c) {
              found = true;
              break;
            }
        }
        if (!found) return false;
      }
    }
  return true;
}

/// Weak distributivity of mu at eps: joins covering mu(eps) pull back to a
/// decomposition of eps.
inline bool is_weakly_distributive_at(const JoinZeroHom& mu, Element eps) {
  const auto& s = mu.source;
  const auto& t = mu.target;
  const Element img = mu.map[eps];
  for (Element a = 0; a < t.size; ++a)
    for (Element b = 0; b < t.size; ++b) {
      if (t.join(a, b) != img) continue;
      bool found = false;
      for (Element ap = 0; ap < s.size && !found; ++ap) {
        if (!t.leq(mu.map[ap], a)) continue;
        for (Element bp = 0; bp < s.size; ++bp)
          if (t.leq(mu.map[bp], b) && s.join(ap, bp) == eps) {
            found = true;
            break;
          }
      }
      if (!found) return false;
    }
  return true;
}

inline std::optional<JoinZeroHom> semilattice_isomorphic(
    const FiniteJoinSemilattice0& a, const FiniteJoinSemilattice0& b) {
  if (a.size != b.size) return std::nullopt;
  std::optional<std::vector<Element>> found;
  detail::enumerate_join_isos(a.join_view(), b.join_view(),
                              [&](const std::vector<Element>& m) {
                                found = m;
                                return true;
                              });
  if (!found) return std::nullopt;
  return JoinZeroHom{a, b, *found};
}

}  // namespace conlat
