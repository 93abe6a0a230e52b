#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/base.hpp"
#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"
#include "conlat/semilattice.hpp"

namespace conlat {

/// The shape of a diagram: a finite poset with named objects. Arrows of a
/// diagram are stored on the covers; composites are derived.
struct IndexPoset {
  std::vector<std::string> objects;
  std::vector<std::uint8_t> leq;  // n*n
  std::vector<std::pair<int, int>> covers;

  int size() const { return static_cast<int>(objects.size()); }
  bool less_eq(int a, int b) const {
    return leq[static_cast<std::size_t>(a) * objects.size() + b] != 0;
  }
  bool same_shape(const IndexPoset& o) const {
    return objects.size() == o.objects.size() && leq == o.leq;
  }
};

inline IndexPoset poset_from_covers(std::vector<std::string> names,
                                    std::vector<std::pair<int, int>> covers) {
  const int n = static_cast<int>(names.size());
  IndexPoset p;
  p.objects = std::move(names);
  p.leq.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) p.leq[static_cast<std::size_t>(i) * n + i] = 1;
  for (auto [a, b] : covers) p.leq[static_cast<std::size_t>(a) * n + b] = 1;
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      if (p.leq[static_cast<std::size_t>(a) * n + m])
        for (int b = 0; b < n; ++b)
          if (p.leq[static_cast<std::size_t>(m) * n + b])
            p.leq[static_cast<std::size_t>(a) * n + b] = 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && p.less_eq(a, b) && p.less_eq(b, a))
        throw CycleDetected();
  std::sort(covers.begin(), covers.end());
  p.covers = std::move(covers);
  return p;
}

/// The cube 2^3. Node masks are subsets of {0,1,2}: the bottom is the empty
/// set, atom {i} carries the i-th small object, the coatom omitting j carries
/// the j-th middle object, matching "S_i below T_j iff i != j".
inline IndexPoset cube_poset(std::vector<std::string> names = {}) {
  if (names.empty())
    names = {"c0", "c1", "c2", "c3", "c4", "c5", "c6", "c7"};
  if (names.size() != 8) throw Error("cube needs eight object names");
  std::vector<std::pair<int, int>> covers;
  for (int m = 0; m < 8; ++m)
    for (int b = 0; b < 3; ++b)
      if (!(m & (1 << b))) covers.emplace_back(m, m | (1 << b));
  return poset_from_covers(std::move(names), std::move(covers));
}

inline IndexPoset square_poset(std::vector<std::string> names = {}) {
  if (names.empty()) names = {"q0", "q1", "q2", "q3"};
  if (names.size() != 4) throw Error("square needs four object names");
  return poset_from_covers(std::move(names), {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

inline IndexPoset chain_poset(int n, std::vector<std::string> names = {}) {
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  if (static_cast<int>(names.size()) != n) throw Error("bad name count");
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return poset_from_covers(std::move(names), std::move(covers));
}

/// Three objects low < mid < high; the arrow low -> high is the composite.
inline IndexPoset triangle_poset() {
  return chain_poset(3, {"low", "mid", "high"});
}

template <class Obj, class Hom>
struct Diagram {
  IndexPoset index;
  std::vector<Obj> object_at;
  std::map<std::pair<int, int>, Hom> arrow_at;  // covers, plus optional extras

  const Hom* stored_arrow(int p, int q) const {
    auto it = arrow_at.find({p, q});
    return it == arrow_at.end() ? nullptr : &it->second;
  }

  /// All composites from p to q along cover paths, plus the stored arrow for
  /// (p, q) when present. A commutative diagram yields a single value.
  std::vector<Hom> all_composites(int p, int q) const {
    std::vector<Hom> out;
    if (p == q) {
      out.push_back(identity_hom(object_at[p]));
      return out;
    }
    if (const Hom* direct = stored_arrow(p, q)) out.push_back(*direct);
    for (auto [a, b] : index.covers) {
      if (b != q || !index.less_eq(p, a)) continue;
      const Hom* last = stored_arrow(a, b);
      if (!last) continue;
      for (const Hom& head : all_composites(p, a))
        out.push_back(compose(*last, head));
    }
    return out;
  }

  /// The canonical arrow p -> q (first composite); requires commutativity for
  /// a well-defined answer.
  Hom arrow(int p, int q) const {
    auto comps = all_composites(p, q);
    if (comps.empty()) throw Error("no arrow between the given objects");
    return comps.front();
  }

  int object_index(const std::string& name) const {
    for (int i = 0; i < index.size(); ++i)
      if (index.objects[i] == name) return i;
    throw Error("no object named " + name);
  }
};

using LatticeDiagram = Diagram<FiniteLattice, LatticeHom>;
using SemilatticeDiagram = Diagram<FiniteJoinSemilattice0, JoinZeroHom>;

struct CommutativityReport {
  bool commutes = true;
  std::optional<std::pair<std::string, std::string>> offending_cell;
};

template <class Obj, class Hom>
CommutativityReport is_commutative(const Diagram<Obj, Hom>& d) {
  const int n = d.index.size();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q || !d.index.less_eq(p, q)) continue;
      const auto comps = d.all_composites(p, q);
      for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].map != comps[0].map)
          return {false, {{d.index.objects[p], d.index.objects[q]}}};
    }
  return {};
}

/// Applies Con to a lattice diagram; objects become congruence semilattices
/// and cover arrows become the induced join-zero maps.
struct ConImage {
  SemilatticeDiagram diagram;
  std::vector<ConLattice> con_at;
};

inline ConImage con_image_with_data(const LatticeDiagram& d) {
  ConImage out;
  out.diagram.index = d.index;
  for (const auto& obj : d.object_at) out.con_at.push_back(con_lattice(obj));
  for (const auto& con : out.con_at)
    out.diagram.object_at.push_back(con.semilattice());
  for (auto [pq, hom] : d.arrow_at) {
    out.diagram.arrow_at.emplace(
        pq, con_functor_map(hom, out.con_at[pq.first], out.con_at[pq.second]));
  }
  return out;
}

inline SemilatticeDiagram con_image(const LatticeDiagram& d) {
  return con_image_with_data(d).diagram;
}

template <class Hom>
struct DiagramIso {
  std::vector<Hom> at;  // per-object isomorphism d1[i] -> d2[i]
};

namespace detail {

template <class Obj>
JoinCarrierView carrier_view(const Obj& o) {
  return o.join_view();
}

}  // namespace detail

/// Backtracking search for a family of per-object isomorphisms whose
/// naturality squares on covers all commute. Objects are processed bottom-up;
/// candidate isomorphisms are enumerated in lexicographic join-irreducible
/// order, so the result is deterministic.
template <class Obj, class Hom>
std::optional<DiagramIso<Hom>> diagram_isomorphism(const Diagram<Obj, Hom>& d1,
                                                   const Diagram<Obj, Hom>& d2) {
  if (!d1.index.same_shape(d2.index)) throw IndexMismatch();
  const int n = d1.index.size();
  // process objects in a linear extension of the index poset
  std::vector<int> order(n);
  {
    std::vector<int> depth(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && d1.index.less_eq(j, i)) ++depth[i];
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return depth[a] < depth[b]; });
  }
  std::vector<std::vector<std::vector<Element>>> candidates(n);
  for (int i = 0; i < n; ++i) {
    detail::enumerate_join_isos(detail::carrier_view(d1.object_at[i]),
                                detail::carrier_view(d2.object_at[i]),
                                [&](const std::vector<Element>& m) {
                                  candidates[i].push_back(m);
                                  return false;
                                });
    if (candidates[i].empty()) return std::nullopt;
  }
  std::vector<int> chosen(n, -1);
  auto natural_on_assigned = [&](int obj) {
    for (auto [a, b] : d1.index.covers) {
      if ((a != obj && b != obj) || chosen[a] < 0 || chosen[b] < 0) continue;
      const Hom* f1 = d1.stored_arrow(a, b);
      const Hom* f2 = d2.stored_arrow(a, b);
      if (!f1 || !f2) continue;
      const auto& iso_a = candidates[a][chosen[a]];
      const auto& iso_b = candidates[b][chosen[b]];
      for (Element x = 0; x < d1.object_at[a].size; ++x)
        if (iso_b[f1->map[x]] != f2->map[iso_a[x]]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int k) -> bool {
    if (k == n) return true;
    const int obj = order[k];
    for (std::size_t c = 0; c < candidates[obj].size(); ++c) {
      chosen[obj] = static_cast<int>(c);
      if (natural_on_assigned(obj) && self(self, k + 1)) return true;
    }
    chosen[obj] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  DiagramIso<Hom> iso;
  for (int i = 0; i < n; ++i)
    iso.at.push_back(Hom{d1.object_at[i], d2.object_at[i], candidates[i][chosen[i]]});
  return iso;
}

}  // namespace conlat
