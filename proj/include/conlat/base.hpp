#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conlat {

using Element = int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CycleDetected : Error {
  CycleDetected() : Error("cover relation contains a cycle") {}
};

struct NotALattice : Error {
  Element a, b;
  NotALattice(Element a_, Element b_, const std::string& reason)
      : Error("not a lattice: pair (" + std::to_string(a_) + "," +
              std::to_string(b_) + ") " + reason),
        a(a_), b(b_) {}
};

struct SizeOverflow : Error {
  SizeOverflow(std::size_t requested, std::size_t bound)
      : Error("size " + std::to_string(requested) + " exceeds bound " +
              std::to_string(bound)) {}
};

struct NotComparable : Error {
  NotComparable(Element a, Element b)
      : Error("elements " + std::to_string(a) + " and " + std::to_string(b) +
              " are not comparable") {}
};

struct MixedLattices : Error {
  MixedLattices() : Error("operands belong to different lattices") {}
};

struct FamilyInvalid : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

struct IndexMismatch : Error {
  IndexMismatch() : Error("diagrams have different index posets") {}
};

struct InvalidIso : Error {
  using Error::Error;
};

struct BoundExceeded : Error {
  using Error::Error;
};

struct NotJoinHom : Error {
  NotJoinHom() : Error("map is not a complete join-homomorphism") {}
};

struct NotMeetHom : Error {
  NotMeetHom() : Error("map is not a complete meet-homomorphism") {}
};

struct ParseError : Error {
  using Error::Error;
};

enum class SearchStatus { Found, NotFound, BudgetExceeded };

/// Disjoint-set forest used by the congruence closure algorithms.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true if the two classes were distinct before the call.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep least index as root
    parent_[b] = a;
    return true;
  }

  std::vector<int> blocks() {
    std::vector<int> out(parent_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i)
      out[i] = find(static_cast<int>(i));
    return out;
  }

 private:
  std::vector<int> parent_;
};

namespace detail {

// Element invariants used to prune isomorphism search: height, ideal size,
// filter size, lower-cover count, upper-cover count.
struct IsoInvariant {
  int height = 0;
  int ideal = 0;
  int filter = 0;
  int down_covers = 0;
  int up_covers = 0;
  bool operator==(const IsoInvariant&) const = default;
};

struct JoinCarrierView {
  int size = 0;
  const Element* join = nullptr;  // size*size table
  Element zero = 0;

  Element j(Element a, Element b) const { return join[a * size + b]; }
  bool leq(Element a, Element b) const { return j(a, b) == b; }
};

inline std::vector<IsoInvariant> iso_invariants(const JoinCarrierView& c) {
  std::vector<IsoInvariant> inv(c.size);
  for (Element a = 0; a < c.size; ++a) {
    for (Element b = 0; b < c.size; ++b) {
      if (a == b) continue;
      if (c.leq(b, a)) ++inv[a].ideal;
      if (c.leq(a, b)) ++inv[a].filter;
    }
  }
  auto covers = [&](Element lo, Element hi) {
    if (lo == hi || !c.leq(lo, hi)) return false;
    for (Element m = 0; m < c.size; ++m)
      if (m != lo && m != hi && c.leq(lo, m) && c.leq(m, hi)) return false;
    return true;
  };
  for (Element a = 0; a < c.size; ++a)
    for (Element b = 0; b < c.size; ++b) {
      if (covers(b, a)) ++inv[a].down_covers;
      if (covers(a, b)) ++inv[a].up_covers;
    }
  // height = longest chain below, via repeated relaxation over the order
  bool changed = true;
  while (changed) {
    changed = false;
    for (Element a = 0; a < c.size; ++a)
      for (Element b = 0; b < c.size; ++b)
        if (a != b && c.leq(b, a) && inv[a].height < inv[b].height + 1) {
          inv[a].height = inv[b].height + 1;
          changed = true;
        }
  }
  return inv;
}

// Join-irreducible elements: nonzero with a unique lower cover.
inline std::vector<Element> join_irreducibles(const JoinCarrierView& c) {
  std::vector<Element> ji;
  for (Element a = 0; a < c.size; ++a) {
    if (a == c.zero) continue;
    int lower_covers = 0;
    for (Element b = 0; b < c.size; ++b) {
      if (b == a || !c.leq(b, a)) continue;
      bool cover = true;
      for (Element m = 0; m < c.size; ++m)
        if (m != a && m != b && c.leq(b, m) && c.leq(m, a)) {
          cover = false;
          break;
        }
      if (cover) ++lower_covers;
    }
    if (lower_covers == 1) ji.push_back(a);
  }
  return ji;
}

// Enumerates the join-preserving bijections between two carriers, in
// lexicographic order of the join-irreducible assignment. The callback
// returns true to stop the search.
template <class Callback>
bool enumerate_join_isos(const JoinCarrierView& a, const JoinCarrierView& b,
                         Callback&& cb) {
  if (a.size != b.size) return false;
  if (a.size == 1) {
    std::vector<Element> m{0};
    return cb(m);
  }
  const auto inv_a = iso_invariants(a);
  const auto inv_b = iso_invariants(b);
  const auto ji_a = join_irreducibles(a);
  const auto ji_b = join_irreducibles(b);
  if (ji_a.size() != ji_b.size()) return false;

  const int k = static_cast<int>(ji_a.size());
  std::vector<Element> assign(k, -1);
  std::vector<char> used(b.size, 0);

  // ji index sets below each element of a, for the extension step
  std::vector<std::vector<int>> ji_below(a.size);
  for (Element x = 0; x < a.size; ++x)
    for (int t = 0; t < k; ++t)
      if (a.leq(ji_a[t], x)) ji_below[x].push_back(t);

  std::vector<Element> full(a.size, -1);
  std::vector<char> hit(b.size, 0);

  auto try_full = [&]() -> bool {
    std::fill(full.begin(), full.end(), -1);
    std::fill(hit.begin(), hit.end(), 0);
    for (Element x = 0; x < a.size; ++x) {
      Element img = b.zero;
      for (int t : ji_below[x]) img = b.j(img, assign[t]);
      if (hit[img]) return false;
      hit[img] = 1;
      full[x] = img;
    }
    for (Element x = 0; x < a.size; ++x)
      for (Element y = 0; y < a.size; ++y)
        if (full[a.j(x, y)] != b.j(full[x], full[y])) return false;
    return true;
  };

  // Backtrack over ji assignments; order within ji_b is by index.
  auto rec = [&](auto&& self, int t) -> bool {
    if (t == k) {
      if (!try_full()) return false;
      return cb(full);
    }
    const Element src = ji_a[t];
    for (Element cand : ji_b) {
      if (used[cand] || !(inv_a[src] == inv_b[cand])) continue;
      // order consistency with earlier assigned ji
      bool ok = true;
      for (int s = 0; s < t && ok; ++s) {
        ok = (a.leq(ji_a[s], src) == b.leq(assign[s], cand)) &&
             (a.leq(src, ji_a[s]) == b.leq(cand, assign[s]));
      }
      if (!ok) continue;
      assign[t] = cand;
      used[cand] = 1;
      if (self(self, t + 1)) return true;
      used[cand] = 0;
      assign[t] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace detail

}  // namespace conlat
