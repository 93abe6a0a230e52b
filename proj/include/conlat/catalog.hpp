#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "conlat/adjoint.hpp"
#include "conlat/base.hpp"
#include "conlat/congruence.hpp"
#include "conlat/diagram.hpp"
#include "conlat/lattice.hpp"
#include "conlat/report.hpp"
#include "conlat/semilattice.hpp"
#include "conlat/urp.hpp"

namespace conlat {

constexpr int kCatalogBound = 8;
constexpr int kCatalogDefault = 7;

/// Canonical form: the minimal adjacency encoding of the order table over all
/// relabelings that respect the element invariants (rank and degrees).
inline std::string canonical_code(const FiniteLattice& l) {
  const int n = l.size;
  const auto inv = detail::iso_invariants(l.join_view());
  // group elements by invariant, groups ordered by invariant value
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  auto key = [&](int e) {
    return std::tuple(inv[e].height, inv[e].ideal, inv[e].filter,
                      inv[e].down_covers, inv[e].up_covers, e);
  };
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return key(a) < key(b); });
  std::vector<std::pair<int, int>> groups;  // [start, end) in `order`
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && inv[order[j]] == inv[order[i]]) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  std::string best;
  std::vector<int> position(n);  // element -> canonical position
  auto encode = [&]() {
    std::string s(static_cast<std::size_t>(n) * n, '0');
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (l.leq(a, b))
          s[static_cast<std::size_t>(position[a]) * n + position[b]] = '1';
    return s;
  };
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == groups.size()) {
      std::string s = encode();
      if (best.empty() || s < best) best = std::move(s);
      return;
    }
    auto [lo, hi] = groups[g];
    std::vector<int> slice(order.begin() + lo, order.begin() + hi);
    std::sort(slice.begin(), slice.end());
    do {
      for (int t = lo; t < hi; ++t) position[slice[t - lo]] = t;
      self(self, g + 1);
    } while (std::next_permutation(slice.begin(), slice.end()));
  };
  rec(rec, 0);
  return best;
}

namespace detail {

// Grows naturally labeled posets with a bottom by repeatedly attaching a new
// maximal element whose strict down-set is a down-closed subset containing
// the bottom. Meets are final once an element is placed, so glb uniqueness
// prunes early; joins are checked at full size.
struct LatticeEnumerator {
  int target = 0;
  std::vector<std::uint8_t> leq;  // target*target, grown in place
  std::set<std::string> seen;
  std::vector<FiniteLattice> out;

  bool leq_at(int a, int b) const {
    return leq[static_cast<std::size_t>(a) * target + b] != 0;
  }

  bool glb_unique(int k) const {
    // pairs (i, k) for i < k must already have a greatest lower bound
    for (int i = 0; i < k; ++i) {
      int glb = -1;
      for (int c = 0; c <= k; ++c)
        if (leq_at(c, i) && leq_at(c, k) && (glb < 0 || leq_at(glb, c)))
          glb = c;
      if (glb < 0) return false;
      for (int c = 0; c <= k; ++c)
        if (leq_at(c, i) && leq_at(c, k) && !leq_at(c, glb)) return false;
    }
    return true;
  }

  void finish() {
    std::vector<std::uint8_t> table(
        leq.begin(), leq.begin() + static_cast<std::size_t>(target) * target);
    // reindex the square slice: rows were laid out with stride `target`
    FiniteLattice l;
    try {
      l = conlat::detail::lattice_from_leq(target, std::move(table));
    } catch (const NotALattice&) {
      return;
    }
    const std::string code = canonical_code(l);
    if (seen.insert(code).second) {
      l.name = "lat" + std::to_string(target) + "_" + std::to_string(out.size());
      out.push_back(std::move(l));
    }
  }

  void extend(int k) {
    if (k == target) {
      finish();
      return;
    }
    const bool last = (k == target - 1);
    // enumerate down-closed subsets of {0..k-1} containing 0
    std::vector<int> subset;
    auto place = [&](const std::vector<char>& down) {
      for (int i = 0; i < k; ++i) {
        leq[static_cast<std::size_t>(i) * target + k] = down[i];
        leq[static_cast<std::size_t>(k) * target + i] = 0;
      }
      leq[static_cast<std::size_t>(k) * target + k] = 1;
      if (!glb_unique(k)) return;
      extend(k + 1);
    };
    if (k == 0) {
      leq[0] = 1;
      extend(1);
      return;
    }
    std::vector<char> down(k, 0);
    auto rec = [&](auto&& self, int i) -> void {
      if (i == k) {
        if (!down[0]) return;  // must contain the bottom
        if (last) {            // the top lies above everything
          for (int t = 0; t < k; ++t)
            if (!down[t]) return;
        }
        place(down);
        return;
      }
      // include i only if the choice stays down-closed
      bool closed = true;
      for (int t = 0; t < i; ++t)
        if (leq_at(t, i) && !down[t]) closed = false;
      if (closed) {
        down[i] = 1;
        self(self, i + 1);
        down[i] = 0;
      }
      self(self, i + 1);
    };
    rec(rec, 0);
  }
};

}  // namespace detail

/// All lattices with exactly n elements, one per isomorphism class, sorted by
/// canonical code.
inline std::vector<FiniteLattice> enumerate_lattices(int n,
                                                     int bound = kCatalogBound) {
  if (n < 1 || n > bound) throw BoundExceeded("size " + std::to_string(n) +
                                              " outside the enumeration bound");
  detail::LatticeEnumerator e;
  e.target = n;
  e.leq.assign(static_cast<std::size_t>(n) * n, 0);
  e.extend(0);
  std::sort(e.out.begin(), e.out.end(),
            [](const FiniteLattice& a, const FiniteLattice& b) {
              return canonical_code(a) < canonical_code(b);
            });
  for (std::size_t i = 0; i < e.out.size(); ++i)
    e.out[i].name = "lat" + std::to_string(n) + "_" + std::to_string(i);
  return e.out;
}

struct Catalog {
  std::vector<std::vector<FiniteLattice>> by_size;  // by_size[k]: size k+1

  int max_size() const { return static_cast<int>(by_size.size()); }
  std::vector<const FiniteLattice*> all() const {
    std::vector<const FiniteLattice*> out;
    for (const auto& slice : by_size)
      for (const auto& l : slice) out.push_back(&l);
    return out;
  }
};

inline Catalog enumerate_catalog(int max_n) {
  Catalog c;
  for (int n = 1; n <= max_n; ++n) c.by_size.push_back(enumerate_lattices(n));
  return c;
}

/// Runs f(i) for i in [0, n) on `jobs` threads; results must be merged by
/// index on the caller side for deterministic output.
template <class F>
void parallel_for(int n, int jobs, F&& f) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  for (auto& th : pool) th.join();
}

namespace detail {

struct SweepContext {
  const FiniteLattice& l;
  ConLattice con;
  std::vector<std::vector<int>> principal_idx;  // [u][v] -> index in con

  explicit SweepContext(const FiniteLattice& lat) : l(lat), con(con_lattice(lat)) {
    principal_idx.assign(l.size, std::vector<int>(l.size, -1));
    for (Element u = 0; u < l.size; ++u)
      for (Element v = 0; v < l.size; ++v)
        principal_idx[u][v] = con.index_of(principal_congruence(l, u, v));
  }
};

inline std::vector<std::pair<Element, Element>> decompositions_of(
    const ConLattice& con, Element eps) {
  std::vector<std::pair<Element, Element>> out;
  const FiniteLattice& cl = con.lattice_of_congruences;
  for (Element a = 0; a < cl.size; ++a)
    for (Element b = 0; b < cl.size; ++b)
      if (cl.join(a, b) == eps) out.emplace_back(a, b);
  return out;
}

// suite (c): the splitting witness validates for every principal congruence
// of a permutable lattice and every family of size at most two
inline std::optional<std::string> sweep_urp1_witnesses(SweepContext& ctx) {
  const FiniteLattice& l = ctx.l;
  if (!has_permutable_congruences(l, ctx.con).holds) return std::nullopt;
  for (Element u = 0; u < l.size; ++u)
    for (Element v = 0; v < l.size; ++v) {
      if (!l.lt(u, v)) continue;
      const Element eps = ctx.principal_idx[u][v];
      const auto decomp = decompositions_of(ctx.con, eps);
      auto split_of = [&](const std::pair<Element, Element>& ab)
          -> std::optional<Element> {
        const Congruence& a = ctx.con.congruence_of[ab.first];
        const Congruence& b = ctx.con.congruence_of[ab.second];
        for (Element x = 0; x < l.size; ++x)
          if (l.leq(u, x) && l.leq(x, v) && a.same(u, x) && b.same(x, v))
            return x;
        return std::nullopt;
      };
      auto run_family = [&](const std::vector<std::pair<Element, Element>>& fam)
          -> std::optional<std::string> {
        std::vector<std::pair<Congruence, Congruence>> family;
        std::vector<Element> xs;
        for (const auto& ab : fam) {
          const auto x = split_of(ab);
          if (!x)
            return "no split element for a decomposition of Theta(" +
                   std::to_string(u) + "," + std::to_string(v) + ")";
          family.emplace_back(ctx.con.congruence_of[ab.first],
                              ctx.con.congruence_of[ab.second]);
          xs.push_back(*x);
        }
        try {
          urp1_witness_from_splitting(l, ctx.con, u, v, family, xs);
        } catch (const Error& e) {
          return std::string(e.what());
        }
        return std::nullopt;
      };
      for (std::size_t i = 0; i < decomp.size(); ++i) {
        if (auto bad = run_family({decomp[i]})) return bad;
        for (std::size_t j = i; j < decomp.size(); ++j)
          if (auto bad = run_family({decomp[i], decomp[j]})) return bad;
      }
    }
  return std::nullopt;
}

// suite (d): the chain-split witness validates for almost-permutable lattices
inline std::optional<std::string> sweep_urp1_minus_witnesses(SweepContext& ctx) {
  const FiniteLattice& l = ctx.l;
  if (!has_almost_permutable_congruences(l, ctx.con).holds) return std::nullopt;
  for (Element u = 0; u < l.size; ++u)
    for (Element v = 0; v < l.size; ++v) {
      if (!l.lt(u, v)) continue;
      const Element eps = ctx.principal_idx[u][v];
      const auto decomp = decompositions_of(ctx.con, eps);
      // orientation: 0 if the alpha-first chain exists, else 1 (beta-first)
      auto oriented_split = [&](const std::pair<Element, Element>& ab)
          -> std::optional<std::pair<int, Element>> {
        const Congruence& a = ctx.con.congruence_of[ab.first];
        const Congruence& b = ctx.con.congruence_of[ab.second];
        for (Element x = 0; x < l.size; ++x)
          if (l.leq(u, x) && l.leq(x, v) && a.same(u, x) && b.same(x, v))
            return std::make_pair(0, x);
        for (Element x = 0; x < l.size; ++x)
          if (l.leq(u, x) && l.leq(x, v) && b.same(u, x) && a.same(x, v))
            return std::make_pair(1, x);
        return std::nullopt;
      };
      auto run_family = [&](const std::vector<std::pair<Element, Element>>& fam)
          -> std::optional<std::string> {
        std::vector<std::pair<Congruence, Congruence>> family;
        std::vector<Element> xs;
        std::vector<int> x_set;
        for (std::size_t i = 0; i < fam.size(); ++i) {
          const auto sp = oriented_split(fam[i]);
          if (!sp)
            return "no oriented split for a decomposition of Theta(" +
                   std::to_string(u) + "," + std::to_string(v) + ")";
          family.emplace_back(ctx.con.congruence_of[fam[i].first],
                              ctx.con.congruence_of[fam[i].second]);
          xs.push_back(sp->second);
          if (sp->first == 0) x_set.push_back(static_cast<int>(i));
        }
        try {
          urp1_minus_witness_from_chain_splits(l, ctx.con, u, v, family, x_set,
                                               xs);
        } catch (const Error& e) {
          return std::string(e.what());
        }
        return std::nullopt;
      };
      for (std::size_t i = 0; i < decomp.size(); ++i) {
        if (auto bad = run_family({decomp[i]})) return bad;
        for (std::size_t j = i; j < decomp.size(); ++j)
          if (auto bad = run_family({decomp[i], decomp[j]})) return bad;
      }
    }
  return std::nullopt;
}

inline std::optional<std::string> sweep_adjoint_roundtrip(SweepContext& ctx) {
  const FiniteLattice& l = ctx.l;
  std::set<std::vector<Element>> seen;
  for (Element x = 0; x < l.size; ++x)
    for (Element y = x; y < l.size; ++y) {
      const auto sub = sublattice_closure(l, {l.bottom(), x, y});
      if (!seen.insert(sub.ambient_of).second) continue;
      const MonotoneMap incl{sub.lattice, l, sub.ambient_of};
      if (!is_complete_join_hom(incl)) continue;
      const MonotoneMap back = lower_adjoint(upper_adjoint(incl));
      if (!(back == incl))
        return "adjoint round trip fails for the sublattice at elements " +
               std::to_string(x) + "," + std::to_string(y);
    }
  return std::nullopt;
}

}  // namespace detail

/// Evaluates a named implication on every catalog lattice; counterexamples
/// are reported (none are expected).
inline Report run_property_suite(const std::string& suite, const Catalog& cat,
                                 int jobs = 1) {
  const auto lattices = cat.all();
  const int n = static_cast<int>(lattices.size());
  std::vector<std::string> failures(n);
  auto run_one = [&](int idx) {
    const FiniteLattice& l = *lattices[idx];
    detail::SweepContext ctx(l);
    std::optional<std::string> bad;
    if (suite == "prop-equivalence") {
      const bool direct = has_permutable_congruences(l, ctx.con).holds;
      const bool criterion = permutable_via_criterion(l).holds;
      if (direct != criterion) bad = "criterion disagrees with the definition";
    } else if (suite == "splitting-permutable") {
      if (is_congruence_splitting(l, ctx.con).holds &&
          !has_permutable_congruences(l, ctx.con).holds)
        bad = "congruence-splitting but not permutable";
    } else if (suite == "con-distributive") {
      if (!is_distributive(ctx.con.lattice_of_congruences))
        bad = "congruence lattice is not distributive";
      else if (!is_distributive_semilattice(ctx.con.semilattice()))
        bad = "congruence semilattice fails the refinement form";
    } else if (suite == "urp1-witnesses") {
      bad = detail::sweep_urp1_witnesses(ctx);
    } else if (suite == "urp1-minus-witnesses") {
      bad = detail::sweep_urp1_minus_witnesses(ctx);
    } else if (suite == "adjoint-roundtrip") {
      bad = detail::sweep_adjoint_roundtrip(ctx);
    } else {
      throw Error("unknown suite: " + suite);
    }
    if (bad) failures[idx] = l.name + ": " + *bad;
  };
  Report r;
  r.command = "catalog --suite " + suite;
  parallel_for(n, jobs, run_one);
  int bad_count = 0;
  for (const auto& f : failures)
    if (!f.empty()) {
      ++bad_count;
      r.add(suite + " counterexample", false, f);
    }
  r.add(suite + " over " + std::to_string(n) + " lattices", bad_count == 0,
        bad_count == 0 ? "zero counterexamples"
                       : std::to_string(bad_count) + " counterexamples");
  return r;
}

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> suites = {
      "prop-equivalence", "splitting-permutable", "con-distributive",
      "urp1-witnesses",   "urp1-minus-witnesses", "adjoint-roundtrip"};
  return suites;
}

namespace detail {

// All lattice homomorphisms A -> B, lexicographic in the map vector.
template <class Callback>
void enumerate_lattice_homs(const FiniteLattice& a, const FiniteLattice& b,
                            Callback&& cb) {
  std::vector<Element> map(a.size, -1);
  auto rec = [&](auto&& self, Element x) -> bool {
    if (x == a.size) {
      LatticeHom h{a, b, map};
      if (h.is_valid()) return cb(h);
      return false;
    }
    for (Element y = 0; y < b.size; ++y) {
      bool ok = true;
      for (Element z = 0; z < x && ok; ++z) {
        if (a.leq(z, x) && !b.leq(map[z], y)) ok = false;
        if (a.leq(x, z) && !b.leq(y, map[z])) ok = false;
        if (ok) {
          const Element j = a.join(z, x), m = a.meet(z, x);
          if (j < x && b.join(map[z], y) != map[j]) ok = false;
          if (m < x && b.meet(map[z], y) != map[m]) ok = false;
        }
      }
      if (!ok) continue;
      map[x] = y;
      if (self(self, x + 1)) return true;
      map[x] = -1;
    }
    return false;
  };
  rec(rec, 0);
}

}  // namespace detail

struct LiftingSearchResult {
  bool found = false;
  std::optional<LatticeDiagram> lifting;
  std::uint64_t candidates_tried = 0;
};

/// Bounded exhaustive search for a lifting of a semilattice diagram: catalog
/// lattices with matching congruence semilattices at the objects, all hom
/// assignments on the covers, verified by an independent diagram-isomorphism
/// check. With `require_iso_lift`, any target arrow that is an isomorphism
/// must be lifted by a lattice isomorphism.
inline LiftingSearchResult search_liftings(const SemilatticeDiagram& target,
                                           int max_size,
                                           bool require_iso_lift = false) {
  const Catalog cat = enumerate_catalog(max_size);
  const int nobj = target.index.size();
  std::vector<std::vector<std::pair<FiniteLattice, ConLattice>>> candidates(nobj);
  for (int i = 0; i < nobj; ++i) {
    for (const FiniteLattice* l : cat.all()) {
      ConLattice con = con_lattice(*l);
      if (semilattice_isomorphic(con.semilattice(), target.object_at[i]))
        candidates[i].emplace_back(*l, std::move(con));
    }
    if (candidates[i].empty()) return {};
  }
  LiftingSearchResult result;
  LatticeDiagram attempt;
  attempt.index = target.index;
  attempt.object_at.resize(nobj);
  const auto& covers = target.index.covers;

  std::vector<int> object_choice(nobj, -1);
  auto iso_arrows_ok = [&]() {
    for (int p = 0; p < nobj; ++p)
      for (int q = 0; q < nobj; ++q) {
        if (p == q || !target.index.less_eq(p, q)) continue;
        if (!target.arrow(p, q).is_isomorphism()) continue;
        if (!attempt.arrow(p, q).is_isomorphism()) return false;
      }
    return true;
  };
  auto assign_arrows = [&](auto&& self, std::size_t c) -> bool {
    if (c == covers.size()) {
      ++result.candidates_tried;
      if (!is_commutative(attempt).commutes) return false;
      if (require_iso_lift && !iso_arrows_ok()) return false;
      if (!diagram_isomorphism(con_image(attempt), target)) return false;
      result.found = true;
      result.lifting = attempt;
      return true;
    }
    const auto [p, q] = covers[c];
    bool stop = false;
    detail::enumerate_lattice_homs(
        attempt.object_at[p], attempt.object_at[q], [&](const LatticeHom& h) {
          attempt.arrow_at.insert_or_assign(std::make_pair(p, q), h);
          if (self(self, c + 1)) {
            stop = true;
            return true;
          }
          attempt.arrow_at.erase(std::make_pair(p, q));
          return false;
        });
    return stop;
  };
  auto assign_objects = [&](auto&& self, int i) -> bool {
    if (i == nobj) return assign_arrows(assign_arrows, 0);
    for (std::size_t c = 0; c < candidates[i].size(); ++c) {
      object_choice[i] = static_cast<int>(c);
      attempt.object_at[i] = candidates[i][c].first;
      if (self(self, i + 1)) return true;
    }
    object_choice[i] = -1;
    return false;
  };
  assign_objects(assign_objects, 0);
  return result;
}

}  // namespace conlat
