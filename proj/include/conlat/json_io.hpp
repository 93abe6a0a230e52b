#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "conlat/base.hpp"
#include "conlat/congruence.hpp"
#include "conlat/diagram.hpp"
#include "conlat/lattice.hpp"
#include "conlat/report.hpp"
#include "conlat/semilattice.hpp"
#include "conlat/urp.hpp"

namespace conlat {

using json = nlohmann::json;

/// Canonical emission: covers sorted lexicographically, labels only when set.
inline json lattice_to_json(const FiniteLattice& l) {
  json j;
  j["name"] = l.name;
  j["size"] = l.size;
  json covers = json::array();
  for (auto [a, b] : l.cover_pairs()) covers.push_back({a, b});
  j["covers"] = std::move(covers);
  if (static_cast<int>(l.labels.size()) == l.size) {
    json labels = json::object();
    for (Element x = 0; x < l.size; ++x)
      if (!l.labels[x].empty()) labels[std::to_string(x)] = l.labels[x];
    if (!labels.empty()) j["labels"] = std::move(labels);
  }
  return j;
}

inline FiniteLattice lattice_from_json(const json& j) {
  try {
    const int n = j.at("size").get<int>();
    std::vector<std::pair<Element, Element>> covers;
    for (const auto& c : j.at("covers"))
      covers.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      labels.assign(n, "");
      for (const auto& [k, v] : j.at("labels").items())
        labels[std::stoi(k)] = v.get<std::string>();
    }
    FiniteLattice l = lattice_from_covers(
        n, covers, j.value("name", std::string{}), std::move(labels));
    return l;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad lattice JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad lattice JSON: ") + e.what());
  }
}

/// Mirrors the lattice format with a "zero" field; the order is given by the
/// covers and every pair must have a join.
inline json semilattice_to_json(const FiniteJoinSemilattice0& s) {
  json j;
  j["name"] = s.name;
  j["size"] = s.size;
  j["zero"] = s.zero;
  json covers = json::array();
  for (Element a = 0; a < s.size; ++a)
    for (Element b = 0; b < s.size; ++b) {
      if (a == b || !s.leq(a, b)) continue;
      bool cover = true;
      for (Element m = 0; m < s.size && cover; ++m)
        if (m != a && m != b && s.leq(a, m) && s.leq(m, b)) cover = false;
      if (cover) covers.push_back({a, b});
    }
  j["covers"] = std::move(covers);
  if (static_cast<int>(s.labels.size()) == s.size) {
    json labels = json::object();
    for (Element x = 0; x < s.size; ++x)
      if (!s.labels[x].empty()) labels[std::to_string(x)] = s.labels[x];
    if (!labels.empty()) j["labels"] = std::move(labels);
  }
  return j;
}

inline FiniteJoinSemilattice0 semilattice_from_json(const json& j) {
  try {
    const int n = j.at("size").get<int>();
    const Element zero = j.at("zero").get<int>();
    std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i) * n + i] = 1;
    for (const auto& c : j.at("covers")) {
      const int a = c.at(0).get<int>(), b = c.at(1).get<int>();
      if (a < 0 || a >= n || b < 0 || b >= n || a == b)
        throw ParseError("bad cover pair");
      leq[static_cast<std::size_t>(a) * n + b] = 1;
    }
    for (int m = 0; m < n; ++m)
      for (int a = 0; a < n; ++a)
        if (leq[static_cast<std::size_t>(a) * n + m])
          for (int b = 0; b < n; ++b)
            if (leq[static_cast<std::size_t>(m) * n + b])
              leq[static_cast<std::size_t>(a) * n + b] = 1;
    FiniteJoinSemilattice0 s;
    s.size = n;
    s.zero = zero;
    s.name = j.value("name", std::string{});
    s.join_table.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a) {
      if (!leq[static_cast<std::size_t>(zero) * n + a])
        throw ParseError("zero is not the least element");
      for (int b = 0; b < n; ++b) {
        Element lub = -1;
        for (int c = 0; c < n; ++c)
          if (leq[static_cast<std::size_t>(a) * n + c] &&
              leq[static_cast<std::size_t>(b) * n + c] &&
              (lub < 0 || leq[static_cast<std::size_t>(c) * n + lub]))
            lub = c;
        if (lub < 0) throw ParseError("pair without a join");
        for (int c = 0; c < n; ++c)
          if (leq[static_cast<std::size_t>(a) * n + c] &&
              leq[static_cast<std::size_t>(b) * n + c] &&
              !leq[static_cast<std::size_t>(lub) * n + c])
            throw ParseError("pair without a least join");
        s.join_table[static_cast<std::size_t>(a) * n + b] = lub;
      }
    }
    if (j.contains("labels")) {
      s.labels.assign(n, "");
      for (const auto& [k, v] : j.at("labels").items())
        s.labels[std::stoi(k)] = v.get<std::string>();
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad semilattice JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad semilattice JSON: ") + e.what());
  }
}

/// Blocks sorted by least member; the lattice is named or inlined.
inline json congruence_to_json(const Congruence& c,
                               const std::string& lattice_name) {
  json j;
  j["lattice"] = lattice_name;
  json blocks = json::array();
  for (const auto& blk : blocks_of(c)) blocks.push_back(blk);
  j["blocks"] = std::move(blocks);
  return j;
}

inline Congruence congruence_from_json(const json& j, int lattice_size) {
  try {
    std::vector<int> raw(lattice_size, -1);
    int id = 0;
    for (const auto& blk : j.at("blocks")) {
      for (const auto& e : blk) {
        const int x = e.get<int>();
        if (x < 0 || x >= lattice_size || raw[x] >= 0)
          throw ParseError("blocks are not a partition");
        raw[x] = id;
      }
      ++id;
    }
    for (int x = 0; x < lattice_size; ++x)
      if (raw[x] < 0) throw ParseError("blocks do not cover the carrier");
    return canonical_congruence(lattice_size, std::move(raw));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad congruence JSON: ") + e.what());
  }
}

inline json map_to_json(const std::string& source, const std::string& target,
                        const std::vector<Element>& map) {
  return json{{"source", source}, {"target", target}, {"map", map}};
}

struct FamilyInput {
  Element epsilon = 0;
  UrpFamily pairs;
  std::optional<std::vector<int>> subset_x;
};

inline FamilyInput family_from_json(const json& j) {
  try {
    FamilyInput f;
    f.epsilon = j.at("epsilon").get<int>();
    for (const auto& p : j.at("pairs"))
      f.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    if (j.contains("X")) f.subset_x = j.at("X").get<std::vector<int>>();
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad family JSON: ") + e.what());
  }
}

inline json family_to_json(const FamilyInput& f) {
  json j;
  j["epsilon"] = f.epsilon;
  json pairs = json::array();
  for (auto [a, b] : f.pairs) pairs.push_back({a, b});
  j["pairs"] = std::move(pairs);
  if (f.subset_x) j["X"] = *f.subset_x;
  return j;
}

inline json poset_to_json(const IndexPoset& p) {
  json j;
  j["objects"] = p.objects;
  json covers = json::array();
  for (auto [a, b] : p.covers) covers.push_back({a, b});
  j["covers"] = std::move(covers);
  return j;
}

inline json diagram_to_json(const SemilatticeDiagram& d) {
  json j;
  j["poset"] = poset_to_json(d.index);
  json objects = json::object();
  for (int i = 0; i < d.index.size(); ++i)
    objects[d.index.objects[i]] = semilattice_to_json(d.object_at[i]);
  j["objects"] = std::move(objects);
  json arrows = json::object();
  for (const auto& [pq, hom] : d.arrow_at)
    arrows[d.index.objects[pq.first] + "->" + d.index.objects[pq.second]] =
        hom.map;
  j["arrows"] = std::move(arrows);
  return j;
}

inline json diagram_to_json(const LatticeDiagram& d) {
  json j;
  j["poset"] = poset_to_json(d.index);
  json objects = json::object();
  for (int i = 0; i < d.index.size(); ++i)
    objects[d.index.objects[i]] = lattice_to_json(d.object_at[i]);
  j["objects"] = std::move(objects);
  json arrows = json::object();
  for (const auto& [pq, hom] : d.arrow_at)
    arrows[d.index.objects[pq.first] + "->" + d.index.objects[pq.second]] =
        hom.map;
  j["arrows"] = std::move(arrows);
  return j;
}

inline SemilatticeDiagram semilattice_diagram_from_json(const json& j) {
  try {
    const json& pj = j.at("poset");
    std::vector<std::string> names = pj.at("objects").get<std::vector<std::string>>();
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : pj.at("covers"))
      covers.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    SemilatticeDiagram d;
    d.index = poset_from_covers(names, covers);
    for (const auto& name : names)
      d.object_at.push_back(semilattice_from_json(j.at("objects").at(name)));
    for (const auto& [key, val] : j.at("arrows").items()) {
      const auto sep = key.find("->");
      if (sep == std::string::npos) throw ParseError("bad arrow key " + key);
      const int p = d.object_index(key.substr(0, sep));
      const int q = d.object_index(key.substr(sep + 2));
      JoinZeroHom h{d.object_at[p], d.object_at[q],
                    val.get<std::vector<Element>>()};
      if (!h.is_valid())
        throw ParseError("arrow " + key + " is not a {v,0}-homomorphism");
      d.arrow_at.emplace(std::make_pair(p, q), std::move(h));
    }
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad diagram JSON: ") + e.what());
  }
}

inline json report_to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["check"] = c.name;
    cj["status"] = to_string(c.status);
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["timing_ms"] = r.timing_ms;
  return j;
}

/// Catalog cache: one lattice per line, written atomically via rename.
inline void save_catalog_slice(const std::string& path,
                               const std::vector<FiniteLattice>& slice) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    for (const auto& l : slice) out << lattice_to_json(l).dump() << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot move " + tmp + " into place");
}

inline std::optional<std::vector<FiniteLattice>> load_catalog_slice(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::vector<FiniteLattice> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(lattice_from_json(json::parse(line)));
  }
  return out;
}

}  // namespace conlat
