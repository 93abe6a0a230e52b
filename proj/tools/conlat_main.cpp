// conlat: finite-lattice and congruence computations with a verification
// suite for the cube diagrams, their duals, the explicit lifting, and the
// non-lifting case analysis.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conlat/catalog.hpp"
#include "conlat/constructions.hpp"
#include "conlat/json_io.hpp"

namespace {

using namespace conlat;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("cannot parse " + path + ": " + e.what());
  }
}

void print_report(const Report& r, bool as_json) {
  if (as_json) {
    std::cout << report_to_json(r).dump(2) << "\n";
    return;
  }
  for (const auto& c : r.checks) {
    std::string line = "[";
    std::string st = to_string(c.status);
    for (char& ch : st) ch = static_cast<char>(std::toupper(ch));
    line += st + "] " + c.name;
    if (!c.witness.empty()) line += " -- " + c.witness;
    std::cout << line << "\n";
  }
  std::cout << r.command << ": "
            << (r.any_fail() ? "FAIL"
                             : (r.any_inconclusive() ? "INCONCLUSIVE" : "OK"))
            << " (" << r.timing_ms << " ms)\n";
}

Report run_verify(const std::string& target) {
  if (target == "dc") return verify_dc(build_dc());
  if (target == "dac") return verify_dac(build_dac());
  if (target == "duals") return dual_tables_dc(build_dc());
  if (target == "lifting") {
    Report r = verify_lifting(build_lifting(), build_dc());
    const Report audit = permutability_audit(build_lifting());
    for (const auto& c : audit.checks) r.checks.push_back(c);
    return r;
  }
  if (target == "triangle") return verify_m3_lifting();
  if (target == "cases") {
    Report r = case_table_check(build_dc());
    const Report dac = case_table_check(build_dac());
    for (const auto& c : dac.checks) r.checks.push_back(c);
    r.command = "verify cases";
    return r;
  }
  throw ParseError("unknown verification target: " + target);
}

Report run_con(const std::string& file, bool as_json) {
  const json j = load_json_file(file);
  const FiniteLattice l = lattice_from_json(j);
  l.validate();
  const ConLattice con = con_lattice(l);
  Report r;
  r.command = "con " + file;
  r.add_status("|Con " + (l.name.empty() ? "L" : l.name) + "| = " +
                   std::to_string(con.size()),
               CheckStatus::Pass);
  r.add_status(std::string("distributive = ") +
                   (is_distributive(con.lattice_of_congruences) ? "true"
                                                                : "false"),
               CheckStatus::Pass);
  r.add_status("coatoms = " + std::to_string(coatoms(con).size()),
               CheckStatus::Pass);
  r.add_status(std::string("simple = ") + (con.size() == 2 ? "true" : "false"),
               CheckStatus::Pass);
  if (as_json) {
    json blocks = json::array();
    for (const auto& c : con.congruence_of)
      blocks.push_back(congruence_to_json(c, l.name));
    r.add_status("congruences", CheckStatus::Pass, blocks.dump());
  }
  return r;
}

Report run_permutable(const std::string& file) {
  const json j = load_json_file(file);
  const FiniteLattice l = lattice_from_json(j);
  l.validate();
  const ConLattice con = con_lattice(l);
  Report r;
  r.command = "permutable " + file;
  const auto perm = has_permutable_congruences(l, con);
  std::string witness;
  if (!perm.holds) {
    witness = "congruence pair (" +
              std::to_string(perm.witness_congruences->first) + "," +
              std::to_string(perm.witness_congruences->second) +
              "), element pair (" +
              std::to_string(perm.witness_elements->first) + "," +
              std::to_string(perm.witness_elements->second) + ")";
  }
  r.add_status(std::string("permutable = ") + (perm.holds ? "true" : "false"),
               CheckStatus::Pass, witness);
  const auto almost = has_almost_permutable_congruences(l, con);
  r.add_status(std::string("almost permutable = ") +
                   (almost.holds ? "true" : "false"),
               CheckStatus::Pass);
  const auto crit = permutable_via_criterion(l);
  r.add("criterion agrees with the definition", crit.holds == perm.holds);
  return r;
}

Report run_urp(const std::string& file, const std::string& family_file,
               bool minus, std::uint64_t budget) {
  const FiniteJoinSemilattice0 s = semilattice_from_json(load_json_file(file));
  s.validate();
  const FamilyInput fam = family_from_json(load_json_file(family_file));
  for (auto [a, b] : fam.pairs)
    if (a < 0 || a >= s.size || b < 0 || b >= s.size)
      throw ParseError("family element out of range");
  if (fam.epsilon < 0 || fam.epsilon >= s.size)
    throw ParseError("epsilon out of range");
  for (auto [a, b] : fam.pairs)
    if (s.join(a, b) != fam.epsilon)
      throw ParseError("family pair does not join to epsilon");
  Report r;
  r.command = std::string("urp") + (minus ? " --minus" : "");
  UrpOutcome out;
  if (minus)
    out = check_urp1_minus_at(s, fam.epsilon, fam.pairs, budget, fam.subset_x);
  else
    out = check_urp1_at(s, fam.epsilon, fam.pairs, budget);
  const std::string which = minus ? "URP1- holds at the family"
                                  : "URP1 holds at the family";
  if (out.status == SearchStatus::Found) {
    json w;
    json starred = json::array();
    for (auto [a, b] : out.witness->starred) starred.push_back({a, b});
    w["starred"] = std::move(starred);
    w["gamma"] = out.witness->gamma;
    if (out.witness->subset_x) w["X"] = *out.witness->subset_x;
    r.add_status(which, CheckStatus::Pass, w.dump());
  } else if (out.status == SearchStatus::NotFound) {
    r.add_status(which, CheckStatus::Fail,
                 "complete search exhausted with no witness");
  } else {
    r.add_status(which, CheckStatus::Inconclusive,
                 "budget of " + std::to_string(budget) + " nodes exceeded");
  }
  return r;
}

Report run_catalog(int max_n, const std::string& suite, int jobs) {
  Report r;
  r.command = "catalog " + std::to_string(max_n);
  Catalog cat;
  const char* cache_dir = std::getenv("CONLAT_CACHE_DIR");
  for (int n = 1; n <= max_n; ++n) {
    std::vector<FiniteLattice> slice;
    bool loaded = false;
    std::string path;
    if (cache_dir) {
      path = std::string(cache_dir) + "/lattices_" + std::to_string(n) +
             ".jsonl";
      if (auto cached = load_catalog_slice(path)) {
        slice = std::move(*cached);
        loaded = true;
      }
    }
    if (!loaded) {
      slice = enumerate_lattices(n);
      if (cache_dir) save_catalog_slice(path, slice);
    }
    r.add_status("lattices of size " + std::to_string(n) + ": " +
                     std::to_string(slice.size()) +
                     (loaded ? " (cached)" : ""),
                 CheckStatus::Pass);
    cat.by_size.push_back(std::move(slice));
  }
  if (!suite.empty()) {
    std::vector<std::string> suites;
    if (suite == "all")
      suites = all_suites();
    else
      suites.push_back(suite);
    for (const auto& s : suites) {
      const Report sub = run_property_suite(s, cat, jobs);
      for (const auto& c : sub.checks) r.checks.push_back(c);
    }
  }
  return r;
}

Report run_search_lifting(const std::string& file, int max_size,
                          bool require_iso_lift) {
  const SemilatticeDiagram target =
      semilattice_diagram_from_json(load_json_file(file));
  Report r;
  r.command = "search-lifting " + file;
  const auto result = search_liftings(target, max_size, require_iso_lift);
  if (result.found) {
    std::string objs;
    for (int i = 0; i < result.lifting->index.size(); ++i) {
      if (i) objs += ", ";
      objs += result.lifting->index.objects[i] + ": " +
              result.lifting->object_at[i].name + " (" +
              std::to_string(result.lifting->object_at[i].size) + " elements)";
    }
    r.add_status("lifting found", CheckStatus::Pass, objs);
  } else {
    r.add_status("no lifting within size bound " + std::to_string(max_size),
                 CheckStatus::Inconclusive,
                 std::to_string(result.candidates_tried) +
                     " full assignments checked");
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite lattice congruence toolkit"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the report as JSON");

  auto* verify = app.add_subcommand("verify", "run a named verification");
  std::string verify_target;
  verify->add_option("target", verify_target,
                     "dc | dac | duals | lifting | triangle | cases")
      ->required();

  auto* con = app.add_subcommand("con", "congruence lattice of a lattice file");
  std::string con_file;
  con->add_option("file", con_file, "lattice JSON file")->required();

  auto* permutable =
      app.add_subcommand("permutable", "permutability of a lattice file");
  std::string perm_file;
  permutable->add_option("file", perm_file, "lattice JSON file")->required();

  auto* urp = app.add_subcommand("urp", "uniform refinement check");
  std::string urp_file, urp_family;
  bool urp_minus = false;
  std::uint64_t urp_budget = kDefaultUrpBudget;
  urp->add_option("file", urp_file, "semilattice JSON file")->required();
  urp->add_option("--family", urp_family, "family JSON file")->required();
  urp->add_flag("--minus", urp_minus, "check the weakened property");
  urp->add_option("--budget", urp_budget, "search node budget");

  auto* catalog = app.add_subcommand("catalog", "enumerate small lattices");
  int catalog_n = kCatalogDefault;
  std::string catalog_suite;
  int catalog_jobs = 1;
  catalog->add_option("n", catalog_n, "maximum size")->required();
  catalog->add_option("--suite", catalog_suite,
                      "property suite to run (or 'all')");
  catalog->add_option("--jobs", catalog_jobs, "worker threads");

  auto* search = app.add_subcommand("search-lifting",
                                    "bounded lifting search for a diagram");
  std::string search_file;
  int search_max = 5;
  bool search_iso = false;
  search->add_option("file", search_file, "semilattice diagram JSON file")
      ->required();
  search->add_option("--max-size", search_max, "largest lattice size")
      ->required();
  search->add_flag("--require-iso-lift", search_iso,
                   "isomorphism target arrows must lift to isomorphisms");

  for (auto* sub : {verify, con, permutable, urp, catalog, search})
    sub->add_flag("--json", as_json, "emit the report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    if (*verify)
      r = run_verify(verify_target);
    else if (*con)
      r = run_con(con_file, as_json);
    else if (*permutable)
      r = run_permutable(perm_file);
    else if (*urp)
      r = run_urp(urp_file, urp_family, urp_minus, urp_budget);
    else if (*catalog)
      r = run_catalog(catalog_n, catalog_suite, catalog_jobs);
    else if (*search)
      r = run_search_lifting(search_file, search_max, search_iso);
    const auto stop = std::chrono::steady_clock::now();
    r.timing_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    print_report(r, as_json);
    return r.exit_code();
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
