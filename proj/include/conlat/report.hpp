#pragma once

#include <string>
#include <vector>

namespace conlat {

enum class CheckStatus { Pass, Fail, Inapplicable, Inconclusive };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inapplicable: return "inapplicable";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string witness;  // human-readable payload, empty if none
};

struct Report {
  std::string command;
  std::vector<Check> checks;
  double timing_ms = 0;

  void add(std::string name, bool ok, std::string witness = {}) {
    checks.push_back(
        {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail,
         std::move(witness)});
  }
  void add_status(std::string name, CheckStatus st, std::string witness = {}) {
    checks.push_back({std::move(name), st, std::move(witness)});
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail || c.status == CheckStatus::Inconclusive)
        return false;
    return true;
  }
  bool any_fail() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return true;
    return false;
  }
  bool any_inconclusive() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Inconclusive) return true;
    return false;
  }

  // 0 all pass; 1 a verified property failed; 3 inconclusive (budget)
  int exit_code() const {
    if (any_fail()) return 1;
    if (any_inconclusive()) return 3;
    return 0;
  }
};

}  // namespace conlat
