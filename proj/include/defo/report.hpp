#pragma once

#include <string>
#include <vector>

namespace defo {

struct CheckResult {
  std::string name;
  std::string sample;
  bool pass = true;
  std::string detail;  ///< counterexample payload on failure
};

struct Report {
  std::vector<CheckResult> checks;

  void add(std::string name, std::string sample, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), std::move(sample), pass, std::move(detail)});
  }
  void append(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.pass ? 0 : 1;
    return n;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
};

}  // namespace defo
