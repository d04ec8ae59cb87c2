#pragma once

#include <string>
#include <vector>

namespace nets {

// One validation check: named, pass/fail, with the numerical residual and
// the tolerance it was compared against (0/0 for purely structural checks).
struct Check {
  std::string name;
  bool pass = true;
  double residual = 0.0;
  double tol = 0.0;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void add(std::string name, bool pass, double residual = 0.0, double tol = 0.0,
           std::string detail = {}) {
    checks.push_back({std::move(name), pass, residual, tol, std::move(detail)});
  }

  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  // First failing check, or nullptr.
  const Check* firstFailure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
};

}  // namespace nets
