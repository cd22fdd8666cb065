#pragma once

#include <string>
#include <vector>

namespace bfly {

/// Named pass/fail results of a batch of identity checks.
struct CheckReport {
  std::vector<std::string> passed;
  std::vector<std::string> failed;

  bool ok() const { return failed.empty(); }
  void expect(bool condition, std::string name) {
    (condition ? passed : failed).push_back(std::move(name));
  }
  void merge(const CheckReport& other, const std::string& prefix = {}) {
    for (const auto& p : other.passed) passed.push_back(prefix + p);
    for (const auto& f : other.failed) failed.push_back(prefix + f);
  }
};

}  // namespace bfly
