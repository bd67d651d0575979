#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evolab/json.hpp"

namespace evolab {

inline constexpr std::uint64_t kVerifyEnumerationBudget = 100'000'000;

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  Json details = Json::object();
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<CriterionResult> criteria;

  Json to_json() const;
};

// "oracle", "dimensions", "realizable", "agnostic", "flow".
std::vector<std::string> verify_suite_names();

SuiteResult run_verify_suite(const std::string& name,
                             std::uint64_t budget = kVerifyEnumerationBudget);

// Every suite in order, each executed twice; the trailing "determinism" suite
// holds the criterion that both executions produced byte-identical reports.
std::vector<SuiteResult> run_all_verify_suites(
    std::uint64_t budget = kVerifyEnumerationBudget);

}  // namespace evolab
