#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hardyliou::cli {

struct Criterion {
  int id = 0;
  std::string name;
  bool pass = false;
  double value = 0.0;      // worst observed quantity
  double tolerance = 0.0;
  std::string formula;     // how value is compared against tolerance
  std::string detail;
};

inline constexpr int kCriterionCount = 13;

/// Runs one criterion. Exceptions inside a criterion turn into a failing result.
Criterion run_criterion(int id, std::uint64_t seed = 0);
std::vector<Criterion> run_acceptance(std::uint64_t seed = 0);

std::string summary_line(const Criterion& c);

}  // namespace hardyliou::cli
