#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "maxwell/study.hpp"

namespace maxwell::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::int64_t max_dofs = kDefaultMaxDofs;
  int threads = 0;
  std::uint64_t seed = 20240601;
  std::ostream* log = nullptr;  // progress lines, optional
};

struct CriterionInfo {
  int id;
  const char* title;
};
const std::vector<CriterionInfo>& criteria();

/// Runs one exit criterion. Throws std::out_of_range for an unknown id.
CriterionResult run_criterion(int id, const Options& options);

/// One line per criterion: "[PASS] 3 title: detail (1.2 s)".
std::string format_result(const CriterionResult& result);

}  // namespace maxwell::acceptance
