// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is non-zero if any selected criterion fails.

#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "maxwell/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite for the edge-element Maxwell solver"};
  std::vector<int> ids;
  maxwell::acceptance::Options options;
  bool verbose = false;
  app.add_option("--criterion", ids, "criterion ids to run (default: all)")->check(CLI::Range(1, 11));
  app.add_option("--max-dofs", options.max_dofs, "DOF cap per run");
  app.add_option("--threads", options.threads, "assembly threads (0: all cores)");
  app.add_flag("-v,--verbose", verbose, "print per-run progress");
  CLI11_PARSE(app, argc, argv);

  if (verbose) {
    options.log = &std::cerr;
  }
  if (ids.empty()) {
    for (const auto& c : maxwell::acceptance::criteria()) {
      ids.push_back(c.id);
    }
  }
  int failures = 0;
  for (const int id : ids) {
    const auto result = maxwell::acceptance::run_criterion(id, options);
    std::cout << maxwell::acceptance::format_result(result) << std::endl;
    failures += result.passed ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
