#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crpssa {

struct SelftestOptions {
  int threads = 1;
};

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

// Runs one acceptance criterion (1..11).
CriterionResult run_criterion(int id, const SelftestOptions& options = {});

// Runs every criterion, printing one line per criterion to `log` as it finishes.
std::vector<CriterionResult> run_acceptance(const SelftestOptions& options, std::ostream& log);

std::string format_result(const CriterionResult& result);

}  // namespace crpssa
