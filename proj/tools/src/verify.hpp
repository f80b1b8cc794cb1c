#pragma once

// The acceptance suite behind `eigenflat verify`. Reports contain no
// timings, so runs with any worker count print the same bytes.

#include <string>
#include <vector>

#include "eigenflat/counting.hpp"

namespace eigenflat::verify {

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  std::vector<std::string> details;
};

CriterionResult identity_suite(std::int64_t max_d = 400);
CriterionResult spot_values();
CriterionResult structural_suite(int draws_per_d = 20);
CriterionResult oracle_equivalence(const CountOptions& opt);
CriterionResult generic_convergence(const CountOptions& opt);
CriterionResult decagon_discrimination(const CountOptions& opt);
CriterionResult billiard_relation(const CountOptions& opt);

/// Criteria 1 to 7. Determinism is checked by comparing reports.
std::vector<CriterionResult> run_all(const CountOptions& opt);

/// One "criterion N: PASS|FAIL title" line per result, details indented.
std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace eigenflat::verify
