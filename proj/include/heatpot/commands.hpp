#pragma once

// Command implementations behind the heatpot CLI. Each returns a JSON report
// whose "timings" member is the only nondeterministic part.

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "heatpot/scenario.hpp"

namespace heatpot {

inline constexpr int kReportSchemaVersion = 1;

struct CommandResult {
  nlohmann::json report;
  std::string csv;
  bool passed = false;
};

/// CSV rows of eps_{m,n}, its gradient and normal derivative for every (x, t).
std::string kernel_eval_csv(int m, int n, const std::vector<SpaceVec>& xs,
                            const std::vector<double>& ts, const SpaceVec& normal);

/// Transparent-condition residuals at the bundled resolution and `refinement_levels` finer ones.
CommandResult run_verify_theorem1(const Scenario& s, const PotentialOptions& opts = {});

/// Green-function solution at probe points, cross-checked against Crank-Nicolson.
/// An empty probe list selects the default 9-point grid.
CommandResult run_solve_theorem2(const Scenario& s,
                                 std::vector<std::pair<SpaceVec, double>> probes = {},
                                 const PotentialOptions& opts = {});

/// Direct potential against the cascade construction at seeded probes.
CommandResult run_compare_oracle(const Scenario& s, const PotentialOptions& opts = {});

/// 3 x 3 probe grid: interval -> 3 points x 3 times, rectangle -> 3 x 3 points at T.
std::vector<std::pair<SpaceVec, double>> default_theorem2_probes(const Scenario& s);

}  // namespace heatpot
