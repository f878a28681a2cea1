#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "octoverify/catalog.hpp"
#include "octoverify/report.hpp"
#include "octoverify/tolerances.hpp"

namespace octoverify {

/// Check names in execution order.
const std::vector<std::string>& all_checks();

struct RunConfig {
  std::string manifold;
  std::vector<int> grid;  // empty: default for the dimension; one value: every axis
  double h = 1e-3;
  bool richardson = false;
  Tolerances tolerances;
  std::vector<std::string> checks;  // empty: all
  std::uint64_t seed = 1;
  int workers = 0;  // < 1: OCTOVERIFY_WORKERS, then 1
  int hemisphere_candidates = 4096;
  std::string residual_csv;  // per-node residual sidecar, written when non-empty

  /// Throws SpecError for resolution < 8, h outside [1e-6, 1e-1] or unknown checks.
  void validate() const;
};

/// Node counts per axis actually used for a d-dimensional entry.
std::vector<int> resolve_grid(const std::vector<int>& requested, int dim);

/// Runs the requested checks on config.manifold. Checks are ordered by their
/// dependencies; a check whose prerequisite did not pass is "skipped" with a
/// reason. Exceptions inside a check become a "fail" verdict.
VerificationReport run(const RunConfig& config);
/// Same, on an explicitly built model (custom submanifolds).
VerificationReport run(const RunConfig& config, const SubmanifoldModel& model);

/// Every catalog entry with all checks (config.manifold and config.checks are ignored).
std::vector<VerificationReport> run_suite(const RunConfig& config);

}  // namespace octoverify
