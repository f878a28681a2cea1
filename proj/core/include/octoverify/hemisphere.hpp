#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "octoverify/chart.hpp"

namespace octoverify {

struct HemisphereOptions {
  int candidate_budget = 4096;  // low-discrepancy directions in T_1 S^7
  std::uint64_t seed = 1;
  double tol = 1e-3;
  int workers = 1;
};

/// Result of searching for an open hemisphere of S^6 (the unit imaginary
/// octonions) containing the Gauss image. A direction v contains the image
/// iff min_j <gamma_j, v> > 0; best_margin is the largest such minimum found.
struct HemisphereReport {
  std::string entry;
  std::string normal_label;
  std::size_t samples = 0;
  std::size_t candidates = 0;
  Vec8 mean_vector = Vec8::Zero();  // sum w gamma / sum w
  double mean_norm = 0.0;
  double best_margin = 0.0;
  Vec8 best_direction = Vec8::Zero();
  std::string generator = "halton-box-muller";
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool contained = false;  // best_margin > tol
  std::string verdict;
};

/// Candidate directions: Halton points in [0,1)^8 mapped through Box-Muller
/// to Gaussians, imaginary part normalized. Deterministic in (count, seed).
std::vector<Vec8> hemisphere_candidates(std::size_t count, std::uint64_t seed);

/// Scans the weighted samples. Candidates are the weighted mean direction,
/// every sample and its negation, then the low-discrepancy set. The result
/// does not depend on the worker count.
HemisphereReport hemisphere_scan(std::span<const Vec8> samples, std::span<const double> weights,
                                 const HemisphereOptions& options = {});

/// Samples gamma over the chart grid and scans. `codim` is the codimension
/// of M in S^7; codimension 6 (curves) and non-compact M are refused with
/// RefusedError.
HemisphereReport hemisphere_scan(const Chart& chart, const ChartField& gamma, int codim, bool compact,
                                 const HemisphereOptions& options = {});

/// |integral of gamma| / vol(M) over the grid.
double mean_zero_check(const Chart& chart, const ChartField& gamma, int workers = 1);

}  // namespace octoverify
