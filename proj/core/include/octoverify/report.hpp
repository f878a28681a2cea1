#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "octoverify/gauss_map.hpp"
#include "octoverify/hemisphere.hpp"
#include "octoverify/shape_spectra.hpp"
#include "octoverify/tolerances.hpp"

namespace octoverify {

inline constexpr int kReportSchema = 1;

/// Verdict of one check. Everything other than "pass" carries a reason.
struct CheckResult {
  std::string name;
  std::string verdict = "skipped";  // pass | fail | refused | skipped
  std::string reason;
  double max = 0.0;  // largest residual over nodes
  double l2 = 0.0;   // quadrature-weighted L2 residual where meaningful
  std::size_t nodes = 0;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  double seconds = 0.0;

  bool passed() const { return verdict == "pass"; }
};

struct EntrySummary {
  std::string name;  // canonical spec
  int dim = 0;
  int codim = 0;
  bool minimal = false;
  bool isoparametric = false;
  bool compact = true;
  std::vector<double> radii;
  std::vector<int> grid;
  std::size_t nodes = 0;
  std::vector<std::string> hints;
};

struct ConfigEcho {
  std::string manifold;
  std::vector<int> grid_requested;
  double fd_step = 1e-3;
  bool richardson = false;
  std::uint64_t seed = 1;
  int hemisphere_candidates = 0;
  Tolerances tolerances;
  std::vector<std::string> checks;
};

struct VerificationReport {
  ConfigEcho config;
  EntrySummary entry;
  std::vector<CheckResult> checks;
  std::optional<ConstancyScan> spectrum;
  std::vector<EigenmapVerdict> eigenmaps;
  std::vector<HemisphereReport> hemispheres;
  double total_seconds = 0.0;

  const CheckResult* find(const std::string& name) const;
  bool any_fail() const;
};

nlohmann::ordered_json to_json(const GramSpectrum& spectrum, std::size_t node = 0);
nlohmann::ordered_json to_json(const EigenmapVerdict& verdict);
nlohmann::ordered_json to_json(const HemisphereReport& report);
nlohmann::ordered_json to_json(const CheckResult& check, bool timings = true);
/// Full report. Timings live under their own "timings" key and are left out
/// entirely when `timings` is false, so reports of identical runs compare
/// byte-for-byte.
nlohmann::ordered_json to_json(const VerificationReport& report, bool timings = true);
nlohmann::ordered_json suite_json(const std::vector<VerificationReport>& reports, bool timings = true);

/// Fixed-width human summary (one line per check).
std::string format_table(const VerificationReport& report);

}  // namespace octoverify
