#include "octoverify/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "octoverify/version.hpp"

namespace octoverify {

namespace {

using json = nlohmann::ordered_json;

json matrix_json(const SmallMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename V>
json vector_json(const V& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool VerificationReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.verdict == "fail"; });
}

json to_json(const GramSpectrum& s, std::size_t node) {
  json j;
  j["node"] = node;
  j["gram"] = matrix_json(s.gram);
  j["sigma"] = vector_json(s.sigma);
  // vectors[j] is the j-th eigenvector (a coefficient column of the frame)
  j["vectors"] = matrix_json(s.vectors.transpose());
  j["multiplicities"] = s.multiplicities;
  return j;
}

json to_json(const EigenmapVerdict& v) {
  json j;
  j["j"] = v.j;
  j["sigma"] = v.sigma;
  j["lambda"] = v.lambda;
  j["residual_l2"] = v.residual_l2;
  j["residual_max"] = v.residual_max;
  j["tangency_defect"] = v.tangency_defect;
  j["component_residuals"] = v.component_residuals;
  j["nodes"] = v.nodes;
  j["pass"] = v.pass;
  return j;
}

json to_json(const HemisphereReport& r) {
  json j;
  j["entry"] = r.entry;
  j["normal_label"] = r.normal_label;
  j["samples"] = r.samples;
  j["candidates"] = r.candidates;
  j["mean_vector"] = vector_json(r.mean_vector);
  j["mean_norm"] = r.mean_norm;
  j["best_margin"] = r.best_margin;
  j["best_direction"] = vector_json(r.best_direction);
  j["generator"] = r.generator;
  j["seed"] = r.seed;
  j["verdict"] = r.verdict;
  return j;
}

json to_json(const CheckResult& c, bool timings) {
  json j;
  j["name"] = c.name;
  j["verdict"] = c.verdict;
  if (!c.reason.empty()) j["reason"] = c.reason;
  j["max"] = c.max;
  j["l2"] = c.l2;
  j["nodes"] = c.nodes;
  j["details"] = c.details;
  if (timings) j["seconds"] = c.seconds;
  return j;
}

json to_json(const VerificationReport& r, bool timings) {
  json j;
  j["schema"] = kReportSchema;
  j["tool"] = "octoverify";
  j["version"] = kVersion;

  json cfg;
  cfg["manifold"] = r.config.manifold;
  cfg["grid_requested"] = r.config.grid_requested;
  cfg["fd_step"] = r.config.fd_step;
  cfg["richardson"] = r.config.richardson;
  cfg["seed"] = r.config.seed;
  cfg["hemisphere_candidates"] = r.config.hemisphere_candidates;
  json tol = json::object();
  for (const auto& [name, value] : r.config.tolerances.as_map()) tol[name] = value;
  cfg["tolerances"] = tol;
  cfg["checks"] = r.config.checks;
  j["config"] = cfg;

  json e;
  e["name"] = r.entry.name;
  e["dim"] = r.entry.dim;
  e["codim"] = r.entry.codim;
  e["minimal"] = r.entry.minimal;
  e["isoparametric"] = r.entry.isoparametric;
  e["compact"] = r.entry.compact;
  e["radii"] = r.entry.radii;
  e["grid"] = r.entry.grid;
  e["nodes"] = r.entry.nodes;
  e["hints"] = r.entry.hints;
  j["entry"] = e;

  json checks = json::array();
  for (const CheckResult& c : r.checks) checks.push_back(to_json(c, false));
  j["checks"] = checks;

  if (r.spectrum) {
    json s = to_json(r.spectrum->base, 0);
    s["gram_spread"] = r.spectrum->gram_spread;
    s["sigma_spread"] = r.spectrum->sigma_spread;
    s["principal_spread"] = r.spectrum->principal_spread;
    s["max_commutator"] = r.spectrum->max_commutator;
    s["scanned_nodes"] = r.spectrum->nodes;
    j["spectrum"] = s;
  } else {
    j["spectrum"] = nullptr;
  }

  json eig = json::array();
  for (const EigenmapVerdict& v : r.eigenmaps) eig.push_back(to_json(v));
  j["eigenmaps"] = eig;

  json hemi = json::array();
  for (const HemisphereReport& h : r.hemispheres) hemi.push_back(to_json(h));
  j["hemisphere"] = hemi;

  j["status"] = r.any_fail() ? "fail" : "ok";
  if (timings) {
    json t = json::object();
    for (const CheckResult& c : r.checks) t[c.name] = c.seconds;
    t["total"] = r.total_seconds;
    j["timings"] = t;
  }
  return j;
}

json suite_json(const std::vector<VerificationReport>& reports, bool timings) {
  json j;
  j["schema"] = kReportSchema;
  j["tool"] = "octoverify";
  j["version"] = kVersion;
  json entries = json::array();
  std::size_t failed = 0;
  double total = 0.0;
  for (const VerificationReport& r : reports) {
    entries.push_back(to_json(r, false));
    if (r.any_fail()) ++failed;
    total += r.total_seconds;
  }
  j["entries"] = entries;
  j["summary"] = {{"entries", reports.size()}, {"failed", failed}};
  j["status"] = failed ? "fail" : "ok";
  if (timings) {
    json t = json::object();
    for (const VerificationReport& r : reports) t[r.entry.name] = r.total_seconds;
    t["total"] = total;
    j["timings"] = t;
  }
  return j;
}

std::string format_table(const VerificationReport& r) {
  std::ostringstream os;
  os << r.entry.name << "  (d=" << r.entry.dim << ", k=" << r.entry.codim << ", nodes=" << r.entry.nodes << ")\n";
  for (const CheckResult& c : r.checks) {
    os << "  " << std::left << std::setw(15) << c.name << std::setw(9) << c.verdict;
    if (c.verdict == "pass" || c.verdict == "fail") {
      os << "max=" << std::scientific << std::setprecision(3) << c.max << std::defaultfloat;
    }
    if (!c.reason.empty()) os << "  " << c.reason;
    os << '\n';
  }
  if (!r.eigenmaps.empty()) {
    os << "  eigenmaps:\n";
    for (const EigenmapVerdict& v : r.eigenmaps) {
      os << "    j=" << v.j << "  sigma=" << std::fixed << std::setprecision(6) << v.sigma << "  lambda=" << v.lambda
         << std::defaultfloat << "  residual=" << std::scientific << std::setprecision(3) << v.residual_l2
         << std::defaultfloat << (v.pass ? "  pass" : "  fail") << '\n';
    }
  }
  return os.str();
}

}  // namespace octoverify
