// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "octoverify/hemisphere.hpp"
#include "octoverify/report.hpp"
#include "octoverify/runner.hpp"

using namespace octoverify;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

bool passed(const VerificationReport& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  return c != nullptr && c->passed();
}

double detail(const VerificationReport& r, const std::string& check, const std::string& key) {
  const CheckResult* c = r.find(check);
  if (c == nullptr || !c->details.contains(key) || !c->details[key].is_number()) return NAN;
  return c->details[key].get<double>();
}

VerificationReport run_entry(const std::string& manifold, double h, std::vector<std::string> checks,
                             std::vector<int> grid = {}) {
  RunConfig cfg;
  cfg.manifold = manifold;
  cfg.h = h;
  cfg.grid = std::move(grid);
  cfg.checks = std::move(checks);
  return run(cfg);
}

// B*B Gram matrix of a product of round spheres in its radial normal frame:
// the normal space is {a : sum a_i r_i = 0} and G(a, b) = sum n_i a_i b_i / r_i^2.
Eigen::VectorXd product_gram_oracle(const std::vector<int>& dims) {
  const int m = static_cast<int>(dims.size());
  int d = 0;
  for (int n : dims) d += n;
  Eigen::VectorXd r(m), w(m);
  for (int i = 0; i < m; ++i) {
    r[i] = std::sqrt(static_cast<double>(dims[i]) / d);
    w[i] = dims[i] / (r[i] * r[i]);
  }
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(m, m) - r * r.transpose();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(proj);
  const Eigen::MatrixXd basis = Eigen::MatrixXd(qr.householderQ()).leftCols(m - 1);
  const Eigen::MatrixXd gram = basis.transpose() * w.asDiagonal() * basis;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues();
}

double eigenmap_ratio(const VerificationReport& coarse, const VerificationReport& fine, double& lo, double& hi) {
  lo = INFINITY;
  hi = -INFINITY;
  const std::size_t n = std::min(coarse.eigenmaps.size(), fine.eigenmaps.size());
  for (std::size_t j = 0; j < n; ++j) {
    const double q = coarse.eigenmaps[j].residual_l2 / fine.eigenmaps[j].residual_l2;
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return static_cast<double>(n);
}

}  // namespace

int main() {
  const std::vector<std::string> spectral = {"minimality", "parallelism", "isoparametric", "theorem2"};

  {
    const auto t0 = Clock::now();
    const VerificationReport r = run_entry("great:6", 1e-3, {"algebra"});
    const double t = seconds_since(t0);
    const CheckResult* a = r.find("algebra");
    const bool witness = a != nullptr && !a->details["zero_divisor"].is_null();
    verdict(1, passed(r, "algebra") && witness && t < 1.0,
            fmt("defect=%.2e witness=%g time=%.2fs", a ? a->max : NAN, witness ? 1.0 : 0.0, t));
  }

  std::vector<std::string> with_lemma = spectral;
  with_lemma.push_back("lemma");
  const auto t2 = Clock::now();
  const VerificationReport great6 = run_entry("great:6", 1e-3, with_lemma, {24});
  const double great6_time = seconds_since(t2);
  {
    const bool one = great6.eigenmaps.size() == 1 && std::abs(great6.eigenmaps[0].lambda - 6.0) < 1e-12;
    const double res = one ? great6.eigenmaps[0].residual_l2 : NAN;
    const CheckResult* lemma = great6.find("lemma");
    const double lres = lemma ? lemma->max : NAN;
    const double dirs = detail(great6, "lemma", "directions");
    verdict(2, one && res < 1e-4 && passed(great6, "lemma") && lres < 1e-4 && dirs == 20 && great6_time < 30.0,
            fmt("residual=%.2e lemma=%.2e over %g directions time=%.1fs", res, lres, dirs, great6_time));
  }

  const VerificationReport clifford = run_entry("product:3,3", 1e-3, spectral, {24});
  {
    const bool ok_spec = clifford.spectrum.has_value() && clifford.spectrum->base.size() == 1;
    const double s = ok_spec ? clifford.spectrum->base.sigma[0] : NAN;
    const double spread = ok_spec ? clifford.spectrum->sigma_spread : NAN;
    const bool one = clifford.eigenmaps.size() == 1 && std::abs(clifford.eigenmaps[0].lambda - 12.0) < 1e-8;
    const double res = one ? clifford.eigenmaps[0].residual_l2 : NAN;
    const double trace = std::sqrt(detail(clifford, "minimality", "trace_squared_max"));
    const double oracle = product_gram_oracle({3, 3})[0];
    verdict(3,
            std::abs(s - 6.0) < 1e-8 && std::abs(oracle - 6.0) < 1e-12 && spread < 1e-8 && res < 1e-4 &&
                trace < 1e-8,
            fmt("|S|^2=%.12f residual=%.2e trace=%.2e spread=%.1e", s, res, trace, spread));
  }

  const VerificationReport codim2 = run_entry("product:1,1,3", 1e-3, spectral);
  {
    const Eigen::VectorXd oracle = product_gram_oracle({1, 1, 3});
    double gram_dev = NAN, spread = NAN, comm = NAN;
    if (codim2.spectrum && codim2.spectrum->base.size() == 2) {
      gram_dev = (codim2.spectrum->base.gram - 5.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff();
      spread = codim2.spectrum->gram_spread;
      comm = codim2.spectrum->max_commutator;
    }
    bool lambdas = codim2.eigenmaps.size() == 2;
    double res = 0.0;
    for (const auto& e : codim2.eigenmaps) {
      lambdas = lambdas && std::abs(e.lambda - 10.0) < 1e-8;
      res = std::max(res, e.residual_l2);
    }
    const double odev = (oracle.array() - 5.0).abs().maxCoeff();
    verdict(4, gram_dev < 1e-8 && odev < 1e-12 && spread < 1e-8 && lambdas && res < 1e-4 && comm < 1e-8,
            fmt("|G-5I|=%.1e spread=%.1e residual=%.2e commutator=%.1e", gram_dev, spread, res, comm));
  }

  const std::string compose = "compose:great:3/product:1,1";
  std::vector<std::string> compose_checks = spectral;
  compose_checks.push_back("theorem1");
  compose_checks.push_back("corollary");
  const VerificationReport comp = run_entry(compose, 1e-3, compose_checks);
  {
    // Flat torus in S^3 inside S^7: four totally geodesic normals and one
    // with principal curvatures +-1, so sigma = (0,0,0,0,2), lambda = 2 + sigma.
    const std::vector<double> sigma_ref = {0, 0, 0, 0, 2};
    double sdev = INFINITY;
    if (comp.spectrum && comp.spectrum->base.size() == 5) {
      sdev = 0.0;
      for (int j = 0; j < 5; ++j) sdev = std::max(sdev, std::abs(comp.spectrum->base.sigma[j] - sigma_ref[j]));
    }
    bool lambdas = comp.eigenmaps.size() == 5;
    double res = 0.0;
    for (std::size_t j = 0; lambdas && j < 5; ++j) {
      lambdas = std::abs(comp.eigenmaps[j].lambda - (2.0 + sigma_ref[j])) < 1e-8;
      res = std::max(res, comp.eigenmaps[j].residual_l2);
    }
    const CheckResult* cor = comp.find("corollary");
    const double harm = cor ? cor->max : NAN;
    verdict(5, sdev < 1e-8 && lambdas && res < 1e-4 && passed(comp, "corollary") && harm < 1e-4,
            fmt("sigma dev=%.1e residual=%.2e harmonicity=%.2e", sdev, res, harm));
  }

  {
    double eig = NAN, harm = NAN;
    bool flagged = false;
    if (const CheckResult* t1 = comp.find("theorem1")) {
      for (const auto& row : t1->details["directions"]) {
        if (row["normal"] != "mixed") continue;
        eig = row["eigencheck_residual"].get<double>();
        harm = row["harmonicity_defect"].get<double>();
        flagged = !row["eigenvector"].get<bool>() && !row["eigenmap"].get<bool>() && !row["harmonic"].get<bool>();
      }
    }
    // |Gc - (c^T G c) c| for c = (e_0 + e_4)/sqrt2 and G = diag(0,0,0,0,2) is exactly 1.
    verdict(6, std::abs(eig - 1.0) < 1e-6 && harm > 0.1 && flagged && passed(comp, "theorem1"),
            fmt("eigencheck residual=%.8f harmonicity defect=%.3f", eig, harm));
  }

  RunConfig suite_cfg;
  suite_cfg.workers = 1;
  auto t9 = Clock::now();
  const std::vector<VerificationReport> serial = run_suite(suite_cfg);
  const double serial_time = seconds_since(t9);
  suite_cfg.workers = 8;
  t9 = Clock::now();
  const std::vector<VerificationReport> threaded = run_suite(suite_cfg);
  const double threaded_time = seconds_since(t9);

  {
    double worst_margin = -INFINITY, worst_mean = 0.0;
    int entries = 0;
    bool ok = true;
    for (const VerificationReport& r : serial) {
      if (!r.entry.minimal || r.entry.codim > 5) continue;
      ++entries;
      ok = ok && passed(r, "hemisphere") && !r.hemispheres.empty() &&
           r.hemispheres.size() == static_cast<std::size_t>(r.entry.codim);
      for (const HemisphereReport& h : r.hemispheres) {
        worst_margin = std::max(worst_margin, h.best_margin);
        worst_mean = std::max(worst_mean, h.mean_norm);
        ok = ok && h.best_margin <= 1e-3 && h.mean_norm < 1e-5;
      }
    }
    Vec8 e1 = Vec8::Zero();
    e1[1] = 1.0;
    const std::vector<Vec8> constant(64, e1);
    const std::vector<double> weights(64, 1.0);
    const HemisphereReport control = hemisphere_scan(constant, weights);
    const bool control_ok = std::abs(control.best_margin - 1.0) < 1e-12 && control.contained;
    verdict(7, ok && entries > 0 && control_ok,
            fmt("%g entries: max margin=%.2e max |mean|=%.1e; constant control margin=%.15f", entries, worst_margin,
                worst_mean, control.best_margin));
  }

  {
    double lo = 0, hi = 0, lo_all = INFINITY, hi_all = -INFINITY;
    bool ok = true;
    std::string parts;
    const std::vector<std::pair<std::string, const VerificationReport*>> cases = {
        {"great:6", &great6}, {"product:3,3", &clifford}, {"product:1,1,3", &codim2}};
    for (const auto& [name, fine] : cases) {
      const VerificationReport coarse = run_entry(name, 2e-3, spectral, fine->config.grid_requested);
      const double n = eigenmap_ratio(coarse, *fine, lo, hi);
      ok = ok && n > 0 && lo >= 3.5 && hi <= 4.5;
      lo_all = std::min(lo_all, lo);
      hi_all = std::max(hi_all, hi);
    }
    verdict(8, ok, fmt("residual ratio h=2e-3/h=1e-3 in [%.3f, %.3f]", lo_all, hi_all));
  }

  {
    const std::string a = suite_json(serial, false).dump();
    const std::string b = suite_json(threaded, false).dump();
    bool suite_ok = true;
    for (const VerificationReport& r : serial) suite_ok = suite_ok && !r.any_fail();
    verdict(9, a == b && suite_ok && serial_time < 600.0 && threaded_time < 600.0,
            fmt("identical=%g suite green=%g time workers=1 %.1fs workers=8 %.1fs", a == b ? 1.0 : 0.0,
                suite_ok ? 1.0 : 0.0, serial_time, threaded_time));
  }

  std::printf("%s\n", failures == 0 ? "ALL PASS" : "SOME CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
