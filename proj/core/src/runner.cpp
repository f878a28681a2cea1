#include "octoverify/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "octoverify/errors.hpp"
#include "octoverify/gauss_map.hpp"
#include "octoverify/hemisphere.hpp"
#include "octoverify/octonion.hpp"
#include "octoverify/parallel.hpp"
#include "octoverify/shape_spectra.hpp"

namespace octoverify {

namespace {

using json = nlohmann::ordered_json;

const std::map<std::string, std::vector<std::string>>& dependencies() {
  static const std::map<std::string, std::vector<std::string>> deps = {
      {"algebra", {}},
      {"minimality", {}},
      {"parallelism", {}},
      {"isoparametric", {}},
      {"lemma", {"minimality", "parallelism"}},
      {"theorem1", {"minimality", "parallelism"}},
      {"theorem2", {"minimality", "isoparametric"}},
      {"corollary", {"minimality"}},
      {"hemisphere", {"theorem2"}},
  };
  return deps;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

/// Per-node geometric invariants shared by the minimality and parallelism checks.
struct NodeGeometry {
  double mean_curvature = 0.0;
  double trace_sq = 0.0;
  double asymmetry = 0.0;
  std::vector<double> normal_defect;  // per hint
};

class Runner {
 public:
  Runner(const RunConfig& cfg, const SubmanifoldModel& model)
      : cfg_(cfg), model_(model), workers_(resolve_workers(cfg.workers)) {
    chart_ = model.chart.with_grid(resolve_grid(cfg.grid, model.dim));
    lap_.h = cfg.h;
    lap_.richardson = cfg.richardson;
  }

  VerificationReport execute() {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.config.manifold = cfg_.manifold.empty() ? model_.name : cfg_.manifold;
    rep.config.grid_requested = cfg_.grid;
    rep.config.fd_step = cfg_.h;
    rep.config.richardson = cfg_.richardson;
    rep.config.seed = cfg_.seed;
    rep.config.hemisphere_candidates = cfg_.hemisphere_candidates;
    rep.config.tolerances = cfg_.tolerances;
    rep.config.checks = requested();

    rep.entry.name = model_.name;
    rep.entry.dim = model_.dim;
    rep.entry.codim = model_.codim;
    rep.entry.minimal = model_.minimal;
    rep.entry.isoparametric = model_.isoparametric;
    rep.entry.compact = model_.compact;
    for (const SphereFactor& f : model_.factors) rep.entry.radii.push_back(f.r);
    rep.entry.grid = chart_.samples();
    rep.entry.nodes = chart_.node_count();
    for (const AmbientField& f : model_.hints.fields) rep.entry.hints.push_back(f.label);

    for (const std::string& name : rep.config.checks) rep.checks.push_back(result(name));
    rep.spectrum = scan_;
    rep.eigenmaps = eigenmaps_;
    rep.hemispheres = hemispheres_;
    if (!cfg_.residual_csv.empty()) write_residual_csv(cfg_.residual_csv);
    rep.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }

 private:
  std::vector<std::string> requested() const {
    if (cfg_.checks.empty()) return all_checks();
    std::vector<std::string> out;
    for (const std::string& c : all_checks()) {
      if (std::find(cfg_.checks.begin(), cfg_.checks.end(), c) != cfg_.checks.end()) out.push_back(c);
    }
    return out;
  }

  const CheckResult& result(const std::string& name) {
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    CheckResult r;
    r.name = name;
    for (const std::string& dep : dependencies().at(name)) {
      const CheckResult& d = result(dep);
      if (!d.passed()) {
        r.verdict = "skipped";
        r.reason = dep + (d.verdict == "fail" ? " precondition failed" : " precondition not established");
        return done_.emplace(name, std::move(r)).first->second;
      }
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      dispatch(name, r);
    } catch (const RefusedError& e) {
      r.verdict = "refused";
      r.reason = e.what();
    } catch (const std::exception& e) {
      r.verdict = "fail";
      r.reason = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return done_.emplace(name, std::move(r)).first->second;
  }

  void dispatch(const std::string& name, CheckResult& r) {
    if (name == "algebra") return check_algebra(r);
    if (name == "minimality") return check_minimality(r);
    if (name == "parallelism") return check_parallelism(r);
    if (name == "isoparametric") return check_isoparametric(r);
    if (name == "lemma") return check_lemma(r);
    if (name == "theorem1") return check_theorem1(r);
    if (name == "theorem2") return check_theorem2(r);
    if (name == "corollary") return check_corollary(r);
    if (name == "hemisphere") return check_hemisphere(r);
    throw InvalidArgument("unknown check " + name);
  }

  static void verdict(CheckResult& r, bool ok, const std::string& why) {
    r.verdict = ok ? "pass" : "fail";
    if (!ok) r.reason = why;
  }

  // --- shared computations ---------------------------------------------------

  const std::vector<NodeGeometry>& geometry() {
    if (geometry_) return *geometry_;
    const auto& hints = model_.hints.fields;
    std::vector<NodeGeometry> g(chart_.node_count());
    parallel_for(g.size(), workers_, [&](std::size_t n) {
      const Coords u = chart_.node(n);
      const FrameField frames = frames_at(chart_, u, hints);
      NodeGeometry& ng = g[n];
      ng.mean_curvature = mean_curvature_vector(chart_, u).norm();
      for (const AmbientField& eta : hints) {
        const ShapeOperatorMatrix s = shape_operator(chart_, frames, eta, cfg_.h);
        ng.trace_sq += s.trace() * s.trace();
        ng.asymmetry = std::max(ng.asymmetry, s.asymmetry());
        ng.normal_defect.push_back(normal_connection_defect(chart_, frames, eta, cfg_.h));
      }
    });
    geometry_ = std::move(g);
    return *geometry_;
  }

  const ConstancyScan& scan() {
    if (!scan_) scan_ = constancy_scan(chart_, model_.hints, workers_, cfg_.h);
    return *scan_;
  }

  /// B*B at the first node (constancy is the isoparametric check's business).
  const GramSpectrum& base_spectrum() {
    if (scan_) return scan_->base;
    if (!base_) {
      const FrameField frames = frames_at(chart_, chart_.node(0), model_.hints.fields);
      base_ = gram_spectrum(chart_, frames, model_.hints.fields, cfg_.h);
    }
    return *base_;
  }

  const DirectionSweep& sweep(const SmallVec& c, const std::string& label) {
    std::vector<double> key(c.data(), c.data() + c.size());
    if (auto it = sweeps_.find(key); it != sweeps_.end()) return it->second;
    const AmbientField eta = combine_normals(model_.hints.fields, c, label);
    return sweeps_.emplace(std::move(key), sweep_direction(chart_, eta, lap_, workers_)).first->second;
  }

  SmallVec unit_coeffs(int i) const {
    return SmallVec::Unit(static_cast<Eigen::Index>(model_.hints.size()), i);
  }

  static double max_harmonic_defect(const DirectionSweep& s) {
    double worst = 0.0;
    for (std::size_t n = 0; n < s.gamma.size(); ++n) {
      if (s.eligible[n]) worst = std::max(worst, harmonicity_defect(s.gamma[n], s.laplacian[n]));
    }
    return worst;
  }

  // --- checks ----------------------------------------------------------------

  void check_algebra(CheckResult& r) {
    const Tolerances& tol = cfg_.tolerances;
    std::mt19937_64 rng(cfg_.seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    auto draw = [&] {
      Vec8 v;
      for (int i = 0; i < 8; ++i) v[i] = coord(rng);
      return v;
    };
    constexpr int kPairs = 10000;
    double norm_law = 0.0, alternative = 0.0, inverse = 0.0;
    using octonion::mul;
    for (int t = 0; t < kPairs; ++t) {
      const Vec8 x = draw();
      const Vec8 y = draw();
      const Vec8 xy = mul(x, y);
      norm_law = std::max(norm_law, std::abs(xy.norm() - x.norm() * y.norm()));
      alternative = std::max(alternative, (mul(mul(x, x), y) - mul(x, xy)).norm());
      alternative = std::max(alternative, (mul(mul(y, x), x) - mul(y, mul(x, x))).norm());
      const Vec8 xi = octonion::inverse(x);
      inverse = std::max(inverse, (mul(xi, xy) - y).norm());
      inverse = std::max(inverse, (mul(mul(y, x), xi) - y).norm());
    }
    r.max = std::max({norm_law, alternative, inverse});
    r.nodes = kPairs;
    r.details["pairs"] = kPairs;
    r.details["norm_law"] = norm_law;
    r.details["alternativity"] = alternative;
    r.details["inverse"] = inverse;

    // Sedenion zero divisor among (e_a +- e_b)(e_c +- e_d).
    std::optional<std::pair<CDElement, CDElement>> witness;
    for (int a = 1; a < 16 && !witness; ++a) {
      for (int b = a + 1; b < 16 && !witness; ++b) {
        for (int c = 1; c < 16 && !witness; ++c) {
          for (int d = c + 1; d < 16 && !witness; ++d) {
            for (double s : {1.0, -1.0}) {
              const CDElement x = CDElement::basis(4, a) + CDElement::basis(4, b);
              const CDElement y = CDElement::basis(4, c) + CDElement::basis(4, d) * s;
              if ((x * y).norm() == 0.0) {
                witness.emplace(x, y);
                break;
              }
            }
          }
        }
      }
    }
    if (witness) {
      r.details["zero_divisor"] = {{"x", std::vector<double>(witness->first.coords().begin(), witness->first.coords().end())},
                                   {"y", std::vector<double>(witness->second.coords().begin(), witness->second.coords().end())}};
    } else {
      r.details["zero_divisor"] = nullptr;
    }
    if (!witness) {
      verdict(r, false, "no sedenion zero divisor found");
    } else {
      verdict(r, r.max < tol.algebra, "octonion identity defect " + format_double(r.max) + " exceeds tolerance");
    }
  }

  void check_minimality(CheckResult& r) {
    const auto& g = geometry();
    double trace_sq = 0.0;
    double asym = 0.0;
    double sum = 0.0;
    for (const NodeGeometry& n : g) {
      r.max = std::max(r.max, n.mean_curvature);
      trace_sq = std::max(trace_sq, n.trace_sq);
      asym = std::max(asym, n.asymmetry);
      sum += n.mean_curvature * n.mean_curvature;
    }
    r.nodes = g.size();
    r.l2 = std::sqrt(sum / static_cast<double>(std::max<std::size_t>(1, g.size())));
    r.details["mean_curvature_max"] = r.max;
    r.details["trace_squared_max"] = trace_sq;
    r.details["shape_asymmetry_max"] = asym;
    const double tol = cfg_.tolerances.geometry;
    verdict(r, r.max < tol && trace_sq < tol,
            "mean curvature |H| = " + format_double(r.max) + " is not zero (non-minimal)");
  }

  void check_parallelism(CheckResult& r) {
    const auto& g = geometry();
    json per_hint = json::object();
    bool flags = true;
    for (std::size_t i = 0; i < model_.hints.size(); ++i) {
      double worst = 0.0;
      for (const NodeGeometry& n : g) worst = std::max(worst, n.normal_defect[i]);
      per_hint[model_.hints.fields[i].label] = worst;
      if (model_.hints.parallel[i]) r.max = std::max(r.max, worst);
      flags = flags && model_.hints.parallel[i];
    }
    r.nodes = g.size();
    r.details["normal_connection_defect"] = per_hint;
    r.details["all_flagged_parallel"] = flags;
    verdict(r, r.max < cfg_.tolerances.geometry,
            "normal connection defect " + format_double(r.max) + " of a parallel-flagged hint");
  }

  void check_isoparametric(CheckResult& r) {
    const ConstancyScan& s = scan();
    const Tolerances& tol = cfg_.tolerances;
    r.max = std::max(s.sigma_spread, s.principal_spread);
    r.nodes = s.nodes;
    r.details["gram_spread"] = s.gram_spread;
    r.details["sigma_spread"] = s.sigma_spread;
    r.details["principal_spread"] = s.principal_spread;
    r.details["max_commutator"] = s.max_commutator;
    const double min_sigma = s.base.sigma.size() ? s.base.sigma.minCoeff() : 0.0;
    r.details["min_sigma"] = min_sigma;
    if (s.sigma_spread >= tol.constancy || s.principal_spread >= tol.constancy) {
      verdict(r, false, "spectrum varies over M (spread " + format_double(r.max) + ")");
    } else if (s.max_commutator >= tol.geometry) {
      verdict(r, false, "shape operators do not commute (normal bundle not flat)");
    } else if (min_sigma < -tol.psd) {
      verdict(r, false, "Gram matrix is not positive semidefinite");
    } else {
      verdict(r, true, "");
    }
  }

  std::vector<Vec8> random_directions(int count) const {
    std::mt19937_64 rng(cfg_.seed + 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal;
    std::vector<Vec8> out;
    while (static_cast<int>(out.size()) < count) {
      Vec8 v;
      for (int i = 0; i < 8; ++i) v[i] = normal(rng);
      v[0] = 0.0;
      if (v.norm() > 1e-6) out.push_back(v.normalized());
    }
    return out;
  }

  void check_lemma(CheckResult& r) {
    const std::vector<Vec8> dirs = random_directions(20);
    const auto& hints = model_.hints.fields;
    json rows = json::array();
    for (int i = 0; i < static_cast<int>(hints.size()); ++i) {
      const DirectionSweep& s = sweep(unit_coeffs(i), hints[static_cast<std::size_t>(i)].label);
      std::vector<double> worst(chart_.node_count(), 0.0);
      parallel_for(chart_.node_count(), workers_, [&](std::size_t n) {
        if (!s.eligible[n]) return;
        const auto res = lemma_residuals(chart_, hints, i, dirs, chart_.node(n), lap_, &s.laplacian[n]);
        worst[n] = *std::max_element(res.begin(), res.end());
      });
      double hint_max = 0.0;
      for (double w : worst) hint_max = std::max(hint_max, w);
      rows.push_back({{"normal", hints[static_cast<std::size_t>(i)].label}, {"max", hint_max}});
      r.max = std::max(r.max, hint_max);
      r.nodes = s.eligible_count;
    }
    r.details["directions"] = dirs.size();
    r.details["per_normal"] = rows;
    verdict(r, r.max < cfg_.tolerances.lemma, "Laplacian formula residual " + format_double(r.max));
  }

  /// Eigenvector, eigenmap and harmonicity conditions for one normal direction, evaluated independently.
  json equivalence_row(const SmallVec& c, const std::string& label, bool& consistent, double& worst) {
    const Tolerances& tol = cfg_.tolerances;
    const GramSpectrum& spec = base_spectrum();
    const EigenCheck ec = bstarb_eigencheck(spec, c, tol.eigencheck);
    const double lambda = 7.0 - model_.codim + ec.eigenvalue;
    const DirectionSweep& s = sweep(c, label);
    const EigenmapVerdict ev = eigenmap_residual(s, lambda, tol.eigenmap);
    const double hd = max_harmonic_defect(s);
    const bool harmonic = hd < tol.harmonic;
    const bool ok = (ec.is_eigenvector == ev.pass) && (ev.pass == harmonic);
    consistent = consistent && ok;
    if (ec.is_eigenvector) worst = std::max(worst, ev.residual_l2);
    json row;
    row["normal"] = label;
    row["coefficients"] = std::vector<double>(c.data(), c.data() + c.size());
    row["eigencheck_residual"] = ec.residual;
    row["norm_squared"] = ec.eigenvalue;
    row["lambda"] = lambda;
    row["eigenmap_residual"] = ev.residual_l2;
    row["harmonicity_defect"] = hd;
    row["eigenvector"] = ec.is_eigenvector;
    row["eigenmap"] = ev.pass;
    row["harmonic"] = harmonic;
    row["consistent"] = ok;
    r_nodes_ = s.eligible_count;
    return row;
  }

  void check_theorem1(CheckResult& r) {
    const auto& hints = model_.hints.fields;
    json rows = json::array();
    bool consistent = true;
    double worst = 0.0;
    for (int i = 0; i < static_cast<int>(hints.size()); ++i) {
      if (!model_.hints.parallel[static_cast<std::size_t>(i)]) continue;
      rows.push_back(equivalence_row(unit_coeffs(i), hints[static_cast<std::size_t>(i)].label, consistent, worst));
    }
    // A direction mixing the extreme eigenvalues at 45 degrees is not an
    // eigenvector, so neither the eigenmap nor the harmonic property may hold.
    const GramSpectrum& spec = base_spectrum();
    if (spec.multiplicities.size() >= 2) {
      const SmallVec c = (spec.vectors.col(0) + spec.vectors.col(spec.size() - 1)) / std::numbers::sqrt2;
      rows.push_back(equivalence_row(c, "mixed", consistent, worst));
    }
    r.max = worst;
    r.nodes = r_nodes_;
    r.details["directions"] = rows;
    verdict(r, consistent, "eigenvector, eigenmap and harmonicity verdicts disagree");
  }

  void check_theorem2(CheckResult& r) {
    const ConstancyScan& s = scan();
    const GramSpectrum& spec = s.base;
    const Tolerances& tol = cfg_.tolerances;
    bool ok = true;
    double sigma_identity = 0.0;
    eigenmaps_.clear();
    for (int j = 0; j < spec.size(); ++j) {
      const SmallVec c = spec.vectors.col(j);
      const DirectionSweep& sw = sweep(c, "eta_" + std::to_string(j + 1));
      EigenmapVerdict v = eigenmap_residual(sw, 7.0 - model_.codim + spec.sigma[j], tol.eigenmap);
      v.j = j;
      v.sigma = spec.sigma[j];
      sigma_identity = std::max(sigma_identity, std::abs(spec.sigma[j] - c.dot(spec.gram * c)));
      ok = ok && v.pass;
      r.max = std::max(r.max, v.residual_l2);
      r.l2 = std::max(r.l2, v.residual_l2);
      r.nodes = v.nodes;
      eigenmaps_.push_back(v);
    }
    r.details["sigma_norm_identity"] = sigma_identity;
    ok = ok && sigma_identity < tol.geometry;
    verdict(r, ok, "eigenmap residual " + format_double(r.max) + " exceeds tolerance");
  }

  void check_corollary(CheckResult& r) {
    if (!model_.hypersurface_normal) {
      r.verdict = "skipped";
      r.reason = "not a hypersurface of a great sphere";
      return;
    }
    const int i = *model_.hypersurface_normal;
    const auto& label = model_.hints.fields[static_cast<std::size_t>(i)].label;
    const DirectionSweep& s = sweep(unit_coeffs(i), label);
    r.max = max_harmonic_defect(s);
    r.nodes = s.eligible_count;
    r.details["normal"] = label;
    r.details["sphere_dim"] = model_.hypersurface_sphere_dim;
    verdict(r, r.max < cfg_.tolerances.harmonic, "harmonicity defect " + format_double(r.max));
  }

  void check_hemisphere(CheckResult& r) {
    if (model_.codim == 6) {
      throw RefusedError("hemisphere statement covers codimension 1 <= k <= 5; k = 6 is outside its hypothesis");
    }
    if (!model_.compact) throw RefusedError("hemisphere statement requires a compact submanifold");
    const Tolerances& tol = cfg_.tolerances;
    const GramSpectrum& spec = scan().base;
    HemisphereOptions opts;
    opts.candidate_budget = cfg_.hemisphere_candidates;
    opts.seed = cfg_.seed;
    opts.tol = tol.hemisphere;
    opts.workers = workers_;
    bool ok = true;
    double mean_zero = 0.0;
    r.max = -std::numeric_limits<double>::infinity();
    hemispheres_.clear();
    for (int j = 0; j < spec.size(); ++j) {
      const std::string label = "eta_" + std::to_string(j + 1);
      const DirectionSweep& s = sweep(spec.vectors.col(j), label);
      HemisphereReport h = hemisphere_scan(s.gamma, s.weights, opts);
      h.entry = model_.name;
      h.normal_label = label;
      const double lambda = 7.0 - model_.codim + spec.sigma[j];
      if (lambda > 0.0) {
        mean_zero = std::max(mean_zero, h.mean_norm);
        ok = ok && h.mean_norm < tol.mean_zero;
      }
      ok = ok && !h.contained;
      r.max = std::max(r.max, h.best_margin);
      r.nodes = h.samples;
      hemispheres_.push_back(std::move(h));
    }
    r.details["mean_zero_max"] = mean_zero;
    r.details["candidate_budget"] = cfg_.hemisphere_candidates;
    verdict(r, ok, "Gauss image lies in an open hemisphere or has nonzero mean");
  }

  void write_residual_csv(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw InvalidArgument("cannot open " + path);
    os.precision(17);
    os << "node";
    for (int a = 0; a < chart_.dim(); ++a) os << ",u" << a;
    for (const EigenmapVerdict& v : eigenmaps_) os << ",eigenmap_" << v.j << ",harmonic_" << v.j;
    os << '\n';
    const GramSpectrum* spec = scan_ ? &scan_->base : nullptr;
    std::vector<const DirectionSweep*> sw;
    for (const EigenmapVerdict& v : eigenmaps_) sw.push_back(&sweep(spec->vectors.col(v.j), ""));
    for (std::size_t n = 0; n < chart_.node_count(); ++n) {
      os << n;
      const Coords u = chart_.node(n);
      for (int a = 0; a < chart_.dim(); ++a) os << ',' << u[a];
      for (std::size_t e = 0; e < eigenmaps_.size(); ++e) {
        const DirectionSweep& s = *sw[e];
        if (!s.eligible[n]) {
          os << ",,";
          continue;
        }
        const double lambda = eigenmaps_[e].lambda;
        os << ',' << (s.laplacian[n] + lambda * s.gamma[n]).norm() / lambda << ','
           << harmonicity_defect(s.gamma[n], s.laplacian[n]);
      }
      os << '\n';
    }
  }

  const RunConfig& cfg_;
  const SubmanifoldModel& model_;
  int workers_;
  Chart chart_;
  LaplaceOptions lap_;
  std::map<std::string, CheckResult> done_;
  std::optional<std::vector<NodeGeometry>> geometry_;
  std::optional<ConstancyScan> scan_;
  std::optional<GramSpectrum> base_;
  std::map<std::vector<double>, DirectionSweep> sweeps_;
  std::vector<EigenmapVerdict> eigenmaps_;
  std::vector<HemisphereReport> hemispheres_;
  std::size_t r_nodes_ = 0;
};

}  // namespace

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names = {"algebra", "minimality", "parallelism", "isoparametric", "lemma",
                                                 "theorem1", "theorem2", "corollary", "hemisphere"};
  return names;
}

void RunConfig::validate() const {
  for (int n : grid) {
    if (n < 8) throw SpecError("grid resolution must be at least 8 per axis (got " + std::to_string(n) + ")");
  }
  if (!(h >= 1e-6 && h <= 1e-1)) throw SpecError("finite-difference step must lie in [1e-6, 1e-1]");
  for (const std::string& c : checks) {
    if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end()) {
      throw SpecError("unknown check '" + c + "'");
    }
  }
  if (hemisphere_candidates < 0) throw SpecError("candidate budget must be non-negative");
}

std::vector<int> resolve_grid(const std::vector<int>& requested, int dim) {
  std::vector<int> samples;
  if (requested.empty()) {
    samples.assign(static_cast<std::size_t>(dim), default_grid(dim));
  } else if (requested.size() == 1) {
    samples.assign(static_cast<std::size_t>(dim), requested.front());
  } else if (static_cast<int>(requested.size()) == dim) {
    samples = requested;
  } else {
    throw SpecError("grid lists " + std::to_string(requested.size()) + " axes for a " + std::to_string(dim) +
                    "-dimensional entry");
  }
  return coarsen_grid(samples, dim);
}

VerificationReport run(const RunConfig& config, const SubmanifoldModel& model) {
  config.validate();
  Runner runner(config, model);
  return runner.execute();
}

VerificationReport run(const RunConfig& config) {
  config.validate();
  const SubmanifoldModel model = build_chart(parse_spec(config.manifold));
  return run(config, model);
}

std::vector<VerificationReport> run_suite(const RunConfig& config) {
  std::vector<VerificationReport> out;
  for (const CatalogEntry& e : catalog_list()) {
    RunConfig c = config;
    c.manifold = e.name;
    c.checks.clear();
    c.residual_csv.clear();
    out.push_back(run(c));
  }
  return out;
}

}  // namespace octoverify
