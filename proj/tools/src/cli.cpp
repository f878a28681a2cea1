#include "octoverify_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "octoverify/catalog.hpp"
#include "octoverify/errors.hpp"
#include "octoverify/gauss_map.hpp"
#include "octoverify/parallel.hpp"
#include "octoverify/report.hpp"
#include "octoverify/runner.hpp"
#include "octoverify/shape_spectra.hpp"
#include "octoverify/version.hpp"

namespace octoverify::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string manifold;
  std::vector<int> grid;
  double fd_step = 1e-3;
  std::vector<std::string> tolerances;
  std::vector<std::string> checks;
  std::string out;
  std::string format = "json";
  int workers = 0;
  std::uint64_t seed = 1;
  bool richardson = false;
  bool no_timings = false;
  int candidates = 4096;
  int normal = 0;
  int eigen = -1;
  std::size_t node = 0;
};

void add_grid_options(CLI::App* app, Options& o) {
  app->add_option("--grid", o.grid, "Samples per axis: N, or N1,N2,... one per axis (default 24/12/8 by dimension)")
      ->delimiter(',');
  app->add_option("--fd-step", o.fd_step, "Finite-difference step h in [1e-6, 1e-1]")->capture_default_str();
  app->add_option("--workers", o.workers, "Worker threads (default: $OCTOVERIFY_WORKERS, else 1)");
}

void add_run_options(CLI::App* app, Options& o) {
  add_grid_options(app, o);
  app->add_option("--tolerance", o.tolerances, "Override a tolerance, NAME=VAL (repeatable)")->take_all();
  app->add_option("--seed", o.seed, "Seed for random directions and candidate sets")->capture_default_str();
  app->add_flag("--richardson", o.richardson, "Richardson-extrapolate the finite-difference Laplacian");
  app->add_flag("--no-timings", o.no_timings, "Leave wall-clock timings out of the JSON report");
  app->add_option("--candidates", o.candidates, "Low-discrepancy hemisphere candidate budget")->capture_default_str();
}

RunConfig make_config(const Options& o) {
  RunConfig c;
  c.manifold = o.manifold;
  c.grid = o.grid;
  c.h = o.fd_step;
  c.richardson = o.richardson;
  c.checks = o.checks;
  c.seed = o.seed;
  c.workers = o.workers;
  c.hemisphere_candidates = o.candidates;
  for (const std::string& t : o.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("--tolerance expects NAME=VAL, got '" + t + "'");
    const std::string name = t.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(t.substr(eq + 1), &used);
      if (used != t.size() - eq - 1) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw UsageError("--tolerance value is not a number: '" + t + "'");
    }
    if (!c.tolerances.set(name, value)) throw UsageError("unknown tolerance '" + name + "'");
  }
  c.validate();
  return c;
}

/// Writes to --out when given, else to `fallback`.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write " + path);
  os << text;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  const auto entries = catalog_list();
  if (o.format == "json") {
    json arr = json::array();
    for (const CatalogEntry& e : entries) {
      arr.push_back({{"name", e.name}, {"dim", e.dim}, {"codim", e.codim}, {"radii", e.radii}, {"minimal", e.minimal}});
    }
    if (!o.out.empty()) emit(o.out, arr.dump(2) + "\n", out);
  }
  out << std::left << std::setw(32) << "spec" << std::setw(4) << "d" << std::setw(4) << "k" << "radii\n";
  for (const CatalogEntry& e : entries) {
    std::ostringstream radii;
    for (std::size_t i = 0; i < e.radii.size(); ++i) radii << (i ? ", " : "") << std::setprecision(6) << e.radii[i];
    out << std::left << std::setw(32) << e.name << std::setw(4) << e.dim << std::setw(4) << e.codim << radii.str()
        << (e.minimal ? "" : "  (not minimal)") << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  RunConfig c = make_config(o);
  if (o.format == "csv") {
    if (o.out.empty()) throw UsageError("--format csv needs --out for the residual sidecar");
    c.residual_csv = o.out;
  }
  const VerificationReport rep = run(c);
  out << format_table(rep);
  if (o.format == "json" && !o.out.empty()) emit(o.out, to_json(rep, !o.no_timings).dump(2) + "\n", out);
  return rep.any_fail() ? kExitFail : kExitOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const SubmanifoldModel model = build_chart(parse_spec(o.manifold));
  RunConfig c = make_config(o);
  const Chart chart = model.chart.with_grid(resolve_grid(c.grid, model.dim));
  if (o.node >= chart.node_count()) throw UsageError("--node is beyond the grid");
  const FrameField frames = frames_at(chart, chart.node(o.node), model.hints.fields);
  const GramSpectrum spec = gram_spectrum(chart, frames, model.hints.fields, c.h);
  const ConstancyScan scan = constancy_scan(chart, model.hints, resolve_workers(c.workers), c.h);
  json j = to_json(spec, o.node);
  j["normals"] = json::array();
  for (const AmbientField& f : model.hints.fields) j["normals"].push_back(f.label);
  j["sigma_spread"] = scan.sigma_spread;
  j["gram_spread"] = scan.gram_spread;
  j["nodes"] = scan.nodes;
  emit(o.out, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_gauss_image(const Options& o, std::ostream& out) {
  const SubmanifoldModel model = build_chart(parse_spec(o.manifold));
  RunConfig c = make_config(o);
  const Chart chart = model.chart.with_grid(resolve_grid(c.grid, model.dim));
  const int workers = resolve_workers(c.workers);
  AmbientField eta;
  if (o.eigen >= 0) {
    const ConstancyScan scan = constancy_scan(chart, model.hints, workers, c.h);
    if (o.eigen >= scan.base.size()) throw UsageError("--eigen exceeds the codimension");
    eta = combine_normals(model.hints.fields, scan.base.vectors.col(o.eigen), "eta_" + std::to_string(o.eigen + 1));
  } else {
    if (o.normal < 0 || static_cast<std::size_t>(o.normal) >= model.hints.size()) {
      throw UsageError("--normal exceeds the number of normal sections");
    }
    eta = model.hints.fields[static_cast<std::size_t>(o.normal)];
  }
  const ChartField gamma = gauss_map_field(eta);
  std::ostringstream os;
  if (o.format == "csv") {
    const std::vector<ChartField> fields{gamma};
    const std::vector<std::string> names{"gamma"};
    write_grid_csv(os, chart, fields, names, workers);
  } else {
    const auto values = sample(chart, gamma, workers);
    json j;
    j["entry"] = model.name;
    j["normal"] = eta.label;
    j["grid"] = chart.samples();
    json rows = json::array();
    for (std::size_t n = 0; n < values.size(); ++n) {
      const Coords u = chart.node(n);
      rows.push_back({{"node", n},
                      {"u", std::vector<double>(u.data(), u.data() + u.size())},
                      {"gamma", std::vector<double>(values[n].data(), values[n].data() + values[n].size())}});
    }
    j["samples"] = rows;
    os << j.dump(2) << '\n';
  }
  emit(o.out, os.str(), out);
  return kExitOk;
}

int cmd_hemisphere(const Options& o, std::ostream& out) {
  RunConfig c = make_config(o);
  c.checks = {"hemisphere"};
  const VerificationReport rep = run(c);
  const CheckResult* h = rep.find("hemisphere");
  out << rep.entry.name << "  hemisphere: " << h->verdict;
  if (!h->reason.empty()) out << "  " << h->reason;
  out << '\n';
  for (const HemisphereReport& r : rep.hemispheres) {
    out << "  " << std::left << std::setw(8) << r.normal_label << "best_margin=" << std::scientific
        << std::setprecision(3) << r.best_margin << "  mean_norm=" << r.mean_norm << std::defaultfloat << "  "
        << r.verdict << '\n';
  }
  if (!o.out.empty()) emit(o.out, to_json(rep, !o.no_timings).dump(2) + "\n", out);
  return rep.any_fail() ? kExitFail : kExitOk;
}

int cmd_suite(const Options& o, std::ostream& out) {
  RunConfig c = make_config(o);
  const auto reports = run_suite(c);
  bool failed = false;
  for (const VerificationReport& r : reports) {
    std::size_t pass = 0, fail = 0, other = 0;
    for (const CheckResult& ch : r.checks) {
      if (ch.verdict == "pass") ++pass;
      else if (ch.verdict == "fail") ++fail;
      else ++other;
    }
    failed = failed || fail > 0;
    out << std::left << std::setw(32) << r.entry.name << (fail ? "FAIL" : "ok  ") << "  pass=" << pass
        << " fail=" << fail << " skipped/refused=" << other;
    for (const CheckResult& ch : r.checks) {
      if (ch.verdict == "fail") out << "  [" << ch.name << ": " << ch.reason << "]";
    }
    out << '\n';
  }
  if (!o.out.empty()) emit(o.out, suite_json(reports, !o.no_timings).dump(2) + "\n", out);
  return failed ? kExitFail : kExitOk;
}

void print_spec_error(const SpecError& e, const std::string& spec, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  if (e.position() != SpecError::npos && !spec.empty()) {
    err << "  " << spec << '\n' << "  " << std::string(std::min(e.position(), spec.size()), ' ') << "^\n";
  }
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of octonionic Gauss map eigenmap properties", "octoverify"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  CLI::App* catalog = app.add_subcommand("catalog", "List shipped submanifold specs with d, k and radii");
  catalog->add_option("--out", o.out, "Also write the list as JSON to PATH");
  catalog->add_option("--format", o.format, "Output format for --out")->check(CLI::IsMember({"json"}));

  CLI::App* verify = app.add_subcommand("verify", "Run verification checks on one entry");
  verify->add_option("--manifold", o.manifold, "Spec, e.g. product:3,3 or compose:great:3/product:1,1")->required();
  add_run_options(verify, o);
  verify->add_option("--checks", o.checks, "Comma-separated subset of checks (default: all)")->delimiter(',');
  verify->add_option("--out", o.out, "Report path (JSON) or residual sidecar (CSV)");
  verify->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  CLI::App* spectrum = app.add_subcommand("spectrum", "B*B Gram matrix and spectrum at a grid node");
  spectrum->add_option("--manifold", o.manifold, "Spec")->required();
  add_grid_options(spectrum, o);
  spectrum->add_option("--node", o.node, "Grid node index")->capture_default_str();
  spectrum->add_option("--out", o.out, "JSON path (default: standard output)");

  CLI::App* image = app.add_subcommand("gauss-image", "Sample the Gauss map over the grid");
  image->add_option("--manifold", o.manifold, "Spec")->required();
  add_grid_options(image, o);
  image->add_option("--normal", o.normal, "Index of the catalog normal section")->capture_default_str();
  image->add_option("--eigen", o.eigen, "Use the j-th B*B eigen-direction instead (0-based)");
  image->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  image->add_option("--out", o.out, "Output path (default: standard output)");

  CLI::App* hemi = app.add_subcommand("hemisphere", "Open-hemisphere scan of every eigen-direction");
  hemi->add_option("--manifold", o.manifold, "Spec")->required();
  add_run_options(hemi, o);
  hemi->add_option("--out", o.out, "Report path (JSON)");

  CLI::App* suite = app.add_subcommand("suite", "Every catalog entry with every check");
  add_run_options(suite, o);
  suite->add_option("--out", o.out, "Suite report path (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*catalog) return cmd_catalog(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*spectrum) return cmd_spectrum(o, out);
    if (*image) {
      if (image->count("--format") == 0) o.format = "csv";
      return cmd_gauss_image(o, out);
    }
    if (*hemi) return cmd_hemisphere(o, out);
    if (*suite) return cmd_suite(o, out);
  } catch (const SpecError& e) {
    print_spec_error(e, o.manifold, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace octoverify::cli
