#include "octoverify/gauss_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "octoverify/errors.hpp"
#include "octoverify/octonion.hpp"
#include "octoverify/parallel.hpp"

namespace octoverify {

namespace {

void require_unit_normal(const Jet& jet, const Vec8& eta, const std::string& label, double tol) {
  auto fail = [&](const std::string& what, double value) {
    std::ostringstream msg;
    msg << "normal field '" << label << "' violates " << what << " (value " << value << ")";
    throw DomainError(msg.str());
  };
  if (std::abs(jet.x.norm() - 1.0) > tol) fail("|x| = 1", jet.x.norm());
  if (std::abs(eta.norm() - 1.0) > tol) fail("|eta| = 1", eta.norm());
  if (std::abs(eta.dot(jet.x)) > tol) fail("<eta, x> = 0", eta.dot(jet.x));
  for (int i = 0; i < jet.dim; ++i) {
    const double t = eta.dot(jet.d1.col(i));
    if (std::abs(t) > tol * std::max(1.0, jet.d1.col(i).norm())) fail("<eta, dF/du" + std::to_string(i) + "> = 0", t);
  }
}

}  // namespace

Vec8 gauss_map(const Chart& chart, const AmbientField& eta, const Coords& u, double tol) {
  const Jet jet = chart.jet(u, 1);
  const Vec8 n = eta(jet.x);
  require_unit_normal(jet, n, eta.label, tol);
  return octonion::mul(octonion::conj(jet.x), n);
}

ChartField gauss_map_field(const AmbientField& eta) {
  ChartField field;
  field.components = 8;
  field.value = [eta](const Coords&, const Jet& jet) -> FieldValue {
    return octonion::mul(octonion::conj(jet.x), eta(jet.x));
  };
  if (eta.has_derivative()) {
    field.gradient = [eta](const Coords&, const Jet& jet) {
      const Vec8 n = eta(jet.x);
      const Vec8 xbar = octonion::conj(jet.x);
      FieldGradient g(8, jet.dim);
      for (int i = 0; i < jet.dim; ++i) {
        const Vec8 dF = jet.d1.col(i);
        g.col(i) = octonion::mul(octonion::conj(dF), n) + octonion::mul(xbar, eta.derivative(jet.x, dF));
      }
      return g;
    };
  }
  return field;
}

AmbientField combine_normals(std::span<const AmbientField> hints, const SmallVec& coeffs, std::string label) {
  if (static_cast<std::size_t>(coeffs.size()) != hints.size()) {
    throw InvalidArgument("combine_normals: coefficient count does not match hint count");
  }
  std::vector<AmbientField> parts(hints.begin(), hints.end());
  std::vector<double> c(coeffs.data(), coeffs.data() + coeffs.size());
  bool analytic = std::all_of(parts.begin(), parts.end(), [](const AmbientField& f) { return f.has_derivative(); });
  AmbientField out;
  out.label = std::move(label);
  out.value = [parts, c](const Vec8& x) {
    Vec8 v = Vec8::Zero();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (c[i] != 0.0) v += c[i] * parts[i](x);
    }
    return v;
  };
  if (analytic) {
    out.derivative = [parts, c](const Vec8& x, const Vec8& dx) {
      Vec8 v = Vec8::Zero();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (c[i] != 0.0) v += c[i] * parts[i].derivative(x, dx);
      }
      return v;
    };
  }
  return out;
}

Vec8 gauss_laplacian(const Chart& chart, const ChartField& gamma, const Coords& u, const LaplaceOptions& options) {
  if (gamma.components != 8) throw InvalidArgument("gauss_laplacian expects an 8-component field");
  return laplace_beltrami(chart, gamma, u, options);
}

double harmonicity_defect(const Vec8& gamma, const Vec8& laplacian) {
  return (laplacian - laplacian.dot(gamma) * gamma).norm();
}

double harmonicity_defect(const Chart& chart, const AmbientField& eta, const Coords& u,
                          const LaplaceOptions& options) {
  const Vec8 g = gauss_map(chart, eta, u);
  return harmonicity_defect(g, gauss_laplacian(chart, gauss_map_field(eta), u, options));
}

std::vector<double> lemma_residuals(const Chart& chart, std::span<const AmbientField> hints, int eta_index,
                                    std::span<const Vec8> directions, const Coords& u,
                                    const LaplaceOptions& options, const Vec8* laplacian) {
  if (eta_index < 0 || static_cast<std::size_t>(eta_index) >= hints.size()) {
    throw InvalidArgument("lemma_residuals: normal index out of range");
  }
  std::vector<AmbientField> ordered;
  ordered.reserve(hints.size());
  ordered.push_back(hints[static_cast<std::size_t>(eta_index)]);
  for (std::size_t i = 0; i < hints.size(); ++i) {
    if (static_cast<int>(i) != eta_index) ordered.push_back(hints[i]);
  }
  const FrameField frames = frames_at(chart, u, ordered);
  const auto ops = shape_operators(chart, frames, ordered, options.h);
  const int k = frames.codim();
  const int n = frames.dim();

  const Vec8 lap = laplacian ? *laplacian : gauss_laplacian(chart, gauss_map_field(ordered.front()), u, options);
  const Vec8 xbar = octonion::conj(frames.x);

  // -sum_k (<S_eta, S_k> + n delta_1k) Gamma_x(eta_k)
  Vec8 rhs = Vec8::Zero();
  for (int j = 0; j < k; ++j) {
    double coeff = hilbert_schmidt(ops.front().entries, ops[static_cast<std::size_t>(j)].entries);
    if (j == 0) coeff += n;
    rhs -= coeff * octonion::mul(xbar, frames.normal.col(j));
  }

  std::vector<double> out;
  out.reserve(directions.size());
  for (const Vec8& v : directions) out.push_back(std::abs(lap.dot(v) - rhs.dot(v)));
  return out;
}

double lemma_residual(const Chart& chart, std::span<const AmbientField> hints, int eta_index, const Vec8& v,
                      const Coords& u, const LaplaceOptions& options) {
  return lemma_residuals(chart, hints, eta_index, std::span<const Vec8>(&v, 1), u, options).front();
}

DirectionSweep sweep_direction(const Chart& chart, const AmbientField& eta, const LaplaceOptions& options,
                               int workers) {
  const ChartField gamma = gauss_map_field(eta);
  const std::size_t count = chart.node_count();
  const double reach = (gamma.gradient ? 1.0 : 2.0) * options.h;

  DirectionSweep sweep;
  sweep.label = eta.label;
  sweep.gamma.assign(count, Vec8::Zero());
  sweep.laplacian.assign(count, Vec8::Zero());
  sweep.eligible.assign(count, 0);
  sweep.weights.assign(count, 0.0);
  parallel_for(count, workers, [&](std::size_t n) {
    const Coords u = chart.node(n);
    const Jet jet = chart.jet(u, 1);
    sweep.weights[n] = metric_data(jet).sqrt_det * chart.coordinate_weight(n);
    sweep.gamma[n] = gamma.value(u, jet);
    if (chart.boundary_distance(u) > 2.0 * reach) {
      sweep.eligible[n] = 1;
      sweep.laplacian[n] = laplace_beltrami(chart, gamma, u, options);
    }
  });
  sweep.eligible_count = static_cast<std::size_t>(std::count(sweep.eligible.begin(), sweep.eligible.end(), 1));
  return sweep;
}

EigenmapVerdict eigenmap_residual(const DirectionSweep& sweep, double lambda, double tol) {
  EigenmapVerdict v;
  v.lambda = lambda;
  v.nodes = sweep.eligible_count;
  const double scale = lambda > 0.0 ? lambda : 1.0;
  double num = 0.0;
  double den = 0.0;
  std::array<double, 8> comp{};
  for (std::size_t n = 0; n < sweep.gamma.size(); ++n) {
    if (!sweep.eligible[n]) continue;
    const Vec8 r = sweep.laplacian[n] + lambda * sweep.gamma[n];
    const double w = sweep.weights[n];
    num += w * r.squaredNorm();
    den += w * sweep.gamma[n].squaredNorm();
    for (int e = 0; e < 8; ++e) comp[static_cast<std::size_t>(e)] += w * r[e] * r[e];
    v.residual_max = std::max(v.residual_max, r.norm() / scale);
    v.tangency_defect = std::max(v.tangency_defect, harmonicity_defect(sweep.gamma[n], sweep.laplacian[n]));
  }
  if (den <= 0.0) {
    v.residual_l2 = std::numeric_limits<double>::infinity();
    return v;
  }
  const double norm = scale * std::sqrt(den);
  v.residual_l2 = std::sqrt(num) / norm;
  for (std::size_t e = 0; e < 8; ++e) v.component_residuals[e] = std::sqrt(comp[e]) / norm;
  v.pass = v.residual_l2 < tol;
  return v;
}

EigenmapVerdict eigenmap_verify(const Chart& chart, const NormalHintSet& hints, const ConstancyScan& scan, int j,
                                const LaplaceOptions& options, double tol, double constancy_tol, int workers) {
  if (scan.sigma_spread > constancy_tol) {
    std::ostringstream msg;
    msg << "B*B spectrum is not constant over M (spread " << scan.sigma_spread << " > " << constancy_tol
        << "); the eigenmap statement does not apply";
    throw DomainError(msg.str());
  }
  const GramSpectrum& spec = scan.base;
  if (j < 0 || j >= spec.size()) throw InvalidArgument("eigenmap_verify: eigen-index out of range");
  const int k = spec.size();
  const AmbientField eta =
      combine_normals(hints.fields, spec.vectors.col(j), "eta_" + std::to_string(j + 1));
  const DirectionSweep sweep = sweep_direction(chart, eta, options, workers);
  const double lambda = 7.0 - k + spec.sigma[j];
  EigenmapVerdict v = eigenmap_residual(sweep, lambda, tol);
  v.j = j;
  v.sigma = spec.sigma[j];
  return v;
}

}  // namespace octoverify
