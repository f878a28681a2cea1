#include "octoverify/shape_spectra.hpp"

#include <algorithm>
#include <cmath>

#include "octoverify/errors.hpp"
#include "octoverify/parallel.hpp"

namespace octoverify {

ShapeOperatorMatrix shape_operator(const Chart& chart, const FrameField& frames, const AmbientField& eta, double h) {
  const int d = frames.dim();
  ShapeOperatorMatrix s;
  s.normal_label = eta.label;
  s.entries.resize(d, d);
  for (int a = 0; a < d; ++a) {
    const Vec8 nabla = sphere_covariant_derivative(chart, eta, frames, a, h);
    for (int b = 0; b < d; ++b) s.entries(a, b) = -nabla.dot(frames.tangent.col(b));
  }
  return s;
}

std::vector<ShapeOperatorMatrix> shape_operators(const Chart& chart, const FrameField& frames,
                                                 std::span<const AmbientField> normals, double h) {
  std::vector<ShapeOperatorMatrix> out;
  out.reserve(normals.size());
  for (const AmbientField& eta : normals) out.push_back(shape_operator(chart, frames, eta, h));
  return out;
}

double hilbert_schmidt(const SmallMat& a, const SmallMat& b) { return (a * b.transpose()).trace(); }

double normal_connection_defect(const Chart& chart, const FrameField& frames, const AmbientField& eta, double h) {
  double worst = 0.0;
  for (int a = 0; a < frames.dim(); ++a) {
    const Vec8 nabla = sphere_covariant_derivative(chart, eta, frames, a, h);
    worst = std::max(worst, project_to_normal(frames, nabla).norm());
  }
  return worst;
}

double max_commutator(std::span<const ShapeOperatorMatrix> ops) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const SmallMat c = ops[i].entries * ops[j].entries - ops[j].entries * ops[i].entries;
      worst = std::max(worst, c.norm());
    }
  }
  return worst;
}

GramSpectrum spectrum_of_gram(const SmallMat& gram, double jacobi_threshold, double cluster_tol) {
  GramSpectrum g;
  g.gram = gram;
  const SymmetricEigen eig = jacobi_eigen(gram, jacobi_threshold);
  g.sigma = eig.values;
  g.vectors = eig.vectors;
  for (int i = 0; i < g.sigma.size(); ++i) {
    if (i > 0 && std::abs(g.sigma[i] - g.sigma[i - 1]) <= cluster_tol * std::max(1.0, std::abs(g.sigma[i]))) {
      ++g.multiplicities.back();
    } else {
      g.multiplicities.push_back(1);
    }
  }
  return g;
}

GramSpectrum gram_spectrum(std::span<const ShapeOperatorMatrix> ops, double jacobi_threshold) {
  const int k = static_cast<int>(ops.size());
  if (k < 1) throw InvalidArgument("gram_spectrum needs at least one normal section");
  SmallMat gram(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      gram(i, j) = gram(j, i) =
          hilbert_schmidt(ops[static_cast<std::size_t>(i)].entries, ops[static_cast<std::size_t>(j)].entries);
    }
  }
  return spectrum_of_gram(gram, jacobi_threshold);
}

GramSpectrum gram_spectrum(const Chart& chart, const FrameField& frames, std::span<const AmbientField> hints,
                           double h) {
  const auto ops = shape_operators(chart, frames, hints, h);
  return gram_spectrum(ops);
}

EigenCheck bstarb_eigencheck(const GramSpectrum& spectrum, const SmallVec& c, double tol) {
  EigenCheck out;
  const SmallVec gc = spectrum.gram * c;
  out.eigenvalue = c.dot(gc);
  out.residual = (gc - out.eigenvalue * c).norm();
  out.is_eigenvector = out.residual < tol;
  return out;
}

ConstancyScan constancy_scan(const Chart& chart, const NormalHintSet& hints, int workers, double h) {
  struct NodeData {
    SmallMat gram;
    SmallVec sigma;
    std::vector<SmallVec> principal;
    double commutator = 0.0;
  };
  std::vector<NodeData> data(chart.node_count());
  parallel_for(chart.node_count(), workers, [&](std::size_t n) {
    const Coords u = chart.node(n);
    const FrameField frames = frames_at(chart, u, hints.fields);
    const auto ops = shape_operators(chart, frames, hints.fields, h);
    const GramSpectrum g = gram_spectrum(ops);
    NodeData& nd = data[n];
    nd.gram = g.gram;
    nd.sigma = g.sigma;
    for (const auto& op : ops) nd.principal.push_back(jacobi_eigen(op.entries).values);
    nd.commutator = max_commutator(ops);
  });

  ConstancyScan scan;
  scan.nodes = data.size();
  if (data.empty()) return scan;
  scan.base = spectrum_of_gram(data.front().gram);
  for (const NodeData& nd : data) {
    scan.gram_spread = std::max(scan.gram_spread, (nd.gram - data.front().gram).cwiseAbs().maxCoeff());
    scan.sigma_spread = std::max(scan.sigma_spread, (nd.sigma - data.front().sigma).cwiseAbs().maxCoeff());
    for (std::size_t i = 0; i < nd.principal.size(); ++i) {
      scan.principal_spread =
          std::max(scan.principal_spread, (nd.principal[i] - data.front().principal[i]).cwiseAbs().maxCoeff());
    }
    scan.max_commutator = std::max(scan.max_commutator, nd.commutator);
  }
  return scan;
}

}  // namespace octoverify
