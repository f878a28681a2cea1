#pragma once

#include <span>
#include <string>
#include <vector>

#include "octoverify/catalog.hpp"
#include "octoverify/chart.hpp"
#include "octoverify/jacobi.hpp"

namespace octoverify {

/// S_eta(X) = -(nabla_X eta)^T in the orthonormal tangent frame:
/// entries(a, b) = <-(nabla_{E_a} eta), E_b>.
struct ShapeOperatorMatrix {
  SmallMat entries;
  std::string normal_label;

  double trace() const { return entries.trace(); }
  /// |S|^2 as the sum of squared entries.
  double squared_norm() const { return entries.squaredNorm(); }
  double asymmetry() const { return (entries - entries.transpose()).cwiseAbs().maxCoeff(); }
};

ShapeOperatorMatrix shape_operator(const Chart& chart, const FrameField& frames, const AmbientField& eta,
                                   double h = 1e-3);
std::vector<ShapeOperatorMatrix> shape_operators(const Chart& chart, const FrameField& frames,
                                                 std::span<const AmbientField> normals, double h = 1e-3);

/// Hilbert-Schmidt product <A, B> = tr(A B^T).
double hilbert_schmidt(const SmallMat& a, const SmallMat& b);

/// max over frame directions a of |(nabla_{E_a} eta)^perp| (normal-bundle part).
double normal_connection_defect(const Chart& chart, const FrameField& frames, const AmbientField& eta,
                                double h = 1e-3);

/// Largest Frobenius norm of a commutator [S_i, S_j].
double max_commutator(std::span<const ShapeOperatorMatrix> ops);

/// Gram matrix G_ij = <S_i, S_j> of B*B in a normal frame and its spectrum.
struct GramSpectrum {
  SmallMat gram;
  SmallVec sigma;             // ascending
  SmallMat vectors;           // column j: coefficients of eta_j over the normal frame
  std::vector<int> multiplicities;  // sizes of clusters of equal sigma, in order

  int size() const { return static_cast<int>(gram.rows()); }
};

GramSpectrum spectrum_of_gram(const SmallMat& gram, double jacobi_threshold = 1e-14, double cluster_tol = 1e-8);
GramSpectrum gram_spectrum(std::span<const ShapeOperatorMatrix> ops, double jacobi_threshold = 1e-14);
GramSpectrum gram_spectrum(const Chart& chart, const FrameField& frames, std::span<const AmbientField> hints,
                           double h = 1e-3);

struct EigenCheck {
  bool is_eigenvector = false;
  double eigenvalue = 0.0;  // c^T G c
  double residual = 0.0;    // |G c - (c^T G c) c|
};

/// Whether the normal section with coefficients c (|c| = 1) is an
/// eigenvector of B*B.
EigenCheck bstarb_eigencheck(const GramSpectrum& spectrum, const SmallVec& c, double tol = 1e-8);

/// Spread of the Gram matrix, its spectrum and the principal curvatures of
/// every hint over all grid nodes, measured against node 0.
struct ConstancyScan {
  double gram_spread = 0.0;
  double sigma_spread = 0.0;
  double principal_spread = 0.0;
  double max_commutator = 0.0;
  std::size_t nodes = 0;
  GramSpectrum base;
};

ConstancyScan constancy_scan(const Chart& chart, const NormalHintSet& hints, int workers = 1, double h = 1e-3);

}  // namespace octoverify
