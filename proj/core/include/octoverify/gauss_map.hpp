#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "octoverify/chart.hpp"
#include "octoverify/shape_spectra.hpp"

namespace octoverify {

/// gamma_eta(x) = x^-1 eta(x) at F(u). x^-1 is taken as conj(x) since
/// |x| = 1. Throws DomainError naming the violated inner product when eta
/// is not a unit normal at u.
Vec8 gauss_map(const Chart& chart, const AmbientField& eta, const Coords& u, double tol = 1e-8);

/// The octonionic Gauss map as an 8-component chart field. Its gradient
/// d_i gamma = conj(d_i F) eta + conj(x) D eta[d_i F] is analytic when eta
/// carries a derivative.
ChartField gauss_map_field(const AmbientField& eta);

/// sum_k c_k hints_k with constant coefficients (a normal section of the
/// same bundle; parallel when every hint is).
AmbientField combine_normals(std::span<const AmbientField> hints, const SmallVec& coeffs, std::string label);

/// Componentwise Laplace-Beltrami of gamma over the standard basis of R^8.
Vec8 gauss_laplacian(const Chart& chart, const ChartField& gamma, const Coords& u, const LaplaceOptions& options = {});

/// |Lap(gamma) - <Lap(gamma), gamma> gamma| at u: zero iff Lap(gamma) is
/// parallel to gamma there (pointwise harmonicity of a map into S^6).
double harmonicity_defect(const Chart& chart, const AmbientField& eta, const Coords& u,
                          const LaplaceOptions& options = {});
double harmonicity_defect(const Vec8& gamma, const Vec8& laplacian);

/// Residuals |Lap f + sum_k (<S_eta, S_eta_k> + n delta_1k) <Gamma_x(eta_k), v>|
/// of the Laplacian formula for f = <gamma_eta, v>, with eta = hints[eta_index]
/// moved to the front of the normal frame and n = dim M. `laplacian`, when
/// given, is Lap(gamma_eta) at u (saves recomputing it per direction).
std::vector<double> lemma_residuals(const Chart& chart, std::span<const AmbientField> hints, int eta_index,
                                    std::span<const Vec8> directions, const Coords& u,
                                    const LaplaceOptions& options = {}, const Vec8* laplacian = nullptr);
double lemma_residual(const Chart& chart, std::span<const AmbientField> hints, int eta_index, const Vec8& v,
                      const Coords& u, const LaplaceOptions& options = {});

/// gamma and Lap(gamma) of one normal direction over a gridded chart.
/// Laplacians are evaluated only at eligible nodes, those at distance
/// >= 2h from every non-periodic boundary.
struct DirectionSweep {
  std::string label;
  std::vector<Vec8> gamma;      // every node
  std::vector<Vec8> laplacian;  // eligible nodes only (zero elsewhere)
  std::vector<char> eligible;
  std::vector<double> weights;  // sqrt(g) * coordinate weight
  std::size_t eligible_count = 0;
};

DirectionSweep sweep_direction(const Chart& chart, const AmbientField& eta, const LaplaceOptions& options = {},
                               int workers = 1);

struct EigenmapVerdict {
  int j = 0;
  double sigma = 0.0;
  double lambda = 0.0;
  double residual_l2 = 0.0;   // |Lap gamma + lambda gamma|_L2 / (lambda |gamma|_L2)
  double residual_max = 0.0;  // max_node |Lap gamma + lambda gamma| / lambda
  double tangency_defect = 0.0;
  std::array<double, 8> component_residuals{};  // per basis direction, same normalization as residual_l2
  std::size_t nodes = 0;
  bool pass = false;
};

/// Residual statistics of Lap(gamma) = -lambda gamma for a computed sweep.
EigenmapVerdict eigenmap_residual(const DirectionSweep& sweep, double lambda, double tol = 1e-4);

/// Builds eta_j from the j-th eigenvector of the (constant) spectrum in
/// `scan`, and checks Lap(gamma_j) = -(7 - k + sigma_j) gamma_j. Throws
/// DomainError when the spectrum spread exceeds `constancy_tol`.
EigenmapVerdict eigenmap_verify(const Chart& chart, const NormalHintSet& hints, const ConstancyScan& scan, int j,
                                const LaplaceOptions& options = {}, double tol = 1e-4,
                                double constancy_tol = 1e-6, int workers = 1);

}  // namespace octoverify
