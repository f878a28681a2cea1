#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "octoverify/chart.hpp"

namespace octoverify {

/// A round sphere S^n(r) factor.
struct SphereFactor {
  int n = 1;
  double r = 1.0;
};

/// Product S^{n_1}(r_1) x ... x S^{n_p}(r_p) embedded block-diagonally in
/// R^{n_1+1} + ... + R^{n_p+1}, blocks in spec order.
struct ProductSphereSpec {
  std::vector<SphereFactor> factors;
  bool explicit_radii = false;

  int ambient_dim() const;  // sum (n_i + 1)
  int dim() const;          // sum n_i
  /// r_i^2 = n_i / d for every factor.
  bool minimal(double tol = 1e-12) const;
};

/// Totally geodesic S^m = {x_{m+2} = ... = x_8 = 0}, optionally carrying a
/// minimal hypersurface `inner` of S^m (whose ambient dimension is m + 1).
struct GreatSphereSpec {
  int m = 6;
  std::optional<ProductSphereSpec> inner;
};

/// Extension point for submanifolds outside the shipped families (e.g.
/// isoparametric hypersurfaces with 3, 4 or 6 principal curvatures). Such
/// models are built by hand as SubmanifoldModel values; the catalog
/// ships none.
struct CustomSpec {
  std::string name;
};

using ManifoldSpec = std::variant<GreatSphereSpec, ProductSphereSpec, CustomSpec>;

/// r_i = sqrt(n_i / d), d = sum n_i. Requires n_i >= 1 and sum (n_i + 1) <= 8.
std::vector<double> minimal_radii(std::span<const int> factor_dims);

/// Parses the manifold-spec grammar
///   great:M | product:N1,N2[,...][@R1,R2,...] | compose:great:M/product:P,Q
/// Throws SpecError carrying the byte offset of syntax errors.
ManifoldSpec parse_spec(std::string_view text);
/// Canonical text form; parse_spec(format_spec(s)) reproduces s.
std::string format_spec(const ManifoldSpec& spec);

int spec_dim(const ManifoldSpec& spec);
int spec_codim(const ManifoldSpec& spec);

/// Analytic unit normal sections with their parallel-in-normal-connection flags.
struct NormalHintSet {
  std::vector<AmbientField> fields;
  std::vector<bool> parallel;

  std::size_t size() const { return fields.size(); }
  bool all_parallel() const;
};

/// Everything the verification pipeline needs about one submanifold.
struct SubmanifoldModel {
  std::string name;
  Chart chart;  // grid not yet chosen
  NormalHintSet hints;
  int dim = 0;
  int codim = 0;
  bool minimal = false;
  bool isoparametric = false;
  bool compact = true;
  /// When M is a minimal hypersurface of a totally geodesic S^m (3 <= m <= 7):
  /// the hint index of its in-S^m unit normal, and m.
  std::optional<int> hypersurface_normal;
  int hypersurface_sphere_dim = 0;
  std::vector<SphereFactor> factors;
  int padding = 0;  // trailing zero coordinates
};

/// Chart of a block embedding of round spheres followed by `padding` zero
/// coordinates. Each S^n factor uses polyspherical angles: n - 1 polar
/// angles in (0, pi) and one periodic azimuth in [0, 2 pi). An optional
/// orthogonal matrix per factor rotates that factor's block, giving a
/// second chart of the same manifold.
Chart block_sphere_chart(std::span<const SphereFactor> factors, int padding,
                         std::span<const Eigen::MatrixXd> rotations = {});

/// Normal hints of a block embedding: nu_a = sum_i a_i x_i / r_i over
/// coefficient rows a (orthonormal, sum a_i r_i = 0, Gram-Schmidt on the
/// standard basis in order), then the padding axes e_j.
NormalHintSet block_sphere_hints(std::span<const SphereFactor> factors, int padding);

SubmanifoldModel build_chart(const ManifoldSpec& spec, std::span<const Eigen::MatrixXd> rotations = {});

struct CatalogEntry {
  std::string name;
  ManifoldSpec spec;
  int dim = 0;
  int codim = 0;
  std::vector<double> radii;
  bool minimal = false;
};

/// Every shipped entry: great spheres, products of round spheres at minimal
/// radii, and Clifford-type hypersurfaces of great spheres.
std::vector<CatalogEntry> catalog_list();

}  // namespace octoverify
