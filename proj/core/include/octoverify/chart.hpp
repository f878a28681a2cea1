#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "octoverify/types.hpp"

namespace octoverify {

/// One coordinate axis of a chart domain. Periodic axes have period hi - lo.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
};

/// Index of the unordered pair (i, j), i <= j, in packed second-jet storage.
constexpr int pair_index(int i, int j, int dim) {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  return i * (2 * dim - i + 1) / 2 + (j - i);
}

/// Position and analytic derivatives of an immersion u -> F(u) in R^8.
struct Jet {
  int dim = 0;
  int order = 0;
  Vec8 x = Vec8::Zero();
  Frame8 d1;  // 8 x dim, column i = dF/du_i
  Eigen::Matrix<double, 8, Eigen::Dynamic, 0, 8, kMaxSecondJet> d2;  // packed d^2F/du_i du_j

  auto second(int i, int j) const { return d2.col(pair_index(i, j, dim)); }
  auto second(int i, int j) { return d2.col(pair_index(i, j, dim)); }
};

/// A parametrized patch of a d-dimensional submanifold of S^7 together
/// with its sample grid. Periodic axes carry uniform nodes offset by half a
/// cell; non-periodic axes carry Gauss-Legendre nodes, which are interior so
/// no node sits on a coordinate singularity at the domain boundary.
class Chart {
 public:
  /// Fills `out` with F(u) and derivatives up to `order` (0, 1 or 2).
  using JetFn = std::function<void(const Coords& u, int order, Jet& out)>;
  /// Optional inverse: chart coordinates of an ambient point, if covered.
  using PullbackFn = std::function<std::optional<Coords>(const Vec8& x)>;

  Chart() = default;
  Chart(std::vector<Axis> axes, JetFn jet, PullbackFn pullback = {});

  int dim() const noexcept { return static_cast<int>(axes_.size()); }
  const std::vector<Axis>& axes() const noexcept { return axes_; }

  Jet jet(const Coords& u, int order = 1) const;
  Vec8 position(const Coords& u) const { return jet(u, 0).x; }
  std::optional<Coords> pullback(const Vec8& x) const;

  /// Loci where the parametrization degenerates (documentation only).
  std::vector<std::string> singular_loci;

  /// Copy of this chart with `samples[i]` nodes on axis i (one entry means
  /// the same count on every axis).
  Chart with_grid(std::vector<int> samples) const;
  const std::vector<int>& samples() const noexcept { return samples_; }
  std::size_t node_count() const noexcept { return node_count_; }
  Coords node(std::size_t index) const;
  /// Product of per-axis quadrature weights at a node (no sqrt(det g)).
  double coordinate_weight(std::size_t index) const;
  const std::vector<double>& axis_nodes(int axis) const { return axis_nodes_.at(static_cast<std::size_t>(axis)); }

  /// Distance from u to the nearest non-periodic boundary (+inf if none).
  double boundary_distance(const Coords& u) const;

 private:
  std::vector<Axis> axes_;
  JetFn jet_;
  PullbackFn pullback_;
  std::vector<int> samples_;
  std::vector<std::vector<double>> axis_nodes_;
  std::vector<std::vector<double>> axis_weights_;
  std::size_t node_count_ = 0;
};

/// Default per-axis sample counts: 24 for d <= 3, 12 for d in {4,5}, 8 for d >= 6.
int default_grid(int dim);

/// Lowers a uniform per-axis request until the node count is at most `cap`.
std::vector<int> coarsen_grid(std::vector<int> samples, int dim, std::size_t cap = 200000);

struct MetricData {
  SmallMat g;
  SmallMat g_inv;
  double sqrt_det = 0.0;
};

/// g_ij = <dF_i, dF_j>. Throws ChartDegeneracyError when g is not positive definite.
MetricData metric_data(const Jet& jet);
MetricData metric_data(const Chart& chart, const Coords& u);

/// A vector field defined on (a neighbourhood of) M in R^8, e.g. a normal
/// section or a Killing field. `derivative(x, dx)` is the ambient directional
/// derivative and may be empty, in which case finite differences along chart
/// curves are used.
struct AmbientField {
  std::string label;
  std::function<Vec8(const Vec8& x)> value;
  std::function<Vec8(const Vec8& x, const Vec8& dx)> derivative;

  Vec8 operator()(const Vec8& x) const { return value(x); }
  bool has_derivative() const noexcept { return static_cast<bool>(derivative); }
};

/// Orthonormal tangent frame E_a and normal frame eta_i at a chart point.
/// E = d1 * tangent_coeffs, i.e. column a of tangent_coeffs is the chart
/// direction whose image is E_a.
struct FrameField {
  Coords u;
  Vec8 x;
  Frame8 tangent;
  Frame8 normal;
  SmallMat tangent_coeffs;

  int dim() const { return static_cast<int>(tangent.cols()); }
  int codim() const { return static_cast<int>(normal.cols()); }
  /// Columns x, E_1..E_d, eta_1..eta_k as one 8x8 matrix.
  Mat8 full_frame() const;
};

/// Builds the frame at u. With hints, the normal frame is the Gram-Schmidt
/// orthonormalization of the hint values (after removing x and TM) in hint
/// order; otherwise it completes the tangent space from e_1..e_8 in order.
FrameField frames_at(const Chart& chart, const Coords& u, std::span<const AmbientField> normal_hint = {});
FrameField frames_at(const Jet& jet, std::span<const AmbientField> normal_hint = {});

/// Orthogonal projection of v onto T_x S^7.
Vec8 project_to_sphere_tangent(const Vec8& x, const Vec8& v);
/// Orthogonal projection of v onto the normal space of M in S^7.
Vec8 project_to_normal(const FrameField& frames, const Vec8& v);
/// Orthogonal projection of v onto T_x M.
Vec8 project_to_tangent(const FrameField& frames, const Vec8& v);

/// Levi-Civita derivative on S^7 of `field` along the tangent frame vector
/// E_direction: the ambient derivative projected onto T_x S^7. Uses the
/// field's analytic derivative when present, otherwise a central difference
/// of step h along the chart curve through u with velocity E_direction.
Vec8 sphere_covariant_derivative(const Chart& chart, const AmbientField& field, const FrameField& frames,
                                 int direction, double h = 1e-3);

/// Mean curvature vector of M in S^7: g^ij (d_i d_j F) projected onto the
/// normal space of M in S^7 (trace of the second fundamental form).
Vec8 mean_curvature_vector(const Chart& chart, const Coords& u);

using FieldValue = SmallVec;
using FieldGradient = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, kMaxChartDim>;

/// A (vector-valued, up to 8 components) function on the chart domain.
/// `gradient` returns the components x dim matrix of partial derivatives and
/// may be empty (finite differences are used then). Both receive a jet of
/// order >= 1 at u.
struct ChartField {
  int components = 1;
  std::function<FieldValue(const Coords& u, const Jet& jet)> value;
  std::function<FieldGradient(const Coords& u, const Jet& jet)> gradient;

  /// f(x) for a function on R^8, with optional ambient gradient.
  static ChartField scalar_ambient(std::function<double(const Vec8&)> f,
                                   std::function<Vec8(const Vec8&)> grad = {});
  /// f(u) in chart coordinates, without gradient.
  static ChartField scalar_coords(std::function<double(const Coords&)> f);
  /// A field constant on M (used for degenerate/synthetic checks).
  static ChartField constant(const FieldValue& v);
};

using ScalarField = ChartField;

/// Discretizations of the Laplace-Beltrami operator.
///  divergence: (1/sqrt g) d_i (sqrt g g^ij d_j f), central difference of
///              step h on the flux.
///  extrinsic:  g^ij (d_i d_j f - Gamma^k_ij d_k f) with Gamma^k_ij =
///              g^kl <d_i d_j F, d_l F> from the analytic second jet and
///              d_i d_j f by central differences of the gradient along axis i
///              with step h * clamp(|dF/du_i|, 1e-2, 1). The step follows
///              arc length, which keeps the truncation error bounded next
///              to the poles of polyspherical charts.
enum class LaplaceScheme { extrinsic, divergence };

struct LaplaceOptions {
  double h = 1e-3;
  bool richardson = false;
  LaplaceScheme scheme = LaplaceScheme::extrinsic;
};

/// Laplace-Beltrami operator of f at u (per component). Throws
/// StencilError if the stencil leaves the domain on a non-periodic axis.
FieldValue laplace_beltrami(const Chart& chart, const ChartField& f, const Coords& u,
                            const LaplaceOptions& options = {});
double laplace_beltrami_scalar(const Chart& chart, const ChartField& f, const Coords& u,
                               const LaplaceOptions& options = {});

/// Values of f at every grid node, in node order.
std::vector<FieldValue> sample(const Chart& chart, const ChartField& f, int workers = 1);

/// Riemannian quadrature sum_nodes f sqrt(g) w over the grid (per component).
FieldValue integrate(const Chart& chart, const ChartField& f, int workers = 1);
double integrate_scalar(const Chart& chart, const ChartField& f, int workers = 1);
double volume(const Chart& chart, int workers = 1);

/// Riemannian quadrature weight sqrt(g) w of every node.
std::vector<double> node_weights(const Chart& chart, int workers = 1);

/// CSV dump: one row per node with u coordinates, x in R^8 and the values of
/// each field (columns named prefix_i, or prefix for scalars).
void write_grid_csv(std::ostream& os, const Chart& chart, std::span<const ChartField> fields,
                    std::span<const std::string> names, int workers = 1);

}  // namespace octoverify
