#include "octoverify/chart.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>

#include "octoverify/errors.hpp"
#include "octoverify/parallel.hpp"

namespace octoverify {

namespace {

std::string describe(const Coords& u) {
  std::ostringstream os;
  os << std::setprecision(17) << "u = (";
  for (int i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  return os.str();
}

void gauss_legendre(double lo, double hi, int n, std::vector<double>& nodes, std::vector<double>& weights) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)), &gsl_integration_glfixed_table_free);
  if (!table) throw NumericalError("failed to allocate Gauss-Legendre table");
  std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double xi = 0.0, wi = 0.0;
    gsl_integration_glfixed_point(lo, hi, static_cast<std::size_t>(i), &xi, &wi, table.get());
    pts[static_cast<std::size_t>(i)] = {xi, wi};
  }
  std::sort(pts.begin(), pts.end());
  nodes.clear();
  weights.clear();
  for (const auto& [x, w] : pts) {
    nodes.push_back(x);
    weights.push_back(w);
  }
}

}  // namespace

Chart::Chart(std::vector<Axis> axes, JetFn jet, PullbackFn pullback)
    : axes_(std::move(axes)), jet_(std::move(jet)), pullback_(std::move(pullback)) {
  if (axes_.empty() || static_cast<int>(axes_.size()) > kMaxChartDim) {
    throw InvalidArgument("chart dimension must be in [1, 7]");
  }
}

Jet Chart::jet(const Coords& u, int order) const {
  Jet j;
  j.dim = dim();
  j.order = order;
  j.d1.resize(8, dim());
  if (order >= 2) j.d2.resize(8, dim() * (dim() + 1) / 2);
  jet_(u, order, j);
  return j;
}

std::optional<Coords> Chart::pullback(const Vec8& x) const {
  if (!pullback_) return std::nullopt;
  return pullback_(x);
}

Chart Chart::with_grid(std::vector<int> samples) const {
  if (samples.size() == 1 && dim() > 1) samples.assign(static_cast<std::size_t>(dim()), samples.front());
  if (static_cast<int>(samples.size()) != dim()) {
    throw InvalidArgument("grid needs one sample count per axis");
  }
  Chart c = *this;
  c.samples_ = samples;
  c.axis_nodes_.assign(samples.size(), {});
  c.axis_weights_.assign(samples.size(), {});
  c.node_count_ = 1;
  for (std::size_t a = 0; a < samples.size(); ++a) {
    const int n = samples[a];
    if (n < 1) throw InvalidArgument("grid sample counts must be positive");
    const Axis& ax = axes_[a];
    if (ax.periodic) {
      const double step = (ax.hi - ax.lo) / n;
      for (int j = 0; j < n; ++j) {
        c.axis_nodes_[a].push_back(ax.lo + (j + 0.5) * step);
        c.axis_weights_[a].push_back(step);
      }
    } else {
      gauss_legendre(ax.lo, ax.hi, n, c.axis_nodes_[a], c.axis_weights_[a]);
    }
    c.node_count_ *= static_cast<std::size_t>(n);
  }
  return c;
}

Coords Chart::node(std::size_t index) const {
  Coords u(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(samples_[static_cast<std::size_t>(a)]);
    u[a] = axis_nodes_[static_cast<std::size_t>(a)][index % n];
    index /= n;
  }
  return u;
}

double Chart::coordinate_weight(std::size_t index) const {
  double w = 1.0;
  for (int a = dim() - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(samples_[static_cast<std::size_t>(a)]);
    w *= axis_weights_[static_cast<std::size_t>(a)][index % n];
    index /= n;
  }
  return w;
}

double Chart::boundary_distance(const Coords& u) const {
  double d = std::numeric_limits<double>::infinity();
  for (int a = 0; a < dim(); ++a) {
    const Axis& ax = axes_[static_cast<std::size_t>(a)];
    if (ax.periodic) continue;
    d = std::min({d, u[a] - ax.lo, ax.hi - u[a]});
  }
  return d;
}

int default_grid(int dim) {
  if (dim <= 3) return 24;
  if (dim <= 5) return 12;
  return 8;
}

std::vector<int> coarsen_grid(std::vector<int> samples, int dim, std::size_t cap) {
  if (samples.empty()) samples.assign(static_cast<std::size_t>(dim), default_grid(dim));
  if (samples.size() == 1) samples.assign(static_cast<std::size_t>(dim), samples.front());
  auto count = [&] {
    double c = 1.0;
    for (int s : samples) c *= s;
    return c;
  };
  while (count() > static_cast<double>(cap)) {
    auto it = std::max_element(samples.begin(), samples.end());
    if (*it <= 2) break;
    --*it;
  }
  return samples;
}

MetricData metric_data(const Jet& jet) {
  MetricData m;
  const int d = jet.dim;
  m.g = jet.d1.transpose() * jet.d1;
  Eigen::LLT<SmallMat> llt(m.g);
  if (llt.info() != Eigen::Success) {
    throw ChartDegeneracyError("metric is not positive definite");
  }
  const SmallMat L = llt.matrixL();
  double det_root = 1.0;
  for (int i = 0; i < d; ++i) det_root *= L(i, i);
  if (!(det_root > 1e-150)) throw ChartDegeneracyError("metric is singular");
  m.sqrt_det = det_root;
  m.g_inv = llt.solve(SmallMat::Identity(d, d));
  return m;
}

MetricData metric_data(const Chart& chart, const Coords& u) {
  try {
    return metric_data(chart.jet(u, 1));
  } catch (const ChartDegeneracyError& e) {
    throw ChartDegeneracyError(std::string(e.what()) + " at " + describe(u));
  }
}

Mat8 FrameField::full_frame() const {
  Mat8 m;
  m.col(0) = x;
  m.block(0, 1, 8, tangent.cols()) = tangent;
  m.block(0, 1 + tangent.cols(), 8, normal.cols()) = normal;
  return m;
}

namespace {

// Removes from v its components along x and the given orthonormal columns.
// Two passes keep the result orthogonal to working precision.
Vec8 orthogonalize(const Vec8& x, const Frame8& a, int a_cols, const Frame8& b, int b_cols, Vec8 v) {
  for (int pass = 0; pass < 2; ++pass) {
    v -= x.dot(v) * x;
    for (int i = 0; i < a_cols; ++i) v -= a.col(i).dot(v) * a.col(i);
    for (int i = 0; i < b_cols; ++i) v -= b.col(i).dot(v) * b.col(i);
  }
  return v;
}

}  // namespace

FrameField frames_at(const Jet& jet, std::span<const AmbientField> normal_hint) {
  const int d = jet.dim;
  const int k = 7 - d;
  FrameField f;
  f.x = jet.x;
  f.tangent.resize(8, d);
  f.normal.resize(8, k);
  f.tangent_coeffs = SmallMat::Identity(d, d);

  // Gram-Schmidt on dF_1..dF_d, tracking coefficients so E = dF * T.
  for (int a = 0; a < d; ++a) {
    Vec8 v = jet.d1.col(a);
    for (int pass = 0; pass < 2; ++pass) {
      for (int b = 0; b < a; ++b) {
        const double c = f.tangent.col(b).dot(v);
        v -= c * f.tangent.col(b);
        f.tangent_coeffs.col(a) -= c * f.tangent_coeffs.col(b);
      }
    }
    const double n = v.norm();
    if (!(n > 1e-12 * std::max(1.0, jet.d1.col(a).norm()))) {
      throw ChartDegeneracyError("tangent vectors are linearly dependent");
    }
    f.tangent.col(a) = v / n;
    f.tangent_coeffs.col(a) /= n;
  }

  if (static_cast<int>(normal_hint.size()) > k) {
    throw InvalidArgument("more normal hints than the codimension");
  }
  int filled = 0;
  for (const AmbientField& hint : normal_hint) {
    Vec8 v = orthogonalize(f.x, f.tangent, d, f.normal, filled, hint(f.x));
    const double n = v.norm();
    if (!(n > 1e-8)) throw ChartDegeneracyError("normal hint '" + hint.label + "' is degenerate");
    f.normal.col(filled++) = v / n;
  }
  for (int e = 0; e < 8 && filled < k; ++e) {
    Vec8 v = orthogonalize(f.x, f.tangent, d, f.normal, filled, Vec8::Unit(e));
    const double n = v.norm();
    if (n > 1e-6) f.normal.col(filled++) = v / n;
  }
  if (filled != k) throw ChartDegeneracyError("could not complete the normal frame");
  return f;
}

FrameField frames_at(const Chart& chart, const Coords& u, std::span<const AmbientField> normal_hint) {
  try {
    FrameField f = frames_at(chart.jet(u, 1), normal_hint);
    f.u = u;
    return f;
  } catch (const ChartDegeneracyError& e) {
    throw ChartDegeneracyError(std::string(e.what()) + " at " + describe(u));
  }
}

Vec8 project_to_sphere_tangent(const Vec8& x, const Vec8& v) { return v - x.dot(v) * x; }

Vec8 project_to_tangent(const FrameField& frames, const Vec8& v) {
  Vec8 out = Vec8::Zero();
  for (int a = 0; a < frames.dim(); ++a) out += frames.tangent.col(a).dot(v) * frames.tangent.col(a);
  return out;
}

Vec8 project_to_normal(const FrameField& frames, const Vec8& v) {
  return v - frames.x.dot(v) * frames.x - project_to_tangent(frames, v);
}

namespace {

void check_stencil(const Chart& chart, const Coords& u, const Coords& direction, double reach) {
  for (int a = 0; a < chart.dim(); ++a) {
    const Axis& ax = chart.axes()[static_cast<std::size_t>(a)];
    if (ax.periodic) continue;
    const double r = std::abs(direction[a]) * reach;
    if (!(u[a] - r > ax.lo && u[a] + r < ax.hi)) {
      std::ostringstream msg;
      msg << "finite-difference stencil leaves the domain on axis " << a << " at " << describe(u);
      throw StencilError(msg.str());
    }
  }
}

}  // namespace

Vec8 sphere_covariant_derivative(const Chart& chart, const AmbientField& field, const FrameField& frames,
                                 int direction, double h) {
  const Vec8 X = frames.tangent.col(direction);
  Vec8 D;
  if (field.has_derivative()) {
    D = field.derivative(frames.x, X);
  } else {
    const Coords t = frames.tangent_coeffs.col(direction);
    check_stencil(chart, frames.u, t, h);
    const Vec8 xp = chart.position(frames.u + h * t);
    const Vec8 xm = chart.position(frames.u - h * t);
    D = (field(xp) - field(xm)) / (2.0 * h);
  }
  return project_to_sphere_tangent(frames.x, D);
}

Vec8 mean_curvature_vector(const Chart& chart, const Coords& u) {
  const Jet jet = chart.jet(u, 2);
  const MetricData md = metric_data(jet);
  FrameField frames = frames_at(jet);
  frames.u = u;
  Vec8 H = Vec8::Zero();
  for (int i = 0; i < jet.dim; ++i) {
    for (int j = 0; j < jet.dim; ++j) H += md.g_inv(i, j) * jet.second(i, j);
  }
  return project_to_normal(frames, H);
}

ChartField ChartField::scalar_ambient(std::function<double(const Vec8&)> f, std::function<Vec8(const Vec8&)> grad) {
  ChartField field;
  field.components = 1;
  field.value = [f](const Coords&, const Jet& jet) {
    FieldValue v(1);
    v[0] = f(jet.x);
    return v;
  };
  if (grad) {
    field.gradient = [grad](const Coords&, const Jet& jet) {
      const Vec8 g = grad(jet.x);
      FieldGradient out(1, jet.dim);
      for (int i = 0; i < jet.dim; ++i) out(0, i) = g.dot(jet.d1.col(i));
      return out;
    };
  }
  return field;
}

ChartField ChartField::scalar_coords(std::function<double(const Coords&)> f) {
  ChartField field;
  field.components = 1;
  field.value = [f](const Coords& u, const Jet&) {
    FieldValue v(1);
    v[0] = f(u);
    return v;
  };
  return field;
}

ChartField ChartField::constant(const FieldValue& c) {
  ChartField field;
  field.components = static_cast<int>(c.size());
  field.value = [c](const Coords&, const Jet&) { return c; };
  field.gradient = [c](const Coords&, const Jet& jet) {
    FieldGradient g = FieldGradient::Zero(c.size(), jet.dim);
    return g;
  };
  return field;
}

namespace {

FieldGradient field_gradient(const Chart& chart, const ChartField& f, const Coords& p, const Jet& jet, double h) {
  if (f.gradient) return f.gradient(p, jet);
  FieldGradient g(f.components, chart.dim());
  for (int j = 0; j < chart.dim(); ++j) {
    Coords up = p, dn = p;
    up[j] += h;
    dn[j] -= h;
    g.col(j) = (f.value(up, chart.jet(up, 1)) - f.value(dn, chart.jet(dn, 1))) / (2.0 * h);
  }
  return g;
}

FieldValue laplace_divergence(const Chart& chart, const ChartField& f, const Coords& u, double h) {
  const int d = chart.dim();
  Coords ones = Coords::Ones(d);
  check_stencil(chart, u, ones, f.gradient ? h : 2.0 * h);

  FieldValue acc = FieldValue::Zero(f.components);
  for (int i = 0; i < d; ++i) {
    Coords up = u, dn = u;
    up[i] += h;
    dn[i] -= h;
    const Jet jp = chart.jet(up, 1);
    const Jet jm = chart.jet(dn, 1);
    const MetricData mp = metric_data(jp);
    const MetricData mm = metric_data(jm);
    const FieldGradient gp = field_gradient(chart, f, up, jp, h);
    const FieldGradient gm = field_gradient(chart, f, dn, jm, h);
    // flux component i: sqrt(g) sum_j g^{ij} d_j f
    const FieldValue jplus = mp.sqrt_det * (gp * mp.g_inv.col(i));
    const FieldValue jminus = mm.sqrt_det * (gm * mm.g_inv.col(i));
    acc += (jplus - jminus) / (2.0 * h);
  }
  const MetricData m0 = metric_data(chart, u);
  return acc / m0.sqrt_det;
}

FieldValue laplace_extrinsic(const Chart& chart, const ChartField& f, const Coords& u, double h) {
  const int d = chart.dim();
  const Jet jet = chart.jet(u, 2);
  const MetricData md = metric_data(jet);

  Coords steps(d);
  for (int i = 0; i < d; ++i) steps[i] = h * std::clamp(jet.d1.col(i).norm(), 1e-2, 1.0);
  check_stencil(chart, u, steps / h, f.gradient ? h : 2.0 * h);

  // hess(:, i, j) ~ d_i (d_j f); columns are symmetrized below.
  std::vector<FieldGradient> dgrad(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    Coords up = u, dn = u;
    up[i] += steps[i];
    dn[i] -= steps[i];
    const FieldGradient gp = field_gradient(chart, f, up, chart.jet(up, 1), h);
    const FieldGradient gm = field_gradient(chart, f, dn, chart.jet(dn, 1), h);
    dgrad[static_cast<std::size_t>(i)] = (gp - gm) / (2.0 * steps[i]);
  }
  const FieldGradient g0 = field_gradient(chart, f, u, jet, h);

  // contracted Christoffel vector c^k = g^ij Gamma^k_ij
  SmallVec trace_second = SmallVec::Zero(d);
  Vec8 mean = Vec8::Zero();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) mean += md.g_inv(i, j) * jet.second(i, j);
  }
  for (int l = 0; l < d; ++l) trace_second[l] = mean.dot(jet.d1.col(l));
  const SmallVec christoffel = md.g_inv * trace_second;

  FieldValue acc = -(g0 * christoffel);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double w = md.g_inv(i, j);
      if (w == 0.0) continue;
      if (i == j) {
        acc += w * dgrad[static_cast<std::size_t>(i)].col(i);
      } else {
        acc += 0.5 * w * (dgrad[static_cast<std::size_t>(i)].col(j) + dgrad[static_cast<std::size_t>(j)].col(i));
      }
    }
  }
  return acc;
}

FieldValue laplace_once(const Chart& chart, const ChartField& f, const Coords& u, double h, LaplaceScheme scheme) {
  return scheme == LaplaceScheme::divergence ? laplace_divergence(chart, f, u, h) : laplace_extrinsic(chart, f, u, h);
}

}  // namespace

FieldValue laplace_beltrami(const Chart& chart, const ChartField& f, const Coords& u, const LaplaceOptions& options) {
  if (!options.richardson) return laplace_once(chart, f, u, options.h, options.scheme);
  const FieldValue coarse = laplace_once(chart, f, u, options.h, options.scheme);
  const FieldValue fine = laplace_once(chart, f, u, 0.5 * options.h, options.scheme);
  return (4.0 * fine - coarse) / 3.0;
}

double laplace_beltrami_scalar(const Chart& chart, const ChartField& f, const Coords& u, const LaplaceOptions& options) {
  return laplace_beltrami(chart, f, u, options)[0];
}

std::vector<FieldValue> sample(const Chart& chart, const ChartField& f, int workers) {
  std::vector<FieldValue> out(chart.node_count());
  parallel_for(chart.node_count(), workers, [&](std::size_t n) {
    const Coords u = chart.node(n);
    out[n] = f.value(u, chart.jet(u, 1));
  });
  return out;
}

std::vector<double> node_weights(const Chart& chart, int workers) {
  std::vector<double> w(chart.node_count());
  parallel_for(chart.node_count(), workers, [&](std::size_t n) {
    w[n] = metric_data(chart, chart.node(n)).sqrt_det * chart.coordinate_weight(n);
  });
  return w;
}

FieldValue integrate(const Chart& chart, const ChartField& f, int workers) {
  const std::vector<FieldValue> values = sample(chart, f, workers);
  const std::vector<double> w = node_weights(chart, workers);
  FieldValue total = FieldValue::Zero(f.components);
  for (std::size_t n = 0; n < values.size(); ++n) total += w[n] * values[n];
  return total;
}

double integrate_scalar(const Chart& chart, const ChartField& f, int workers) { return integrate(chart, f, workers)[0]; }

double volume(const Chart& chart, int workers) {
  const std::vector<double> w = node_weights(chart, workers);
  return std::accumulate(w.begin(), w.end(), 0.0);
}

void write_grid_csv(std::ostream& os, const Chart& chart, std::span<const ChartField> fields,
                    std::span<const std::string> names, int workers) {
  const int d = chart.dim();
  os << "node";
  for (int i = 0; i < d; ++i) os << ",u" << i;
  for (int i = 0; i < 8; ++i) os << ",x" << i;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const std::string name = f < names.size() ? names[f] : "f" + std::to_string(f);
    if (fields[f].components == 1) {
      os << ',' << name;
    } else {
      for (int c = 0; c < fields[f].components; ++c) os << ',' << name << c;
    }
  }
  os << '\n';

  std::vector<std::string> rows(chart.node_count());
  parallel_for(chart.node_count(), workers, [&](std::size_t n) {
    std::ostringstream row;
    row << std::setprecision(17);
    const Coords u = chart.node(n);
    const Jet jet = chart.jet(u, 1);
    row << n;
    for (int i = 0; i < d; ++i) row << ',' << u[i];
    for (int i = 0; i < 8; ++i) row << ',' << jet.x[i];
    for (const ChartField& f : fields) {
      const FieldValue v = f.value(u, jet);
      for (int c = 0; c < v.size(); ++c) row << ',' << v[c];
    }
    row << '\n';
    rows[n] = row.str();
  });
  for (const std::string& r : rows) os << r;
}

}  // namespace octoverify
