#include "octoverify/catalog.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "octoverify/errors.hpp"

namespace octoverify {

int ProductSphereSpec::ambient_dim() const {
  int s = 0;
  for (const auto& f : factors) s += f.n + 1;
  return s;
}

int ProductSphereSpec::dim() const {
  int s = 0;
  for (const auto& f : factors) s += f.n;
  return s;
}

bool ProductSphereSpec::minimal(double tol) const {
  const double d = dim();
  for (const auto& f : factors) {
    if (std::abs(f.r * f.r - f.n / d) > tol) return false;
  }
  return true;
}

bool NormalHintSet::all_parallel() const {
  for (bool p : parallel) {
    if (!p) return false;
  }
  return true;
}

std::vector<double> minimal_radii(std::span<const int> factor_dims) {
  if (factor_dims.empty()) throw SpecError("minimal_radii: empty factor list");
  int d = 0, ambient = 0;
  for (int n : factor_dims) {
    if (n < 1) throw SpecError("minimal_radii: factor dimensions must be >= 1");
    d += n;
    ambient += n + 1;
  }
  if (ambient > 8) {
    throw SpecError("minimal_radii: sum(n_i + 1) = " + std::to_string(ambient) + " exceeds 8");
  }
  std::vector<double> r;
  for (int n : factor_dims) r.push_back(std::sqrt(static_cast<double>(n) / d));
  return r;
}

// ---------------------------------------------------------------------------
// Spec grammar

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  ManifoldSpec parse() {
    ManifoldSpec out;
    if (consume("compose:great:")) {
      const std::size_t m_pos = pos_;
      const int m = integer();
      expect("/product:");
      const std::size_t p_pos = pos_;
      std::vector<int> dims{integer()};
      expect(",");
      dims.push_back(integer());
      end();
      if (m < 3 || m > 7) throw SpecError("compose: great sphere dimension must be in [3, 7], got " + std::to_string(m), m_pos);
      if (dims[0] + dims[1] + 2 != m + 1) {
        throw SpecError("compose: inner product needs sum(n_i + 1) = m + 1 = " + std::to_string(m + 1) + ", got " +
                            std::to_string(dims[0] + dims[1] + 2),
                        p_pos);
      }
      GreatSphereSpec g{m, make_product(dims, {}, p_pos)};
      out = g;
    } else if (consume("great:")) {
      const std::size_t m_pos = pos_;
      const int m = integer();
      end();
      if (m < 1 || m > 6) throw SpecError("great: dimension must be in [1, 6], got " + std::to_string(m), m_pos);
      out = GreatSphereSpec{m, std::nullopt};
    } else if (consume("product:")) {
      const std::size_t p_pos = pos_;
      std::vector<int> dims{integer()};
      while (consume(",")) dims.push_back(integer());
      std::vector<double> radii;
      std::size_t r_pos = pos_;
      if (consume("@")) {
        r_pos = pos_;
        radii.push_back(real());
        while (consume(",")) radii.push_back(real());
      }
      end();
      ProductSphereSpec p = make_product(dims, radii, p_pos, r_pos);
      if (p.ambient_dim() != 8) {
        throw SpecError("product: sum(n_i + 1) = " + std::to_string(p.ambient_dim()) + " != 8", p_pos);
      }
      if (p.factors.size() < 2) throw SpecError("product: a single factor S^7 has codimension 0", p_pos);
      out = p;
    } else {
      throw SpecError("expected 'great:', 'product:' or 'compose:great:'", pos_);
    }
    return out;
  }

 private:
  static ProductSphereSpec make_product(const std::vector<int>& dims, const std::vector<double>& radii,
                                        std::size_t p_pos, std::size_t r_pos = 0) {
    int ambient = 0;
    for (int n : dims) {
      if (n < 1) throw SpecError("factor dimensions must be >= 1", p_pos);
      ambient += n + 1;
    }
    if (ambient > 8) throw SpecError("sum(n_i + 1) = " + std::to_string(ambient) + " != 8", p_pos);
    ProductSphereSpec p;
    if (radii.empty()) {
      const std::vector<double> r = minimal_radii(dims);
      for (std::size_t i = 0; i < dims.size(); ++i) p.factors.push_back({dims[i], r[i]});
      return p;
    }
    if (radii.size() != dims.size()) {
      throw SpecError("expected " + std::to_string(dims.size()) + " radii, got " + std::to_string(radii.size()), r_pos);
    }
    double sum_sq = 0.0;
    for (double r : radii) {
      if (!(r > 0.0)) throw SpecError("radii must be positive", r_pos);
      sum_sq += r * r;
    }
    if (std::abs(sum_sq - 1.0) > 1e-3) {
      std::ostringstream msg;
      msg << "radii must satisfy sum r_i^2 = 1, got " << sum_sq;
      throw SpecError(msg.str(), r_pos);
    }
    const double scale = std::abs(sum_sq - 1.0) > 1e-14 ? 1.0 / std::sqrt(sum_sq) : 1.0;
    for (std::size_t i = 0; i < dims.size(); ++i) p.factors.push_back({dims[i], radii[i] * scale});
    p.explicit_radii = true;
    return p;
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) throw SpecError("expected '" + std::string(token) + "'", pos_);
  }

  void end() {
    if (pos_ != text_.size()) throw SpecError("unexpected trailing input", pos_);
  }

  int integer() {
    int value = 0;
    const char* begin = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc() || ptr == begin) throw SpecError("expected an integer", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  double real() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc() || ptr == begin) throw SpecError("expected a number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_dims(const ProductSphereSpec& p) {
  std::string s;
  for (std::size_t i = 0; i < p.factors.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.factors[i].n);
  }
  return s;
}

}  // namespace

ManifoldSpec parse_spec(std::string_view text) { return SpecParser(text).parse(); }

std::string format_spec(const ManifoldSpec& spec) {
  if (const auto* g = std::get_if<GreatSphereSpec>(&spec)) {
    if (!g->inner) return "great:" + std::to_string(g->m);
    return "compose:great:" + std::to_string(g->m) + "/product:" + format_dims(*g->inner);
  }
  if (const auto* p = std::get_if<ProductSphereSpec>(&spec)) {
    std::string s = "product:" + format_dims(*p);
    if (p->explicit_radii) {
      s += '@';
      for (std::size_t i = 0; i < p->factors.size(); ++i) {
        if (i) s += ',';
        s += shortest(p->factors[i].r);
      }
    }
    return s;
  }
  return "custom:" + std::get<CustomSpec>(spec).name;
}

int spec_dim(const ManifoldSpec& spec) {
  if (const auto* g = std::get_if<GreatSphereSpec>(&spec)) return g->inner ? g->inner->dim() : g->m;
  if (const auto* p = std::get_if<ProductSphereSpec>(&spec)) return p->dim();
  throw SpecError("custom specs have no intrinsic dimension");
}

int spec_codim(const ManifoldSpec& spec) { return 7 - spec_dim(spec); }

// ---------------------------------------------------------------------------
// Block embedding of round spheres

namespace {

enum class Trig { one, sine, cosine };

// p-th derivative of the factor function at an angle with sin s, cos c.
inline double trig_value(Trig t, int p, double s, double c) {
  switch (t) {
    case Trig::one:
      return p == 0 ? 1.0 : 0.0;
    case Trig::sine:
      return p == 0 ? s : (p == 1 ? c : -s);
    case Trig::cosine:
      return p == 0 ? c : (p == 1 ? -s : -c);
  }
  return 0.0;
}

// Coordinate k (0..n) of S^n uses sin on angles before k, cos on angle k
// (none for k = n), and 1 after.
inline Trig trig_kind(int k, int l, int n) {
  if (k == n) return Trig::sine;
  if (l < k) return Trig::sine;
  if (l == k) return Trig::cosine;
  return Trig::one;
}

struct FactorLayout {
  int n = 1;
  double r = 1.0;
  int axis0 = 0;
  int coord0 = 0;
  bool rotated = false;
  Eigen::MatrixXd rotation;
};

void factor_jet(const FactorLayout& f, const Coords& u, int order, Jet& out) {
  const int n = f.n;
  std::array<double, 8> s{}, c{};
  for (int l = 0; l < n; ++l) {
    s[static_cast<std::size_t>(l)] = std::sin(u[f.axis0 + l]);
    c[static_cast<std::size_t>(l)] = std::cos(u[f.axis0 + l]);
  }
  // y: (n+1) values, dy: (n+1) x n, d2y: (n+1) x n(n+1)/2
  Eigen::Matrix<double, 8, 1> y;
  Eigen::Matrix<double, 8, 7> dy;
  Eigen::Matrix<double, 8, kMaxSecondJet> d2y;
  y.setZero();
  dy.setZero();
  if (order >= 2) d2y.setZero();

  for (int k = 0; k <= n; ++k) {
    std::array<std::array<double, 3>, 8> v{};
    for (int l = 0; l < n; ++l) {
      const Trig t = trig_kind(k, l, n);
      for (int p = 0; p < 3; ++p) {
        v[static_cast<std::size_t>(l)][static_cast<std::size_t>(p)] =
            trig_value(t, p, s[static_cast<std::size_t>(l)], c[static_cast<std::size_t>(l)]);
      }
    }
    auto prod_except = [&](int a, int pa, int b, int pb) {
      double acc = f.r;
      for (int l = 0; l < n; ++l) {
        int p = 0;
        if (l == a) p += pa;
        if (l == b) p += pb;
        acc *= v[static_cast<std::size_t>(l)][static_cast<std::size_t>(p)];
      }
      return acc;
    };
    y[k] = prod_except(-1, 0, -1, 0);
    if (order >= 1) {
      for (int l = 0; l < n; ++l) dy(k, l) = prod_except(l, 1, -1, 0);
    }
    if (order >= 2) {
      for (int l = 0; l < n; ++l) {
        for (int m = l; m < n; ++m) {
          d2y(k, pair_index(l, m, n)) = (l == m) ? prod_except(l, 2, -1, 0) : prod_except(l, 1, m, 1);
        }
      }
    }
  }

  const int rows = n + 1;
  auto place = [&](auto&& column, int dst_col, auto& target) {
    if (f.rotated) {
      target.block(f.coord0, dst_col, rows, 1) = f.rotation * column.head(rows);
    } else {
      target.block(f.coord0, dst_col, rows, 1) = column.head(rows);
    }
  };
  if (f.rotated) {
    out.x.segment(f.coord0, rows) = f.rotation * y.head(rows);
  } else {
    out.x.segment(f.coord0, rows) = y.head(rows);
  }
  if (order >= 1) {
    for (int l = 0; l < n; ++l) place(Eigen::Matrix<double, 8, 1>(dy.col(l)), f.axis0 + l, out.d1);
  }
  if (order >= 2) {
    for (int l = 0; l < n; ++l) {
      for (int m = l; m < n; ++m) {
        place(Eigen::Matrix<double, 8, 1>(d2y.col(pair_index(l, m, n))), pair_index(f.axis0 + l, f.axis0 + m, out.dim),
              out.d2);
      }
    }
  }
}

std::optional<Coords> factor_pullback(const FactorLayout& f, const Vec8& x, Coords& u) {
  const int n = f.n;
  Eigen::VectorXd y = x.segment(f.coord0, n + 1);
  if (f.rotated) y = f.rotation.transpose() * y;
  y /= f.r;
  for (int l = 0; l < n - 1; ++l) {
    const double tail = y.tail(n - l).norm();
    u[f.axis0 + l] = std::atan2(tail, y[l]);
  }
  double az = std::atan2(y[n], y[n - 1]);
  if (az < 0) az += 2.0 * std::numbers::pi;
  u[f.axis0 + n - 1] = az;
  return u;
}

}  // namespace

Chart block_sphere_chart(std::span<const SphereFactor> factors, int padding, std::span<const Eigen::MatrixXd> rotations) {
  std::vector<FactorLayout> layout;
  std::vector<Axis> axes;
  std::vector<std::string> loci;
  int coord = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    FactorLayout f;
    f.n = factors[i].n;
    f.r = factors[i].r;
    f.axis0 = static_cast<int>(axes.size());
    f.coord0 = coord;
    if (i < rotations.size() && rotations[i].size() > 0) {
      if (rotations[i].rows() != f.n + 1 || rotations[i].cols() != f.n + 1) {
        throw InvalidArgument("factor rotation has the wrong size");
      }
      f.rotated = true;
      f.rotation = rotations[i];
    }
    for (int l = 0; l < f.n - 1; ++l) {
      axes.push_back({0.0, std::numbers::pi, false});
      loci.push_back("u" + std::to_string(axes.size() - 1) + " in {0, pi}");
    }
    axes.push_back({0.0, 2.0 * std::numbers::pi, true});
    coord += f.n + 1;
    layout.push_back(f);
  }
  if (coord + padding != 8) throw InvalidArgument("block embedding must fill R^8");

  auto jet = [layout](const Coords& u, int order, Jet& out) {
    out.x.setZero();
    if (order >= 1) out.d1.setZero();
    if (order >= 2) out.d2.setZero();
    for (const FactorLayout& f : layout) factor_jet(f, u, order, out);
  };
  const int dim = static_cast<int>(axes.size());
  auto pullback = [layout, dim](const Vec8& x) -> std::optional<Coords> {
    Coords u(dim);
    for (const FactorLayout& f : layout) factor_pullback(f, x, u);
    return u;
  };
  Chart chart(std::move(axes), jet, pullback);
  chart.singular_loci = std::move(loci);
  return chart;
}

NormalHintSet block_sphere_hints(std::span<const SphereFactor> factors, int padding) {
  NormalHintSet hints;
  const int p = static_cast<int>(factors.size());

  // Coefficient rows: Gram-Schmidt of the standard basis of R^p inside the
  // hyperplane sum a_i r_i = 0.
  Eigen::VectorXd rhat(p);
  for (int i = 0; i < p; ++i) rhat[i] = factors[static_cast<std::size_t>(i)].r;
  rhat.normalize();
  std::vector<Eigen::VectorXd> rows;
  for (int i = 0; i < p && static_cast<int>(rows.size()) < p - 1; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(p, i);
    for (int pass = 0; pass < 2; ++pass) {
      v -= rhat.dot(v) * rhat;
      for (const auto& w : rows) v -= w.dot(v) * w;
    }
    if (v.norm() > 1e-8) rows.push_back(v.normalized());
  }

  std::vector<int> offsets;
  int coord = 0;
  for (const auto& f : factors) {
    offsets.push_back(coord);
    coord += f.n + 1;
  }

  for (std::size_t a = 0; a < rows.size(); ++a) {
    // nu(x) = sum_i (a_i / r_i) x_i; linear, so its derivative is the same map.
    Vec8 scale = Vec8::Zero();
    for (int i = 0; i < p; ++i) {
      const auto& f = factors[static_cast<std::size_t>(i)];
      scale.segment(offsets[static_cast<std::size_t>(i)], f.n + 1).setConstant(rows[a][i] / f.r);
    }
    AmbientField nu;
    nu.label = "nu" + std::to_string(a + 1);
    nu.value = [scale](const Vec8& x) -> Vec8 { return scale.cwiseProduct(x); };
    nu.derivative = [scale](const Vec8&, const Vec8& dx) -> Vec8 { return scale.cwiseProduct(dx); };
    hints.fields.push_back(std::move(nu));
    hints.parallel.push_back(true);
  }
  for (int j = 8 - padding; j < 8; ++j) {
    AmbientField e;
    e.label = "e" + std::to_string(j + 1);  // 1-based coordinate axis
    const Vec8 unit = Vec8::Unit(j);
    e.value = [unit](const Vec8&) -> Vec8 { return unit; };
    e.derivative = [](const Vec8&, const Vec8&) -> Vec8 { return Vec8::Zero(); };
    hints.fields.push_back(std::move(e));
    hints.parallel.push_back(true);
  }
  return hints;
}

SubmanifoldModel build_chart(const ManifoldSpec& spec, std::span<const Eigen::MatrixXd> rotations) {
  SubmanifoldModel model;
  model.name = format_spec(spec);
  if (const auto* g = std::get_if<GreatSphereSpec>(&spec)) {
    if (g->inner) {
      model.factors = g->inner->factors;
      model.padding = 8 - (g->m + 1);
      model.minimal = g->inner->minimal();
      model.hypersurface_normal = 0;
      model.hypersurface_sphere_dim = g->m;
    } else {
      model.factors = {SphereFactor{g->m, 1.0}};
      model.padding = 7 - g->m;
      model.minimal = true;
      // S^m is a totally geodesic hypersurface of the great S^{m+1}.
      if (g->m + 1 >= 3) {
        model.hypersurface_normal = 0;
        model.hypersurface_sphere_dim = g->m + 1;
      }
    }
  } else if (const auto* p = std::get_if<ProductSphereSpec>(&spec)) {
    model.factors = p->factors;
    model.padding = 8 - p->ambient_dim();
    model.minimal = p->minimal();
    if (p->factors.size() == 2 && model.padding == 0) {
      model.hypersurface_normal = 0;
      model.hypersurface_sphere_dim = 7;
    }
  } else {
    throw SpecError("custom specs are built by hand; no shipped implementation");
  }
  model.isoparametric = true;
  model.compact = true;
  model.chart = block_sphere_chart(model.factors, model.padding, rotations);
  model.hints = block_sphere_hints(model.factors, model.padding);
  model.dim = model.chart.dim();
  model.codim = 7 - model.dim;
  return model;
}

std::vector<CatalogEntry> catalog_list() {
  std::vector<std::string> names;
  for (int m = 2; m <= 6; ++m) names.push_back("great:" + std::to_string(m));
  for (const char* p : {"product:1,5", "product:2,4", "product:3,3", "product:1,1,3", "product:1,2,2", "product:1,1,1,1"}) {
    names.emplace_back(p);
  }
  for (const char* c : {"compose:great:3/product:1,1", "compose:great:4/product:1,2", "compose:great:5/product:1,3",
                        "compose:great:5/product:2,2", "compose:great:6/product:1,4", "compose:great:6/product:2,3"}) {
    names.emplace_back(c);
  }

  std::vector<CatalogEntry> out;
  for (const std::string& name : names) {
    CatalogEntry e;
    e.spec = parse_spec(name);
    e.name = format_spec(e.spec);
    e.dim = spec_dim(e.spec);
    e.codim = spec_codim(e.spec);
    if (const auto* g = std::get_if<GreatSphereSpec>(&e.spec)) {
      if (g->inner) {
        for (const auto& f : g->inner->factors) e.radii.push_back(f.r);
        e.minimal = g->inner->minimal();
      } else {
        e.radii = {1.0};
        e.minimal = true;
      }
    } else {
      const auto& p = std::get<ProductSphereSpec>(e.spec);
      for (const auto& f : p.factors) e.radii.push_back(f.r);
      e.minimal = p.minimal();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace octoverify
