#include "octoverify/octonion.hpp"

#include <cmath>
#include <sstream>

#include "octoverify/errors.hpp"

namespace octoverify {

namespace {

std::size_t dim_of(int level) { return std::size_t{1} << level; }

void check_level(int level) {
  if (level < 0 || level > kMaxCdLevel) {
    std::ostringstream msg;
    msg << "Cayley-Dickson level " << level << " outside [0, " << kMaxCdLevel << "]";
    throw InvalidArgument(msg.str());
  }
}

void conj_raw(std::span<const double> x, std::span<double> out) {
  out[0] = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = -x[i];
}

}  // namespace

// The recursion conj(x1, x2) = (conj x1, -x2) unrolls to "negate everything
// but the real coordinate", which conj_raw uses directly.
void cd_multiply_raw(std::span<const double> x, std::span<const double> y, std::span<double> out) {
  const std::size_t n = x.size();
  if (n == 1) {
    out[0] = x[0] * y[0];
    return;
  }
  const std::size_t h = n / 2;
  auto x1 = x.first(h), x2 = x.subspan(h);
  auto y1 = y.first(h), y2 = y.subspan(h);

  std::array<double, 8> cy1{}, cy2{}, t1{}, t2{};
  std::span<double> c1(cy1.data(), h), c2(cy2.data(), h), a(t1.data(), h), b(t2.data(), h);
  conj_raw(y1, c1);
  conj_raw(y2, c2);

  // first half: x1 y1 - conj(y2) x2
  cd_multiply_raw(x1, y1, a);
  cd_multiply_raw(c2, x2, b);
  for (std::size_t i = 0; i < h; ++i) out[i] = a[i] - b[i];
  // second half: y2 x1 + x2 conj(y1)
  cd_multiply_raw(y2, x1, a);
  cd_multiply_raw(x2, c1, b);
  for (std::size_t i = 0; i < h; ++i) out[h + i] = a[i] + b[i];
}

CDElement::CDElement(int level) : level_(level) {
  check_level(level);
  coords_.assign(dim_of(level), 0.0);
}

CDElement::CDElement(int level, std::vector<double> coords) : level_(level), coords_(std::move(coords)) {
  check_level(level);
  if (coords_.size() != dim_of(level)) {
    std::ostringstream msg;
    msg << "level " << level << " element needs " << dim_of(level) << " coordinates, got "
        << coords_.size();
    throw InvalidArgument(msg.str());
  }
}

CDElement::CDElement(int level, std::initializer_list<double> coords)
    : CDElement(level, std::vector<double>(coords)) {}

CDElement CDElement::one(int level) {
  CDElement e(level);
  e.coords_[0] = 1.0;
  return e;
}

CDElement CDElement::basis(int level, int index) {
  CDElement e(level);
  if (index < 0 || static_cast<std::size_t>(index) >= e.dim()) {
    throw InvalidArgument("basis index out of range");
  }
  e.coords_[static_cast<std::size_t>(index)] = 1.0;
  return e;
}

CDElement CDElement::from_vec8(const Vec8& v) {
  return CDElement(3, std::vector<double>(v.data(), v.data() + 8));
}

double CDElement::norm_squared() const {
  double s = 0.0;
  for (double c : coords_) s += c * c;
  return s;
}

double CDElement::norm() const { return std::sqrt(norm_squared()); }

CDElement CDElement::re() const {
  CDElement r(level_);
  r.coords_[0] = coords_[0];
  return r;
}

CDElement CDElement::im() const {
  CDElement r = *this;
  r.coords_[0] = 0.0;
  return r;
}

Vec8 CDElement::to_vec8() const {
  if (level_ != 3) throw InvalidArgument("to_vec8 requires a level-3 element");
  return Eigen::Map<const Vec8>(coords_.data());
}

CDElement CDElement::operator+(const CDElement& o) const {
  if (o.level_ != level_) throw InvalidArgument("level mismatch in addition");
  CDElement r = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += o.coords_[i];
  return r;
}

CDElement CDElement::operator-(const CDElement& o) const { return *this + (-o); }

CDElement CDElement::operator-() const { return *this * -1.0; }

CDElement CDElement::operator*(double s) const {
  CDElement r = *this;
  for (double& c : r.coords_) c *= s;
  return r;
}

double CDElement::distance_inf(const CDElement& o) const {
  if (o.level_ != level_) throw InvalidArgument("level mismatch in distance");
  double d = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) d = std::max(d, std::abs(coords_[i] - o.coords_[i]));
  return d;
}

CDElement cd_multiply(const CDElement& x, const CDElement& y) {
  if (x.level() != y.level()) {
    std::ostringstream msg;
    msg << "cd_multiply level mismatch: " << x.level() << " vs " << y.level();
    throw InvalidArgument(msg.str());
  }
  std::vector<double> out(x.dim());
  cd_multiply_raw(x.coords(), y.coords(), out);
  return CDElement(x.level(), std::move(out));
}

CDElement cd_conjugate(const CDElement& x) {
  std::vector<double> out(x.dim());
  conj_raw(x.coords(), out);
  return CDElement(x.level(), std::move(out));
}

CDElement cd_inverse(const CDElement& x) {
  const double n2 = x.norm_squared();
  if (!(n2 > 0.0)) throw DomainError("cd_inverse: zero element has no inverse");
  return cd_conjugate(x) * (1.0 / n2);
}

namespace octonion {

const BasisTable& basis_table() {
  static const BasisTable table = [] {
    BasisTable t;
    std::array<double, 8> ei{}, ej{}, prod{};
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        ei.fill(0.0);
        ej.fill(0.0);
        ei[static_cast<std::size_t>(i)] = 1.0;
        ej[static_cast<std::size_t>(j)] = 1.0;
        cd_multiply_raw(ei, ej, prod);
        for (int k = 0; k < 8; ++k) {
          const double c = prod[static_cast<std::size_t>(k)];
          if (c != 0.0) {
            t.index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k;
            t.sign[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c > 0 ? 1 : -1;
          }
        }
      }
    }
    return t;
  }();
  return table;
}

Vec8 mul(const Vec8& x, const Vec8& y) {
  const BasisTable& t = basis_table();
  Vec8 out = Vec8::Zero();
  for (int i = 0; i < 8; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const auto& idx = t.index[static_cast<std::size_t>(i)];
    const auto& sgn = t.sign[static_cast<std::size_t>(i)];
    for (int j = 0; j < 8; ++j) {
      out[idx[static_cast<std::size_t>(j)]] += sgn[static_cast<std::size_t>(j)] * xi * y[j];
    }
  }
  return out;
}

Vec8 conj(const Vec8& x) {
  Vec8 c = -x;
  c[0] = x[0];
  return c;
}

Vec8 inverse(const Vec8& x) {
  const double n2 = x.squaredNorm();
  if (!(n2 > 0.0)) throw DomainError("octonion inverse: zero element has no inverse");
  return conj(x) / n2;
}

Vec8 gamma_map(const Vec8& x, const Vec8& v, double unit_tol) {
  const double n = x.norm();
  if (std::abs(n - 1.0) > unit_tol) {
    std::ostringstream msg;
    msg << "gamma_map: base point must be unit, |x| = " << n;
    throw DomainError(msg.str());
  }
  return mul(conj(x), v);
}

Vec8 killing_field(const Vec8& v, const Vec8& x, double tol) {
  if (std::abs(v[0]) > tol) throw DomainError("killing_field: v must be imaginary (Re v = 0)");
  if (std::abs(x.norm() - 1.0) > tol) throw DomainError("killing_field: x must lie on S^7");
  return mul(x, v);
}

}  // namespace octonion

TranslationMatrix TranslationMatrix::left(const Vec8& base) {
  TranslationMatrix m;
  m.kind = Kind::left;
  m.base = base;
  for (int j = 0; j < 8; ++j) m.entries.col(j) = octonion::mul(base, Vec8::Unit(j));
  return m;
}

TranslationMatrix TranslationMatrix::right(const Vec8& base) {
  TranslationMatrix m;
  m.kind = Kind::right;
  m.base = base;
  for (int j = 0; j < 8; ++j) m.entries.col(j) = octonion::mul(Vec8::Unit(j), base);
  return m;
}

}  // namespace octoverify
