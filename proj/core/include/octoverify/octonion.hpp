#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "octoverify/types.hpp"

namespace octoverify {

inline constexpr int kMaxCdLevel = 4;

/// An element of the Cayley-Dickson algebra at `level` n, i.e. a point of
/// R^(2^n) with the doubling product
///   (x1, x2)(y1, y2) = (x1 y1 - conj(y2) x2, y2 x1 + x2 conj(y1)).
/// Level 0 is R, 1 is C, 2 is H, 3 is O, 4 the sedenions (not normed).
class CDElement {
 public:
  CDElement() = default;
  /// Zero element at `level`.
  explicit CDElement(int level);
  CDElement(int level, std::vector<double> coords);
  CDElement(int level, std::initializer_list<double> coords);

  static CDElement one(int level);
  static CDElement basis(int level, int index);
  static CDElement from_vec8(const Vec8& v);

  int level() const noexcept { return level_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  double norm() const;
  double norm_squared() const;
  double real() const { return coords_.empty() ? 0.0 : coords_.front(); }

  /// Re(x) = (x + conj x)/2 as an element (only coordinate 0 survives).
  CDElement re() const;
  /// Im(x) = x - Re(x).
  CDElement im() const;

  Vec8 to_vec8() const;

  CDElement operator+(const CDElement& o) const;
  CDElement operator-(const CDElement& o) const;
  CDElement operator-() const;
  CDElement operator*(double s) const;

  /// Maximum coordinate difference; levels must agree.
  double distance_inf(const CDElement& o) const;

  bool operator==(const CDElement&) const = default;

 private:
  int level_ = 0;
  std::vector<double> coords_{0.0};
};

CDElement cd_multiply(const CDElement& x, const CDElement& y);
CDElement cd_conjugate(const CDElement& x);
/// x^-1 = conj(x)/|x|^2. Throws DomainError for the zero element.
CDElement cd_inverse(const CDElement& x);

inline CDElement operator*(const CDElement& x, const CDElement& y) { return cd_multiply(x, y); }

/// Raw recursive product on spans of length 2^n; used by CDElement and by
/// the basis-table generator. `out` must not alias the inputs.
void cd_multiply_raw(std::span<const double> x, std::span<const double> y, std::span<double> out);

namespace octonion {

/// Multiplication table of the standard units: e_i e_j = sign(i,j) e_index(i,j).
struct BasisTable {
  std::array<std::array<int, 8>, 8> index{};
  std::array<std::array<int, 8>, 8> sign{};
};

/// Generated once from the Cayley-Dickson recursion (thread-safe lazy init).
const BasisTable& basis_table();

/// Table-driven octonion product; agrees with cd_multiply at level 3.
Vec8 mul(const Vec8& x, const Vec8& y);
Vec8 conj(const Vec8& x);
inline double re(const Vec8& x) { return x[0]; }
inline Vec8 unit(int i) { return Vec8::Unit(i); }
inline Vec8 one() { return Vec8::Unit(0); }

/// x^-1 for x != 0. Throws DomainError for the zero octonion.
Vec8 inverse(const Vec8& x);

/// Gamma_x(v) = L_{x^-1}(v) = x^-1 v for unit x. Throws DomainError when
/// |x| differs from 1 by more than `unit_tol`.
Vec8 gamma_map(const Vec8& x, const Vec8& v, double unit_tol = 1e-10);

/// Killing field V(x) = x v of S^7 for imaginary v and unit x.
Vec8 killing_field(const Vec8& v, const Vec8& x, double tol = 1e-10);

}  // namespace octonion

/// Matrix of L_base (v -> base v) or R_base (v -> v base) on R^8.
struct TranslationMatrix {
  enum class Kind { left, right };

  Kind kind = Kind::left;
  Vec8 base = Vec8::Unit(0);
  Mat8 entries = Mat8::Identity();

  static TranslationMatrix left(const Vec8& base);
  static TranslationMatrix right(const Vec8& base);

  Vec8 apply(const Vec8& v) const { return entries * v; }
};

}  // namespace octoverify
