#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace octoverify {

/// Every numerical threshold used by the library, in one place. Names are
/// the keys accepted by `--tolerance NAME=VAL`.
struct Tolerances {
  double algebra = 1e-12;      // algebra identities (norm law, inverse, alternativity)
  double division = 1e-10;     // solving x*a = y, b*x = y
  double unit = 1e-12;         // |x| = 1 for chart points and gamma values
  double frame = 1e-10;        // orthonormality of frames, Re(gamma) = 0
  double geometry = 1e-8;      // mean curvature, parallelism, commutators, symmetry, Gram identities
  double eigencheck = 1e-8;    // B*B eigenvector residual
  double constancy = 1e-6;     // spread of the spectrum over nodes
  double psd = 1e-10;          // allowed negative eigenvalue of the Gram matrix
  double jacobi = 1e-14;       // off-diagonal threshold of cyclic Jacobi
  double eigenmap = 1e-4;      // relative L2 residual of Lap(gamma) + lambda gamma
  double harmonic = 1e-4;      // component of Lap(gamma) orthogonal to gamma
  double lemma = 1e-4;         // pointwise Laplacian formula residual
  double hemisphere = 1e-3;    // best margin allowed for "no open hemisphere"
  double mean_zero = 1e-5;     // |quadrature mean of gamma|

  /// Sets a tolerance by name. Returns false for unknown names.
  bool set(std::string_view name, double value);
  std::optional<double> get(std::string_view name) const;
  static const std::vector<std::string>& names();
  std::map<std::string, double> as_map() const;
};

}  // namespace octoverify
