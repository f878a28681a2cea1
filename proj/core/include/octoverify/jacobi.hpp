#pragma once

#include "octoverify/types.hpp"

namespace octoverify {

struct SymmetricEigen {
  SmallVec values;   // ascending
  SmallMat vectors;  // orthonormal columns, matching `values`
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for small symmetric matrices. Sweeps visit
/// (p, q), p < q, in lexicographic order; rotations whose off-diagonal
/// entry is below threshold * max(1, |A|_F) are skipped, so exactly
/// degenerate blocks keep the input basis. Eigenpairs are sorted ascending
/// (stable) and each eigenvector is signed so its first largest-magnitude
/// component is positive. Throws NumericalError after `max_sweeps`.
SymmetricEigen jacobi_eigen(const SmallMat& a, double threshold = 1e-14, int max_sweeps = 100);

}  // namespace octoverify
