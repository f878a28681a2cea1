#include "octoverify/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "octoverify/errors.hpp"

namespace octoverify {

SymmetricEigen jacobi_eigen(const SmallMat& input, double threshold, int max_sweeps) {
  const int n = static_cast<int>(input.rows());
  if (input.cols() != n) throw InvalidArgument("jacobi_eigen needs a square matrix");

  SmallMat a = 0.5 * (input + input.transpose());
  SmallMat v = SmallMat::Identity(n, n);
  const double cutoff = threshold * std::max(1.0, a.norm());

  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    }
    if (off <= cutoff) break;
    if (sweep >= max_sweeps) throw NumericalError("Jacobi eigensolver did not converge");

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= cutoff) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const int src = order[static_cast<std::size_t>(i)];
    out.values[i] = a(src, src);
    SmallVec col = v.col(src);
    int lead = 0;
    for (int k = 1; k < n; ++k) {
      if (std::abs(col[k]) > std::abs(col[lead]) + 1e-12) lead = k;
    }
    if (col[lead] < 0) col = -col;
    out.vectors.col(i) = col;
  }
  return out;
}

}  // namespace octoverify
