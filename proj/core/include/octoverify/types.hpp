#pragma once

#include <Eigen/Core>

namespace octoverify {

/// A point of R^8 (the ambient space of S^7), also used for octonions.
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

inline constexpr int kMaxChartDim = 7;
inline constexpr int kMaxSecondJet = kMaxChartDim * (kMaxChartDim + 1) / 2;

/// Chart coordinates u in R^d, d <= 7. Fixed capacity, no heap traffic.
using Coords = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxChartDim, 1>;

/// Small dense matrices (metrics, shape operators, Gram matrices).
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;

/// 8 x m matrix of ambient vectors stored as columns (frames, first jets).
using Frame8 = Eigen::Matrix<double, 8, Eigen::Dynamic, 0, 8, 8>;

}  // namespace octoverify
