#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace clubench {

/// Cluster labels, one per point. Reference labellings use 0 for noise.
using Labels = Eigen::VectorXi;

/// Point matrices are stored one point per row.
template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

}  // namespace clubench
