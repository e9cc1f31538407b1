#pragma once

// Reference implementations used only by the tests. None of these call into
// the library's product code.

#include <array>
#include <cmath>

#include <Eigen/Dense>

namespace oracle {

/// Hamilton product written out by hand, (w, x, y, z) = w + xi + yj + zk.
inline Eigen::Vector4d hamilton(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

/// Upper triangle of the octonion table, e_i e_j for 1 <= i < j <= 7:
/// signed index, row i, column j.
inline constexpr std::array<std::array<int, 8>, 8> kUpperTriangle = {{
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, +3, -2, +5, -4, -7, +6},
    {0, 0, 0, +1, +6, +7, -4, -5},
    {0, 0, 0, 0, +7, -6, +5, -4},
    {0, 0, 0, 0, 0, +1, +2, +3},
    {0, 0, 0, 0, 0, 0, -3, +2},
    {0, 0, 0, 0, 0, 0, 0, -1},
    {0, 0, 0, 0, 0, 0, 0, 0},
}};

/// (sign, index) of e_i e_j from the upper triangle plus unit, square and
/// anticommutation rules.
inline std::pair<int, int> reference_product(int i, int j) {
  if (i == 0) return {1, j};
  if (j == 0) return {1, i};
  if (i == j) return {-1, 0};
  if (i < j) {
    const int v = kUpperTriangle[i][j];
    return {v > 0 ? 1 : -1, std::abs(v)};
  }
  const auto [s, k] = reference_product(j, i);
  return {-s, k};
}

/// Reflection of R^8 through the hyperplane orthogonal to unit u.
inline Eigen::Matrix<double, 8, 8> reflection(const Eigen::Matrix<double, 8, 1>& u) {
  return Eigen::Matrix<double, 8, 8>::Identity() - 2.0 * u * u.transpose();
}

/// Projective distance min(|a - b|, |a + b|) after normalizing.
inline double proj_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ua = a.normalized(), ub = b.normalized();
  return std::min((ua - ub).norm(), (ua + ub).norm());
}

}  // namespace oracle
