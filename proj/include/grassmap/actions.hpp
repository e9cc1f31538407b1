#pragma once

// Group actions on the source and target of nu4 and nu8.
//
// SO(4) acts on H = R^4 as x -> g x conj(h) and on the target RP^2 through
// v -> g v conj(g). Spin(8) is realized as triples (g+, g-, g0) of 8x8
// orthogonal matrices with g+(xy) = g0(x) g-(y); Spin(7) is the subgroup
// with g+ = g-, acting on Gr_2(R^8) by g+ and on RP^6 by g0.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "grassmap/algebra.hpp"
#include "grassmap/error.hpp"
#include "grassmap/geometry.hpp"
#include "grassmap/maps.hpp"
#include "grassmap/tolerance.hpp"

namespace grassmap {

using Matrix8 = Eigen::Matrix<double, 8, 8>;

/// Element of Sp(1)Sp(1) = SO(4): x -> g x conj(h) with |g| = |h| = 1.
struct So4Element {
  Quaternion g{1, 0, 0, 0};
  Quaternion h{1, 0, 0, 0};

  Eigen::Vector4d apply(const Eigen::Vector4d& x) const {
    return (g * Quaternion::from_vector(x) * conj(h)).vec();
  }

  Eigen::Matrix4d matrix() const {
    Eigen::Matrix4d m;
    for (int j = 0; j < 4; ++j) m.col(j) = apply(Eigen::Vector4d::Unit(j));
    return m;
  }
};

inline Quaternion random_unit_quaternion(Rng& rng) {
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    Quaternion q(rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
    const double n = q.norm();
    if (n > 1e-12) return q * (1.0 / n);
  }
  throw Error(ErrorKind::SamplingFailure, "random_unit_quaternion");
}

inline So4Element random_so4(Rng& rng) {
  So4Element a;
  a.g = random_unit_quaternion(rng);
  a.h = random_unit_quaternion(rng);
  return a;
}

inline Plane so4_apply(const So4Element& a, const Plane& p) {
  require_same_dim(p.ambient_dim(), 4, "so4_apply: plane must live in R^4");
  return orthonormalize(a.apply(p.x()), a.apply(p.y()));
}

/// g v conj(g) on pure quaternions, returned as a 3-vector.
inline Eigen::Vector3d rot3(const Quaternion& g, const Eigen::Vector3d& v) {
  return (g * Quaternion::pure(v) * conj(g)).im();
}

inline double check_nu4_equivariance(const So4Element& a, const Plane& p) {
  const ProjectivePoint lhs = nu4(so4_apply(a, p));
  const ProjectivePoint rhs(rot3(a.g, nu4(p).rep()));
  return proj_distance(lhs, rhs);
}

// ---------------------------------------------------------------------------

/// Matrix of x -> x c.
inline Matrix8 right_mul_matrix(const Octonion& c) {
  Matrix8 m;
  for (int j = 0; j < 8; ++j) m.col(j) = (Octonion::basis(j) * c).vec();
  return m;
}

inline Octonion apply(const Matrix8& m, const Octonion& x) {
  const Eigen::Matrix<double, 8, 1> v = m * x.vec();
  return Octonion::from_vector(v);
}

/// max over basis pairs of || g+(e_i e_j) - g0(e_i) g-(e_j) ||.
inline double triality_residual(const Matrix8& gp, const Matrix8& gm, const Matrix8& g0) {
  double worst = 0.0;
  for (int i = 0; i < 8; ++i) {
    const Octonion lhs_factor = Octonion::from_vector(g0.col(i));
    for (int j = 0; j < 8; ++j) {
      const SignedIndex& e = kOctonionTable(i, j);
      const Eigen::Matrix<double, 8, 1> lhs = e.sign * gp.col(e.index);
      const Octonion rhs = lhs_factor * Octonion::from_vector(gm.col(j));
      worst = std::max(worst, (lhs - rhs.vec()).norm());
    }
  }
  return worst;
}

/// An element of Spin(8) as a validated triality triple.
class SpinTriple {
 public:
  /// Validates the triple on all 64 basis pairs.
  SpinTriple(Matrix8 gp, Matrix8 gm, Matrix8 g0) : gp_(std::move(gp)), gm_(std::move(gm)), g0_(std::move(g0)) {
    residual_ = triality_residual(gp_, gm_, g0_);
    if (!(residual_ <= tolerances().triality)) {
      throw Error(ErrorKind::TrialityValidationFailure,
                  "triality residual " + std::to_string(residual_) + " exceeds tolerance");
    }
  }

  static SpinTriple identity() { return {Matrix8::Identity(), Matrix8::Identity(), Matrix8::Identity()}; }

  const Matrix8& g_plus() const { return gp_; }
  const Matrix8& g_minus() const { return gm_; }
  const Matrix8& g_zero() const { return g0_; }
  double validation_residual() const { return residual_; }

  /// Spin(7): g+ = g-, equivalently g0 fixes e0.
  bool is_spin7(double tol = tolerances().triality) const {
    return (gp_ - gm_).norm() <= tol && (g0_.col(0) - Matrix8::Identity().col(0)).norm() <= tol;
  }

  double orthogonality_residual() const {
    const Matrix8 id = Matrix8::Identity();
    return std::max({(gp_.transpose() * gp_ - id).norm(), (gm_.transpose() * gm_ - id).norm(),
                     (g0_.transpose() * g0_ - id).norm()});
  }

 private:
  Matrix8 gp_;
  Matrix8 gm_;
  Matrix8 g0_;
  double residual_ = 0.0;
};

inline void require_unit(const Octonion& u, const char* what) {
  if (std::abs(u.norm() - 1.0) > tolerances().unit) throw Error(ErrorKind::InvalidArgument, what);
}

/// The Clifford product A(u)A(v) for unit u, v, whose diagonal blocks are
/// g+ = -L_u L_conj(v) and g- = -L_conj(u) L_v. g0 is recovered from the
/// triality identity at y = e0: g0(x) = g+(x) conj(g-(e0)).
inline SpinTriple spin8_from_clifford_pair(const Octonion& u, const Octonion& v) {
  require_unit(u, "spin8_from_clifford_pair: u must be a unit octonion");
  require_unit(v, "spin8_from_clifford_pair: v must be a unit octonion");
  const Matrix8 gp = -left_mul_matrix(u) * left_mul_matrix(conj(v));
  const Matrix8 gm = -left_mul_matrix(conj(u)) * left_mul_matrix(v);
  const Octonion gm_unit = Octonion::from_vector(gm.col(0));
  const Matrix8 g0 = right_mul_matrix(conj(gm_unit)) * gp;
  return {gp, gm, g0};
}

/// Spin(7) generator from unit pure u, v: g+ = g- = L_u L_v, g0 fixes e0.
inline SpinTriple spin7_generator(const Octonion& u, const Octonion& v) {
  require_pure(u, "spin7_generator: u must be pure");
  require_pure(v, "spin7_generator: v must be pure");
  return spin8_from_clifford_pair(u, v);
}

/// Componentwise product a * b (b acts first).
inline SpinTriple triple_compose(const SpinTriple& a, const SpinTriple& b) {
  return {a.g_plus() * b.g_plus(), a.g_minus() * b.g_minus(), a.g_zero() * b.g_zero()};
}

/// || g0(x conj(y)) - g+(x) conj(g-(y)) ||.
inline double check_triality_corollary(const SpinTriple& t, const Octonion& x, const Octonion& y) {
  const Octonion lhs = apply(t.g_zero(), x * conj(y));
  const Octonion rhs = apply(t.g_plus(), x) * conj(apply(t.g_minus(), y));
  return (lhs - rhs).norm();
}

inline double check_nu8_equivariance(const SpinTriple& t, const Plane& p) {
  if (!t.is_spin7()) throw Error(ErrorKind::NotSpin7, "check_nu8_equivariance: element is not in Spin(7)");
  require_same_dim(p.ambient_dim(), 8, "check_nu8_equivariance: plane must live in R^8");
  const Plane moved = orthonormalize(t.g_plus() * p.x(), t.g_plus() * p.y());
  // g0 preserves the pure octonions when it fixes e0.
  const Vector image = t.g_zero().bottomRightCorner<7, 7>() * nu8(p).rep();
  return proj_distance(nu8(moved), ProjectivePoint(image));
}

// ---------------------------------------------------------------------------
// Random elements. A word of length L is a product of L Clifford pairs.

inline Octonion random_unit_octonion(Rng& rng) {
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    const Octonion o = Octonion::from_vector(rng.gaussian_vector(8));
    const double n = o.norm();
    if (n > 1e-12) return o * (1.0 / n);
  }
  throw Error(ErrorKind::SamplingFailure, "random_unit_octonion");
}

inline Octonion random_pure_unit_octonion(Rng& rng) {
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    const Octonion o = Octonion::pure(rng.gaussian_vector(7));
    const double n = o.norm();
    if (n > 1e-12) return o * (1.0 / n);
  }
  throw Error(ErrorKind::SamplingFailure, "random_pure_unit_octonion");
}

inline SpinTriple random_spin8_word(Rng& rng, int length) {
  SpinTriple t = SpinTriple::identity();
  for (int i = 0; i < length; ++i) {
    const Octonion u = random_unit_octonion(rng);
    const Octonion v = random_unit_octonion(rng);
    t = triple_compose(spin8_from_clifford_pair(u, v), t);
  }
  return t;
}

inline SpinTriple random_spin7_word(Rng& rng, int length) {
  SpinTriple t = SpinTriple::identity();
  for (int i = 0; i < length; ++i) {
    const Octonion u = random_pure_unit_octonion(rng);
    const Octonion v = random_pure_unit_octonion(rng);
    t = triple_compose(spin7_generator(u, v), t);
  }
  return t;
}

}  // namespace grassmap
