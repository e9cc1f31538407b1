#pragma once

// Fiber structure of nu4 and nu8.
//
//   xi4  : V_2(R^4) -> S^2 x S^2, (x, y) -> (y conj(x), conj(x) y)
//   zeta : Gr_2(R^4) -> (S^2 x S^2)/(u,v)~(-u,-v), with p o zeta = nu4
//   xi8  : Q = (S^7 x S^6)/~ -> Gr_2(R^8), [x, u] -> <x, u x>, with nu8 o xi8 = pr
//
// where (x, u) ~ (w x, +-u) for w on the circle S^1_u = {a + b u}.

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "grassmap/actions.hpp"
#include "grassmap/algebra.hpp"
#include "grassmap/error.hpp"
#include "grassmap/geometry.hpp"
#include "grassmap/maps.hpp"
#include "grassmap/tolerance.hpp"

namespace grassmap {

/// Orthonormal 2-frame (x, y) in R^4 or R^8.
class StiefelPair {
 public:
  StiefelPair(Vector x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
    const double tol = tolerances().unit;
    if (x_.size() != y_.size() || (x_.size() != 4 && x_.size() != 8)) {
      throw Error(ErrorKind::InvalidStiefelPair, "frame vectors must both live in R^4 or R^8");
    }
    if (std::abs(x_.norm() - 1.0) > tol || std::abs(y_.norm() - 1.0) > tol || std::abs(x_.dot(y_)) > tol) {
      throw Error(ErrorKind::InvalidStiefelPair, "frame is not orthonormal");
    }
  }

  explicit StiefelPair(const Plane& p) : StiefelPair(p.x(), p.y()) {}

  const Vector& x() const { return x_; }
  const Vector& y() const { return y_; }

 private:
  Vector x_;
  Vector y_;
};

using SpherePair = std::pair<Eigen::Vector3d, Eigen::Vector3d>;

inline SpherePair xi4(const StiefelPair& p) {
  if (p.x().size() != 4) throw Error(ErrorKind::InvalidStiefelPair, "xi4: frame must live in R^4");
  const Quaternion x = Quaternion::from_vector(p.x());
  const Quaternion y = Quaternion::from_vector(p.y());
  return {(y * conj(x)).im(), (conj(x) * y).im()};
}

/// SO(2) rotation of a frame: (x, y) -> (a x + b y, -b x + a y), a^2 + b^2 = 1.
inline StiefelPair rotate_frame(const StiefelPair& p, double angle) {
  const double a = std::cos(angle);
  const double b = std::sin(angle);
  return {a * p.x() + b * p.y(), -b * p.x() + a * p.y()};
}

/// A frame (x, y) with xi4(x, y) = (u, v): x v conj(x) = u and y = x v.
inline StiefelPair xi4_preimage(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  const double tol = tolerances().unit;
  if (std::abs(u.norm() - 1.0) > tol || std::abs(v.norm() - 1.0) > tol) {
    throw Error(ErrorKind::InvalidArgument, "xi4_preimage: targets must be unit vectors");
  }
  const Quaternion qu = Quaternion::pure(u);
  const Quaternion qv = Quaternion::pure(v);
  // x = (1 + u conj(v)) / |.| rotates v onto u; at u = -v any unit w
  // orthogonal to v does (w v conj(w) = -v).
  Quaternion x = Quaternion(1, 0, 0, 0) + qu * conj(qv);
  if (x.norm() < 1e-6) {
    Eigen::Vector3d axis = std::abs(v[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    Eigen::Vector3d w = axis - axis.dot(v) * v;
    x = Quaternion::pure(w / w.norm());
  } else {
    x = x * (1.0 / x.norm());
  }
  const Quaternion y = x * qv;
  return {x.vec(), y.vec()};
}

/// Point of P = (S^2 x S^2)/(u,v)~(-u,-v), stored with the first nonzero
/// coordinate of u positive.
struct ProductClass {
  Eigen::Vector3d u;
  Eigen::Vector3d v;

  static ProductClass canonical(Eigen::Vector3d u, Eigen::Vector3d v) {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(u[i]) > 1e-12) {
        if (u[i] < 0.0) {
          u = -u;
          v = -v;
        }
        break;
      }
    }
    return {u, v};
  }

  /// The class of u in RP^2.
  ProjectivePoint first() const { return ProjectivePoint(u); }
};

inline double class_distance(const ProductClass& a, const ProductClass& b) {
  Eigen::Matrix<double, 6, 1> pa, pb;
  pa << a.u, a.v;
  pb << b.u, b.v;
  return std::min((pa - pb).norm(), (pa + pb).norm());
}

inline ProductClass zeta(const Plane& p) {
  require_same_dim(p.ambient_dim(), 4, "zeta: plane must live in R^4");
  const auto [u, v] = xi4(StiefelPair(p));
  return ProductClass::canonical(u, v);
}

// ---------------------------------------------------------------------------

/// w = a + b u on the circle S^1_u.
struct CircleElement {
  Octonion u;
  double alpha;
  double beta;

  static CircleElement at_angle(const Octonion& u, double angle) { return {u, std::cos(angle), std::sin(angle)}; }

  Octonion value() const { return Octonion::real(alpha) + u * beta; }
};

/// Representative (x, u) of a point of Q: x unit, u unit and pure.
class QPoint {
 public:
  QPoint(Octonion x, Octonion u) : x_(x), u_(u) {
    const double tol = tolerances().unit;
    if (std::abs(x_.norm() - 1.0) > tol || std::abs(u_.norm() - 1.0) > tol || std::abs(u_.re()) > tol) {
      throw Error(ErrorKind::InvalidQPoint, "QPoint needs a unit x and a unit pure u");
    }
  }

  const Octonion& x() const { return x_; }
  const Octonion& u() const { return u_; }

  /// The equivalent representative (w x, sign * u).
  QPoint moved(const CircleElement& w, int sign) const { return {w.value() * x_, u_ * static_cast<double>(sign)}; }

 private:
  Octonion x_;
  Octonion u_;
};

inline Plane xi8(const QPoint& q) { return orthonormalize(q.x().vec(), (q.u() * q.x()).vec()); }

/// [x, y conj(x)] for an orthonormal spanning pair (x, y).
inline QPoint xi8_inverse(const Plane& p) {
  require_same_dim(p.ambient_dim(), 8, "xi8_inverse: plane must live in R^8");
  const Octonion x = Octonion::from_vector(p.x());
  const Octonion y = Octonion::from_vector(p.y());
  Octonion u = y * conj(x);
  u[0] = 0.0;  // vanishes up to rounding for an orthonormal pair
  return {x, u * (1.0 / u.norm())};
}

/// Planes <x, u x> for random unit x; all lie in the fiber of nu8 over [u].
inline std::vector<Plane> fiber_sample(const Octonion& u, int count, Rng& rng) {
  require_pure(u, "fiber_sample: u must be pure");
  if (std::abs(u.norm() - 1.0) > tolerances().unit) {
    throw Error(ErrorKind::InvalidArgument, "fiber_sample: u must be a unit octonion");
  }
  std::vector<Plane> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(xi8(QPoint(random_unit_octonion(rng), u)));
  return out;
}

/// |(x'|x)|^2 + |(x'|u x)|^2; equals 1 exactly when x' lies on the circle S^1_u x.
inline double circle_criterion(const Octonion& x, const Octonion& x_prime, const Octonion& u) {
  const double a = inner(x_prime, x);
  const double b = inner(x_prime, u * x);
  return a * a + b * b;
}

}  // namespace grassmap
