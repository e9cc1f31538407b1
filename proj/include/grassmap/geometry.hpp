#pragma once

// Planes in R^n, points of RP^k, Pluecker coordinates and seeded sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "grassmap/error.hpp"
#include "grassmap/tolerance.hpp"

namespace grassmap {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, what);
}

/// A 2-plane in R^n held as an ordered orthonormal spanning pair.
///
/// Construct through orthonormalize(); the pair is only canonical up to the
/// SO(2)/GL(2) freedom, so compare planes with plane_distance().
class Plane {
 public:
  Plane(Vector x, Vector y) : x_(std::move(x)), y_(std::move(y)) {}

  int ambient_dim() const { return static_cast<int>(x_.size()); }
  const Vector& x() const { return x_; }
  const Vector& y() const { return y_; }

  /// Orthogonal projector onto the plane.
  Matrix projector() const { return x_ * x_.transpose() + y_ * y_.transpose(); }

 private:
  Vector x_;
  Vector y_;
};

/// Singular values (s1 >= s2) of the 2 x n matrix with rows x, y.
inline std::pair<double, double> pair_singular_values(const Vector& x, const Vector& y) {
  const double a = x.squaredNorm();
  const double b = x.dot(y);
  const double c = y.squaredNorm();
  const double tr = a + c;
  const double det = std::max(a * c - b * b, 0.0);
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  const double lmax = 0.5 * (tr + disc);
  const double lmin = lmax > 0.0 ? det / lmax : 0.0;
  return {std::sqrt(lmax), std::sqrt(lmin)};
}

/// Gram-Schmidt onto an orthonormal pair spanning the same subspace with the
/// same orientation.
inline Plane orthonormalize(const Vector& x, const Vector& y) {
  require_same_dim(x.size(), y.size(), "orthonormalize: vectors differ in length");
  const auto [s1, s2] = pair_singular_values(x, y);
  if (!(s1 > 0.0) || s2 <= tolerances().degenerate_rel * s1) {
    throw Error(ErrorKind::DegeneratePlane, "orthonormalize: vectors are linearly dependent");
  }
  Vector u = x / x.norm();
  Vector v = y - u.dot(y) * u;
  // One re-orthogonalization pass keeps |(u|v)| at rounding level for nearly
  // parallel inputs.
  v -= u.dot(v) * u;
  v /= v.norm();
  return {std::move(u), std::move(v)};
}

/// Frobenius norm of the difference of orthogonal projectors.
inline double plane_distance(const Plane& p, const Plane& q) {
  require_same_dim(p.ambient_dim(), q.ambient_dim(), "plane_distance: ambient dimensions differ");
  return (p.projector() - q.projector()).norm();
}

/// Whether a pair of vectors spans a genuine plane.
inline bool spans_plane(const Vector& x, const Vector& y) {
  const auto [s1, s2] = pair_singular_values(x, y);
  return s1 > 0.0 && s2 > tolerances().degenerate_rel * s1;
}

// ---------------------------------------------------------------------------

/// A point of RP^k: a unit vector in R^(k+1) up to sign.
///
/// The stored representative has its first nonzero coordinate positive so
/// serialized output is reproducible; equality is still sign-insensitive.
class ProjectivePoint {
 public:
  /// Normalizes and sign-canonicalizes; throws DegeneratePlane on the zero vector.
  explicit ProjectivePoint(const Vector& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw Error(ErrorKind::DegeneratePlane, "zero vector has no projective class");
    rep_ = v / n;
    for (Eigen::Index i = 0; i < rep_.size(); ++i) {
      if (std::abs(rep_[i]) > 1e-14) {
        if (rep_[i] < 0.0) rep_ = -rep_;
        break;
      }
    }
  }

  int dim() const { return static_cast<int>(rep_.size()) - 1; }
  const Vector& rep() const { return rep_; }

 private:
  Vector rep_;
};

inline double proj_distance(const Vector& u, const Vector& v) {
  require_same_dim(u.size(), v.size(), "proj_distance: dimensions differ");
  return std::min((u - v).norm(), (u + v).norm());
}

inline double proj_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
  return proj_distance(a.rep(), b.rep());
}

// ---------------------------------------------------------------------------

/// Pluecker coordinates p_ij = x_i y_j - y_i x_j, 0 <= i < j < n, lexicographic.
class PlueckerCoords {
 public:
  PlueckerCoords(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {}

  int ambient_dim() const { return n_; }
  const std::vector<double>& values() const { return values_; }

  static std::size_t index(int n, int i, int j) {
    // Offset of row i in the lexicographic list, plus the column offset.
    const int row = i * n - i * (i + 1) / 2;
    return static_cast<std::size_t>(row + (j - i - 1));
  }

  /// p_ij with the antisymmetric extension p_ji = -p_ij, p_ii = 0.
  double operator()(int i, int j) const {
    if (i == j) return 0.0;
    if (i > j) return -values_[index(n_, j, i)];
    return values_[index(n_, i, j)];
  }

  double squared_sum() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
  }

 private:
  int n_;
  std::vector<double> values_;
};

inline PlueckerCoords pluecker(const Vector& x, const Vector& y) {
  require_same_dim(x.size(), y.size(), "pluecker: vectors differ in length");
  const int n = static_cast<int>(x.size());
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.push_back(x[i] * y[j] - y[i] * x[j]);
  return {n, std::move(p)};
}

// ---------------------------------------------------------------------------
// Seeded sampling. A root seed and a task index give an independent
// substream, so sweeps are reproducible regardless of evaluation order.

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t task = 0)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(task + 0x632be59bd9b4e019ULL))) {}

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }

  Vector gaussian_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

inline constexpr int kMaxSamplingAttempts = 100;

/// Rotation-invariant random plane: Gram-Schmidt of two Gaussian vectors.
inline Plane random_plane(int n, Rng& rng) {
  if (n < 3) throw Error(ErrorKind::UnsupportedDimension, "random_plane: n must be >= 3");
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    Vector x = rng.gaussian_vector(n);
    Vector y = rng.gaussian_vector(n);
    if (spans_plane(x, y)) return orthonormalize(x, y);
  }
  throw Error(ErrorKind::SamplingFailure, "random_plane: no independent pair drawn");
}

/// Uniform point of RP^k.
inline ProjectivePoint random_unit(int k, Rng& rng) {
  if (k < 1) throw Error(ErrorKind::UnsupportedDimension, "random_unit: k must be >= 1");
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    Vector v = rng.gaussian_vector(k + 1);
    if (v.norm() > 1e-12) return ProjectivePoint(v);
  }
  throw Error(ErrorKind::SamplingFailure, "random_unit: zero vector drawn repeatedly");
}

/// Gaussian 2x2 matrix with |det| >= 0.1.
inline Eigen::Matrix2d random_gl2(Rng& rng) {
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    Eigen::Matrix2d a;
    a << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
    if (std::abs(a.determinant()) >= 0.1) return a;
  }
  throw Error(ErrorKind::SamplingFailure, "random_gl2: no well-conditioned matrix drawn");
}

/// Basis change (x, y) -> (a x + b y, c x + d y) for a = [[a, b], [c, d]].
inline std::pair<Vector, Vector> change_basis(const Vector& x, const Vector& y, const Eigen::Matrix2d& a) {
  return {a(0, 0) * x + a(0, 1) * y, a(1, 0) * x + a(1, 1) * y};
}

// ---------------------------------------------------------------------------
// JSON: {"n": int, "x": [...], "y": [...]} and {"k": int, "rep": [...]}.

inline nlohmann::json to_json_array(const Vector& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

inline Vector from_json_array(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline nlohmann::json to_json(const Plane& p) {
  return {{"n", p.ambient_dim()}, {"x", to_json_array(p.x())}, {"y", to_json_array(p.y())}};
}

inline nlohmann::json to_json(const ProjectivePoint& q) {
  return {{"k", q.dim()}, {"rep", to_json_array(q.rep())}};
}

/// Reads a plane and orthonormalizes the stored pair.
inline Plane plane_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const Vector x = from_json_array(j.at("x"));
  const Vector y = from_json_array(j.at("y"));
  if (x.size() != n || y.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "plane JSON: vector length does not match n");
  }
  return orthonormalize(x, y);
}

inline ProjectivePoint projective_point_from_json(const nlohmann::json& j) {
  const int k = j.at("k").get<int>();
  const Vector rep = from_json_array(j.at("rep"));
  if (rep.size() != k + 1) throw Error(ErrorKind::DimensionMismatch, "point JSON: rep length is not k+1");
  return ProjectivePoint(rep);
}

}  // namespace grassmap
