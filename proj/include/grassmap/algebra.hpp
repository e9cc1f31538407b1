#pragma once

// Quaternion and octonion arithmetic over a fixed signed basis table.
//
// Octonions are stored as 8 real coefficients over e0..e7; e0 is the unit.
// Products are expanded through an integer-signed index table so that every
// basis-level identity is exact. Quaternions are the subalgebra spanned by
// e0..e3 and reuse the octonion product.

#include <array>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include <Eigen/Dense>

#include "grassmap/error.hpp"
#include "grassmap/tolerance.hpp"

namespace grassmap {

struct SignedIndex {
  int sign;
  int index;

  friend constexpr bool operator==(const SignedIndex&, const SignedIndex&) = default;
};

class SignedBasisTable {
 public:
  static constexpr int kDim = 8;

  constexpr SignedBasisTable() : entries_{} {
    // Products e_i e_j for 1 <= i < j <= 7; the remaining entries follow
    // from e0 being the unit, e_i e_i = -e0 and anticommutativity.
    constexpr SignedIndex upper[8][8] = {
        {},
        {{}, {}, {+1, 3}, {-1, 2}, {+1, 5}, {-1, 4}, {-1, 7}, {+1, 6}},
        {{}, {}, {}, {+1, 1}, {+1, 6}, {+1, 7}, {-1, 4}, {-1, 5}},
        {{}, {}, {}, {}, {+1, 7}, {-1, 6}, {+1, 5}, {-1, 4}},
        {{}, {}, {}, {}, {}, {+1, 1}, {+1, 2}, {+1, 3}},
        {{}, {}, {}, {}, {}, {}, {-1, 3}, {+1, 2}},
        {{}, {}, {}, {}, {}, {}, {}, {-1, 1}},
        {},
    };
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) {
        if (i == 0) {
          entries_[i][j] = {+1, j};
        } else if (j == 0) {
          entries_[i][j] = {+1, i};
        } else if (i == j) {
          entries_[i][j] = {-1, 0};
        } else if (i < j) {
          entries_[i][j] = upper[i][j];
        } else {
          entries_[i][j] = {-upper[j][i].sign, upper[j][i].index};
        }
      }
    }
  }

  constexpr const SignedIndex& operator()(int i, int j) const { return entries_[i][j]; }

 private:
  SignedIndex entries_[kDim][kDim];
};

inline constexpr SignedBasisTable kOctonionTable{};

class Octonion {
 public:
  using Coeffs = std::array<double, 8>;

  constexpr Octonion() : c_{} {}
  constexpr explicit Octonion(const Coeffs& c) : c_(c) {}
  constexpr Octonion(double c0, double c1, double c2, double c3, double c4, double c5, double c6,
                     double c7)
      : c_{c0, c1, c2, c3, c4, c5, c6, c7} {}

  static constexpr Octonion basis(int i) {
    Octonion e;
    e.c_[static_cast<std::size_t>(i)] = 1.0;
    return e;
  }
  static constexpr Octonion real(double a) { return basis(0) * a; }

  /// Pure octonion from its 7 imaginary coordinates.
  static Octonion pure(const Eigen::Ref<const Eigen::VectorXd>& v) {
    Octonion o;
    for (int i = 0; i < 7; ++i) o.c_[static_cast<std::size_t>(i + 1)] = v[i];
    return o;
  }
  static Octonion from_vector(const Eigen::Ref<const Eigen::VectorXd>& v) {
    Octonion o;
    for (int i = 0; i < 8; ++i) o.c_[static_cast<std::size_t>(i)] = v[i];
    return o;
  }

  constexpr double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  constexpr double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  constexpr const Coeffs& coeffs() const { return c_; }

  constexpr double re() const { return c_[0]; }
  Eigen::Matrix<double, 7, 1> im() const {
    Eigen::Matrix<double, 7, 1> v;
    for (int i = 0; i < 7; ++i) v[i] = c_[static_cast<std::size_t>(i + 1)];
    return v;
  }
  Eigen::Matrix<double, 8, 1> vec() const { return Eigen::Map<const Eigen::Matrix<double, 8, 1>>(c_.data()); }

  constexpr double norm2() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  constexpr Octonion operator+(const Octonion& o) const {
    Octonion r;
    for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  constexpr Octonion operator-(const Octonion& o) const {
    Octonion r;
    for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  constexpr Octonion operator-() const { return *this * -1.0; }
  constexpr Octonion operator*(double s) const {
    Octonion r;
    for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] * s;
    return r;
  }
  friend constexpr Octonion operator*(double s, const Octonion& o) { return o * s; }

  constexpr Octonion operator*(const Octonion& o) const {
    Octonion r;
    for (int i = 0; i < 8; ++i) {
      const double a = c_[static_cast<std::size_t>(i)];
      if (a == 0.0) continue;
      for (int j = 0; j < 8; ++j) {
        const SignedIndex& e = kOctonionTable(i, j);
        r.c_[static_cast<std::size_t>(e.index)] += e.sign * (a * o.c_[static_cast<std::size_t>(j)]);
      }
    }
    return r;
  }

  friend constexpr bool operator==(const Octonion&, const Octonion&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Octonion& o) {
    os << '(';
    for (int i = 0; i < 8; ++i) os << (i ? ", " : "") << o[i];
    return os << ')';
  }

 private:
  Coeffs c_;
};

constexpr Octonion conj(const Octonion& x) {
  Octonion r = -x;
  r[0] = x[0];
  return r;
}

/// Real part of (x conj(y) + y conj(x)) / 2, i.e. the coefficient dot product.
constexpr double inner(const Octonion& x, const Octonion& y) {
  return 0.5 * (x * conj(y) + y * conj(x)).re();
}

constexpr Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c) {
  return (a * b) * c - a * (b * c);
}

inline bool is_pure(const Octonion& u, double rel_tol = tolerances().non_pure_rel) {
  return std::abs(u.re()) <= rel_tol * u.norm();
}

inline void require_pure(const Octonion& u, const char* what) {
  if (!is_pure(u)) throw Error(ErrorKind::NonPureInput, what);
}

/// (uv - vu) / 2 on pure octonions; the 7-dimensional vector product.
inline Octonion vector_product(const Octonion& u, const Octonion& v) {
  require_pure(u, "vector_product: first argument has a real part");
  require_pure(v, "vector_product: second argument has a real part");
  return (u * v - v * u) * 0.5;
}

/// Matrix of x -> u x.
inline Eigen::Matrix<double, 8, 8> left_mul_matrix(const Octonion& u) {
  Eigen::Matrix<double, 8, 8> m;
  for (int j = 0; j < 8; ++j) m.col(j) = (u * Octonion::basis(j)).vec();
  return m;
}

// ---------------------------------------------------------------------------

/// Quaternion over (1, i, j, k) = (e0, e1, e2, e3); products go through the
/// octonion table restricted to the first four coordinates.
class Quaternion {
 public:
  using Coeffs = std::array<double, 4>;

  constexpr Quaternion() : c_{} {}
  constexpr Quaternion(double w, double x, double y, double z) : c_{w, x, y, z} {}
  constexpr explicit Quaternion(const Coeffs& c) : c_(c) {}

  static constexpr Quaternion basis(int i) {
    Quaternion q;
    q.c_[static_cast<std::size_t>(i)] = 1.0;
    return q;
  }
  static Quaternion pure(const Eigen::Ref<const Eigen::VectorXd>& v) { return {0.0, v[0], v[1], v[2]}; }
  static Quaternion from_vector(const Eigen::Ref<const Eigen::VectorXd>& v) { return {v[0], v[1], v[2], v[3]}; }

  /// Restriction of an octonion to e0..e3; the remaining coordinates are dropped.
  static constexpr Quaternion from_octonion(const Octonion& o) { return {o[0], o[1], o[2], o[3]}; }
  constexpr Octonion to_octonion() const { return {c_[0], c_[1], c_[2], c_[3], 0, 0, 0, 0}; }

  constexpr double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  constexpr double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  constexpr double re() const { return c_[0]; }
  Eigen::Vector3d im() const { return {c_[1], c_[2], c_[3]}; }
  Eigen::Vector4d vec() const { return {c_[0], c_[1], c_[2], c_[3]}; }

  constexpr double norm2() const { return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]; }
  double norm() const { return std::sqrt(norm2()); }

  constexpr Quaternion operator*(const Quaternion& o) const {
    return from_octonion(to_octonion() * o.to_octonion());
  }
  constexpr Quaternion operator*(double s) const { return {c_[0] * s, c_[1] * s, c_[2] * s, c_[3] * s}; }
  constexpr Quaternion operator+(const Quaternion& o) const {
    return {c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]};
  }
  constexpr Quaternion operator-() const { return *this * -1.0; }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

 private:
  Coeffs c_;
};

constexpr Quaternion conj(const Quaternion& q) { return {q[0], -q[1], -q[2], -q[3]}; }

}  // namespace grassmap
