#pragma once

// The bilinear maps mu_H, mu_O and the induced maps Gr_2(R^n) -> RP^k.
//
// Every map here is the projective class of a bilinear, antisymmetric
// expression in a spanning pair (x, y). The raw expressions stay total so
// that dependence => zero can be checked directly; the projective maps
// require a Plane.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "grassmap/algebra.hpp"
#include "grassmap/error.hpp"
#include "grassmap/geometry.hpp"

namespace grassmap {

enum class MuForm { Algebraic, Pluecker };

constexpr std::string_view to_string(MuForm f) { return f == MuForm::Algebraic ? "algebraic" : "pluecker"; }

namespace detail {

inline void require_len(const Vector& v, Eigen::Index n, const char* what) {
  if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, what);
}

/// Zero-extends v to length n.
inline Vector pad(const Vector& v, int n) {
  Vector out = Vector::Zero(n);
  out.head(v.size()) = v;
  return out;
}

// mu_O as combinations of Pluecker coordinates: row r lists (sign, i, j)
// terms contributing sign * p_ij to component e_(r+1).
struct PlueckerTerm {
  int sign;
  int i;
  int j;
};

inline constexpr std::array<std::array<PlueckerTerm, 4>, 7> kMuOctonionRows = {{
    {{{+1, 0, 1}, {+1, 2, 3}, {+1, 4, 5}, {-1, 6, 7}}},
    {{{+1, 0, 2}, {-1, 1, 3}, {+1, 4, 6}, {+1, 5, 7}}},
    {{{+1, 0, 3}, {+1, 1, 2}, {+1, 4, 7}, {-1, 5, 6}}},
    {{{+1, 0, 4}, {-1, 1, 5}, {-1, 2, 6}, {-1, 3, 7}}},
    {{{+1, 0, 5}, {+1, 1, 4}, {-1, 2, 7}, {+1, 3, 6}}},
    {{{+1, 0, 6}, {+1, 1, 7}, {+1, 2, 4}, {-1, 3, 5}}},
    {{{+1, 0, 7}, {-1, 1, 6}, {+1, 2, 5}, {+1, 3, 4}}},
}};

}  // namespace detail

/// (y conj(x) - x conj(y)) / 2 for x, y in H = R^4, as its 3 imaginary coordinates.
inline Vector mu_h(const Vector& x, const Vector& y, MuForm form = MuForm::Algebraic) {
  detail::require_len(x, 4, "mu_h: x must have 4 coordinates");
  detail::require_len(y, 4, "mu_h: y must have 4 coordinates");
  if (form == MuForm::Pluecker) {
    const PlueckerCoords p = pluecker(x, y);
    return Eigen::Vector3d(p(0, 1) + p(2, 3), p(0, 2) - p(1, 3), p(0, 3) + p(1, 2));
  }
  const Quaternion qx = Quaternion::from_vector(x);
  const Quaternion qy = Quaternion::from_vector(y);
  return ((qy * conj(qx) - qx * conj(qy)) * 0.5).im();
}

/// (y conj(x) - x conj(y)) / 2 for x, y in O = R^8, as its 7 imaginary coordinates.
inline Vector mu_o(const Vector& x, const Vector& y, MuForm form = MuForm::Algebraic) {
  detail::require_len(x, 8, "mu_o: x must have 8 coordinates");
  detail::require_len(y, 8, "mu_o: y must have 8 coordinates");
  if (form == MuForm::Pluecker) {
    const PlueckerCoords p = pluecker(x, y);
    Vector out(7);
    for (std::size_t r = 0; r < detail::kMuOctonionRows.size(); ++r) {
      double s = 0.0;
      for (const auto& t : detail::kMuOctonionRows[r]) s += t.sign * p(t.i, t.j);
      out[static_cast<Eigen::Index>(r)] = s;
    }
    return out;
  }
  const Octonion ox = Octonion::from_vector(x);
  const Octonion oy = Octonion::from_vector(y);
  return ((oy * conj(ox) - ox * conj(oy)) * 0.5).im();
}

using BilinearMap = std::function<Vector(const Vector&, const Vector&)>;

/// || mu(a x + b y, c x + d y) - det(A) mu(x, y) || for A = [[a, b], [c, d]].
inline double mu_bilinearity_check(const BilinearMap& mu, const Vector& x, const Vector& y,
                                   const Eigen::Matrix2d& a) {
  const auto [u, v] = change_basis(x, y, a);
  return (mu(u, v) - a.determinant() * mu(x, y)).norm();
}

// ---------------------------------------------------------------------------
// Raw (bilinear) representatives of the projective maps.

/// [mu_O(x1,y1), mu_O(x2,y2), x1 y2 - y1 x2] with x = (x1, x2) in R^8 + R^m,
/// where the second block is the subalgebra spanned by e0..e(m-1), m in {1,2,4,8}.
/// Length 7 + (m - 1) + 8.
inline Vector split_octonion_raw(const Vector& x, const Vector& y, int m) {
  if (m != 1 && m != 2 && m != 4 && m != 8) {
    throw Error(ErrorKind::UnsupportedDimension, "split_octonion_raw: block must be R, C, H or O");
  }
  detail::require_len(x, 8 + m, "split_octonion_raw: x has the wrong length");
  detail::require_len(y, 8 + m, "split_octonion_raw: y has the wrong length");
  const Vector x1 = x.head(8);
  const Vector y1 = y.head(8);
  const Vector x2 = detail::pad(x.tail(m), 8);
  const Vector y2 = detail::pad(y.tail(m), 8);
  const Octonion cross = Octonion::from_vector(x1) * Octonion::from_vector(y2) -
                         Octonion::from_vector(y1) * Octonion::from_vector(x2);
  Vector out(7 + (m - 1) + 8);
  out.head(7) = mu_o(x1, y1);
  // mu_O of a pair inside span{e0..e(m-1)} lies in span{e1..e(m-1)}.
  out.segment(7, m - 1) = mu_o(x2, y2).head(m - 1);
  out.tail(8) = cross.vec();
  return out;
}

inline Vector nu4_raw(const Vector& x, const Vector& y) { return mu_h(x, y); }
inline Vector nu8_raw(const Vector& x, const Vector& y) { return mu_o(x, y); }
inline Vector nu16_raw(const Vector& x, const Vector& y) { return split_octonion_raw(x, y, 8); }

/// [mu_O(x1,y1), mu_O(x2,y2), mu_O(x3,y3), P12, P13, P23], P_ij = x_i y_j - y_i x_j.
inline Vector nu24_raw(const Vector& x, const Vector& y) {
  detail::require_len(x, 24, "nu24: x must have 24 coordinates");
  detail::require_len(y, 24, "nu24: y must have 24 coordinates");
  std::array<Octonion, 3> xs, ys;
  Vector out(45);
  for (int b = 0; b < 3; ++b) {
    xs[b] = Octonion::from_vector(x.segment(8 * b, 8));
    ys[b] = Octonion::from_vector(y.segment(8 * b, 8));
    out.segment(7 * b, 7) = mu_o(x.segment(8 * b, 8), y.segment(8 * b, 8));
  }
  constexpr std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const auto [i, j] = pairs[t];
    out.segment(21 + 8 * static_cast<Eigen::Index>(t), 8) = (xs[i] * ys[j] - ys[i] * xs[j]).vec();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry of maps Gr_2(R^n) -> RP^k inducing pi_1-isomorphisms.

/// s with 2^s < n <= 2^(s+1), for n >= 3.
inline int dyadic_exponent(int n) {
  int s = 0;
  while ((1 << (s + 1)) < n) ++s;
  return s;
}

/// No pi_1-isomorphic map Gr_2(R^n) -> RP^k exists below this k.
inline int pi1_threshold(int n) { return (1 << (dyadic_exponent(n) + 1)) - 2; }

struct MapRegistryEntry {
  int n;
  int k;
  std::string construction;
  std::string source;

  friend bool operator==(const MapRegistryEntry&, const MapRegistryEntry&) = default;
};

using MapRegistry = std::vector<MapRegistryEntry>;

/// Smallest-k known map for each supported n.
inline const MapRegistry& default_registry() {
  static const MapRegistry registry = {
      {3, 2, "restriction-of(nu4,pad)", "restriction"},
      {4, 2, "nu4", "quaternion"},
      {5, 6, "restriction-of(nu8,pad)", "restriction"},
      {6, 6, "restriction-of(nu8,pad)", "restriction"},
      {7, 6, "restriction-of(nu8,pad)", "restriction"},
      {8, 6, "nu8", "octonion"},
      {9, 14, "restriction-of(nu16,block2=R)", "restriction"},
      {10, 15, "restriction-of(nu16,block2=C)", "restriction"},
      {11, 17, "restriction-of(nu16,block2=H,pad)", "restriction"},
      {12, 17, "restriction-of(nu16,block2=H)", "restriction"},
      {13, 21, "restriction-of(nu16,pad)", "restriction"},
      {14, 21, "restriction-of(nu16,pad)", "restriction"},
      {15, 21, "restriction-of(nu16,pad)", "restriction"},
      {16, 21, "nu16", "octonion-pair"},
      {24, 44, "nu24", "octonion-triple"},
  };
  return registry;
}

inline std::optional<MapRegistryEntry> find_entry(const MapRegistry& registry, int n) {
  std::optional<MapRegistryEntry> best;
  for (const auto& e : registry) {
    if (e.n == n && (!best || e.k < best->k)) best = e;
  }
  return best;
}

inline void write_registry_csv(std::ostream& os, const MapRegistry& registry) {
  os << "n,k,construction,source\n";
  auto field = [](const std::string& s) {
    return s.find(',') == std::string::npos ? s : '"' + s + '"';
  };
  for (const auto& e : registry) {
    os << e.n << ',' << e.k << ',' << field(e.construction) << ',' << field(e.source) << '\n';
  }
}

/// Parses `n,k,construction,source` rows. The construction field may not
/// contain commas unless it is wrapped in double quotes.
inline MapRegistry read_registry_csv(std::istream& is) {
  MapRegistry out;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("n,", 0) == 0) continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 4) throw Error(ErrorKind::UsageError, "registry CSV: expected 4 fields in '" + line + "'");
    try {
      out.push_back({std::stoi(fields[0]), std::stoi(fields[1]), fields[2], fields[3]});
    } catch (const std::exception&) {
      throw Error(ErrorKind::UsageError, "registry CSV: bad integer in '" + line + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

/// An evaluable map Gr_2(R^n) -> RP^k.
class GrassmannMap {
 public:
  GrassmannMap(std::string id, int n, int k, BilinearMap raw)
      : id_(std::move(id)), n_(n), k_(k), raw_(std::move(raw)) {}

  const std::string& id() const { return id_; }
  int n() const { return n_; }
  int k() const { return k_; }

  /// Bilinear representative in R^(k+1); zero iff x, y are dependent.
  Vector raw(const Vector& x, const Vector& y) const {
    detail::require_len(x, n_, "map: x has the wrong ambient dimension");
    detail::require_len(y, n_, "map: y has the wrong ambient dimension");
    return raw_(x, y);
  }

  ProjectivePoint operator()(const Plane& p) const { return ProjectivePoint(raw(p.x(), p.y())); }

 private:
  std::string id_;
  int n_;
  int k_;
  BilinearMap raw_;
};

/// The registered map for Gr_2(R^n); restrictions zero-pad into the parent domain.
inline GrassmannMap map_for_dimension(int n) {
  auto padded = [](int to, BilinearMap parent) -> BilinearMap {
    return [to, parent](const Vector& x, const Vector& y) {
      return parent(detail::pad(x, to), detail::pad(y, to));
    };
  };
  auto block = [](int m) -> BilinearMap {
    return [m](const Vector& x, const Vector& y) { return split_octonion_raw(x, y, m); };
  };
  switch (n) {
    case 3: return {"nu3", 3, 2, padded(4, nu4_raw)};
    case 4: return {"nu4", 4, 2, nu4_raw};
    case 5:
    case 6:
    case 7: return {"nu" + std::to_string(n), n, 6, padded(8, nu8_raw)};
    case 8: return {"nu8", 8, 6, nu8_raw};
    case 9: return {"nu9", 9, 14, block(1)};
    case 10: return {"nu10", 10, 15, block(2)};
    case 11: return {"nu11", 11, 17, padded(12, block(4))};
    case 12: return {"nu12", 12, 17, block(4)};
    case 13:
    case 14:
    case 15: return {"nu" + std::to_string(n), n, 21, padded(16, nu16_raw)};
    case 16: return {"nu16", 16, 21, nu16_raw};
    case 24: return {"nu24", 24, 44, nu24_raw};
    default: break;
  }
  throw Error(ErrorKind::UnsupportedDimension, "no registered map for n = " + std::to_string(n));
}

/// Ambient dimension of the unrestricted map a registered map comes from.
inline int parent_dimension(int n) { return n <= 4 ? 4 : n <= 8 ? 8 : n <= 16 ? 16 : 24; }

/// Rewrites a restricted representative in the parent's coordinates, so that
/// lift(n, raw_n(x, y)) == raw_parent(pad(x), pad(y)). Only the R/C/H second
/// blocks of the 16-dimensional family drop coordinates.
inline Vector lift_to_parent(int n, const Vector& raw) {
  if (n < 9 || n > 12) return raw;
  const int m = n == 9 ? 1 : n == 10 ? 2 : 4;
  Vector out = Vector::Zero(22);
  out.head(7 + (m - 1)) = raw.head(7 + (m - 1));
  out.tail(8) = raw.tail(8);
  return out;
}

/// Looks up a map by id ("nu4", "nu8", "nu12", ...).
inline GrassmannMap map_by_id(std::string_view id) {
  if (id.size() > 2 && id.substr(0, 2) == "nu") {
    int n = 0;
    for (char ch : id.substr(2)) {
      if (ch < '0' || ch > '9') throw Error(ErrorKind::UsageError, "unknown map id '" + std::string(id) + "'");
      n = n * 10 + (ch - '0');
    }
    return map_for_dimension(n);
  }
  throw Error(ErrorKind::UsageError, "unknown map id '" + std::string(id) + "'");
}

inline std::vector<int> registered_dimensions() {
  std::vector<int> ns;
  for (const auto& e : default_registry()) ns.push_back(e.n);
  return ns;
}

inline ProjectivePoint nu4(const Plane& p) { return map_for_dimension(4)(p); }
inline ProjectivePoint nu8(const Plane& p) { return map_for_dimension(8)(p); }
inline ProjectivePoint nu16(const Plane& p) { return map_for_dimension(16)(p); }
inline ProjectivePoint nu24(const Plane& p) { return map_for_dimension(24)(p); }

/// The registered map for P's ambient dimension.
inline ProjectivePoint nu_restricted(int n, const Plane& p) {
  require_same_dim(n, p.ambient_dim(), "nu_restricted: plane does not live in R^n");
  return map_for_dimension(n)(p);
}

// ---------------------------------------------------------------------------
// Sections: [u] -> <e0, (0, u)>.

inline Plane section_nu4(const ProjectivePoint& q) {
  require_same_dim(q.dim(), 2, "section_nu4: expected a point of RP^2");
  Vector x = Vector::Unit(4, 0);
  Vector y = Vector::Zero(4);
  y.tail(3) = q.rep();
  return orthonormalize(x, y);
}

inline Plane section_nu8(const ProjectivePoint& q) {
  require_same_dim(q.dim(), 6, "section_nu8: expected a point of RP^6");
  Vector x = Vector::Unit(8, 0);
  Vector y = Vector::Zero(8);
  y.tail(7) = q.rep();
  return orthonormalize(x, y);
}

}  // namespace grassmap
