#pragma once

// Differentials of the maps Gr_2(R^n) -> RP^k and empirical rank certification.
//
// At an orthonormal pair (x, y), the horizontal tangent space of the
// Grassmannian is spanned by (b, 0) and (0, b) for b in span{x, y}^perp. The
// differential of [mu] is the projection of mu(dx, y) + mu(x, dy) onto the
// tangent space rep^perp of the target, divided by |mu|.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "grassmap/geometry.hpp"
#include "grassmap/maps.hpp"
#include "grassmap/tolerance.hpp"

namespace grassmap {

/// Orthonormal basis (as columns) of the orthogonal complement of span(cols).
inline Matrix complement_basis(const Matrix& cols) {
  const Eigen::Index n = cols.rows();
  const Eigen::Index r = cols.cols();
  Eigen::HouseholderQR<Matrix> qr(cols);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - r);
}

/// 2(n-2) orthonormal tangent directions, each a column [dx; dy] in R^(2n).
inline Matrix tangent_basis(const Plane& p) {
  const int n = p.ambient_dim();
  if (!spans_plane(p.x(), p.y())) throw Error(ErrorKind::DegeneratePlane, "tangent_basis");
  Matrix span(n, 2);
  span << p.x(), p.y();
  const Matrix b = complement_basis(span);
  const int m = n - 2;
  Matrix t = Matrix::Zero(2 * n, 2 * m);
  for (int i = 0; i < m; ++i) {
    t.col(i).head(n) = b.col(i);
    t.col(m + i).tail(n) = b.col(i);
  }
  return t;
}

/// k x 2(n-2) Jacobian of the map at P in orthonormal tangent coordinates.
inline Matrix differential_nu(const GrassmannMap& map, const Plane& p) {
  require_same_dim(p.ambient_dim(), map.n(), "differential_nu: plane dimension does not match map");
  const int n = p.ambient_dim();
  const Vector raw = map.raw(p.x(), p.y());
  const double scale = raw.norm();
  if (!(scale > 0.0)) throw Error(ErrorKind::DegeneratePlane, "differential_nu: zero representative");
  const Vector rep = raw / scale;
  const Matrix target = complement_basis(rep);  // (k+1) x k
  const Matrix tangent = tangent_basis(p);
  Matrix jac(target.cols(), tangent.cols());
  for (Eigen::Index c = 0; c < tangent.cols(); ++c) {
    const Vector dx = tangent.col(c).head(n);
    const Vector dy = tangent.col(c).tail(n);
    const Vector d = map.raw(dx, p.y()) + map.raw(p.x(), dy);
    jac.col(c) = target.transpose() * d / scale;
  }
  return jac;
}

inline Vector singular_values(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues(); }

struct RankReport {
  std::string map_id;
  int n = 0;
  int k = 0;
  int expected_rank = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> singular_values;
  double min_sigma_k = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  bool asserted = false;
  bool full_rank = false;

  /// Exploratory reports never fail.
  bool pass() const { return !asserted || full_rank; }
};

/// Maps for which submersion is a claim to check, not just a measurement.
inline bool submersion_is_asserted(const std::string& map_id) { return map_id == "nu4" || map_id == "nu8"; }

inline void accumulate(RankReport& report, const Vector& sv) {
  const double s1 = sv[0];
  const double sk = sv[report.expected_rank - 1];
  report.singular_values.emplace_back(sv.data(), sv.data() + sv.size());
  report.min_sigma_k = std::min(report.min_sigma_k, sk);
  report.min_ratio = std::min(report.min_ratio, s1 > 0.0 ? sk / s1 : 0.0);
  report.full_rank = report.min_ratio > report.tolerance;
}

inline RankReport rank_report_at(const GrassmannMap& map, const std::vector<Plane>& planes, std::uint64_t seed = 0,
                                 double tolerance = tolerances().rank) {
  RankReport report;
  report.map_id = map.id();
  report.n = map.n();
  report.k = map.k();
  report.expected_rank = std::min(map.k(), 2 * (map.n() - 2));
  report.seed = seed;
  report.tolerance = tolerance;
  report.asserted = submersion_is_asserted(map.id());
  for (const Plane& p : planes) {
    accumulate(report, singular_values(differential_nu(map, p)));
    ++report.samples;
  }
  return report;
}

/// Rank certificate over Haar-random planes; sample i uses substream (seed, i).
inline RankReport submersion_report(const GrassmannMap& map, int samples, std::uint64_t seed,
                                    double tolerance = tolerances().rank) {
  std::vector<Plane> planes;
  planes.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    planes.push_back(random_plane(map.n(), rng));
  }
  return rank_report_at(map, planes, seed, tolerance);
}

inline nlohmann::json to_json(const RankReport& r, bool include_spectra = false) {
  nlohmann::json j = {
      {"map", r.map_id},
      {"n", r.n},
      {"k", r.k},
      {"expected_rank", r.expected_rank},
      {"samples", r.samples},
      {"seed", r.seed},
      {"min_sigma_k", r.min_sigma_k},
      {"min_ratio", r.min_ratio},
      {"tolerance", r.tolerance},
      {"mode", r.asserted ? "asserted" : "exploratory"},
      {"verdict", r.full_rank ? "full-rank" : "rank-deficient"},
      {"pass", r.pass()},
  };
  if (include_spectra) j["singular_values"] = r.singular_values;
  return j;
}

}  // namespace grassmap
