#include <gtest/gtest.h>

#include "grassmap/actions.hpp"
#include "grassmap/analysis.hpp"

using namespace grassmap;

namespace {

Vector unit(int n, int i) { return Vector::Unit(n, i); }

/// Central differences of t -> [raw(x + t dx, y + t dy)] as unit vectors in R^(k+1),
/// one column per tangent direction.
Matrix finite_difference_tangent(const GrassmannMap& map, const Plane& p, const Matrix& tangent, double h) {
  const int n = p.ambient_dim();
  const Vector r0 = map.raw(p.x(), p.y()).normalized();
  Matrix d(r0.size(), tangent.cols());
  for (Eigen::Index c = 0; c < tangent.cols(); ++c) {
    const Vector dx = tangent.col(c).head(n), dy = tangent.col(c).tail(n);
    Vector plus = map.raw(p.x() + h * dx, p.y() + h * dy).normalized();
    Vector minus = map.raw(p.x() - h * dx, p.y() - h * dy).normalized();
    if (plus.dot(r0) < 0) plus = -plus;
    if (minus.dot(r0) < 0) minus = -minus;
    d.col(c) = (plus - minus) / (2.0 * h);
  }
  return d;
}

}  // namespace

TEST(TangentBasis, Sizes) {
  const Matrix t4 = tangent_basis(orthonormalize(unit(4, 0), unit(4, 1)));
  EXPECT_EQ(t4.rows(), 8);
  EXPECT_EQ(t4.cols(), 4);
  const Matrix t8 = tangent_basis(orthonormalize(unit(8, 0), unit(8, 1)));
  EXPECT_EQ(t8.cols(), 12);
  // Directions built from e2 and e3 only.
  EXPECT_NEAR(t4.row(0).norm() + t4.row(1).norm() + t4.row(4).norm() + t4.row(5).norm(), 0.0, 1e-15);
}

TEST(TangentBasis, OrthonormalAndHorizontal) {
  Rng rng(81);
  for (int n : {4, 8, 16}) {
    const Plane p = random_plane(n, rng);
    const Matrix t = tangent_basis(p);
    EXPECT_LE((t.transpose() * t - Matrix::Identity(t.cols(), t.cols())).norm(), 1e-12);
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
      for (const Vector& d : {Vector(t.col(c).head(n)), Vector(t.col(c).tail(n))}) {
        EXPECT_NEAR(d.dot(p.x()), 0.0, 1e-12);
        EXPECT_NEAR(d.dot(p.y()), 0.0, 1e-12);
      }
    }
  }
}

TEST(Differential, AgreesWithFiniteDifferences) {
  Rng rng(82);
  for (const char* id : {"nu4", "nu8", "nu12", "nu16"}) {
    const GrassmannMap map = map_by_id(id);
    for (int t = 0; t < 100; ++t) {
      const Plane p = random_plane(map.n(), rng);
      const Matrix jac = differential_nu(map, p);
      ASSERT_EQ(jac.rows(), map.k());
      ASSERT_EQ(jac.cols(), 2 * (map.n() - 2));
      const Vector r = map.raw(p.x(), p.y()).normalized();
      const Matrix b = complement_basis(r);
      ASSERT_LE((b.transpose() * b - Matrix::Identity(b.cols(), b.cols())).norm(), 1e-12);
      ASSERT_LE((b.transpose() * r).norm(), 1e-12);
      const Matrix fd = finite_difference_tangent(map, p, tangent_basis(p), 1e-6);
      EXPECT_LE((b * jac - fd).cwiseAbs().maxCoeff(), 1e-5) << id;
    }
  }
}

TEST(Differential, BaseRanks) {
  const Matrix j4 = differential_nu(map_by_id("nu4"), orthonormalize(unit(4, 0), unit(4, 1)));
  EXPECT_EQ(j4.rows(), 2);
  EXPECT_EQ(j4.cols(), 4);
  EXPECT_EQ(Eigen::JacobiSVD<Matrix>(j4).setThreshold(1e-6).rank(), 2);
  const Matrix j8 = differential_nu(map_by_id("nu8"), orthonormalize(unit(8, 0), unit(8, 1)));
  EXPECT_EQ(j8.rows(), 6);
  EXPECT_EQ(j8.cols(), 12);
  EXPECT_EQ(Eigen::JacobiSVD<Matrix>(j8).setThreshold(1e-6).rank(), 6);
}

TEST(Differential, LinearInTheDirection) {
  Rng rng(83);
  const GrassmannMap map = map_by_id("nu8");
  const Plane p = random_plane(8, rng);
  const Matrix jac = differential_nu(map, p);
  const Matrix t = tangent_basis(p);
  const Vector raw = map.raw(p.x(), p.y());
  const Matrix b = complement_basis(raw.normalized());
  for (double c : {-2.0, 0.5, 3.0}) {
    for (Eigen::Index col = 0; col < t.cols(); ++col) {
      const Vector dx = c * t.col(col).head(8), dy = c * t.col(col).tail(8);
      const Vector scaled = b.transpose() * (map.raw(dx, p.y()) + map.raw(p.x(), dy)) / raw.norm();
      EXPECT_LE((scaled - c * jac.col(col)).norm(), 1e-12);
    }
  }
}

TEST(Submersion, HaarSamples) {
  const RankReport r4 = submersion_report(map_by_id("nu4"), 1000, 7);
  EXPECT_TRUE(r4.asserted);
  EXPECT_TRUE(r4.full_rank);
  EXPECT_EQ(r4.expected_rank, 2);
  EXPECT_EQ(r4.samples, 1000);
  EXPECT_GT(r4.min_ratio, 1e-6);
  const RankReport r8 = submersion_report(map_by_id("nu8"), 1000, 7);
  EXPECT_TRUE(r8.full_rank);
  EXPECT_EQ(r8.expected_rank, 6);
  EXPECT_GT(r8.min_ratio, 1e-6);
}

TEST(Submersion, SectionPoints) {
  Rng rng(84);
  std::vector<Plane> p4, p8;
  for (int t = 0; t < 100; ++t) {
    p4.push_back(section_nu4(random_unit(2, rng)));
    p8.push_back(section_nu8(random_unit(6, rng)));
  }
  EXPECT_TRUE(rank_report_at(map_by_id("nu4"), p4).full_rank);
  EXPECT_TRUE(rank_report_at(map_by_id("nu8"), p8).full_rank);
}

TEST(Submersion, ExploratoryModeNeverFails) {
  const RankReport r = submersion_report(map_by_id("nu16"), 20, 3);
  EXPECT_FALSE(r.asserted);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.expected_rank, 21);
  const nlohmann::json j = to_json(r, true);
  EXPECT_EQ(j["mode"], "exploratory");
  EXPECT_EQ(j["singular_values"].size(), 20u);
}

TEST(Submersion, Deterministic) {
  const RankReport a = submersion_report(map_by_id("nu8"), 30, 11);
  const RankReport b = submersion_report(map_by_id("nu8"), 30, 11);
  EXPECT_EQ(a.singular_values, b.singular_values);
}

TEST(Spectrum, InvariantAlongOrbits) {
  Rng rng(85);
  const GrassmannMap nu4m = map_by_id("nu4"), nu8m = map_by_id("nu8");
  for (int t = 0; t < 200; ++t) {
    const Plane p = random_plane(4, rng);
    const Plane q = so4_apply(random_so4(rng), p);
    EXPECT_LE((singular_values(differential_nu(nu4m, p)) - singular_values(differential_nu(nu4m, q))).norm(), 1e-8);

    const Plane a = random_plane(8, rng);
    const SpinTriple g = random_spin7_word(rng, 2);
    const Plane b = orthonormalize(g.g_plus() * a.x(), g.g_plus() * a.y());
    EXPECT_LE((singular_values(differential_nu(nu8m, a)) - singular_values(differential_nu(nu8m, b))).norm(), 1e-8);
  }
}
