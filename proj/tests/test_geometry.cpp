#include <gtest/gtest.h>

#include <numbers>

#include "grassmap/geometry.hpp"

using namespace grassmap;

namespace {

Vector unit(int n, int i) { return Vector::Unit(n, i); }

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

}  // namespace

TEST(Orthonormalize, Examples) {
  const Plane p = orthonormalize(vec({3, 0, 0}), vec({1, 2, 0}));
  EXPECT_TRUE(p.x().isApprox(unit(3, 0)));
  EXPECT_TRUE(p.y().isApprox(unit(3, 1)));

  const Plane q = orthonormalize(vec({1, 1, 0, 0}), vec({1, -1, 0, 0}));
  EXPECT_NEAR(q.x().dot(q.y()), 0.0, 1e-15);
  EXPECT_NEAR(q.x().norm(), 1.0, 1e-15);
}

TEST(Orthonormalize, RejectsDependentPairs) {
  try {
    orthonormalize(vec({1, 2, 3}), vec({2, 4, 6}));
    FAIL() << "expected DegeneratePlane";
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::DegeneratePlane);
  }
  EXPECT_THROW(orthonormalize(Vector::Zero(4), unit(4, 1)), Error);
  EXPECT_THROW(orthonormalize(unit(4, 0), unit(4, 0) + 1e-12 * unit(4, 1)), Error);
  try {
    orthonormalize(unit(3, 0), unit(4, 1));
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Orthonormalize, NearlyParallelStaysOrthogonal) {
  const Plane p = orthonormalize(unit(5, 0), unit(5, 0) + 1e-6 * unit(5, 3));
  EXPECT_NEAR(p.x().dot(p.y()), 0.0, 1e-14);
  EXPECT_NEAR(p.y().norm(), 1.0, 1e-14);
}

TEST(Orthonormalize, SameSpanAsInput) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Vector x = rng.gaussian_vector(7), y = rng.gaussian_vector(7);
    const Plane p = orthonormalize(x, y);
    // Residual of x and y after projection onto the plane.
    EXPECT_LE((x - p.projector() * x).norm(), 1e-12 * x.norm());
    EXPECT_LE((y - p.projector() * y).norm(), 1e-12 * y.norm());
    // Orientation is kept: det of the change of basis is positive.
    Eigen::Matrix2d m;
    m << x.dot(p.x()), x.dot(p.y()), y.dot(p.x()), y.dot(p.y());
    EXPECT_GT(m.determinant(), 0.0);
  }
}

TEST(Pluecker, Examples) {
  const auto p = pluecker(unit(4, 0), unit(4, 1));
  EXPECT_EQ(p.values(), (std::vector<double>{1, 0, 0, 0, 0, 0}));
  const auto q = pluecker(vec({1, 1, 0, 0}), vec({0, 0, 1, 1}));
  EXPECT_EQ(q.values(), (std::vector<double>{0, 1, 1, 1, 1, 0}));
  EXPECT_EQ(q(2, 0), -1.0);
  EXPECT_EQ(q(1, 1), 0.0);
  EXPECT_EQ(PlueckerCoords::index(4, 0, 1), 0u);
  EXPECT_EQ(PlueckerCoords::index(4, 2, 3), 5u);
  EXPECT_EQ(PlueckerCoords::index(8, 6, 7), 27u);
}

TEST(Pluecker, QuadraticRelationInFourDimensions) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto p = pluecker(rng.gaussian_vector(4), rng.gaussian_vector(4));
    EXPECT_NEAR(p(0, 1) * p(2, 3) - p(0, 2) * p(1, 3) + p(0, 3) * p(1, 2), 0.0, 1e-10);
  }
}

TEST(Pluecker, LagrangeIdentity) {
  Rng rng(5);
  for (int n : {3, 4, 8, 16, 24}) {
    for (int t = 0; t < 50; ++t) {
      const Vector x = rng.gaussian_vector(n), y = rng.gaussian_vector(n);
      const double rhs = x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2);
      EXPECT_NEAR(pluecker(x, y).squared_sum(), rhs, 1e-10 * (1 + x.squaredNorm() * y.squaredNorm()));
    }
  }
}

TEST(Pluecker, ScalesByDeterminant) {
  Rng rng(6);
  const Vector x = rng.gaussian_vector(6), y = rng.gaussian_vector(6);
  Eigen::Matrix2d a;
  a << 2, 1, 1, 1;
  const auto [u, v] = change_basis(x, y, a);
  const auto pu = pluecker(u, v).values(), px = pluecker(x, y).values();
  for (std::size_t i = 0; i < px.size(); ++i) EXPECT_NEAR(pu[i], px[i], 1e-12);
}

TEST(ProjectiveDistance, Examples) {
  EXPECT_DOUBLE_EQ(proj_distance(unit(3, 0), -unit(3, 0)), 0.0);
  EXPECT_NEAR(proj_distance(unit(3, 0), unit(3, 1)), std::sqrt(2.0), 1e-15);
  // Chord length 2 sin(theta / 2) for the angle between representatives.
  const double theta = 1e-4;
  const Vector r = std::cos(theta) * unit(3, 0) + std::sin(theta) * unit(3, 1);
  EXPECT_NEAR(proj_distance(unit(3, 0), r), 2.0 * std::sin(theta / 2.0), 1e-15);
  EXPECT_NEAR(proj_distance(unit(3, 0), r), theta, 1e-11);
}

TEST(ProjectivePoint, CanonicalSign) {
  const ProjectivePoint p(vec({0, -3, 4}));
  EXPECT_TRUE(p.rep().isApprox(vec({0, 0.6, -0.8})));
  EXPECT_EQ(p.dim(), 2);
  EXPECT_THROW(ProjectivePoint(Vector::Zero(3)), Error);
}

TEST(PlaneDistance, Examples) {
  const Plane a = orthonormalize(unit(4, 0), unit(4, 1));
  const Plane b = orthonormalize(unit(4, 2), unit(4, 3));
  EXPECT_NEAR(plane_distance(a, b), 2.0, 1e-15);
  const Plane c = orthonormalize(unit(4, 1), unit(4, 0));
  EXPECT_NEAR(plane_distance(a, c), 0.0, 1e-15);
}

TEST(Sampling, SeedDeterminism) {
  Rng a(42, 7), b(42, 7), c(42, 8);
  const Plane pa = random_plane(6, a), pb = random_plane(6, b), pc = random_plane(6, c);
  EXPECT_EQ(pa.x(), pb.x());
  EXPECT_EQ(pa.y(), pb.y());
  EXPECT_NE(pa.x(), pc.x());
}

TEST(Sampling, RejectsSmallDimension) {
  Rng rng(1);
  try {
    random_plane(2, rng);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::UnsupportedDimension);
  }
}

// E[P] = (2/n) I for a rotation-invariant distribution.
TEST(Sampling, MeanProjectorIsIsotropic) {
  for (int n : {4, 8}) {
    Rng rng(99, static_cast<std::uint64_t>(n));
    Matrix sum = Matrix::Zero(n, n);
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) sum += random_plane(n, rng).projector();
    const Matrix mean = sum / draws;
    EXPECT_LE((mean - (2.0 / n) * Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 0.05) << n;
  }
}

TEST(Sampling, UnitPointsAndGl2) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    EXPECT_NEAR(random_unit(6, rng).rep().norm(), 1.0, 1e-14);
    EXPECT_GE(std::abs(random_gl2(rng).determinant()), 0.1);
  }
}

TEST(Json, RoundTrip) {
  Rng rng(9);
  const Plane p = random_plane(5, rng);
  const Plane q = plane_from_json(to_json(p));
  EXPECT_EQ(q.ambient_dim(), 5);
  EXPECT_NEAR(plane_distance(p, q), 0.0, 1e-14);
  const ProjectivePoint a = random_unit(4, rng);
  EXPECT_NEAR(proj_distance(a, projective_point_from_json(to_json(a))), 0.0, 1e-15);
  EXPECT_EQ(to_json(a)["k"], 4);
}
