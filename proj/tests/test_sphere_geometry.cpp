#include <random>

#include <gtest/gtest.h>

#include "dispflow/sphere_geometry.hpp"
#include "support.hpp"

using namespace dispflow;
using support::random_point;
using support::random_tangent;

namespace {

void expect_vec(const AmbientVector& got, const AmbientVector& want, double tol = 1e-15) {
  EXPECT_LE((got - want).norm(), tol) << got.transpose() << " vs " << want.transpose();
}

}  // namespace

TEST(SphereGeometry, ProjectTangentExamples) {
  const SpherePoint north({0, 0, 1}, 1.0);
  expect_vec(project_tangent(north, {1, 2, 3}), {1, 2, 0});
  expect_vec(project_tangent(north, {0, 0, 5}), {0, 0, 0});
  expect_vec(project_tangent(SpherePoint({1, 0, 0}, 1.0), {1, 1, 0}), {0, 1, 0});
}

TEST(SphereGeometry, MetricExamples) {
  EXPECT_EQ(metric({1, 0, 0}, {1, 0, 0}), 1.0);
  EXPECT_EQ(metric({1, 2, 3}, {0, 0, 0}), 0.0);
  EXPECT_EQ(metric({1, 1, 0}, {1, -1, 0}), 0.0);
}

TEST(SphereGeometry, ComplexStructureExamples) {
  const SpherePoint north({0, 0, 1}, 1.0);
  expect_vec(complex_structure(north, {1, 0, 0}), {0, 1, 0});
  expect_vec(complex_structure(north, {0, 1, 0}), {-1, 0, 0});
  expect_vec(complex_structure(SpherePoint({0, 0, 2}, 2.0), {2, 0, 0}), {0, 2, 0});
}

TEST(SphereGeometry, CurvatureExamples) {
  expect_vec(curvature_op({1, 0, 0}, {1, 0, 0}, {0.3, -2, 5}, 1.0), {0, 0, 0});
  expect_vec(curvature_op({1, 0, 0}, {0, 1, 0}, {0, 1, 0}, 1.0), {1, 0, 0});
  expect_vec(curvature_op({1, 0, 0}, {0, 1, 0}, {0, 1, 0}, 2.0), {2, 0, 0});
}

TEST(SphereGeometry, RenormalizeExamples) {
  expect_vec(renormalize({0, 0, 2}, 1.0).coords(), {0, 0, 1});
  expect_vec(renormalize({3, 4, 0}, 1.0).coords(), {0.6, 0.8, 0});
  EXPECT_THROW(renormalize({0, 0, 0}, 1.0), ConstraintViolation);
  EXPECT_THROW(renormalize({NAN, 0, 0}, 1.0), ConstraintViolation);
}

TEST(SphereGeometry, SpherePointInvariant) {
  EXPECT_NO_THROW(SpherePoint({0, 0, 2}, 2.0));
  EXPECT_THROW(SpherePoint({0, 0, 1.001}, 1.0), ConstraintViolation);
  EXPECT_THROW(SpherePoint({0, 0, 1}, 0.0), ConstraintViolation);
}

TEST(SphereGeometry, FlowParamsRadius) {
  EXPECT_DOUBLE_EQ((FlowParams{1.0, 0.5, 4.0}).radius(), 0.5);
  EXPECT_THROW((FlowParams{1.0, 0.5, 0.0}).radius(), ParameterError);
}

TEST(SphereGeometry, ProjectionIsTangent) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double r = std::exp(std::uniform_real_distribution<double>(-1, 1)(rng));
    const SpherePoint p(random_point(rng, r), r);
    const AmbientVector v = support::random_vector(rng);
    EXPECT_LE(std::abs(project_tangent(p, v).dot(p.coords())), 1e-14 * r * (1 + v.norm()));
  }
}

TEST(SphereGeometry, ComplexStructureIsometryAndSquare) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const double r = std::exp(std::uniform_real_distribution<double>(-1, 1)(rng));
    const SpherePoint p(random_point(rng, r), r);
    const AmbientVector v = random_tangent(rng, p.coords());
    const AmbientVector jv = complex_structure(p, v);
    EXPECT_NEAR(metric(jv, jv), metric(v, v), 1e-12 * metric(v, v));
    EXPECT_LE((complex_structure(p, jv) + v).norm(), 1e-12 * v.norm());
    // (v, Jv, p/r) is right-handed.
    EXPECT_GT(v.cross(jv).dot(p.coords()), 0.0);
  }
}

TEST(SphereGeometry, CurvatureSymmetries) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> kdist(0.1, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const double K = kdist(rng);
    const AmbientVector p = random_point(rng, 1.0 / std::sqrt(K));
    const AmbientVector x = random_tangent(rng, p), y = random_tangent(rng, p);
    const AmbientVector z = random_tangent(rng, p), w = random_tangent(rng, p);
    const double scale = K * x.norm() * y.norm() * z.norm() * w.norm();

    // Pair symmetry.
    EXPECT_NEAR(metric(curvature_op(x, y, z, K), w), metric(curvature_op(z, w, x, K), y), 1e-12 * scale);
    // Antisymmetry in the first pair and R(V,V) = 0.
    EXPECT_LE((curvature_op(x, y, z, K) + curvature_op(y, x, z, K)).norm(), 1e-12 * scale / w.norm());
    EXPECT_LE(curvature_op(x, x, z, K).norm(), 1e-14 * K * x.squaredNorm() * z.norm());
    // Sectional curvature.
    const double sec = metric(curvature_op(x, y, y, K), x);
    const double want = K * (x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2));
    EXPECT_NEAR(sec, want, 1e-12 * K * x.squaredNorm() * y.squaredNorm());
    EXPECT_GE(sec, -1e-14 * K * x.squaredNorm() * y.squaredNorm());
  }
}
