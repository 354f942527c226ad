#pragma once

// Pointwise Kaehler geometry of the round sphere S^2_r embedded in R^3.
//
// Points are ambient 3-vectors with |p| = r. Tangent vectors at p are ambient
// vectors orthogonal to p. The complex structure is the cross product with
// the outward unit normal, so (e, Je, p/r) is right-handed. The curvature
// tensor uses R(X,Y)Z = K (g(Y,Z) X - g(X,Z) Y), giving sectional curvature +K.

#include <cassert>
#include <cmath>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "dispflow/errors.hpp"

namespace dispflow {

using AmbientVector = Eigen::Vector3d;

/// A point on S^2_r. Construction checks |coords| = r to 1e-12 r.
class SpherePoint {
 public:
  SpherePoint(const AmbientVector& coords, double radius) : coords_(coords), radius_(radius) {
    if (!(radius > 0.0) || std::abs(coords.norm() - radius) > 1e-12 * radius) {
      throw ConstraintViolation("point is not on the sphere of radius " + std::to_string(radius));
    }
  }

  const AmbientVector& coords() const { return coords_; }
  double radius() const { return radius_; }

 private:
  AmbientVector coords_;
  double radius_;
};

/// Constants of the flow. K is the target curvature; the sphere radius is 1/sqrt(K).
struct FlowParams {
  double a = 0.0;
  double b = 0.0;
  double curvature_K = 1.0;

  double radius() const {
    if (!(curvature_K > 0.0)) throw ParameterError("sphere target needs K > 0");
    return 1.0 / std::sqrt(curvature_K);
  }
};

inline double metric(const AmbientVector& v, const AmbientVector& w) { return v.dot(w); }

namespace detail {

// Kernels on arbitrary Eigen 3-vector expressions (columns of a 3xN field).
// The point's own length is used as r, which is the exact orthogonal
// projection even for the slightly off-sphere RK stages.

template <typename P, typename V>
AmbientVector project_tangent(const Eigen::MatrixBase<P>& p, const Eigen::MatrixBase<V>& v) {
  return v - (v.dot(p) / p.squaredNorm()) * p;
}

template <typename P, typename V>
AmbientVector complex_structure(const Eigen::MatrixBase<P>& p, const Eigen::MatrixBase<V>& v) {
  return p.cross(v) / p.norm();
}

}  // namespace detail

inline AmbientVector project_tangent(const SpherePoint& p, const AmbientVector& v) {
  return detail::project_tangent(p.coords(), v);
}

inline AmbientVector complex_structure(const SpherePoint& p, const AmbientVector& v) {
  assert(std::abs(v.dot(p.coords())) <= 1e-10 * (1.0 + v.norm()) * p.radius());
  return detail::complex_structure(p.coords(), v);
}

/// R(x,y)z for constant curvature K.
inline AmbientVector curvature_op(const AmbientVector& x, const AmbientVector& y,
                                  const AmbientVector& z, double K) {
  return K * (y.dot(z) * x - x.dot(z) * y);
}

/// Radial projection back onto S^2_r.
inline SpherePoint renormalize(const AmbientVector& p, double r) {
  const double n = p.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ConstraintViolation("cannot renormalize a zero or non-finite vector");
  }
  return SpherePoint(p * (r / n), r);
}

}  // namespace dispflow
