#pragma once

// Right-hand sides of the third-order dispersive flow
//
//     u_t = a Nx^2 u_x + J Nx u_x + b g(u_x, u_x) u_x
//
// on S^2_r, where Nx is the covariant derivative along the curve, together
// with the two extrinsic vortex-filament models it generalizes on the unit
// sphere: Da Rios (u x u_xx) and Fukumoto-Miyazaki.

#include <cmath>
#include <string>

#include "dispflow/discrete_curve.hpp"
#include "dispflow/errors.hpp"
#include "dispflow/sphere_geometry.hpp"

namespace dispflow {

/// u_x = D u (unprojected), Nx u_x and Nx^2 u_x along a point set.
struct CurveJet {
  AmbientField ux;
  AmbientField nabla_ux;
  AmbientField nabla2_ux;
};

inline CurveJet curve_jet(const Eigen::Matrix3Xd& points, DerivativeScheme scheme) {
  CurveJet jet;
  jet.ux = derivative(points, scheme);
  jet.nabla_ux = covariant_derivative(points, jet.ux, scheme);
  jet.nabla2_ux = covariant_derivative(points, jet.nabla_ux, scheme);
  return jet;
}

inline CurveJet curve_jet(const DiscreteCurve& curve, DerivativeScheme scheme) {
  return curve_jet(curve.points(), scheme);
}

/// Pointwise J v = (u/|u|) x v.
inline AmbientField apply_complex_structure(const Eigen::Matrix3Xd& points, const AmbientField& v) {
  AmbientField out(3, v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    out.col(j) = detail::complex_structure(points.col(j), v.col(j));
  }
  return out;
}

inline AmbientField rhs_intrinsic(const Eigen::Matrix3Xd& points, const CurveJet& jet,
                                  const FlowParams& params) {
  AmbientField out = apply_complex_structure(points, jet.nabla_ux);
  if (params.a != 0.0) out += params.a * jet.nabla2_ux;
  if (params.b != 0.0) {
    const Eigen::ArrayXd speed_sq = pointwise_metric(jet.ux, jet.ux);
    for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) += params.b * speed_sq(j) * jet.ux.col(j);
  }
  return out;
}

inline AmbientField rhs_intrinsic(const DiscreteCurve& curve, const FlowParams& params,
                                  DerivativeScheme scheme) {
  return rhs_intrinsic(curve.points(), curve_jet(curve, scheme), params);
}

namespace detail {

inline void require_unit_sphere(const DiscreteCurve& curve, const char* who) {
  if (std::abs(curve.radius() - 1.0) > 1e-12) {
    throw ParameterError(std::string(who) + " is defined on the unit sphere only");
  }
}

inline AmbientField cross_columns(const AmbientField& x, const AmbientField& y) {
  AmbientField out(3, x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) out.col(j) = x.col(j).cross(y.col(j));
  return out;
}

}  // namespace detail

/// Da Rios vortex filament: u x u_xx, pointwise with D^2 = D o D.
inline AmbientField rhs_darios(const DiscreteCurve& curve, DerivativeScheme scheme) {
  detail::require_unit_sphere(curve, "rhs_darios");
  const AmbientField uxx = derivative(derivative(curve.points(), scheme), scheme);
  return detail::cross_columns(curve.points(), uxx);
}

/// Fukumoto-Miyazaki: u x u_xx + a [u_xxx + 3/2 (u_x x (u x u_x))_x], literal extrinsic form.
inline AmbientField rhs_fm(const DiscreteCurve& curve, double a, DerivativeScheme scheme) {
  detail::require_unit_sphere(curve, "rhs_fm");
  const auto& u = curve.points();
  const AmbientField ux = derivative(u, scheme);
  const AmbientField uxx = derivative(ux, scheme);
  AmbientField out = detail::cross_columns(u, uxx);
  if (a == 0.0) return out;
  const AmbientField uxxx = derivative(uxx, scheme);
  const AmbientField inner = detail::cross_columns(ux, detail::cross_columns(u, ux));
  out += a * (uxxx + 1.5 * derivative(inner, scheme));
  return out;
}

}  // namespace dispflow
