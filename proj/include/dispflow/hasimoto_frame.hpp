#pragma once

// Discrete parallel frame {e, Je} along a closed curve on S^2_r and the
// complex field q with u_x = Re(q) e + Im(q) Je.
//
// Each link is transported with the exact sphere rotation carrying u_j to
// u_{j+1} about u_j x u_{j+1}. On the circle the frame does not close up; the
// mismatch is the holonomy angle h, defined by
//     e_N = cos(h) e_0 + sin(h) J e_0,
// and the extracted q satisfies q(x + 1) = exp(-i h) q(x). It is stored as a
// ComplexField with twist h so derivatives stay consistent across the seam.

#include <cmath>

#include "dispflow/discrete_curve.hpp"
#include "dispflow/errors.hpp"
#include "dispflow/sphere_geometry.hpp"

namespace dispflow {

struct FrameData {
  AmbientField e;
  double holonomy_angle = 0.0;  // in (-pi, pi]
};

/// Parallel transport of a tangent vector at `from` to `to` along the
/// connecting great-circle arc. Points are taken as given (|from| = |to| = r).
inline AmbientVector transport_link(const AmbientVector& from, const AmbientVector& to,
                                    const AmbientVector& v) {
  const double r = from.norm();
  const AmbientVector a = from / r;
  const AmbientVector b = to / to.norm();
  const double c = a.dot(b);
  if (c <= 0.0 && a.cross(b).norm() <= 1e-12) {
    throw ResolutionError("antipodal consecutive curve points; refine the grid");
  }
  // Minimal rotation taking a to b, applied to v (v.a = 0).
  return v - (v.dot(b) / (1.0 + c)) * (a + b);
}

/// Tangent part of u_x(0), normalized; falls back to the coordinate axis
/// least aligned with u_0 when the curve is stationary there.
inline AmbientVector default_frame_seed(const DiscreteCurve& curve, DerivativeScheme scheme) {
  const AmbientVector u0 = curve.point(0);
  const AmbientField ux = derivative(curve.points(), scheme);
  AmbientVector t = detail::project_tangent(u0, ux.col(0));
  if (t.norm() <= 1e-12 * (1.0 + ux.col(0).norm())) {
    Eigen::Index axis = 0;
    u0.cwiseAbs().minCoeff(&axis);
    t = detail::project_tangent(u0, AmbientVector::Unit(axis));
  }
  return t.normalized();
}

inline FrameData build_parallel_frame(const DiscreteCurve& curve, const AmbientVector& seed) {
  const auto& u = curve.points();
  const int n = curve.size();
  const double r = curve.radius();
  if (std::abs(seed.norm() - 1.0) > 1e-10 || std::abs(seed.dot(u.col(0))) > 1e-10 * r) {
    throw ParameterError("frame seed must be a unit tangent vector at the first curve point");
  }
  FrameData frame;
  frame.e.resize(3, n);
  frame.e.col(0) = seed;
  for (int j = 0; j + 1 < n; ++j) {
    frame.e.col(j + 1) = transport_link(u.col(j), u.col(j + 1), frame.e.col(j));
  }
  const AmbientVector closing = transport_link(u.col(n - 1), u.col(0), frame.e.col(n - 1));
  const AmbientVector j_seed = detail::complex_structure(u.col(0), seed);
  frame.holonomy_angle = std::atan2(closing.dot(j_seed), closing.dot(seed));
  return frame;
}

inline FrameData build_parallel_frame(const DiscreteCurve& curve,
                                      DerivativeScheme scheme = DerivativeScheme::spectral) {
  return build_parallel_frame(curve, default_frame_seed(curve, scheme));
}

/// q_j = g(u_x, e_j) + i g(u_x, J e_j) with u_x = D u.
inline ComplexField extract_q(const DiscreteCurve& curve, const FrameData& frame,
                              DerivativeScheme scheme) {
  const auto& u = curve.points();
  const AmbientField ux = derivative(u, scheme);
  ComplexField q;
  q.twist = frame.holonomy_angle;
  q.values.resize(static_cast<size_t>(curve.size()));
  for (int j = 0; j < curve.size(); ++j) {
    const AmbientVector e = frame.e.col(j);
    const AmbientVector je = detail::complex_structure(u.col(j), e);
    q.values[j] = Complex(ux.col(j).dot(e), ux.col(j).dot(je));
  }
  return q;
}

}  // namespace dispflow
