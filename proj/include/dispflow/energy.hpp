#pragma once

// Conserved and semi-conserved integrals of the dispersive flow.
//
//   |u_x|^2_{L2}
//   E1 = a |Nx u_x|^2 - b/2 int g(u_x,u_x)^2 - int g(u_x, J Nx u_x)
//   E2 = 3a |Nx^2 u_x|^2 - 10b int g(u_x,Nx u_x)^2
//        - 5b int g(u_x,u_x) g(Nx u_x,Nx u_x) + 2a int g(R(u_x,Nx u_x)u_x, Nx u_x)
//
// The first two are constant along exact solutions; dE2/dt is only bounded
// by C (1 + |Nx^2 u_x|^2), which the f_ratio column tracks empirically.

#include <cmath>

#include "dispflow/discrete_curve.hpp"
#include "dispflow/errors.hpp"
#include "dispflow/rhs.hpp"

namespace dispflow {

struct EnergyReport {
  double time = 0.0;
  double l2_ux_sq = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double h2_seminorm_sq = 0.0;  // |Nx^2 u_x|^2_{L2}
  double f_ratio = 0.0;         // 0 for the first report of a series

  friend bool operator==(const EnergyReport&, const EnergyReport&) = default;
};

/// The three integrals of E1, kept separate for term-by-term checks.
struct Energy1Terms {
  double dispersion = 0.0;  // a |Nx u_x|^2
  double quartic = 0.0;     // -(b/2) int |u_x|^4
  double twist = 0.0;       // -int g(u_x, J Nx u_x)

  double total() const { return dispersion + quartic + twist; }
};

struct Energy2Terms {
  double dispersion = 0.0;  // 3a |Nx^2 u_x|^2
  double tangential = 0.0;  // -10b int g(u_x, Nx u_x)^2
  double product = 0.0;     // -5b int |u_x|^2 |Nx u_x|^2
  double curvature = 0.0;   // 2a int g(R(u_x, Nx u_x) u_x, Nx u_x)

  double total() const { return dispersion + tangential + product + curvature; }
};

inline Energy1Terms energy1_terms(const Eigen::Matrix3Xd& points, const CurveJet& jet,
                                  const FlowParams& params) {
  const Eigen::ArrayXd speed_sq = pointwise_metric(jet.ux, jet.ux);
  const AmbientField j_nabla = apply_complex_structure(points, jet.nabla_ux);
  Energy1Terms t;
  t.dispersion = params.a * integrate(pointwise_metric(jet.nabla_ux, jet.nabla_ux));
  t.quartic = -0.5 * params.b * integrate(speed_sq.square());
  t.twist = -integrate(pointwise_metric(jet.ux, j_nabla));
  return t;
}

inline Energy2Terms energy2_terms(const CurveJet& jet, const FlowParams& params, double K) {
  const Eigen::ArrayXd speed_sq = pointwise_metric(jet.ux, jet.ux);
  const Eigen::ArrayXd accel_sq = pointwise_metric(jet.nabla_ux, jet.nabla_ux);
  const Eigen::ArrayXd mixed = pointwise_metric(jet.ux, jet.nabla_ux);
  Eigen::ArrayXd curv(jet.ux.cols());
  for (Eigen::Index j = 0; j < jet.ux.cols(); ++j) {
    const AmbientVector x = jet.ux.col(j);
    const AmbientVector y = jet.nabla_ux.col(j);
    curv(j) = metric(curvature_op(x, y, x, K), y);
  }
  Energy2Terms t;
  t.dispersion = 3.0 * params.a * integrate(pointwise_metric(jet.nabla2_ux, jet.nabla2_ux));
  t.tangential = -10.0 * params.b * integrate(mixed.square());
  t.product = -5.0 * params.b * integrate(speed_sq * accel_sq);
  t.curvature = 2.0 * params.a * integrate(curv);
  return t;
}

inline double curve_curvature(const DiscreteCurve& curve) {
  return 1.0 / (curve.radius() * curve.radius());
}

inline double energy1(const DiscreteCurve& curve, const FlowParams& params, DerivativeScheme scheme) {
  return energy1_terms(curve.points(), curve_jet(curve, scheme), params).total();
}

inline double energy2(const DiscreteCurve& curve, const FlowParams& params, DerivativeScheme scheme) {
  return energy2_terms(curve_jet(curve, scheme), params, curve_curvature(curve)).total();
}

inline double l2_ux_sq(const DiscreteCurve& curve, DerivativeScheme scheme) {
  const AmbientField ux = derivative(curve.points(), scheme);
  return integrate(pointwise_metric(ux, ux));
}

/// All diagnostics at one instant; f_ratio is left at zero.
inline EnergyReport energy_report(const DiscreteCurve& curve, const FlowParams& params,
                                  DerivativeScheme scheme, double time) {
  const CurveJet jet = curve_jet(curve, scheme);
  EnergyReport r;
  r.time = time;
  r.l2_ux_sq = integrate(pointwise_metric(jet.ux, jet.ux));
  r.e1 = energy1_terms(curve.points(), jet, params).total();
  r.e2 = energy2_terms(jet, params, curve_curvature(curve)).total();
  r.h2_seminorm_sq = integrate(pointwise_metric(jet.nabla2_ux, jet.nabla2_ux));
  return r;
}

/// |dE2/dt| / (1 + |Nx^2 u_x|^2) from two reports, with the denominator
/// averaged over the pair.
inline double semi_conservation_ratio(const EnergyReport& prev, const EnergyReport& next) {
  const double gap = next.time - prev.time;
  if (!(gap > 0.0)) throw ParameterError("semi_conservation_ratio needs increasing report times");
  const double rate = std::abs(next.e2 - prev.e2) / gap;
  return rate / (1.0 + 0.5 * (prev.h2_seminorm_sq + next.h2_seminorm_sq));
}

}  // namespace dispflow
