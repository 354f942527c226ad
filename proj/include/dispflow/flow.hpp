#pragma once

// Explicit time integration of the dispersive flow on S^2_r.
//
// Classical RK4 on the ambient coordinates followed by radial projection back
// onto the sphere. The stiff a u_xxx term sets dt ~ dx^3; see cfl_limit().

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dispflow/discrete_curve.hpp"
#include "dispflow/energy.hpp"
#include "dispflow/errors.hpp"
#include "dispflow/rhs.hpp"

namespace dispflow {

/// Runaway threshold on |u_x|_inf; the continuum flow never gets there.
inline constexpr double kBlowUpThreshold = 1e6;

/// Half-width of the RK4 stability region on the imaginary axis.
inline constexpr double kRk4ImaginaryStability = 2.8284271247461903;

struct StepperConfig {
  double dt = 0.0;
  double cfl_safety = 0.5;
  bool renormalize_each_step = true;
  DerivativeScheme scheme = DerivativeScheme::spectral;
};

struct TrajectoryState {
  double time = 0.0;
  DiscreteCurve curve;
  /// max_j |u_j - renormalized u_j| of the last step, 0 when not renormalizing.
  double renorm_displacement = 0.0;
};

/// Largest stable RK4 step for the linear part, |a| s^3 + s^2 with s the
/// scheme's maximal symbol. `speed_sq` (max |u_x|^2) adds the transport rate
/// of the b-term.
inline double cfl_limit(const FlowParams& params, int n, DerivativeScheme scheme,
                        double speed_sq = 0.0) {
  const double s = max_symbol(scheme, n);
  const double rate = std::abs(params.a) * s * s * s + s * s + std::abs(params.b) * speed_sq * s;
  return kRk4ImaginaryStability / rate;
}

/// dt for a run: cfl_safety times cfl_limit() at the initial curve.
inline double choose_dt(const DiscreteCurve& curve, const FlowParams& params, double cfl_safety,
                        DerivativeScheme scheme) {
  const AmbientField ux = derivative(curve.points(), scheme);
  const double speed_sq = pointwise_metric(ux, ux).maxCoeff();
  return cfl_safety * cfl_limit(params, curve.size(), scheme, speed_sq);
}

namespace detail {

inline void check_finite(const AmbientField& f, double time, const char* what) {
  if (!f.allFinite()) {
    throw BlowUpError(std::string("non-finite ") + what, time, std::numeric_limits<double>::infinity());
  }
}

inline AmbientField stage_rhs(const Eigen::Matrix3Xd& points, const FlowParams& params,
                              DerivativeScheme scheme, double time) {
  const CurveJet jet = curve_jet(points, scheme);
  check_finite(jet.nabla2_ux, time, "derivatives");
  const double ux_inf = jet.ux.colwise().norm().maxCoeff();
  if (ux_inf > kBlowUpThreshold) throw BlowUpError("|u_x| exceeded blow-up threshold", time, ux_inf);
  return rhs_intrinsic(points, jet, params);
}

}  // namespace detail

/// One RK4 step of signed size dt with no CFL guard. Used by step_rk4 and by
/// reversibility checks that step backwards.
inline TrajectoryState advance_rk4(const TrajectoryState& state, const FlowParams& params,
                                   double dt, DerivativeScheme scheme, bool renormalize) {
  const Eigen::Matrix3Xd& u = state.curve.points();
  const double t = state.time;
  const AmbientField k1 = detail::stage_rhs(u, params, scheme, t);
  const AmbientField k2 = detail::stage_rhs(u + (0.5 * dt) * k1, params, scheme, t);
  const AmbientField k3 = detail::stage_rhs(u + (0.5 * dt) * k2, params, scheme, t);
  const AmbientField k4 = detail::stage_rhs(u + dt * k3, params, scheme, t);
  Eigen::Matrix3Xd next = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  detail::check_finite(next, t + dt, "state");
  if (scheme == DerivativeScheme::spectral) remove_nyquist(next);

  double displacement = 0.0;
  if (renormalize) {
    const double r = state.curve.radius();
    for (Eigen::Index j = 0; j < next.cols(); ++j) {
      const double len = next.col(j).norm();
      displacement = std::max(displacement, std::abs(len - r));
      next.col(j) *= r / len;
    }
  }
  return TrajectoryState{t + dt, DiscreteCurve(std::move(next), state.curve.radius()), displacement};
}

/// One CFL-checked RK4 step.
inline TrajectoryState step_rk4(const TrajectoryState& state, const FlowParams& params,
                                const StepperConfig& cfg) {
  const double limit = cfg.cfl_safety * cfl_limit(params, state.curve.size(), cfg.scheme);
  if (!(cfg.dt > 0.0) || !(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0) || cfg.dt > limit) {
    throw ParameterError("time step " + std::to_string(cfg.dt) + " violates the CFL bound " +
                         std::to_string(limit));
  }
  return advance_rk4(state, params, cfg.dt, cfg.scheme, cfg.renormalize_each_step);
}

struct TrajectorySample {
  TrajectoryState state;
  EnergyReport report;
};

/// Blow-up during run(); carries the samples recorded before the failure.
class RunBlowUp : public BlowUpError {
 public:
  RunBlowUp(const BlowUpError& cause, std::vector<TrajectorySample> partial)
      : BlowUpError(cause), partial_(std::move(partial)) {}

  const std::vector<TrajectorySample>& partial() const { return partial_; }

 private:
  std::vector<TrajectorySample> partial_;
};

/// Integrates to t_end with ceil(t_end / cfg.dt) equal steps (the step is
/// shrunk so the last one lands on t_end) and records diagnostics at t = 0,
/// every `sample_every` steps and at the end.
inline std::vector<TrajectorySample> run(const DiscreteCurve& initial, const FlowParams& params,
                                         const StepperConfig& cfg, double t_end, int sample_every) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ParameterError("t_end must be finite and >= 0");
  if (sample_every < 1) throw ParameterError("sample_every must be >= 1");

  std::vector<TrajectorySample> samples;
  auto record = [&](const TrajectoryState& s) {
    EnergyReport rep = energy_report(s.curve, params, cfg.scheme, s.time);
    if (!samples.empty()) rep.f_ratio = semi_conservation_ratio(samples.back().report, rep);
    samples.push_back({s, rep});
  };

  TrajectoryState state{0.0, initial, 0.0};
  record(state);
  if (t_end == 0.0) return samples;

  if (!(cfg.dt > 0.0)) throw ParameterError("time step must be positive");
  const auto steps = static_cast<long long>(std::ceil(t_end / cfg.dt - 1e-9));
  StepperConfig step_cfg = cfg;
  step_cfg.dt = t_end / static_cast<double>(steps);

  try {
    for (long long i = 1; i <= steps; ++i) {
      state = step_rk4(state, params, step_cfg);
      if (i == steps) state.time = t_end;
      if (i % sample_every == 0 || i == steps) record(state);
    }
  } catch (const BlowUpError& e) {
    throw RunBlowUp(e, std::move(samples));
  }
  return samples;
}

}  // namespace dispflow
