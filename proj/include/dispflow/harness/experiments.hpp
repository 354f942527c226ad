#pragma once

// Experiment drivers shared by the CLI and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "dispflow/complex_flow.hpp"
#include "dispflow/flow.hpp"
#include "dispflow/hasimoto_frame.hpp"
#include "dispflow/harness/config.hpp"
#include "dispflow/harness/initial.hpp"

namespace dispflow::harness {

inline DiscreteCurve initial_curve(const RunConfig& cfg) {
  if (!is_curve_initial(cfg.ic.name)) {
    throw ParameterError("mode " + std::string(to_string(cfg.mode)) + " needs a curve initial condition");
  }
  return std::get<DiscreteCurve>(make_initial(cfg.ic, cfg.n, cfg.params.radius(), cfg.seed));
}

/// Initial q for complex runs; curve data is converted through the parallel frame.
inline ComplexField initial_field(const RunConfig& cfg) {
  if (is_curve_initial(cfg.ic.name)) {
    const DiscreteCurve c = initial_curve(cfg);
    return extract_q(c, build_parallel_frame(c, cfg.scheme), cfg.scheme);
  }
  return std::get<ComplexField>(make_initial(cfg.ic, cfg.n, 1.0, cfg.seed));
}

inline StepperConfig stepper_config(const RunConfig& cfg, const DiscreteCurve& initial) {
  StepperConfig s;
  s.cfl_safety = cfg.cfl_safety;
  s.renormalize_each_step = cfg.renormalize;
  s.scheme = cfg.scheme;
  s.dt = cfg.dt ? *cfg.dt : choose_dt(initial, cfg.params, cfg.cfl_safety, cfg.scheme);
  return s;
}

inline std::vector<TrajectorySample> run_geometric(const RunConfig& cfg) {
  const DiscreteCurve c = initial_curve(cfg);
  return run(c, cfg.params, stepper_config(cfg, c), cfg.t_end, cfg.sample_every);
}

inline std::vector<ComplexSample> run_complex_mode(const RunConfig& cfg) {
  const ComplexField q0 = initial_field(cfg);
  const auto& p = cfg.params;
  const double dt = cfg.dt ? *cfg.dt : choose_complex_dt(q0, p.a, p.b, p.curvature_K, cfg.cfl_safety);
  return run_complex(q0, p.a, p.b, p.curvature_K, dt, cfg.t_end, cfg.sample_every);
}

// ---------------------------------------------------------------------------
// Cross-solver comparison through the frame.

struct FrameComparisonRow {
  double time = 0.0;
  double modulus_gap = 0.0;  // max_j | |q_geo| - |q_cplx| |
  double e1_gap = 0.0;       // |E1(u) - test1(q_cplx)|
  double e2_gap = 0.0;       // |E2(u) - test2(q_cplx)|
  double holonomy = 0.0;     // of the geometric curve at this time
};

/// Runs the geometric flow, extracts q at every sample and compares it with
/// an independent split-step evolution of the t = 0 extraction. Only
/// gauge-invariant data is compared. Phase convention: q_0 uses the default
/// frame seed (unit tangent of u_x(0)); its twist is the holonomy at t = 0
/// and is kept fixed.
inline std::vector<FrameComparisonRow> compare_frame(const RunConfig& cfg) {
  const DiscreteCurve c0 = initial_curve(cfg);
  const StepperConfig step = stepper_config(cfg, c0);
  const auto geo = run(c0, cfg.params, step, cfg.t_end, cfg.sample_every);

  const auto& p = cfg.params;
  const ComplexField q0 = extract_q(c0, build_parallel_frame(c0, cfg.scheme), cfg.scheme);
  const auto cplx = run_complex(q0, p.a, p.b, p.curvature_K, step.dt, cfg.t_end, cfg.sample_every);
  if (cplx.size() != geo.size()) throw NumericsError("geometric and complex sample grids differ");

  std::vector<FrameComparisonRow> rows;
  for (size_t i = 0; i < geo.size(); ++i) {
    const DiscreteCurve& curve = geo[i].state.curve;
    const FrameData frame = build_parallel_frame(curve, cfg.scheme);
    const ComplexField q_geo = extract_q(curve, frame, cfg.scheme);
    const ComplexField& q_c = cplx[i].q;
    FrameComparisonRow row;
    row.time = geo[i].report.time;
    for (int j = 0; j < q_geo.size(); ++j) {
      row.modulus_gap = std::max(row.modulus_gap, std::abs(std::abs(q_geo.values[j]) - std::abs(q_c.values[j])));
    }
    row.e1_gap = std::abs(geo[i].report.e1 - cplx[i].report.test1);
    row.e2_gap = std::abs(geo[i].report.e2 - cplx[i].report.test2);
    row.holonomy = frame.holonomy_angle;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Refinement ladder.

struct ConvergenceRow {
  int n = 0;
  double dt = 0.0;
  long long steps = 0;
  double l2_drift = 0.0;        // max_t |l2(t) - l2(0)| / l2(0)
  double e1_drift = 0.0;        // max_t |E1(t) - E1(0)| / (1 + |E1(0)|)
  double max_f_ratio = 0.0;
  double max_renorm_displacement = 0.0;
};

struct DriftSummary {
  double l2_drift = 0.0;
  double e1_drift = 0.0;
  double max_f_ratio = 0.0;
  double max_e2_abs = 0.0;
  bool all_finite = true;
};

inline DriftSummary summarize(const std::vector<TrajectorySample>& samples) {
  DriftSummary s;
  const EnergyReport& r0 = samples.front().report;
  for (const auto& smp : samples) {
    const EnergyReport& r = smp.report;
    s.all_finite = s.all_finite && std::isfinite(r.l2_ux_sq) && std::isfinite(r.e1) &&
                   std::isfinite(r.e2) && std::isfinite(r.h2_seminorm_sq) && std::isfinite(r.f_ratio);
    if (r0.l2_ux_sq > 0.0) s.l2_drift = std::max(s.l2_drift, std::abs(r.l2_ux_sq - r0.l2_ux_sq) / r0.l2_ux_sq);
    s.e1_drift = std::max(s.e1_drift, std::abs(r.e1 - r0.e1) / (1.0 + std::abs(r0.e1)));
    s.max_f_ratio = std::max(s.max_f_ratio, r.f_ratio);
    s.max_e2_abs = std::max(s.max_e2_abs, std::abs(r.e2));
  }
  return s;
}

/// Runs `levels` grids N, 2N, 4N, ... Each level takes dt from the CFL rule,
/// or dt / 8^level when the config fixes dt (dt ~ dx^3). Levels run
/// concurrently; rows come back ordered by N.
inline std::vector<ConvergenceRow> run_convergence(const RunConfig& cfg, int levels) {
  if (levels < 1) throw ParameterError("need at least one level");
  std::vector<std::future<ConvergenceRow>> jobs;
  for (int level = 0; level < levels; ++level) {
    RunConfig c = cfg;
    c.n = cfg.n << level;
    if (c.n > 4096) throw ParameterError("refinement ladder exceeds N = 4096");
    if (cfg.dt) c.dt = *cfg.dt / std::pow(8.0, level);
    jobs.push_back(std::async(std::launch::async, [c] {
      const DiscreteCurve c0 = initial_curve(c);
      const StepperConfig step = stepper_config(c, c0);
      const auto samples = run(c0, c.params, step, c.t_end, c.sample_every);
      const DriftSummary s = summarize(samples);
      ConvergenceRow row;
      row.n = c.n;
      row.steps = c.t_end > 0.0 ? static_cast<long long>(std::ceil(c.t_end / step.dt - 1e-9)) : 0;
      row.dt = row.steps > 0 ? c.t_end / static_cast<double>(row.steps) : step.dt;
      row.l2_drift = s.l2_drift;
      row.e1_drift = s.e1_drift;
      row.max_f_ratio = s.max_f_ratio;
      for (const auto& smp : samples) {
        row.max_renorm_displacement = std::max(row.max_renorm_displacement, smp.state.renorm_displacement);
      }
      return row;
    }));
  }
  std::vector<ConvergenceRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

/// log2(e_coarse / e_fine) for a factor-two refinement.
inline double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

// ---------------------------------------------------------------------------
// Parameter-map identities.

struct IdentityReport {
  int trials = 0;
  double max_rel_err_test1 = 0.0;  // laurey1 / (3 beta) vs test1
  double max_rel_err_test2 = 0.0;  // -laurey2 vs test2
  double hirota_conj_coefficient = 0.0;  // |aK/2 - b| and |beta| at b = aK/2 (should be 0)
};

/// Random periodic field with Fourier coefficients decaying like exp(-|k| / 2).
inline ComplexField random_field(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int kmax = std::min(8, n / 2 - 1);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  ComplexField q{std::vector<Complex>(static_cast<size_t>(n)), 0.0};
  for (int k = -kmax; k <= kmax; ++k) {
    const Complex c = std::exp(-0.5 * std::abs(k)) * Complex(normal(rng), normal(rng));
    for (int j = 0; j < n; ++j) q.values[j] += c * std::polar(1.0, two_pi * k * node(j, n));
  }
  return q;
}

/// Checks laurey1(q; param_map)/(3 beta) = test1 and -laurey2 = test2 on
/// random (q, a, b, K) with |beta| > 0.1. Relative errors are taken against
/// the sum of absolute term magnitudes, so cancellation cannot inflate them.
inline IdentityReport check_identities(int trials, std::uint64_t seed, int n = 64) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  IdentityReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    double a, b, K;
    do {
      a = coef(rng);
      b = coef(rng);
      K = coef(rng);
    } while (std::abs(b - a * K / 2.0) <= 0.1);
    const ComplexField q = random_field(n, rng);
    const LaureyParams p = param_map(a, b, K);
    const auto s = dispflow::detail::complex_integrals(q, DerivativeScheme::spectral);

    const double t1 = test1(q, a, b);
    const Complex l1 = laurey1(q, p) / (3.0 * p.beta);
    const double scale1 = std::abs(a) * s.qx_sq + 0.5 * std::abs(b) * s.quartic + std::abs(s.q_conj_qx);
    rep.max_rel_err_test1 = std::max(rep.max_rel_err_test1, std::abs(l1 - Complex(t1, 0.0)) / scale1);

    const double t2 = test2(q, a, b, K);
    const double l2 = -laurey2(q, p);
    const double scale2 = 3.0 * std::abs(a) * s.qxx_sq + std::abs(a * K + 10.0 * b) * s.mod_mod +
                          std::abs(-a * K + 5.0 * b) * std::abs(s.re_sq_conj);
    rep.max_rel_err_test2 = std::max(rep.max_rel_err_test2, std::abs(l2 - t2) / scale2);

    // Hirota degeneration at b = aK/2.
    const double bh = a * K / 2.0;
    rep.hirota_conj_coefficient = std::max(
        {rep.hirota_conj_coefficient, std::abs(a * K / 2.0 - bh), std::abs(param_map(a, bh, K).beta)});
  }
  return rep;
}

}  // namespace dispflow::harness
