#pragma once

// Constant-coefficient complex reduction of the dispersive flow,
//
//   q_t - a q_xxx - i q_xx = (aK/2 + 2b)|q|^2 q_x - (aK/2 - b) q^2 conj(q_x) + (i/2) K |q|^2 q,
//
// its split-step solver, and the functionals of the general family
//
//   q_t + A q_xxx - i B q_xx = -i alpha |q|^2 q + beta (|q|^2)_x q + gamma |q|^2 q_x.
//
// |q|_4^2 in the quartic terms is read as int |q|^4 dx, which is what matches
// int g(u_x,u_x)^2 dx on the geometric side.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dispflow/discrete_curve.hpp"
#include "dispflow/errors.hpp"
#include "dispflow/spectral.hpp"

namespace dispflow {

struct LaureyParams {
  double A = 0.0;
  double B = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  friend bool operator==(const LaureyParams&, const LaureyParams&) = default;
};

/// Coefficients of the general family that reproduce the reduced equation.
inline LaureyParams param_map(double a, double b, double K) {
  return LaureyParams{-a, 1.0, -K / 2.0, b - a * K / 2.0, b + a * K};
}

/// Nonlinear right-hand side of the reduced equation, given q and q_x.
inline ComplexField rhs_nonlinear_t3rd(const ComplexField& q, const ComplexField& qx, double a,
                                       double b, double K) {
  const double c_mod = a * K / 2.0 + 2.0 * b;
  const double c_conj = a * K / 2.0 - b;
  const Complex c_phase(0.0, K / 2.0);
  ComplexField out{std::vector<Complex>(q.values.size()), q.twist};
  for (size_t j = 0; j < q.values.size(); ++j) {
    const Complex v = q.values[j];
    const Complex vx = qx.values[j];
    const double mod_sq = std::norm(v);
    // Zero coefficients are skipped so the Hirota case drops the term exactly.
    Complex r = c_mod * mod_sq * vx + c_phase * mod_sq * v;
    if (c_conj != 0.0) r -= c_conj * v * v * std::conj(vx);
    out.values[j] = r;
  }
  return out;
}

namespace detail {

inline void require_same_size(const ComplexField& q) {
  if (q.values.size() < 2 || q.values.size() % 2 != 0) {
    throw ParameterError("complex field needs an even number of samples");
  }
}

/// exp(-i (a xi^3 + xi^2) tau) on the Fourier modes of q, with xi = 2 pi k - twist
/// and the Nyquist mode removed.
inline ComplexField linear_propagate(const ComplexField& q, double a, double tau) {
  const int n = q.size();
  const auto& plans = spectral::plans_for(n);
  std::vector<Complex> work(q.values.size()), coef(q.values.size());
  for (int j = 0; j < n; ++j) {
    work[j] = q.twist == 0.0 ? q.values[j] : q.values[j] * std::polar(1.0, q.twist * node(j, n));
  }
  plans.forward(work.data(), coef.data());
  for (int k = 0; k < n; ++k) {
    if (2 * k == n) {
      coef[k] = 0.0;
      continue;
    }
    const double xi = spectral::wavenumber(k, n) - q.twist;
    coef[k] *= std::polar(1.0 / n, -(a * xi * xi * xi + xi * xi) * tau);
  }
  ComplexField out{std::vector<Complex>(q.values.size()), q.twist};
  plans.backward(coef.data(), out.values.data());
  if (q.twist != 0.0) {
    for (int j = 0; j < n; ++j) out.values[j] *= std::polar(1.0, -q.twist * node(j, n));
  }
  return out;
}

inline ComplexField axpy(const ComplexField& q, double s, const ComplexField& k) {
  ComplexField out = q;
  for (size_t j = 0; j < out.values.size(); ++j) out.values[j] += s * k.values[j];
  return out;
}

inline ComplexField nonlinear_rate(const ComplexField& q, double a, double b, double K) {
  return rhs_nonlinear_t3rd(q, derivative(q, DerivativeScheme::spectral), a, b, K);
}

}  // namespace detail

/// Strang splitting: exact linear half step, one RK4 step of the nonlinear
/// part, exact linear half step. `nonlinear = false` leaves only the linear flow.
inline ComplexField step_strang(const ComplexField& q, double dt, double a, double b, double K,
                                bool nonlinear = true) {
  detail::require_same_size(q);
  ComplexField half = detail::linear_propagate(q, a, 0.5 * dt);
  if (nonlinear) {
    const ComplexField k1 = detail::nonlinear_rate(half, a, b, K);
    const ComplexField k2 = detail::nonlinear_rate(detail::axpy(half, 0.5 * dt, k1), a, b, K);
    const ComplexField k3 = detail::nonlinear_rate(detail::axpy(half, 0.5 * dt, k2), a, b, K);
    const ComplexField k4 = detail::nonlinear_rate(detail::axpy(half, dt, k3), a, b, K);
    for (size_t j = 0; j < half.values.size(); ++j) {
      half.values[j] += (dt / 6.0) * (k1.values[j] + 2.0 * k2.values[j] + 2.0 * k3.values[j] + k4.values[j]);
    }
  }
  ComplexField out = detail::linear_propagate(half, a, 0.5 * dt);
  for (const Complex& v : out.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw BlowUpError("non-finite value in split step", dt, std::abs(v));
    }
  }
  return out;
}

inline double l2norm_sq(const ComplexField& q) {
  double s = 0.0;
  for (const Complex& v : q.values) s += std::norm(v);
  return s / static_cast<double>(q.values.size());
}

namespace detail {

struct ComplexIntegrals {
  double qx_sq = 0.0;        // int |q_x|^2
  double qxx_sq = 0.0;       // int |q_xx|^2
  double quartic = 0.0;      // int |q|^4
  Complex q_conj_qx;         // int q conj(q_x)
  double mod_mod = 0.0;      // int |q|^2 |q_x|^2
  double re_sq_conj = 0.0;   // Re int q^2 conj(q_x)^2
};

inline ComplexIntegrals complex_integrals(const ComplexField& q, DerivativeScheme scheme) {
  const ComplexField qx = derivative(q, scheme);
  const ComplexField qxx = derivative(qx, scheme);
  const double n = static_cast<double>(q.values.size());
  ComplexIntegrals s;
  for (size_t j = 0; j < q.values.size(); ++j) {
    const Complex v = q.values[j];
    const Complex vx = qx.values[j];
    const double m = std::norm(v);
    s.qx_sq += std::norm(vx);
    s.qxx_sq += std::norm(qxx.values[j]);
    s.quartic += m * m;
    s.q_conj_qx += v * std::conj(vx);
    s.mod_mod += m * std::norm(vx);
    s.re_sq_conj += (v * v * std::conj(vx * vx)).real();
  }
  s.qx_sq /= n;
  s.qxx_sq /= n;
  s.quartic /= n;
  s.q_conj_qx /= n;
  s.mod_mod /= n;
  s.re_sq_conj /= n;
  return s;
}

}  // namespace detail

/// a |q_x|^2 - (b/2) int |q|^4 + i int q conj(q_x). The last integral is
/// imaginary for (quasi-)periodic q; a real residue above 1e-10 relative
/// raises NumericsError.
inline double test1(const ComplexField& q, double a, double b,
                    DerivativeScheme scheme = DerivativeScheme::spectral) {
  const auto s = detail::complex_integrals(q, scheme);
  const Complex twist_term = Complex(0.0, 1.0) * s.q_conj_qx;
  const double scale = 1.0 + std::abs(a) * s.qx_sq + std::abs(b) * s.quartic + std::abs(s.q_conj_qx);
  if (std::abs(twist_term.imag()) > 1e-10 * scale) {
    throw NumericsError("int q conj(q_x) has a real part " + std::to_string(s.q_conj_qx.real()));
  }
  return a * s.qx_sq - 0.5 * b * s.quartic + twist_term.real();
}

/// 3a |q_xx|^2 - (aK + 10b) int |q|^2 |q_x|^2 - (-aK + 5b) Re int q^2 conj(q_x)^2.
inline double test2(const ComplexField& q, double a, double b, double K,
                    DerivativeScheme scheme = DerivativeScheme::spectral) {
  const auto s = detail::complex_integrals(q, scheme);
  return 3.0 * a * s.qxx_sq - (a * K + 10.0 * b) * s.mod_mod - (-a * K + 5.0 * b) * s.re_sq_conj;
}

/// -3 A beta |q_x|^2 - beta (beta + gamma/2) int |q|^4 + i (B (2 beta + gamma) - 3 A alpha) int q conj(q_x).
inline Complex laurey1(const ComplexField& q, const LaureyParams& p,
                       DerivativeScheme scheme = DerivativeScheme::spectral) {
  const auto s = detail::complex_integrals(q, scheme);
  const double c = p.B * (2.0 * p.beta + p.gamma) - 3.0 * p.A * p.alpha;
  return -3.0 * p.A * p.beta * s.qx_sq - p.beta * (p.beta + p.gamma / 2.0) * s.quartic +
         Complex(0.0, c) * s.q_conj_qx;
}

/// 3A |q_xx|^2 + (6 beta + 4 gamma) int |q|^2 |q_x|^2 + (4 beta + gamma) Re int q^2 conj(q_x)^2.
inline double laurey2(const ComplexField& q, const LaureyParams& p,
                      DerivativeScheme scheme = DerivativeScheme::spectral) {
  const auto s = detail::complex_integrals(q, scheme);
  return 3.0 * p.A * s.qxx_sq + (6.0 * p.beta + 4.0 * p.gamma) * s.mod_mod +
         (4.0 * p.beta + p.gamma) * s.re_sq_conj;
}

struct ComplexReport {
  double time = 0.0;
  double l2_q_sq = 0.0;
  double test1 = 0.0;
  double test2 = 0.0;
  Complex laurey1;
  double laurey2 = 0.0;
};

inline ComplexReport complex_report(const ComplexField& q, double a, double b, double K, double time) {
  const LaureyParams p = param_map(a, b, K);
  return ComplexReport{time, l2norm_sq(q), test1(q, a, b), test2(q, a, b, K), laurey1(q, p), laurey2(q, p)};
}

struct ComplexSample {
  ComplexField q;
  ComplexReport report;
};

/// Split-step integration to t_end in ceil(t_end / dt) equal steps,
/// sampling at t = 0, every `sample_every` steps and at the end.
inline std::vector<ComplexSample> run_complex(const ComplexField& q0, double a, double b, double K,
                                              double dt, double t_end, int sample_every) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ParameterError("t_end must be finite and >= 0");
  if (sample_every < 1) throw ParameterError("sample_every must be >= 1");
  std::vector<ComplexSample> out;
  out.push_back({q0, complex_report(q0, a, b, K, 0.0)});
  if (t_end == 0.0) return out;
  if (!(dt > 0.0)) throw ParameterError("time step must be positive");
  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);
  ComplexField q = q0;
  for (long long i = 1; i <= steps; ++i) {
    q = step_strang(q, h, a, b, K);
    if (i % sample_every == 0 || i == steps) {
      const double t = (i == steps) ? t_end : static_cast<double>(i) * h;
      out.push_back({q, complex_report(q, a, b, K, t)});
    }
  }
  return out;
}

/// A stable split-step size: the nonlinear substep is advective with speed
/// ~ (|aK/2 + 2b| + |aK/2 - b|) max|q|^2 at the highest resolved wavenumber.
inline double choose_complex_dt(const ComplexField& q, double a, double b, double K, double cfl_safety) {
  double peak = 0.0;
  for (const Complex& v : q.values) peak = std::max(peak, std::norm(v));
  const double xi = std::numbers::pi * q.size();
  const double rate = (std::abs(a * K / 2.0 + 2.0 * b) + std::abs(a * K / 2.0 - b)) * peak * xi +
                      0.5 * std::abs(K) * peak;
  return rate > 0.0 ? cfl_safety * 2.8284271247461903 / rate : 1e-3;
}

}  // namespace dispflow
