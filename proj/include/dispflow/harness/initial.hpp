#pragma once

// Library of initial data.
//
// Curves (on S^2_r):
//   great_circle
//   perturbed_great_circle eps=<|eps| < 1> mode_k=<integer >= 1>
//   random_smooth decay=<> 0>            random Fourier curve, coefficients ~ exp(-decay k)
// Complex fields:
//   plane_wave amp=<> k=<integer>         amp exp(2 pi i k x)
//   gaussian amp=<> width=<> 0>           amp exp(-((x - 1/2) / width)^2)
//   sech amp=<> width=<> 0>               amp sech((x - 1/2) / width)

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <variant>

#include "dispflow/discrete_curve.hpp"
#include "dispflow/errors.hpp"
#include "dispflow/harness/config.hpp"

namespace dispflow::harness {

using InitialData = std::variant<DiscreteCurve, ComplexField>;

/// Highest Fourier mode of random_smooth curves.
inline constexpr int kRandomSmoothModes = 6;

inline bool is_curve_initial(std::string_view name) {
  return name == "great_circle" || name == "perturbed_great_circle" || name == "random_smooth";
}

namespace detail {

inline void check_params(const InitialCondition& ic, std::set<std::string> allowed) {
  for (const auto& [k, v] : ic.params) {
    if (!allowed.count(k)) throw ParameterError("unknown parameter '" + k + "' for " + ic.name);
  }
}

inline double integer_param(const InitialCondition& ic, const char* key, double fallback) {
  const double v = ic.get(key).value_or(fallback);
  if (v != std::round(v)) throw ParameterError(std::string(key) + " must be an integer");
  return v;
}

inline DiscreteCurve normalized_curve(Eigen::Matrix3Xd pts, double r) {
  for (Eigen::Index j = 0; j < pts.cols(); ++j) pts.col(j) *= r / pts.col(j).norm();
  return DiscreteCurve(std::move(pts), r);
}

inline DiscreteCurve perturbed_circle(int n, double r, double eps, int mode_k) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  Eigen::Matrix3Xd pts(3, n);
  for (int j = 0; j < n; ++j) {
    const double x = node(j, n);
    pts.col(j) << std::cos(two_pi * x), std::sin(two_pi * x), eps * std::sin(two_pi * mode_k * x);
  }
  return normalized_curve(std::move(pts), r);
}

inline DiscreteCurve random_smooth_curve(int n, double r, double decay, std::uint64_t seed) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Redraw until the curve stays well away from the origin before projection.
  for (;;) {
    Eigen::Matrix3Xd pts = Eigen::Matrix3Xd::Zero(3, n);
    for (int k = 0; k <= kRandomSmoothModes; ++k) {
      AmbientVector c, s;
      for (int i = 0; i < 3; ++i) c(i) = normal(rng);
      for (int i = 0; i < 3; ++i) s(i) = normal(rng);
      const double w = std::exp(-decay * k);
      for (int j = 0; j < n; ++j) {
        const double x = node(j, n);
        pts.col(j) += w * (std::cos(two_pi * k * x) * c + std::sin(two_pi * k * x) * s);
      }
    }
    const Eigen::ArrayXd len = pts.colwise().norm().transpose();
    if (len.minCoeff() >= 0.3 * std::sqrt(len.square().mean())) return normalized_curve(std::move(pts), r);
  }
}

}  // namespace detail

/// Builds the initial data named by `ic` on an N-point grid. Curves live on
/// the sphere of radius r; random data is a pure function of `seed`.
inline InitialData make_initial(const InitialCondition& ic, int n, double r, std::uint64_t seed) {
  if (n < 8 || n % 2 != 0) throw ParameterError("grid size must be even and >= 8");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (ic.name == "great_circle") {
    detail::check_params(ic, {});
    return detail::perturbed_circle(n, r, 0.0, 1);
  }
  if (ic.name == "perturbed_great_circle") {
    detail::check_params(ic, {"eps", "mode_k"});
    const double eps = ic.get("eps").value_or(0.05);
    const double mode_k = detail::integer_param(ic, "mode_k", 3.0);
    if (!(std::abs(eps) < 1.0)) throw ParameterError("eps must satisfy |eps| < 1");
    if (mode_k < 1 || 2 * mode_k >= n) throw ParameterError("mode_k must lie in [1, N/2)");
    return detail::perturbed_circle(n, r, eps, static_cast<int>(mode_k));
  }
  if (ic.name == "random_smooth") {
    detail::check_params(ic, {"decay"});
    const double decay = ic.get("decay").value_or(1.0);
    if (!(decay > 0.0)) throw ParameterError("decay must be positive");
    return detail::random_smooth_curve(n, r, decay, seed);
  }

  ComplexField q{std::vector<Complex>(static_cast<size_t>(n)), 0.0};
  if (ic.name == "plane_wave") {
    detail::check_params(ic, {"amp", "k"});
    const double amp = ic.get("amp").value_or(1.0);
    const double k = detail::integer_param(ic, "k", 1.0);
    if (2 * std::abs(k) >= n) throw ParameterError("plane_wave k must lie below Nyquist");
    for (int j = 0; j < n; ++j) q.values[j] = std::polar(amp, two_pi * k * node(j, n));
    return q;
  }
  if (ic.name == "gaussian" || ic.name == "sech") {
    detail::check_params(ic, {"amp", "width"});
    const double amp = ic.get("amp").value_or(1.0);
    const double width = ic.get("width").value_or(0.1);
    if (!(width > 0.0)) throw ParameterError("width must be positive");
    for (int j = 0; j < n; ++j) {
      const double s = (node(j, n) - 0.5) / width;
      q.values[j] = amp * (ic.name == "gaussian" ? std::exp(-s * s) : 1.0 / std::cosh(s));
    }
    return q;
  }
  throw ParameterError("unknown initial condition '" + ic.name + "'");
}

}  // namespace dispflow::harness
