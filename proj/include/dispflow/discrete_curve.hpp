#pragma once

// Calculus on the uniform periodic grid x_j = j/N of the circle R/Z.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dispflow/errors.hpp"
#include "dispflow/spectral.hpp"
#include "dispflow/sphere_geometry.hpp"

namespace dispflow {

using Complex = std::complex<double>;

/// Per-node ambient 3-vectors, one column per grid point.
using AmbientField = Eigen::Matrix3Xd;

enum class DerivativeScheme { spectral, central2, central4 };

inline std::string_view to_string(DerivativeScheme s) {
  switch (s) {
    case DerivativeScheme::spectral: return "spectral";
    case DerivativeScheme::central2: return "central-2";
    case DerivativeScheme::central4: return "central-4";
  }
  return "?";
}

inline DerivativeScheme parse_scheme(std::string_view s) {
  if (s == "spectral") return DerivativeScheme::spectral;
  if (s == "central-2" || s == "central2") return DerivativeScheme::central2;
  if (s == "central-4" || s == "central4") return DerivativeScheme::central4;
  throw ParameterError("unknown derivative scheme '" + std::string(s) + "'");
}

/// Largest modulus of the scheme's Fourier symbol on an N-point grid. Drives the CFL bound.
inline double max_symbol(DerivativeScheme s, int n) {
  switch (s) {
    case DerivativeScheme::spectral: return std::numbers::pi * n;
    case DerivativeScheme::central2: return n;
    // max over theta of (8 sin(theta) - sin(2 theta)) / 6
    case DerivativeScheme::central4: return 1.3722757204213176 * n;
  }
  return 0.0;
}

/// Periodic samples u_j of a map into S^2_r, |u_j| = r.
class DiscreteCurve {
 public:
  DiscreteCurve(Eigen::Matrix3Xd points, double radius) : points_(std::move(points)), radius_(radius) {
    const auto n = points_.cols();
    if (n < 8 || n % 2 != 0) {
      throw ParameterError("a discrete curve needs an even number of points >= 8, got " +
                           std::to_string(n));
    }
    if (!(radius_ > 0.0)) throw ParameterError("sphere radius must be positive");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double len = points_.col(j).norm();
      if (!(std::abs(len - radius_) <= 1e-10 * radius_)) {
        throw ConstraintViolation("curve point " + std::to_string(j) + " is off the sphere");
      }
    }
  }

  const Eigen::Matrix3Xd& points() const { return points_; }
  AmbientVector point(int j) const { return points_.col(j); }
  int size() const { return static_cast<int>(points_.cols()); }
  double spacing() const { return 1.0 / static_cast<double>(points_.cols()); }
  double radius() const { return radius_; }

  friend bool operator==(const DiscreteCurve& l, const DiscreteCurve& r) {
    return l.radius_ == r.radius_ && l.points_ == r.points_;
  }

 private:
  Eigen::Matrix3Xd points_;
  double radius_;
};

/// Periodic complex samples. A nonzero `twist` theta marks a quasi-periodic
/// field, q(x + 1) = exp(-i theta) q(x), as produced by a parallel frame with
/// holonomy; derivatives honor it.
struct ComplexField {
  std::vector<Complex> values;
  double twist = 0.0;

  int size() const { return static_cast<int>(values.size()); }
  double spacing() const { return 1.0 / static_cast<double>(values.size()); }
};

/// Grid abscissae j/N.
inline double node(int j, int n) { return static_cast<double>(j) / n; }

namespace detail {

template <typename T>
void central_stencil(const T* in, T* out, int n, int stride, DerivativeScheme scheme) {
  const double inv_dx = static_cast<double>(n);
  auto at = [&](int j) -> const T& {
    if (j < 0) j += n;
    else if (j >= n) j -= n;
    return in[static_cast<size_t>(j) * stride];
  };
  if (scheme == DerivativeScheme::central2) {
    for (int j = 0; j < n; ++j) {
      out[static_cast<size_t>(j) * stride] = (0.5 * inv_dx) * (at(j + 1) - at(j - 1));
    }
    return;
  }
  for (int j = 0; j < n; ++j) {
    out[static_cast<size_t>(j) * stride] =
        (inv_dx / 12.0) * (8.0 * (at(j + 1) - at(j - 1)) - (at(j + 2) - at(j - 2)));
  }
}

// z * (i w) written out; std::complex multiplication goes through a slow NaN-aware path.
inline Complex times_imaginary(Complex z, double w) { return {-w * z.imag(), w * z.real()}; }

// Periodic derivative of plain (untwisted) complex samples.
inline std::vector<Complex> periodic_derivative(const std::vector<Complex>& f,
                                                DerivativeScheme scheme) {
  const int n = static_cast<int>(f.size());
  std::vector<Complex> out(f.size());
  if (scheme != DerivativeScheme::spectral) {
    central_stencil(f.data(), out.data(), n, 1, scheme);
    return out;
  }
  const auto& plans = spectral::plans_for(n);
  std::vector<Complex> coef(f.size());
  plans.forward(f.data(), coef.data());
  const auto& factor = plans.derivative_factors();
  for (int k = 0; k < n; ++k) coef[k] = times_imaginary(coef[k], factor[k].imag());
  plans.backward(coef.data(), out.data());
  return out;
}

}  // namespace detail

/// d/dx of every row of a periodic ambient field.
///
/// The spectral variant is exact on trigonometric polynomials below Nyquist
/// and zeroes the Nyquist mode, so every scheme yields an antisymmetric
/// operator and a real result.
inline AmbientField derivative(const AmbientField& f, DerivativeScheme scheme) {
  const int n = static_cast<int>(f.cols());
  AmbientField out(3, n);
  if (scheme != DerivativeScheme::spectral) {
    for (int row = 0; row < 3; ++row) {
      detail::central_stencil(f.data() + row, out.data() + row, n, 3, scheme);
    }
    return out;
  }
  const auto& plans = spectral::plans_for(n);
  const int half = plans.half();
  thread_local std::vector<Complex> coef;
  coef.resize(3 * static_cast<size_t>(half));
  plans.forward3(f.data(), coef.data());
  const auto& factor = plans.derivative_factors();
  for (int row = 0; row < 3; ++row) {
    Complex* c = coef.data() + static_cast<size_t>(row) * half;
    for (int k = 0; k < half; ++k) c[k] = detail::times_imaginary(c[k], factor[k].imag());
  }
  plans.backward3(coef.data(), out.data());
  return out;
}

/// Removes the Nyquist mode of every row. The Nyquist-zeroed spectral
/// derivative cannot see that mode, so pointwise products would otherwise
/// let it grow unchecked.
inline void remove_nyquist(AmbientField& f) {
  const int n = static_cast<int>(f.cols());
  const auto& plans = spectral::plans_for(n);
  const int half = plans.half();
  thread_local std::vector<Complex> coef;
  coef.resize(3 * static_cast<size_t>(half));
  plans.forward3(f.data(), coef.data());
  const double norm = 1.0 / n;
  for (int row = 0; row < 3; ++row) {
    Complex* c = coef.data() + static_cast<size_t>(row) * half;
    for (int k = 0; k < half - 1; ++k) c[k] *= norm;
    c[half - 1] = 0.0;
  }
  plans.backward3(coef.data(), f.data());
}

/// d/dx of a (possibly twisted) complex field: exp(-i theta x) D(exp(i theta x) q) - i theta q.
inline ComplexField derivative(const ComplexField& q, DerivativeScheme scheme) {
  const int n = q.size();
  if (q.twist == 0.0) return {detail::periodic_derivative(q.values, scheme), 0.0};
  std::vector<Complex> untwisted(q.values.size());
  for (int j = 0; j < n; ++j) untwisted[j] = q.values[j] * std::polar(1.0, q.twist * node(j, n));
  auto d = detail::periodic_derivative(untwisted, scheme);
  ComplexField out{std::move(d), q.twist};
  for (int j = 0; j < n; ++j) {
    out.values[j] = out.values[j] * std::polar(1.0, -q.twist * node(j, n)) -
                    Complex(0.0, q.twist) * q.values[j];
  }
  return out;
}

/// Pointwise tangential projection of a field along a (possibly off-sphere) point set.
inline AmbientField project_tangent(const Eigen::Matrix3Xd& points, const AmbientField& v) {
  AmbientField out(3, v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    out.col(j) = detail::project_tangent(points.col(j), v.col(j));
  }
  return out;
}

/// Covariant derivative along the curve: tangential part of D V.
inline AmbientField covariant_derivative(const Eigen::Matrix3Xd& points, const AmbientField& v,
                                         DerivativeScheme scheme) {
  return project_tangent(points, derivative(v, scheme));
}

inline AmbientField covariant_derivative(const DiscreteCurve& curve, const AmbientField& v,
                                         DerivativeScheme scheme) {
  return covariant_derivative(curve.points(), v, scheme);
}

/// Periodic rectangle rule dx * sum_j f_j.
inline double integrate(std::span<const double> f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s / static_cast<double>(f.size());
}

inline double integrate(const Eigen::ArrayXd& f) {
  return integrate(std::span<const double>(f.data(), static_cast<size_t>(f.size())));
}

inline Complex integrate(std::span<const Complex> f) {
  Complex s = 0.0;
  for (const Complex& v : f) s += v;
  return s / static_cast<double>(f.size());
}

/// Column-wise dot products of two fields.
inline Eigen::ArrayXd pointwise_metric(const AmbientField& v, const AmbientField& w) {
  return (v.array() * w.array()).colwise().sum().transpose();
}

}  // namespace dispflow
