#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dispflow/dispflow.hpp"

namespace support {

using dispflow::AmbientField;
using dispflow::AmbientVector;
using dispflow::Complex;
using dispflow::DiscreteCurve;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline AmbientVector random_vector(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return AmbientVector(n(rng), n(rng), n(rng));
}

inline AmbientVector random_point(std::mt19937_64& rng, double r) {
  return r * random_vector(rng).normalized();
}

inline AmbientVector random_tangent(std::mt19937_64& rng, const AmbientVector& p) {
  const AmbientVector v = random_vector(rng);
  return v - (v.dot(p) / p.squaredNorm()) * p;
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  Eigen::Quaterniond q(random_vector(rng)(0), random_vector(rng)(0), random_vector(rng)(0),
                       random_vector(rng)(0));
  return q.normalized().toRotationMatrix();
}

/// Smooth band-limited closed curve on the sphere of radius r, modes |k| <= kmax.
inline DiscreteCurve smooth_curve(int n, double r, std::uint64_t seed, int kmax = 4) {
  std::mt19937_64 rng(seed);
  std::vector<AmbientVector> c, s;
  for (int k = 0; k <= kmax; ++k) {
    c.push_back(random_vector(rng, std::exp(-0.7 * k)));
    s.push_back(random_vector(rng, std::exp(-0.7 * k)));
  }
  c[0] += AmbientVector(0.0, 0.0, 3.0);  // keeps the curve off the origin
  Eigen::Matrix3Xd pts(3, n);
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    AmbientVector p = AmbientVector::Zero();
    for (int k = 0; k <= kmax; ++k) p += std::cos(kTwoPi * k * x) * c[k] + std::sin(kTwoPi * k * x) * s[k];
    pts.col(j) = r * p.normalized();
  }
  return DiscreteCurve(pts, r);
}

inline DiscreteCurve great_circle(int n, double r = 1.0) {
  Eigen::Matrix3Xd pts(3, n);
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    pts.col(j) << r * std::cos(kTwoPi * x), r * std::sin(kTwoPi * x), 0.0;
  }
  return DiscreteCurve(pts, r);
}

/// Direct O(N^2) trigonometric-interpolant derivative of real samples.
inline std::vector<double> dft_derivative(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<double> out(n, 0.0);
  for (int k = -n / 2 + 1; k < n / 2; ++k) {
    Complex c = 0.0;
    for (int j = 0; j < n; ++j) c += f[j] * std::polar(1.0, -kTwoPi * k * j / n);
    c /= n;
    for (int j = 0; j < n; ++j) out[j] += (Complex(0.0, kTwoPi * k) * c * std::polar(1.0, kTwoPi * k * j / n)).real();
  }
  return out;
}

inline double max_abs(const AmbientField& f) { return f.cwiseAbs().maxCoeff(); }

}  // namespace support
