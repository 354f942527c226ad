#pragma once

// FFTW-backed Fourier transforms on the uniform periodic grid of [0,1).
//
// Plans are cached per thread and per length. Plan creation and destruction
// go through a global mutex since the FFTW planner is not thread-safe;
// execution uses the new-array interface and is. FFTW_ESTIMATE keeps the
// chosen algorithm, and therefore the rounding, identical across runs.

#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <vector>

#include <fftw3.h>

namespace dispflow::spectral {

using Complex = std::complex<double>;

/// Angular wavenumber of DFT index k on a grid of n points over [0,1):
/// 2 pi k for k < n/2, 2 pi (k - n) above, and 0 at the Nyquist index.
inline double wavenumber(int k, int n) {
  if (2 * k == n) return 0.0;
  const int s = (2 * k < n) ? k : k - n;
  return 2.0 * std::numbers::pi * s;
}

namespace detail {

inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

inline fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

/// Batched transforms for three interleaved real rows (Eigen 3xN column-major
/// layout: element (row, j) at data[row + 3 j]) plus a plain complex pair.
class Plans {
 public:
  explicit Plans(int n) : n_(n), half_(n / 2 + 1), factors_(static_cast<size_t>(n)) {
    for (int k = 0; k < n; ++k) factors_[k] = Complex(0.0, wavenumber(k, n) / n);
    std::vector<double> real(3 * static_cast<size_t>(n));
    std::vector<Complex> spec(3 * static_cast<size_t>(half_));
    std::vector<Complex> cin(n), cout(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard<std::mutex> lock(planner_mutex());
    r2c_ = fftw_plan_many_dft_r2c(1, &n_, 3, real.data(), nullptr, 3, 1, as_fftw(spec.data()),
                                  nullptr, 1, half_, flags);
    c2r_ = fftw_plan_many_dft_c2r(1, &n_, 3, as_fftw(spec.data()), nullptr, 1, half_,
                                  real.data(), nullptr, 3, 1, flags);
    fwd_ = fftw_plan_dft_1d(n_, as_fftw(cin.data()), as_fftw(cout.data()), FFTW_FORWARD, flags);
    bwd_ = fftw_plan_dft_1d(n_, as_fftw(cin.data()), as_fftw(cout.data()), FFTW_BACKWARD, flags);
  }

  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  int size() const { return n_; }
  int half() const { return half_; }

  /// i xi_k / n for DFT index k < n, Nyquist zeroed; folds in the inverse normalization.
  const std::vector<Complex>& derivative_factors() const { return factors_; }

  /// Forward r2c of three interleaved rows into 3 * half() coefficients.
  void forward3(const double* in, Complex* out) const {
    fftw_execute_dft_r2c(r2c_, const_cast<double*>(in), as_fftw(out));
  }
  /// Inverse c2r (unnormalized); destroys `in`.
  void backward3(Complex* in, double* out) const { fftw_execute_dft_c2r(c2r_, as_fftw(in), out); }

  void forward(const Complex* in, Complex* out) const {
    fftw_execute_dft(fwd_, as_fftw(const_cast<Complex*>(in)), as_fftw(out));
  }
  void backward(const Complex* in, Complex* out) const {
    fftw_execute_dft(bwd_, as_fftw(const_cast<Complex*>(in)), as_fftw(out));
  }

 private:
  int n_;
  int half_;
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
  std::vector<Complex> factors_;
};

}  // namespace detail

inline const detail::Plans& plans_for(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<detail::Plans>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<detail::Plans>(n);
  return *slot;
}

}  // namespace dispflow::spectral
