#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wtk/core/precision.hpp"
#include "wtk/error.hpp"

namespace wtk {

namespace detail {

inline double bump_f(double u) { return u > 0 ? std::exp(-1 / u) : 0.0; }

// smooth step: 0 for u <= 0, 1 for u >= 1
inline double smooth_step(double u) {
  const double a = bump_f(u), b = bump_f(1 - u);
  return a / (a + b);
}

}  // namespace detail

/// Smooth weight supported on (0,3): e^{-1/x} on (0,1], e^{-1/(3-x)} on [2,3),
/// and exp(-g) on (1,2) with g a smooth blend of 1/x and 1/(3-x).
inline double omega(double x) {
  if (x <= 0 || x >= 3) return 0.0;
  if (x <= 1) return std::exp(-1 / x);
  if (x >= 2) return std::exp(-1 / (3 - x));
  const double p = detail::smooth_step(x - 1);
  return std::exp(-((1 - p) / x + p / (3 - x)));
}

/// W(s) = ∫_0^3 ω(x) x^{s-1} dx, computed as ∫ ω(e^v) e^{vs} dv.
inline std::complex<double> omega_mellin(std::complex<double> s, const Precision& prec = {}) {
  using cd = std::complex<double>;
  const double sig = s.real(), t = s.imag();
  // below x = 1/u the integrand is under e^{-75}
  double u = 80;
  while (u - std::abs(sig) * std::log(u) < 75) u *= 1.5;
  const double v0 = -std::log(u), v1 = std::log(3.0);
  auto f = [&](double v) -> cd {
    const double w = omega(std::exp(v));
    if (w == 0) return 0.0;
    return w * std::exp(cd(sig * v, t * v));
  };
  const double h = std::min(0.25, 4 * M_PI / (std::abs(t) + 1));
  const int n = static_cast<int>(std::ceil((v1 - v0) / h));
  const double tol = std::max(prec.tail_epsilon, 1e-15);
  cd sum = 0;
  double err = 0;
  for (int i = 0; i < n; ++i) {
    double a = v0 + (v1 - v0) * i / n, b = v0 + (v1 - v0) * (i + 1) / n;
    double e = 0;
    sum += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, tol, &e);
    err += e;
  }
  if (err > 1e-10) throw AccuracyError("omega_mellin: quadrature did not converge", err);
  return sum;
}

/// W(σ+it) for fixed σ and many t.  ω(e^v) e^{σv} and all its derivatives
/// vanish at both ends of the v-range, so the trapezoid rule converges
/// spectrally; with step h the aliasing error is |W(σ + i(2π/h - |t|))|.
class MellinLine {
 public:
  explicit MellinLine(double sigma, double h = 0.002) : sigma_(sigma), h_(h) {
    double u = 80;
    while (u - std::abs(sigma) * std::log(u) < 75) u *= 1.5;
    v0_ = -std::log(u);
    const int n = static_cast<int>(std::ceil((std::log(3.0) - v0_) / h_));
    g_.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
      const double v = v0_ + k * h_;
      g_[k] = omega(std::exp(v)) * std::exp(sigma * v);
    }
  }

  double sigma() const { return sigma_; }
  /// Largest |t| served with aliasing well below double precision.
  double max_height() const { return 0.6 * 2 * M_PI / h_; }

  std::complex<double> operator()(double t) const {
    if (std::abs(t) > max_height()) throw DomainError("MellinLine: height beyond the sampling limit");
    // Σ g_k e^{it v_k}, phase advanced by a rotation re-anchored every 256 steps
    std::complex<double> acc = 0;
    const std::complex<double> step = std::polar(1.0, t * h_);
    std::complex<double> ph;
    for (std::size_t k = 0; k < g_.size(); ++k) {
      if (k % 256 == 0) ph = std::polar(1.0, t * (v0_ + k * h_));
      acc += g_[k] * ph;
      ph *= step;
    }
    return acc * h_;
  }

 private:
  double sigma_, h_, v0_;
  std::vector<double> g_;
};

}  // namespace wtk
