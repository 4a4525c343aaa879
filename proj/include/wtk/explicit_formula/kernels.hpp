#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "wtk/core/gamma.hpp"
#include "wtk/core/precision.hpp"
#include "wtk/error.hpp"

namespace wtk {

enum class KernelKind { K1, K2 };

/// k1(s; x, y) = ((y^{s-1} - x^{s-1})/(s-1))^2,  k2(s; x) = x^{s^2+s}.
struct KernelParams {
  KernelKind kind = KernelKind::K2;
  double x = 2.0;
  double y = 0.0;

  static KernelParams k1(double x, double y) {
    KernelParams p{KernelKind::K1, x, y};
    p.validate();
    return p;
  }
  static KernelParams k2(double x) {
    KernelParams p{KernelKind::K2, x, 0.0};
    p.validate();
    return p;
  }

  void validate() const {
    if (!(x > 1)) throw InputError("KernelParams: x must exceed 1");
    if (kind == KernelKind::K1 && !(y > x)) throw InputError("KernelParams: K1 needs y > x");
  }

  std::string describe() const {
    return kind == KernelKind::K1 ? "K1(x=" + std::to_string(x) + ",y=" + std::to_string(y) + ")"
                                  : "K2(x=" + std::to_string(x) + ")";
  }
};

template <class C = std::complex<double>>
C eval_kernel(const KernelParams& p, const C& s) {
  using std::exp;
  using std::log;
  using R = real_of_t<C>;
  if (p.kind == KernelKind::K2) return exp((s * s + s) * R(std::log(p.x)));
  // (y^w - x^w)/w = x^w * l * expm1(w l)/(w l) with w = s-1, l = log(y/x)
  const R l = R(std::log(p.y / p.x));
  const C w = s - R(1);
  C v = exp(w * R(std::log(p.x))) * l * detail::expm1_over(w * l);
  return v * v;
}

inline double eval_kernel_hat(const KernelParams& p, double u) {
  if (!(u > 0)) throw DomainError("eval_kernel_hat: u must be positive");
  if (p.kind == KernelKind::K2) {
    const double lx = std::log(p.x);
    const double d = std::log(u / p.x);
    return std::exp(-d * d / (4 * lx)) / std::sqrt(4 * M_PI * lx);
  }
  const double x2 = p.x * p.x, y2 = p.y * p.y, xy = p.x * p.y;
  if (u <= x2 || u >= y2) return 0.0;
  if (u <= xy) return std::log(u / x2) / u;
  return std::log(y2 / u) / u;
}

namespace detail {

/// ∫_T^∞ e^{iLt} (1+it)^{-2} dt.
inline std::complex<double> k1_tail_integral(double L, double T) {
  using cd = std::complex<double>;
  const cd I(0, 1);
  const cd w(1.0, T);
  if (L == 0) return -I / w;
  // L ∫_T^∞ e^{iLt}/(1+it) dt = L e^{-L} E1(-L(1+iT)) / i
  cd e1 = incomplete_gamma_upper(cd(0.0, 0.0), cd(-L * w));
  cd k = std::exp(-L) * e1 / I;
  return L * k - I * std::exp(I * (L * T)) / w;
}

/// (1/2π)∫_{|t|>T} k1(a+it) v^{-(a+it)} dt on the line a = 2 for real v > 0,
/// i.e. the part of the inverse Mellin integral beyond height T.
inline double k1_line_tail(const KernelParams& p, double v, double T) {
  const double us[3] = {p.y * p.y, p.x * p.y, p.x * p.x};
  const double cs[3] = {1.0, -2.0, 1.0};
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    const double r = us[i] / v;
    s += cs[i] * r * 2 * k1_tail_integral(std::log(r), T).real();
  }
  return s / (2 * M_PI * v);
}

}  // namespace detail

/// |numerical inverse Mellin transform of k at u - closed-form k̂(u)|.
inline double mellin_check(const KernelParams& p, double u, const Precision& prec = {}) {
  using cd = std::complex<double>;
  const double a = 2.0;
  double T;
  if (p.kind == KernelKind::K2) {
    // |k2(a+it) u^{-a}| = x^{a^2+a-t^2} u^{-a}
    const double lx = std::log(p.x);
    T = std::sqrt(std::max(0.0, a * a + a + (40.0 - a * std::log(u)) / lx)) + 1;
  } else {
    T = 60.0;
  }
  auto f = [&](double t) {
    cd s(a, t);
    return (eval_kernel(p, s) * std::exp(-s * std::log(u))).real();
  };
  double err = 0;
  double sum = 0;
  const double tol = std::max(prec.tail_epsilon, 1e-14);
  const int pieces = static_cast<int>(std::ceil(T / 2));
  for (int i = 0; i < pieces; ++i) {
    double lo = T * i / pieces, hi = T * (i + 1) / pieces;
    double e = 0;
    // the integrand's real part is even in t
    sum += 2 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 12, tol, &e);
    err += 2 * e;
  }
  sum /= 2 * M_PI;
  if (err > 1e-8) throw AccuracyError("mellin_check: quadrature did not converge", err);
  if (p.kind == KernelKind::K1) sum += detail::k1_line_tail(p, u, T);
  return std::abs(sum - eval_kernel_hat(p, u));
}

/// Upper bound for sum_{n > U} Lambda(n) k̂2(n) from psi(u) <= 1.04 u.
inline double k2_hat_tail_bound(double x, double U) {
  const double lx = std::log(x);
  const KernelParams p{KernelKind::K2, x, 0.0};
  const double mass = x * x * 0.5 * std::erfc((std::log(U) - 3 * lx) / (2 * std::sqrt(lx)));
  return 1.04 * (U * eval_kernel_hat(p, U) + mass);
}

/// Smallest power-of-two multiple of x^3 at which the k̂2 tail drops below tol.
inline double k2_hat_cutoff(double x, double tol) {
  double U = std::max(16.0, x * x * x);
  while (k2_hat_tail_bound(x, U) > tol) U *= 2;
  return U;
}

}  // namespace wtk
