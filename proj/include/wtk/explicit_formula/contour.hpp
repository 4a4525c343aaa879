#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wtk/characters/dirichlet_character.hpp"
#include "wtk/core/primes.hpp"
#include "wtk/error.hpp"
#include "wtk/explicit_formula/kernels.hpp"
#include "wtk/lfunctions/l_value.hpp"
#include "wtk/lfunctions/zeros.hpp"
#include "wtk/parallel.hpp"

namespace wtk {

using cplx = std::complex<double>;

/// Absolute target for the k̂2 tail beyond the prime-sum cutoff.
inline constexpr double kPrimeTailTolerance = 1e-10;

/// Calls f(p, m, p^m) for every prime power <= limit, prime by prime.
template <class F>
void for_each_prime_power(std::int64_t limit, F&& f) {
  PrimeSieve().for_each(2, limit, [&](std::int64_t p) {
    std::int64_t v = p;
    for (int m = 1;; ++m) {
      f(p, m, v);
      if (v > limit / p) break;
      v *= p;
    }
    return true;
  });
}

/// Least cutoff that captures the support of k̂ (K1) or leaves a tail below
/// kPrimeTailTolerance (K2).
inline std::int64_t prime_side_cutoff(const KernelParams& p) {
  if (p.kind == KernelKind::K1) return static_cast<std::int64_t>(std::floor(p.y * p.y));
  return static_cast<std::int64_t>(std::ceil(k2_hat_cutoff(p.x, kPrimeTailTolerance)));
}

/// sum over p^m <= cutoff of chi(p^m) log p k̂(p^m).
inline cplx prime_side_J(const DirichletCharacter& chi, const KernelParams& p, std::int64_t cutoff = 0) {
  p.validate();
  const std::int64_t need = prime_side_cutoff(p);
  if (cutoff == 0) cutoff = need;
  if (cutoff < need)
    throw PreconditionError("prime_side_J: cutoff " + std::to_string(cutoff) + " below the support bound " +
                            std::to_string(need));
  long double re = 0, im = 0;
  for_each_prime_power(cutoff, [&](std::int64_t q, int, std::int64_t v) {
    if (chi.exponent(v) < 0) return;
    double w = eval_kernel_hat(p, static_cast<double>(v));
    if (w == 0) return;
    cplx c = chi.value(v) * (std::log(static_cast<double>(q)) * w);
    re += c.real();
    im += c.imag();
  });
  return {static_cast<double>(re), static_cast<double>(im)};
}

struct ContourOptions {
  double k1_height = 40.0;        // truncation of the k1 line integral
  std::int64_t tail_terms = 100000;  // Dirichlet terms in the k1 tail
  int cauchy_points = 24;
  double quad_tol = 1e-11;
  unsigned threads = 1;
};

struct ContourResult {
  cplx value;
  cplx truncated;        // numerical integral over |t| <= T
  cplx tail;             // analytic part beyond T
  double T = 0.0;
  double quad_error = 0.0;
  double tail_bound = 0.0;  // bound on Dirichlet terms omitted from the tail
};

namespace detail {

// ∫_a^b f over pieces of length <= h, GK61 on each, pieces in parallel.
template <class F>
cplx integrate_pieces(F&& f, double a, double b, double h, double tol, double* err, unsigned threads) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  auto parts = parallel_map(
      static_cast<std::size_t>(n),
      [&](std::size_t i) {
        double lo = a + (b - a) * i / n, hi = a + (b - a) * (i + 1) / n;
        double e = 0;
        cplx v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 10, tol, &e);
        return std::make_pair(v, e);
      },
      threads);
  cplx s = 0;
  double e = 0;
  for (auto& [v, ee] : parts) {
    s += v;
    e += ee;
  }
  if (err) *err += e;
  return s;
}

// Dirichlet-series tail of the k1 line integral beyond height T.
inline cplx k1_tail_sum(const DirichletCharacter& chi, const KernelParams& p, double T, std::int64_t N, double* bound) {
  long double re = 0, im = 0;
  for_each_prime_power(N, [&](std::int64_t q, int, std::int64_t v) {
    if (chi.exponent(v) < 0) return;
    double w = k1_line_tail(p, static_cast<double>(v), T);
    cplx c = chi.value(v) * (std::log(static_cast<double>(q)) * w);
    re += c.real();
    im += c.imag();
  });
  const double y2 = p.y * p.y;
  const double n = static_cast<double>(N);
  if (bound) *bound = 12 * y2 / (M_PI * T * T * std::log(n / y2)) * (std::log(n) + 1) / n;
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace detail

/// J = -(1/2πi) ∫_{(2)} (L'/L)(s) k(s) ds by quadrature up to height T; for
/// k1 the rest of the line is added from the Dirichlet series.
inline ContourResult contour_J(const DirichletCharacter& chi, const KernelParams& p, const Precision& prec = {},
                               const ContourOptions& opt = {}) {
  p.validate();
  LFunction<> L(chi, prec);
  ContourResult r;
  const double a = 2.0;
  if (p.kind == KernelKind::K2)
    r.T = std::sqrt(a * a + a + 32.0 / std::log(p.x)) + 0.5;
  else
    r.T = opt.k1_height;
  auto f = [&](double t) {
    cplx s(a, t);
    return -L.log_derivative(s, 0.25, opt.cauchy_points) * eval_kernel(p, s) / (2 * M_PI);
  };
  r.truncated = detail::integrate_pieces(f, -r.T, r.T, 2.0, opt.quad_tol, &r.quad_error, opt.threads);
  if (p.kind == KernelKind::K1) r.tail = detail::k1_tail_sum(chi, p, r.T, opt.tail_terms, &r.tail_bound);
  r.value = r.truncated + r.tail;
  if (r.quad_error > 1e-7) throw AccuracyError("contour_J: quadrature error too large", r.quad_error);
  return r;
}

struct ZeroSideResult {
  cplx value;
  cplx residues;      // δ k(1) - a k(0) - Σ_{|γ|<T} k(ρ)
  cplx boundary;      // -(1/2πi) over top, left and bottom edges
  cplx tail;          // right edge beyond height T
  std::size_t zeros_used = 0;
  double error_budget = 0.0;
};

/// Rectangle form of J over [-1/2, 2] x [-T, T] for primitive chi.
inline ZeroSideResult zero_side_J(const DirichletCharacter& chi, const KernelParams& p, const ZeroList& zeros, double T,
                                  const Precision& prec = {}, const ContourOptions& opt = {}) {
  p.validate();
  if (!chi.is_primitive()) throw PreconditionError("zero_side_J: character must be primitive");
  if (zeros.certified_height < T)
    throw CertificationError("zero_side_J: zeros certified only to height " + std::to_string(zeros.certified_height), 0, 0);
  LFunction<> L(chi, prec);
  ZeroSideResult r;
  const cplx I(0, 1);
  if (chi.is_principal()) r.residues += eval_kernel(p, cplx(1, 0));
  if (!chi.is_principal() && chi.parity_b() == 0) r.residues -= eval_kernel(p, cplx(0, 0));
  for (const auto& z : zeros.zeros) {
    if (std::abs(z.gamma) >= T) continue;
    cplx rho(z.beta, z.gamma);
    r.residues -= eval_kernel(p, rho);
    ++r.zeros_used;
    // sensitivity to the stored digits, |k'| estimated by a difference quotient
    double h = std::pow(10.0, -z.precision_digits) * std::max(1.0, std::abs(z.gamma));
    r.error_budget += std::abs(eval_kernel(p, rho + I * h) - eval_kernel(p, rho));
  }
  auto g = [&](cplx s) { return -L.log_derivative(s, 0.25, opt.cauchy_points) * eval_kernel(p, s); };
  double qerr = 0;
  cplx top = -detail::integrate_pieces([&](double x) { return g(cplx(x, T)); }, -0.5, 2.0, 0.5, opt.quad_tol, &qerr, opt.threads);
  cplx bottom = detail::integrate_pieces([&](double x) { return g(cplx(x, -T)); }, -0.5, 2.0, 0.5, opt.quad_tol, &qerr, opt.threads);
  cplx left = -I * detail::integrate_pieces([&](double t) { return g(cplx(-0.5, t)); }, -T, T, 2.0, opt.quad_tol, &qerr, opt.threads);
  r.boundary = -(top + left + bottom) / (2 * M_PI * I);
  double tb = 0;
  if (p.kind == KernelKind::K1) r.tail = detail::k1_tail_sum(chi, p, T, opt.tail_terms, &tb);
  r.value = r.residues + r.boundary + r.tail;
  r.error_budget += qerr / (2 * M_PI) + tb;
  return r;
}

}  // namespace wtk
