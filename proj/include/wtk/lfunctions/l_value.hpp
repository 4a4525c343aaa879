#pragma once

#include <cmath>
#include <complex>

#include <boost/math/special_functions/fpclassify.hpp>
#include <cstdint>
#include <utility>
#include <vector>

#include "wtk/characters/dirichlet_character.hpp"
#include "wtk/core/gamma.hpp"
#include "wtk/core/precision.hpp"
#include "wtk/core/primes.hpp"
#include "wtk/error.hpp"

namespace wtk {

/// Completion data of L(s, chi): the analytic conductor, gamma shape and
/// root number of the primitive character behind chi.
struct CompletedLData {
  DirichletCharacter character;
  std::int64_t analytic_conductor_A = 1;
  int parity_a = 1;
  int parity_b = 0;
  std::complex<double> root_number{1.0, 0.0};
};

/// Dirichlet L-function of a (possibly imprimitive) character.
///
/// Values come from the smoothed approximate functional equation of the
/// primitive character chi* mod f with parity k:
///
///   xi(s) = (f/pi)^z Gamma(z) L(s, chi*),  z = (s+k)/2,
///
/// split along a ray of angle phi (the incomplete-gamma weights are evaluated
/// at x_n e^{+-i phi}, x_n = pi n^2/f) to keep cancellation bounded high up
/// the critical strip.  Imprimitive characters pick up the missing Euler
/// factors at primes dividing q but not f.
template <class C = std::complex<double>>
class LFunction {
 public:
  using R = real_of_t<C>;

  explicit LFunction(const DirichletCharacter& chi, Precision prec = {})
      : chi_(chi), prim_(chi.primitive()), prec_(prec) {
    f_ = prim_.modulus();
    kappa_ = prim_.parity_b();
    W_ = root_number<C>(prim_);
    vals_.resize(static_cast<std::size_t>(f_));
    for (std::int64_t a = 0; a < f_; ++a) vals_[a] = prim_.template value<C>(a);
    for (auto [p, e] : factorize(chi.modulus()))
      if (f_ % p != 0) euler_.emplace_back(p, prim_.template value<C>(p));
  }

  const DirichletCharacter& character() const { return chi_; }
  const DirichletCharacter& primitive_character() const { return prim_; }
  const Precision& precision() const { return prec_; }
  std::int64_t conductor() const { return f_; }
  int kappa() const { return kappa_; }
  bool is_principal() const { return f_ == 1; }
  C root_number_value() const { return W_; }

  CompletedLData data() const {
    CompletedLData d;
    d.character = prim_;
    d.analytic_conductor_A = f_;
    d.parity_a = 1 - kappa_;
    d.parity_b = kappa_;
    d.root_number = std::complex<double>(static_cast<double>(W_.real()), static_cast<double>(W_.imag()));
    return d;
  }

  /// (f/pi)^z Gamma(z) L(s, chi*).  Has simple poles at s = 0, 1 when f = 1.
  C xi(const C& s) const {
    using std::abs;
    using std::cos;
    using std::exp;
    using std::log;
    const R one(1), two(2), pi = pi_v<R>();
    if (f_ == 1 && (s == C(R(0)) || s == C(one)))
      throw PoleError("xi: pole of the completed zeta function at s = " + detail::describe(s));
    const C z = (s + R(kappa_)) / two;
    const C zp = (one - s + R(kappa_)) / two;
    const R phi = rotation(s.imag());
    const C iphi(R(0), phi);
    const C nu = exp(iphi);
    const C nubar = exp(-iphi);
    const R cphi = cos(phi);
    const R eps = effective_epsilon<R>(prec_);
    const R zmax = (abs(z) > abs(zp) ? abs(z) : abs(zp)) + two;
    C res(R(0));
    if (f_ == 1) res += exp(iphi * (s - one) / two) / (s - one) - exp(iphi * s / two) / s;
    R maxterm(0);
    for (std::int64_t n = 1;; ++n) {
      const C& c = vals_[n % f_];
      const R xn = pi * R(n) * R(n) / R(f_);
      if (c != C(R(0))) {
        const R lx = log(xn);
        const R nk = kappa_ ? R(n) : one;
        C a = c * nk * exp(-z * lx) * incomplete_gamma_upper(z, C(xn * nu), prec_);
        C b = W_ * conj_(c) * nk * exp(-zp * lx) * incomplete_gamma_upper(zp, C(xn * nubar), prec_);
        res += a + b;
        R m = abs(a) + abs(b);
        if (m > maxterm) maxterm = m;
        if (xn * cphi > zmax && m <= eps * maxterm / R(8)) break;
      }
      if (n > 10000000) throw AccuracyError("xi: series did not terminate", static_cast<double>(maxterm));
    }
    return res;
  }

  /// Lambda(s, chi) = A^{s/2} gamma_chi(s) L(s, chi), A = f.
  C completed(const C& s) const {
    using std::exp;
    using std::log;
    if (f_ == 1 && (s == C(R(0)) || s == C(R(1))))
      throw PoleError("completed_l: pole of the completed zeta function at s = " + detail::describe(s));
    C v = xi(s) * exp(-R(kappa_) / R(2) * log(R(f_)));
    return v * euler_factor(s);
  }

  /// L(s, chi).
  C value(const C& s) const {
    using std::exp;
    using std::log;
    const R zero(0), one(1), two(2);
    if (f_ == 1) {
      if (s == C(one)) throw PoleError("l_value: pole of the principal L-function at s = 1");
      if (s == C(zero)) return C(-one / two) * euler_factor(s);
    }
    const C z = (s + R(kappa_)) / two;
    C rg = rgamma(z, prec_);
    if (rg == C(zero)) return C(zero);
    C v = xi(s) * rg * exp(-z * log(R(f_) / pi_v<R>())) * euler_factor(s);
    if (!(boost::math::isfinite(v.real()) && boost::math::isfinite(v.imag())))
      throw AccuracyError("l_value: gamma factor leaves the floating-point range at s = " + detail::describe(s), INFINITY);
    return v;
  }

  /// L'(s)/L(s) from a Cauchy circle around s.  For principal characters
  /// the pole at s = 1 is removed before differentiating.
  C log_derivative(const C& s, R radius = R(1) / R(4), int points = 32) const {
    using std::exp;
    const R two_pi = R(2) * pi_v<R>();
    C g0 = regular(s);
    C d(R(0));
    for (int j = 0; j < points; ++j) {
      const C e = exp(C(R(0), two_pi * R(j) / R(points)));
      d += regular(s + radius * e) / e;
    }
    d /= R(points) * radius;
    C r = d / g0;
    if (f_ == 1) r -= R(1) / (s - R(1));
    return r;
  }

  /// Hardy-type real function on the critical line: |Z(t)| = |L(1/2+it)|.
  R hardy_z(const R& t) const {
    using std::exp;
    using std::log;
    using std::sqrt;
    const R half = R(1) / R(2);
    const C s(half, t);
    const C z = (s + R(kappa_)) / R(2);
    C scale = z * log(R(f_) / pi_v<R>()) + log_gamma(z, prec_);
    C v = xi(s) / sqrt(W_);
    return v.real() * exp(-scale.real());
  }

  /// Product of the Euler factors (1 - chi*(p) p^{-s}) over p | q, p not | f.
  C euler_factor(const C& s) const {
    using std::exp;
    using std::log;
    C r(R(1));
    for (const auto& [p, c] : euler_) r *= R(1) - c * exp(-s * log(R(p)));
    return r;
  }

 private:
  static C conj_(const C& c) { return C(c.real(), -c.imag()); }

  // Rotation angle of the split ray; zero near the real axis.
  static R rotation(const R& t) {
    using std::abs;
    const R half_pi = pi_v<R>() / R(2);
    R at = abs(t);
    if (at == R(0)) return R(0);
    R cut = R(4) / at;
    R phi = half_pi - (cut < half_pi ? cut : half_pi);
    return t > R(0) ? phi : -phi;
  }

  C regular(const C& s) const {
    if (f_ == 1) return (s - R(1)) * value(s);
    return value(s);
  }

  DirichletCharacter chi_;
  DirichletCharacter prim_;
  Precision prec_;
  std::int64_t f_ = 1;
  int kappa_ = 0;
  C W_;
  std::vector<C> vals_;
  std::vector<std::pair<std::int64_t, C>> euler_;
};

template <class C = std::complex<double>>
C l_value(const DirichletCharacter& chi, const C& s, const Precision& prec = {}) {
  return LFunction<C>(chi, prec).value(s);
}

template <class C = std::complex<double>>
C completed_l(const DirichletCharacter& chi, const C& s, const Precision& prec = {}) {
  return LFunction<C>(chi, prec).completed(s);
}

/// (n, Lambda_chi(n)) for 2 <= n <= N: chi(p^m) log p at prime powers, else 0.
inline std::vector<std::pair<std::int64_t, std::complex<double>>> log_derivative_coefficients(const DirichletCharacter& chi,
                                                                                             std::int64_t N) {
  if (N < 2) throw PreconditionError("log_derivative_coefficients: N must be at least 2");
  std::vector<std::pair<std::int64_t, std::complex<double>>> out;
  out.reserve(static_cast<std::size_t>(N - 1));
  for (std::int64_t n = 2; n <= N; ++n) out.emplace_back(n, std::complex<double>(0.0, 0.0));
  for (const auto& pp : enumerate_prime_powers(N, false))
    out[pp.value - 2].second = chi.value(pp.value) * std::log(static_cast<double>(pp.p));
  return out;
}

}  // namespace wtk
