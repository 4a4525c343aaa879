#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "wtk/core/precision.hpp"
#include "wtk/error.hpp"

namespace wtk {

namespace detail {

template <class C>
std::string describe(const C& z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << static_cast<double>(z.real()) << ", " << static_cast<double>(z.imag()) << ")";
  return os.str();
}

template <class R>
R stirling_radius() {
  return R(0.4 * std::numeric_limits<R>::digits10 + 4);
}

// expm1(x)/x, equal to 1 at x = 0.
template <class C>
C expm1_over(const C& x) {
  using std::abs;
  using std::exp;
  using R = real_of_t<C>;
  if (abs(x) > R(0.25)) return (exp(x) - R(1)) / x;
  C sum(R(1)), term(R(1));
  R eps = std::numeric_limits<R>::epsilon();
  for (int k = 2; k < 200; ++k) {
    term *= x / R(k);
    sum += term;
    if (abs(term) < eps * abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

template <class C>
bool is_nonpositive_integer(const C& z) {
  using std::floor;
  using R = real_of_t<C>;
  return z.imag() == R(0) && z.real() <= R(0) && floor(z.real()) == z.real();
}

/// log Γ(z) on the branch continuous in the plane cut along (-inf, 0]; it agrees
/// with the principal logarithm of Γ for real z > 0 and varies continuously
/// along every vertical line that avoids the cut.
template <class C>
C log_gamma(const C& z, const Precision& prec = {}) {
  using std::abs;
  using std::log;
  using R = real_of_t<C>;
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole of the gamma function at s = " + detail::describe(z));
  const R eps = effective_epsilon<R>(prec);
  const R r0 = detail::stirling_radius<R>();
  C w = z;
  C shift(R(0));
  while (w.real() < R(0) || abs(w) < r0) {
    shift += log(w);
    w += R(1);
  }
  const R half = R(1) / R(2);
  C res = (w - half) * log(w) - w + half * log(R(2) * pi_v<R>());
  const C w2 = R(1) / (w * w);
  C pw = R(1) / w;
  R prev = std::numeric_limits<R>::max();
  for (int k = 1; k < 400; ++k) {
    C term = pw * (boost::math::bernoulli_b2n<R>(k) / R(2 * k * (2 * k - 1)));
    R at = abs(term);
    if (at > prev) break;
    res += term;
    if (at < eps * abs(res) / R(16)) break;
    prev = at;
    pw *= w2;
  }
  return res - shift;
}

/// Γ(z); throws PoleError at nonpositive integers.
template <class C>
C gamma_fn(const C& z, const Precision& prec = {}) {
  using std::exp;
  return exp(log_gamma(z, prec));
}

/// 1/Γ(z), entire: zero at the poles of Γ.
template <class C>
C rgamma(const C& z, const Precision& prec = {}) {
  using std::exp;
  using R = real_of_t<C>;
  if (is_nonpositive_integer(z)) return C(R(0));
  return exp(-log_gamma(z, prec));
}

namespace detail {

// Legendre continued fraction, modified Lentz.
template <class C>
C gamma_upper_cf(const C& a, const C& w, const real_of_t<C>& eps) {
  using std::abs;
  using std::exp;
  using std::log;
  using R = real_of_t<C>;
  const R tiny = std::numeric_limits<R>::min() * R(1e10);
  C b = w + R(1) - a;
  C c = R(1) / tiny;
  C d = R(1) / b;
  C h = d;
  R err = R(1);
  for (int i = 1; i < 20000; ++i) {
    C an = -R(i) * (R(i) - a);
    b += R(2);
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = R(1) / d;
    C del = d * c;
    h *= del;
    err = abs(del - R(1));
    if (err < eps) return exp(a * log(w) - w) * h;
  }
  throw AccuracyError("incomplete_gamma: continued fraction did not converge", static_cast<double>(err));
}

// Σ_{k>=0} w^k / (a)_{k+1}
template <class C>
C gamma_lower_series(const C& a, const C& w, const real_of_t<C>& eps) {
  using std::abs;
  using R = real_of_t<C>;
  C term = R(1) / a;
  C sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= w / (a + R(k));
    sum += term;
    if (abs(term) < eps * abs(sum) && R(k) > abs(w)) return sum;
  }
  throw AccuracyError("incomplete_gamma: power series did not converge", static_cast<double>(abs(term / sum)));
}

// Γ(e, w) for |e| < 1/4, regular at e = 0.
template <class C>
C gamma_upper_near_zero(const C& e, const C& w, const real_of_t<C>& eps) {
  using std::abs;
  using std::log;
  using std::exp;
  using R = real_of_t<C>;
  // lgamma(1+e) = e*h(e)
  C h(-boost::math::constants::euler<R>());
  C pe(R(-1));
  for (int k = 2; k < 400; ++k) {
    pe *= -e;
    C term = pe * (boost::math::zeta<R>(R(k)) / R(k));
    h += term;
    if (abs(term) < eps * abs(h)) break;
  }
  C g1 = h * expm1_over(e * h);
  C lw = log(w);
  C res = g1 - lw * expm1_over(e * lw);
  // - Σ_{k>=1} (-1)^k w^{e+k} / (k! (e+k))
  C we = exp(e * lw);
  C pw(R(1));
  C sum(R(0));
  for (int k = 1; k < 100000; ++k) {
    pw *= -w / R(k);
    C term = pw / (e + R(k));
    sum += term;
    if (abs(term) < eps * abs(sum) && R(k) > abs(w)) break;
  }
  return res - we * sum;
}

}  // namespace detail

/// Upper incomplete gamma Γ(a, w) = ∫_w^∞ t^{a-1} e^{-t} dt for complex a and
/// complex w off the closed negative real axis (principal power w^a).
template <class C>
C incomplete_gamma_upper(const C& a, const C& w, const Precision& prec = {}) {
  using std::abs;
  using std::exp;
  using std::floor;
  using std::log;
  using R = real_of_t<C>;
  const R eps = effective_epsilon<R>(prec);
  if (w.imag() == R(0) && w.real() <= R(0)) {
    if (w.real() == R(0) && a.real() > R(0)) return gamma_fn(a, prec);
    throw DomainError("incomplete_gamma: argument on the branch cut " + detail::describe(w));
  }
  const R aw = abs(w);
  if (aw > abs(a) + R(1) && aw > R(2)) return detail::gamma_upper_cf(a, w, eps);
  // near a pole of Γ(a) use the regular expansion and recur downward
  if (a.real() < R(1) / R(2)) {
    R m = floor(-a.real() + R(1) / R(2));
    C e = a + m;
    if (abs(e) < R(1) / R(4)) {
      C g = detail::gamma_upper_near_zero(e, w, eps);
      const C lw = log(w);
      for (int j = 1; j <= static_cast<int>(m); ++j) {
        C b = e - R(j);
        g = (g - exp(b * lw - w)) / b;
      }
      return g;
    }
  }
  C lower = exp(a * log(w) - w) * detail::gamma_lower_series(a, w, eps);
  return gamma_fn(a, prec) - lower;
}

/// Real-argument convenience form: Γ(s, x) with x > 0.
template <class C>
C incomplete_gamma_upper(const C& a, const real_of_t<C>& x, const Precision& prec = {}) {
  using R = real_of_t<C>;
  if (!(x > R(0))) throw DomainError("incomplete_gamma: x must be positive");
  return incomplete_gamma_upper(a, C(x, R(0)), prec);
}

}  // namespace wtk
