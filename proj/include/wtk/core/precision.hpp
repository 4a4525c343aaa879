#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

#include <boost/math/constants/constants.hpp>

#include "wtk/error.hpp"

namespace wtk {

/// Working precision of a numerical evaluation.
///
/// `decimal_digits` is the number of significant digits the caller wants;
/// `tail_epsilon` is the relative truncation target for series, continued
/// fractions and quadrature.  The arithmetic type is chosen by the template
/// parameter of each routine; `Precision` only steers truncation.
struct Precision {
  int decimal_digits = 15;
  double tail_epsilon = 1e-15;

  Precision() = default;
  Precision(int digits, double eps) : decimal_digits(digits), tail_epsilon(eps) { validate(); }

  /// Precision whose tail target is 10^(1-digits).
  static Precision digits(int d) { return Precision(d, std::pow(10.0, 1 - d)); }

  void validate() const {
    if (decimal_digits < 15) throw InputError("Precision: decimal_digits must be >= 15");
    if (!(tail_epsilon > 0.0)) throw InputError("Precision: tail_epsilon must be positive");
    if (tail_epsilon > std::pow(10.0, -decimal_digits + 2) * (1 + 1e-12))
      throw InputError("Precision: tail_epsilon must not exceed 10^(2-decimal_digits)");
  }
};

namespace detail {

template <class C>
struct real_of;

template <class R>
struct real_of<std::complex<R>> {
  using type = R;
};

}  // namespace detail

/// Maps a complex type to its component real type.  Specialised for
/// boost::multiprecision complex numbers in `multiprecision.hpp`.
template <class C>
using real_of_t = typename detail::real_of<C>::type;

/// Effective tail target for a real type: never below its unit roundoff.
template <class Real>
Real effective_epsilon(const Precision& prec) {
  Real eps = std::numeric_limits<Real>::epsilon();
  Real want = Real(prec.tail_epsilon);
  return want > eps ? want : eps;
}

template <class Real>
Real pi_v() {
  return boost::math::constants::pi<Real>();
}

template <class C>
C make_complex(const real_of_t<C>& re, const real_of_t<C>& im) {
  return C(re, im);
}

}  // namespace wtk
