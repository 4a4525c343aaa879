#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/error.hpp"
#include "wtk/lfunctions/zeros.hpp"

namespace wtk {

/// β0 = 1 - 1/(c2 log d_L).
inline double exceptional_zero_surrogate(double log_dL, double c2) {
  if (!(c2 > 0)) throw InputError("exceptional_zero_surrogate: c2 must be positive");
  const double b = 1 - 1 / (c2 * log_dL);
  if (!(log_dL > 0) || !(b > 0) || !(b < 1))
    throw DomainError("exceptional_zero_surrogate: 1 - 1/(c2 log d_L) leaves (0,1)");
  return b;
}

/// Real zeros of the L-functions behind ext (hence of ζ_L) in [1 - 1/(c2 log d_L), 1).
inline std::vector<double> exceptional_candidates(const AbelianExtension& ext, double c2, const Precision& prec = {}) {
  const double edge = exceptional_zero_surrogate(log_big(ext.discriminant()), c2);
  std::vector<double> out;
  for (const auto& chi : ext.characters()) {
    if (chi.is_principal() || chi.order() > 2) continue;
    for (double b : real_zero_scan(chi, prec))
      if (b >= edge) out.push_back(b);
  }
  return out;
}

/// The exceptional zero of ζ_L if one lies in the box, else the surrogate.
inline double exceptional_zero_surrogate(const AbelianExtension& ext, double c2, const Precision& prec = {}) {
  const double s = exceptional_zero_surrogate(log_big(ext.discriminant()), c2);
  auto c = exceptional_candidates(ext, c2, prec);
  if (c.empty()) return s;
  return *std::max_element(c.begin(), c.end());
}

struct DeuringHeilbronn {
  double sigma = 1.0;
  bool region_empty = false;  // (1-β0) log(d_L τ^n_L) >= c7
};

/// σ(t) = 1 - c8 log(c7/((1-β0) log(d_L τ^n_L))) / log(d_L τ^n_L), τ = |t| + 2.
inline DeuringHeilbronn deuring_heilbronn_sigma(double beta0, double log_dL, double n_L, double t, double c7, double c8) {
  if (!(beta0 < 1)) throw InputError("deuring_heilbronn_sigma: beta0 must be below 1");
  if (!(c7 > 0) || !(c8 >= 0)) throw InputError("deuring_heilbronn_sigma: bad constants");
  const double ell = log_dL + n_L * std::log(std::abs(t) + 2);
  const double arg = c7 / ((1 - beta0) * ell);
  DeuringHeilbronn r;
  if (arg < 1) {
    r.region_empty = true;
    return r;
  }
  r.sigma = 1 - c8 * std::log(arg) / ell;
  return r;
}

/// 1 - β0 >= d_L^{-c10}.
inline bool siegel_floor_holds(double beta0, double log_dL, double c10) {
  return 1 - beta0 >= std::exp(-c10 * log_dL);
}

}  // namespace wtk
