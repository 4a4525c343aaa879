#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/core/gamma.hpp"
#include "wtk/error.hpp"

namespace wtk {

using cplx = std::complex<double>;

/// Line Re s = -H with separation δ from the poles in C/Z.
struct AAWindow {
  double H = 0.5;
  double delta = 0.1;
  std::vector<cplx> gamma_shifts;
};

struct AAResult {
  bool admissible = false;
  double nearest = INFINITY;            // least distance to a forbidden point
  std::optional<double> fallback_H;     // admissible H' with |H'-H| <= δ/2 at separation δ/2
};

namespace detail {

inline double frac_distance(double x) { return std::abs(x - std::round(x)); }

// min over N and j of |H - N| and |±H - N - Re b_j|
inline double aa_distance(double H, const std::vector<cplx>& shifts) {
  double d = frac_distance(H);
  for (const auto& b : shifts) {
    d = std::min(d, frac_distance(H - b.real()));
    d = std::min(d, frac_distance(-H - b.real()));
  }
  return d;
}

}  // namespace detail

inline AAResult aa_admissible(double H, double delta, const std::vector<cplx>& shifts) {
  if (!(delta > 0 && delta < 0.5)) throw InputError("aa_admissible: delta must lie in (0, 1/2)");
  if (!(H > 0)) throw InputError("aa_admissible: H must be positive");
  AAResult r;
  r.nearest = detail::aa_distance(H, shifts);
  r.admissible = r.nearest >= delta - 1e-12;
  if (r.admissible) return r;
  // candidates: H itself and the edges of the forbidden intervals near H
  const double d2 = delta / 2;
  std::vector<double> centres;
  for (int N = static_cast<int>(std::floor(H)) - 2; N <= static_cast<int>(std::ceil(H)) + 2; ++N) {
    centres.push_back(N);
    for (const auto& b : shifts) {
      centres.push_back(N + b.real());
      centres.push_back(N - b.real());
    }
  }
  std::optional<double> best;
  for (double c : centres)
    for (double e : {c + d2, c - d2}) {
      if (std::abs(e - H) > d2 + 1e-12 || e <= 0) continue;
      if (detail::aa_distance(e, shifts) < d2 - 1e-12) continue;
      if (!best || std::abs(e - H) < std::abs(*best - H) - 1e-15 ||
          (std::abs(std::abs(e - H) - std::abs(*best - H)) <= 1e-15 && e > *best))
        best = e;
    }
  r.fallback_H = best;
  return r;
}

/// G0(s) = π^{-D/2 + D s} prod_j Γ((1 - s + conj b_j)/2) / Γ((s + b_j)/2).
inline cplx g0_factor(cplx s, const std::vector<cplx>& shifts, const Precision& prec = {}, double delta = 1e-3) {
  const double D = static_cast<double>(shifts.size());
  cplx lg = (-D / 2 + D * s) * std::log(M_PI);
  for (const auto& b : shifts) {
    // numerator poles at s = 1 + conj b + 2k, denominator poles at s = -b - 2k
    for (cplx z : {(cplx(1, 0) + std::conj(b) - s) / 2.0, (s + b) / 2.0}) {
      const double k = std::round(-z.real());
      if (k >= 0 && std::abs(z + k) * 2 < delta)
        throw DomainError("g0_factor: s within " + std::to_string(delta) + " of a gamma pole");
    }
    lg += log_gamma((cplx(1, 0) - s + std::conj(b)) / 2.0, prec) - log_gamma((s + b) / 2.0, prec);
  }
  return std::exp(lg);
}

/// G1(s) = prod_{p in S} prod_e (1 - e p^{-s}) / (1 - conj(e) p^{s-1}), e running
/// over the local eigenvalues of the pair at p.
inline cplx g1_factor(cplx s, const std::vector<std::int64_t>& S, const std::map<std::int64_t, std::vector<cplx>>& local) {
  cplx g = 1;
  for (auto p : S) {
    auto it = local.find(p);
    if (it == local.end()) throw InputError("g1_factor: no local data at " + std::to_string(p));
    const double lp = std::log(static_cast<double>(p));
    const cplx a = std::exp(-s * lp), b = std::exp((s - 1.0) * lp);
    for (const auto& e : it->second) {
      const cplx den = 1.0 - std::conj(e) * b;
      if (std::abs(den) < 1e-12) throw DomainError("g1_factor: singular local factor at " + std::to_string(p));
      g *= (1.0 - e * a) / den;
    }
  }
  return g;
}

/// prod_{p in S} (2 p^{2R+H} / (1 - 2^{-(H + 2/(d²+1))}))^{d²}.
inline double g1_majorant(const std::vector<std::int64_t>& S, int d, double R, double H) {
  const double d2 = static_cast<double>(d) * d;
  const double den = 1 - std::pow(2.0, -(H + 2 / (d2 + 1)));
  double m = 1;
  for (auto p : S) m *= std::pow(2 * std::pow(static_cast<double>(p), 2 * R + H) / den, d2);
  return m;
}

/// Least-squares slope of log|G0(-H+it)| against log t on a uniform grid.
inline double g0_growth_exponent(const std::vector<cplx>& shifts, double H, double t0 = 5, double t1 = 50, int points = 46) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    const double t = t0 + (t1 - t0) * i / (points - 1);
    const double x = std::log(t), y = std::log(std::abs(g0_factor(cplx(-H, t), shifts)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

}  // namespace wtk
