#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "wtk/characters/dirichlet_character.hpp"
#include "wtk/error.hpp"
#include "wtk/lfunctions/l_value.hpp"
#include "wtk/parallel.hpp"

namespace wtk {

enum class ZeroSource { computed, imported };

inline const char* to_string(ZeroSource s) { return s == ZeroSource::computed ? "computed" : "imported"; }

struct ZeroDatum {
  double beta = 0.5;
  double gamma = 0.0;
  int precision_digits = 0;
  bool on_critical_line = true;
  ZeroSource source = ZeroSource::computed;
};

/// Zeros of one character with |gamma| <= certified_height, both signs.
struct ZeroList {
  std::string character_key;
  std::vector<ZeroDatum> zeros;
  double certified_height = 0.0;
};

struct ScanOptions {
  double ceiling = 60.0;
  double initial_step = 0.0;  // 0: chosen from the zero density
  int max_refinements = 6;
  unsigned threads = 1;
};

namespace detail {

// Entire function whose zeros in the plane are the nontrivial zeros of L.
template <class C>
C entire_completion(const LFunction<C>& L, const C& s) {
  using R = real_of_t<C>;
  C v = L.xi(s);
  if (L.is_principal()) v *= s * (s - R(1));
  return v;
}

template <class C, class F>
real_of_t<C> phase_change(F& fn, const C& a, const C& b, const C& fa, const C& fb, real_of_t<C> max_len, int depth) {
  using std::abs;
  using std::arg;
  using R = real_of_t<C>;
  const C m = (a + b) / R(2);
  const C fm = fn(m);
  const R d1 = arg(fm / fa);
  const R d2 = arg(fb / fm);
  if (abs(b - a) <= max_len && abs(d1) < R(0.6) && abs(d2) < R(0.6)) return d1 + d2;
  if (depth > 48) throw CertificationError("argument principle: phase tracking failed near " + describe(m), -1, -1);
  return phase_change(fn, a, m, fa, fm, max_len, depth + 1) + phase_change(fn, m, b, fm, fb, max_len, depth + 1);
}

}  // namespace detail

/// Number of zeros of L with sigma_lo < beta < sigma_hi and 0 < gamma < T by
/// the argument principle; the raw winding number is stored in `winding`.
template <class C>
long argument_principle_count(const LFunction<C>& L, real_of_t<C> T, real_of_t<C>* winding = nullptr,
                              real_of_t<C> sigma_lo = real_of_t<C>(-0.25), real_of_t<C> sigma_hi = real_of_t<C>(1.25)) {
  using R = real_of_t<C>;
  auto fn = [&](const C& s) { return detail::entire_completion(L, s); };
  const C corners[4] = {C(sigma_lo, R(0)), C(sigma_hi, R(0)), C(sigma_hi, T), C(sigma_lo, T)};
  C vals[4];
  for (int i = 0; i < 4; ++i) vals[i] = fn(corners[i]);
  R total(0);
  const R max_len(0.5);
  for (int i = 0; i < 4; ++i) {
    int j = (i + 1) % 4;
    total += detail::phase_change<C>(fn, corners[i], corners[j], vals[i], vals[j], max_len, 0);
  }
  R w = total / (R(2) * pi_v<R>());
  if (winding) *winding = w;
  using std::abs;
  using std::round;
  R r = round(w);
  if (abs(w - r) > R(0.05))
    throw CertificationError("argument principle: non-integral winding " + std::to_string(static_cast<double>(w)), -1,
                             -1);
  return static_cast<long>(r);
}

/// Zeros 0 < gamma <= T of L(s, chi) on the critical line, located by sign
/// changes of the Hardy function and certified by the argument principle.
template <class C = std::complex<double>>
std::vector<ZeroDatum> zero_scan(const DirichletCharacter& chi, double T, const Precision& prec = {},
                                 const ScanOptions& opt = {}, double* certified_height = nullptr) {
  using R = real_of_t<C>;
  using std::log;
  if (T > opt.ceiling)
    throw PreconditionError("zero_scan: height " + std::to_string(T) + " exceeds the scan ceiling " +
                            std::to_string(opt.ceiling));
  if (!(T > 0)) throw PreconditionError("zero_scan: height must be positive");
  LFunction<C> L(chi.primitive(), prec);
  const double f = static_cast<double>(L.conductor());
  const double spacing = 2 * M_PI / std::max(1.0, std::log(std::max(f * (T + 2) / (2 * M_PI), 2.718281828)));
  double h = opt.initial_step > 0 ? opt.initial_step : std::min(0.1, spacing / 8);
  const double T_scan = T + 0.25;
  const R eps = effective_epsilon<R>(prec);

  for (int attempt = 0; attempt <= opt.max_refinements; ++attempt, h /= 2) {
    const auto npts = static_cast<std::size_t>(std::ceil(T_scan / h)) + 1;
    std::vector<R> grid(npts);
    for (std::size_t k = 0; k < npts; ++k) grid[k] = R(std::min(T_scan, k * h));
    // chunked evaluation keeps per-task overhead low
    const std::size_t chunk = 64;
    const std::size_t nchunks = (npts + chunk - 1) / chunk;
    auto parts = parallel_map(
        nchunks,
        [&](std::size_t c) {
          std::vector<R> z;
          for (std::size_t k = c * chunk; k < std::min(npts, (c + 1) * chunk); ++k) z.push_back(L.hardy_z(grid[k]));
          return z;
        },
        opt.threads);
    std::vector<R> Z;
    for (auto& p : parts) Z.insert(Z.end(), p.begin(), p.end());

    std::vector<std::pair<R, R>> brackets;
    for (std::size_t k = 0; k + 1 < npts; ++k) {
      if (Z[k] == R(0) && grid[k] > R(0)) brackets.emplace_back(grid[k], grid[k]);
      if ((Z[k] < R(0) && Z[k + 1] > R(0)) || (Z[k] > R(0) && Z[k + 1] < R(0))) brackets.emplace_back(grid[k], grid[k + 1]);
    }
    // certification height: middle of the widest zero-free gap in [T, T_scan]
    std::vector<double> marks{T};
    for (auto& b : brackets) {
      double g = static_cast<double>((b.first + b.second) / R(2));
      if (g > T && g < T_scan) marks.push_back(g);
    }
    marks.push_back(T_scan);
    std::sort(marks.begin(), marks.end());
    double Tc = T, best = -1;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i)
      if (marks[i + 1] - marks[i] > best) {
        best = marks[i + 1] - marks[i];
        Tc = 0.5 * (marks[i] + marks[i + 1]);
      }
    long located = 0;
    for (auto& b : brackets)
      if (static_cast<double>(b.second) <= Tc) ++located;
    long counted = argument_principle_count(L, R(Tc));
    if (located > counted) throw CertificationError("zero_scan: more sign changes than zeros", located, counted);
    if (located < counted) {
      if (attempt == opt.max_refinements) throw CertificationError("zero_scan: missing zeros after refinement", located, counted);
      continue;
    }
    std::vector<ZeroDatum> out;
    for (auto& b : brackets) {
      if (static_cast<double>(b.first) > T) break;
      R lo = b.first, hi = b.second;
      if (lo != hi) {
        auto fz = [&](R t) { return L.hardy_z(t); };
        boost::uintmax_t it = 200;
        int bits = std::numeric_limits<R>::digits - 4;
        auto r = boost::math::tools::toms748_solve(fz, lo, hi, boost::math::tools::eps_tolerance<R>(bits), it);
        lo = r.first;
        hi = r.second;
      }
      ZeroDatum zd;
      R g = (lo + hi) / R(2);
      if (!(g > R(0)) || g > R(T)) continue;
      zd.gamma = static_cast<double>(g);
      using std::abs;
      R width = abs(hi - lo) + eps * (R(1) + abs(g)) * R(10);
      R rel = width / (abs(g) > R(1) ? abs(g) : R(1));
      int digits = static_cast<int>(std::floor(-std::log10(static_cast<double>(rel))));
      zd.precision_digits = std::max(1, std::min(digits, prec.decimal_digits - 3));
      out.push_back(zd);
    }
    if (certified_height) *certified_height = Tc;
    return out;
  }
  throw CertificationError("zero_scan: refinement exhausted", -1, -1);
}

/// Zeros with |gamma| <= T: the positive ones of chi plus the reflected
/// positive ones of conj(chi).
inline ZeroList zero_inventory(const DirichletCharacter& chi, double T, const Precision& prec = {},
                               const ScanOptions& opt = {}) {
  ZeroList zl;
  zl.character_key = chi.key();
  double h1 = 0, h2 = 0;
  auto pos = zero_scan(chi, T, prec, opt, &h1);
  bool real = chi.primitive() == chi.primitive().conj();
  auto neg = real ? pos : zero_scan(chi.conj(), T, prec, opt, &h2);
  for (auto z : neg) {
    z.gamma = -z.gamma;
    zl.zeros.push_back(z);
  }
  zl.zeros.insert(zl.zeros.end(), pos.begin(), pos.end());
  std::sort(zl.zeros.begin(), zl.zeros.end(), [](const ZeroDatum& a, const ZeroDatum& b) { return a.gamma < b.gamma; });
  zl.certified_height = T;
  return zl;
}

/// N(t): zeros with |gamma - t| <= 1.
inline int zero_count_window(const ZeroList& zl, double t) {
  if (std::abs(t) + 1 > zl.certified_height + 1e-12)
    throw PreconditionError("zero_count_window: zeros cover height " + std::to_string(zl.certified_height) +
                            ", need " + std::to_string(std::abs(t) + 1));
  int n = 0;
  for (const auto& z : zl.zeros)
    if (z.beta > 0 && z.beta < 1 && std::abs(z.gamma - t) <= 1) ++n;
  return n;
}

struct ZeroFreeAudit {
  double c2 = 1.0;
  double audited_height = 0.0;
  std::vector<ZeroDatum> violations;  // zeros inside the region of part (1)
  bool box_applicable = true;         // false when log A = 0
  int box_count = 0;                  // zeros in the box of part (2)
  bool box_ok = true;
  double c2_threshold = 0.0;          // part (1) holds for every c2 above this
  bool region_ok() const { return violations.empty(); }
};

/// Checks the zero-free region statements against a zero list.
inline ZeroFreeAudit zero_free_region_audit(const DirichletCharacter& chi, const ZeroList& zl, double c2) {
  ZeroFreeAudit a;
  a.c2 = c2;
  a.audited_height = zl.certified_height;
  const double logA = std::log(static_cast<double>(chi.conductor()));
  for (const auto& z : zl.zeros) {
    const double ell = logA + std::log(std::abs(z.gamma) + 2);
    const double edge = 1 - 1 / (c2 * ell);
    const bool high = z.gamma != 0 && std::abs(z.gamma) >= 1 / (1 + c2 * logA);
    if (z.beta >= edge && high) a.violations.push_back(z);
    if (z.gamma != 0 && z.beta < 1) {
      // zero lies in the region iff c2 <= 1/((1-beta) ell) and |gamma| >= 1/(1 + c2 log A)
      double upper = 1 / ((1 - z.beta) * ell);
      double lower = logA > 0 ? (1 / std::abs(z.gamma) - 1) / logA : (std::abs(z.gamma) >= 1 ? 0 : INFINITY);
      if (lower <= upper) a.c2_threshold = std::max(a.c2_threshold, upper);
    }
  }
  if (logA <= 0) {
    a.box_applicable = false;
  } else {
    const double w = 1 / (c2 * logA);
    for (const auto& z : zl.zeros)
      if (z.beta >= 1 - w && std::abs(z.gamma) <= w) ++a.box_count;
    a.box_ok = a.box_count <= 1;
  }
  return a;
}

/// Real zeros of a real character in [1/2, 1) found by sign changes of
/// L(sigma) on a uniform grid.
inline std::vector<double> real_zero_scan(const DirichletCharacter& chi, const Precision& prec = {}, int points = 200) {
  std::vector<double> out;
  if (!(chi.primitive() == chi.primitive().conj())) return out;
  LFunction<> L(chi.primitive(), prec);
  auto f = [&](double s) { return L.value({s, 0.0}).real(); };
  double prev = f(0.5);
  for (int i = 1; i <= points; ++i) {
    double s = 0.5 + 0.4999 * i / points;
    double v = f(s);
    if ((prev < 0) != (v < 0)) {
      boost::uintmax_t it = 100;
      auto r = boost::math::tools::toms748_solve(f, 0.5 + 0.4999 * (i - 1) / points, s,
                                                 boost::math::tools::eps_tolerance<double>(48), it);
      out.push_back(0.5 * (r.first + r.second));
    }
    prev = v;
  }
  return out;
}

}  // namespace wtk
