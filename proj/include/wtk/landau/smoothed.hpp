#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/characters/dirichlet_character.hpp"
#include "wtk/landau/factors.hpp"
#include "wtk/landau/weight.hpp"
#include "wtk/lfunctions/l_value.hpp"

namespace wtk {

namespace detail {

// Primes whose Euler factors are removed from L^S(s, conj(χ)χ').
inline std::vector<std::int64_t> removed_primes(const DirichletCharacter& chi, const DirichletCharacter& chip,
                                                const ExclusionSet& S) {
  std::vector<std::int64_t> out = S.primes();
  for (auto f : {chi.conductor(), chip.conductor()})
    for (auto [p, e] : factorize(f)) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Σ_{n < 3X} λ(n) ω(n/X), λ(n) = conj(χ(n)) χ'(n) for n prime to S and to both
/// conductors, 0 otherwise.
inline cplx smoothed_sum_direct(const DirichletCharacter& chi, const DirichletCharacter& chip, const ExclusionSet& S,
                                double X) {
  if (!(X > 0)) throw InputError("smoothed_sum_direct: X must be positive");
  const auto a = chi.primitive(), b = chip.primitive();
  const auto drop = detail::removed_primes(a, b, S);
  const auto top = static_cast<std::int64_t>(std::ceil(3 * X));
  long double re = 0, im = 0;
  for (std::int64_t n = 1; n < top; ++n) {
    bool ok = true;
    for (auto p : drop)
      if (n % p == 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    const double w = omega(static_cast<double>(n) / X);
    if (w == 0) continue;
    const cplx v = std::conj(a.value(n)) * b.value(n) * w;
    re += v.real();
    im += v.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

struct ShiftedSumResult {
  cplx value;
  double height = 0.0;       // integration range [-T, T]
  double quad_error = 0.0;   // Kronrod minus Gauss, summed
  double tail_bound = 0.0;   // envelope of the omitted range
};

/// The contour-shifted form on Re s = -H:
///   (1/2π) ∫ X^s W(s) W_ψ f^{1/2-s} G0(s) G1(s) L^S(1-s, conj ψ) dt,
/// ψ the primitive character behind conj(χ)χ'.  Values of the χ-dependent
/// factor are cached per quadrature node so several (S, X) reuse them.
class ShiftedSum {
 public:
  ShiftedSum(const DirichletCharacter& chi, const DirichletCharacter& chip, const AAWindow& window,
             const Precision& prec = {})
      : chi_(chi.primitive()), chip_(chip.primitive()), psi_(product_character(chi, chip)), win_(window), prec_(prec),
        line_(-window.H), dual_(psi_.conj(), prec) {
    if (psi_.is_principal()) throw PoleError("smoothed_sum_shifted: principal product character, the shift crosses s = 1");
    shifts_ = {cplx(psi_.parity_b(), 0)};
    win_.gamma_shifts = shifts_;
    auto aa = aa_admissible(win_.H, win_.delta, shifts_);
    if (!aa.admissible) throw PreconditionError("smoothed_sum_shifted: (H, delta) violates the admissibility condition");
    f_ = static_cast<double>(psi_.conductor());
    W_ = root_number(psi_);
    const auto& xk = boost::math::quadrature::gauss_kronrod<double, 61>::abscissa();
    const auto& xg = boost::math::quadrature::gauss<double, 30>::abscissa();
    for (std::size_t i = 0; i < xk.size(); ++i) {
      int g = -1;
      for (std::size_t j = 0; j < xg.size(); ++j)
        if (std::abs(xg[j] - xk[i]) < 1e-13) g = static_cast<int>(j);
      gauss_index_.push_back(g);
    }
  }

  const DirichletCharacter& product() const { return psi_; }

  ShiftedSumResult evaluate(const ExclusionSet& S, double X, double tol = 1e-9) {
    if (!(X > 0)) throw InputError("smoothed_sum_shifted: X must be positive");
    const auto drop = detail::removed_primes(chi_, chip_, S);
    std::map<std::int64_t, std::vector<cplx>> local;
    for (auto p : drop) local[p] = {psi_.value(p)};
    const double H = win_.H;
    const double lX = std::log(X);
    ShiftedSumResult r;
    // range from the envelope X^{-H} f^{1/2+H} |W G0 G1| ζ(1+H) / 2π
    const double zeta = boost::math::zeta(1 + H);
    auto env = [&](double t) {
      double m = 0;
      for (double u : {t, -t}) {
        cplx s(-H, u);
        m = std::max(m, std::abs(line_(u) * g0_factor(s, shifts_, prec_) * g1_factor(s, drop, local)));
      }
      return std::exp(-H * lX) * std::pow(f_, 0.5 + H) * m * zeta / (2 * M_PI);
    };
    double T = 50;
    for (;; T += 25) {
      double m = 0;
      for (double u = T; u <= T + 25; u += 0.5) m = std::max(m, env(u));
      if (m * (25 + 2.5 * std::sqrt(T)) < tol || T + 25 > kMaxHeight) {
        r.tail_bound = m * (25 + 2.5 * std::sqrt(T));
        break;
      }
    }
    r.height = T;
    const int pieces = static_cast<int>(std::ceil(T / kPiece));
    ensure(pieces);
    const auto& wk = boost::math::quadrature::gauss_kronrod<double, 61>::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 30>::weights();
    cplx total = 0;
    double err = 0;
    for (int side = 0; side < 2; ++side)
      for (int k = 0; k < pieces; ++k) {
        const auto& nodes = side ? neg_[k] : pos_[k];
        cplx sk = 0, sg = 0;
        for (const auto& nd : nodes) {
          cplx s(-H, nd.t);
          // L^S(1-s, conj ψ) = L(1-s, conj ψ) prod_{p in S} (1 - conj ψ(p) p^{s-1})
          cplx es = 1;
          for (auto p : drop) es *= 1.0 - std::conj(local[p][0]) * std::exp((s - 1.0) * std::log(static_cast<double>(p)));
          cplx v = nd.A * es * std::exp(s * lX) * g1_factor(s, drop, local);
          sk += wk[nd.i] * v;
          if (gauss_index_[nd.i] >= 0) sg += wg[gauss_index_[nd.i]] * v;
        }
        sk *= kPiece / 2;
        sg *= kPiece / 2;
        total += sk;
        err += std::abs(sk - sg);
      }
    r.value = total / (2 * M_PI);
    r.quad_error = err / (2 * M_PI);
    return r;
  }

 private:
  static constexpr double kPiece = 2.0;
  // beyond this height Γ((s+κ)/2) on Re(1-s) = 1+H underflows a double
  static constexpr double kMaxHeight = 850.0;

  struct Node {
    double t;
    int i;    // abscissa index
    cplx A;   // W(s) W_ψ f^{1/2-s} G0(s) L(1-s, conj ψ)
  };

  cplx node_value(double t) const {
    const cplx s(-win_.H, t);
    return line_(t) * W_ * std::exp((0.5 - s) * std::log(f_)) * g0_factor(s, shifts_, prec_) * dual_.value(1.0 - s);
  }

  void ensure(int pieces) {
    const auto& xk = boost::math::quadrature::gauss_kronrod<double, 61>::abscissa();
    while (static_cast<int>(pos_.size()) < pieces) {
      const int k = static_cast<int>(pos_.size());
      for (int side = 0; side < 2; ++side) {
        const double sign = side ? -1.0 : 1.0;
        const double c = sign * (k + 0.5) * kPiece;
        std::vector<Node> nodes;
        for (std::size_t i = 0; i < xk.size(); ++i) {
          const double h = xk[i] * kPiece / 2;
          nodes.push_back({c + h, static_cast<int>(i), node_value(c + h)});
          if (i != 0) nodes.push_back({c - h, static_cast<int>(i), node_value(c - h)});
        }
        (side ? neg_ : pos_).push_back(std::move(nodes));
      }
    }
  }

  DirichletCharacter chi_, chip_, psi_;
  AAWindow win_;
  Precision prec_;
  MellinLine line_;
  LFunction<> dual_;
  std::vector<cplx> shifts_;
  double f_ = 1;
  cplx W_;
  std::vector<int> gauss_index_;
  std::vector<std::vector<Node>> pos_, neg_;
};

inline ShiftedSumResult smoothed_sum_shifted(const DirichletCharacter& chi, const DirichletCharacter& chip,
                                             const ExclusionSet& S, double X, const AAWindow& window,
                                             const Precision& prec = {}) {
  ShiftedSum ss(chi, chip, window, prec);
  return ss.evaluate(S, X);
}

}  // namespace wtk
