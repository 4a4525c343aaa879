#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/explicit_formula/contour.hpp"
#include "wtk/explicit_formula/kernels.hpp"

namespace wtk {

/// One row of a term table: computed value, the bound shape it is compared
/// with (constants stripped) and value/shape.
struct TermRow {
  std::string name;
  double value = 0.0;
  double shape = 0.0;
  double ratio = 0.0;
  double truncation = 0.0;  // bound on the part of the sum not computed
  std::string note;
};

inline TermRow make_row(std::string name, double value, double shape, std::string note = {}) {
  TermRow r{std::move(name), value, shape, shape != 0 ? value / shape : 0.0, 0.0, std::move(note)};
  return r;
}

struct Lemma31Report {
  KernelParams params;
  double delta = 1.0;
  std::vector<TermRow> rows;
  const TermRow& at(const std::string& name) const {
    for (const auto& r : rows)
      if (r.name == name) return r;
    throw InputError("Lemma31Report: no term " + name);
  }
};

namespace detail {

// Σ_m log p k̂(p^m) over p^m <= limit (m >= m0).
inline double local_kernel_sum(const KernelParams& k, std::int64_t p, double limit, int m0 = 1) {
  double s = 0, v = 1;
  const double lp = std::log(static_cast<double>(p));
  for (int m = 1;; ++m) {
    v *= static_cast<double>(p);
    if (v > limit) break;
    if (m >= m0) s += lp * eval_kernel_hat(k, v);
  }
  return s;
}

}  // namespace detail

/// Exact values of the ramified, S, non-prime-norm and large-norm sums over Q
/// next to the shapes of their upper bounds.
inline Lemma31Report lemma31_terms(const AbelianExtension& ext, const ExclusionSet& S, const KernelParams& k,
                                   double delta = 1.0) {
  k.validate();
  if (!(delta > 0)) throw InputError("lemma31_terms: delta must be positive");
  Lemma31Report rep;
  rep.params = k;
  rep.delta = delta;
  const double n_K = 1.0;
  const double lx = std::log(k.x);
  const double log_dL = log_big(ext.discriminant());
  const double log_NS = S.log_norm_product();
  const bool k1 = k.kind == KernelKind::K1;
  // local sums run to the support end (k1) or to x^10 (k2)
  const double local_limit = k1 ? k.y * k.y : std::pow(k.x, 10.0);
  const double lyx = k1 ? std::log(k.y / k.x) : 0.0;

  double ram = 0;
  for (auto p : ext.ramified_primes()) ram += detail::local_kernel_sum(k, p, local_limit);
  rep.rows.push_back(make_row("ramified", ram, k1 ? lyx / (k.x * k.x) * log_dL : std::sqrt(lx) * log_dL));

  double ss = 0;
  for (auto p : S.primes()) ss += detail::local_kernel_sum(k, p, local_limit);
  rep.rows.push_back(make_row("S", ss, k1 ? lyx / (k.x * k.x) * log_NS : std::sqrt(lx) * log_NS));

  rep.rows.push_back(make_row("non_prime_norm", 0.0, 0.0, "vacuous over Q: every prime has norm p"));

  // prime powers p^m with m >= 2 over all p
  const double hi_shape = k1 ? n_K * lyx * std::log(k.y) / (k.x * lx) : n_K * std::pow(k.x, 1.75);
  double pp = 0, pp_trunc = 0;
  double pp_limit = k1 ? k.y * k.y : 0.0;
  if (!k1) {
    pp_limit = k2_hat_cutoff(k.x, 1e-9 * std::max(1.0, hi_shape));
    pp_trunc = k2_hat_tail_bound(k.x, pp_limit);
  }
  PrimeSieve().for_each(2, static_cast<std::int64_t>(std::sqrt(pp_limit)) + 1, [&](std::int64_t p) {
    pp += detail::local_kernel_sum(k, p, pp_limit, 2);
    return true;
  });
  TermRow r3 = make_row("prime_powers", pp, hi_shape, "p^m with m >= 2");
  r3.truncation = pp_trunc;
  rep.rows.push_back(r3);

  if (!k1) {
    const double shape = n_K * std::pow(k.x, 2 - delta * delta / 4) * lx;
    const double lo = std::pow(k.x, 3 + delta);
    const double cut = std::max(lo, k2_hat_cutoff(k.x, 1e-6 * std::max(1.0, shape)));
    long double t = 0;
    for_each_prime_power(static_cast<std::int64_t>(cut), [&](std::int64_t p, int, std::int64_t v) {
      if (static_cast<double>(v) > lo) t += std::log(static_cast<long double>(p)) * eval_kernel_hat(k, static_cast<double>(v));
    });
    TermRow r4 = make_row("tail", static_cast<double>(t), shape, "norms above x^(3+delta)");
    r4.truncation = k2_hat_tail_bound(k.x, cut);
    rep.rows.push_back(r4);
  }
  return rep;
}

}  // namespace wtk
