#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/characters/dirichlet_character.hpp"
#include "wtk/core/primes.hpp"
#include "wtk/error.hpp"
#include "wtk/parallel.hpp"
#include "wtk/rankin/satake.hpp"

namespace wtk {

enum class TheoremTag { A, B, C };

inline char tag_char(TheoremTag t) { return t == TheoremTag::A ? 'A' : t == TheoremTag::B ? 'B' : 'C'; }

inline TheoremTag parse_tag(const std::string& s) {
  if (s == "A") return TheoremTag::A;
  if (s == "B") return TheoremTag::B;
  if (s == "C") return TheoremTag::C;
  throw InputError("theorem tag must be A, B or C, got '" + s + "'");
}

/// Inputs of the three bound displays.  Unused fields are ignored per tag.
struct BoundParams {
  double C = 1.0;
  double d_K = 1.0;
  double N_chi = 1.0;   // B
  double d_L = 1.0;     // A
  int n_L = 1;          // A
  double N_S = 1.0;
  double Q = 1.0;       // C
  int d = 1;            // C
  double H = 0.5;       // C
  double R = 0.0;       // C
  double epsilon = 0.1; // C
};

/// Theorem C, general-d display: C Q^{2d + d(d-2)/(dH+1) + ε} N_S^{d³(2R+H)/(dH+1) + ε}.
inline double theorem_c_general(const BoundParams& p) {
  if (!(p.H > 2 * p.R)) throw PreconditionError("theorem_bound C: needs H > 2R");
  const double d = p.d, den = d * p.H + 1;
  const double eq = 2 * d + d * (d - 2) / den + p.epsilon;
  const double es = d * d * d * (2 * p.R + p.H) / den + p.epsilon;
  return p.C * std::pow(p.Q, eq) * std::pow(p.N_S, es);
}

/// Corollary form for a character: N(χ)^{1/2+ε} N_S^ε (times C).
inline double corollary_bound(const BoundParams& p) {
  return p.C * std::pow(p.N_chi, 0.5 + p.epsilon) * std::pow(p.N_S, p.epsilon);
}

/// A: (d_L N_S^{n_L})^C.  B: (d_K N(χ) N_S)^C.  C: the d = 1 display
/// C Q^{1+ε} N_S^ε when d = 1, else the general-d display.
inline double theorem_bound(TheoremTag tag, const BoundParams& p) {
  switch (tag) {
    case TheoremTag::A:
      return std::pow(p.d_L * std::pow(p.N_S, p.n_L), p.C);
    case TheoremTag::B:
      return std::pow(p.d_K * p.N_chi * p.N_S, p.C);
    case TheoremTag::C:
      if (!(p.H > 2 * p.R)) throw PreconditionError("theorem_bound C: needs H > 2R");
      if (p.d == 1) return p.C * std::pow(p.Q, 1 + p.epsilon) * std::pow(p.N_S, p.epsilon);
      return theorem_c_general(p);
  }
  return 0.0;
}

struct WitnessReport {
  std::optional<std::int64_t> witness_prime;
  ExclusionSet excluded_S;
  double bound_value = 0.0;      // may be +inf for large fields; see log_bound
  double log_bound = 0.0;
  std::int64_t search_cap = 0;
  std::optional<double> fitted_constant;
  TheoremTag theorem_tag = TheoremTag::B;
  std::string subject;   // character key or extension description
  double log_base = 0.0; // log of the bound base the constant is fitted against
};

struct WitnessOptions {
  std::int64_t cap = 1000000;
  std::int64_t segment = 2048;  // sieve chunk; never changes the answer
  double C = 1.0;               // constant in the bound display
  double epsilon = 0.1;
  double H = 0.5;
  double R = 0.0;
};

namespace detail {

template <class Pred>
std::int64_t least_prime(const WitnessOptions& o, const ExclusionSet& S, Pred&& pred, const std::string& what) {
  std::int64_t found = 0, seen = 0;
  PrimeSieve(o.segment).for_each(2, o.cap, [&](std::int64_t p) {
    ++seen;
    if (S.contains(p) || !pred(p)) return true;
    found = p;
    return false;
  });
  if (!found)
    throw CapExhaustedError(what + ": no witness up to cap " + std::to_string(o.cap) + " (" + std::to_string(seen) +
                            " primes tested, S = {" + S.to_string() + "})");
  return found;
}

inline std::optional<double> log_ratio(std::int64_t p, double log_base) {
  if (!(log_base > 0)) return std::nullopt;
  return std::log(static_cast<double>(p)) / log_base;
}

}  // namespace detail

/// Theorem B: least p not in S, p ∤ f(χ), with χ(p) != 1.
inline WitnessReport witness_search_char(const DirichletCharacter& chi, const ExclusionSet& S, const WitnessOptions& o = {}) {
  const auto prim = chi.primitive();
  if (prim.is_principal()) throw NoWitnessError("witness_search_char: principal character has no witness");
  const std::int64_t f = prim.conductor();
  WitnessReport r;
  r.theorem_tag = TheoremTag::B;
  r.excluded_S = S;
  r.search_cap = o.cap;
  r.subject = prim.key();
  const double NS = std::exp(S.log_norm_product());
  BoundParams bp;
  bp.C = o.C;
  bp.N_chi = static_cast<double>(f);
  bp.N_S = NS;
  r.bound_value = theorem_bound(TheoremTag::B, bp);
  r.log_base = std::log(static_cast<double>(f)) + S.log_norm_product();
  r.log_bound = o.C * r.log_base;
  const auto p = detail::least_prime(o, S, [&](std::int64_t q) { return f % q != 0 && !prim.is_one(q); },
                                     "witness_search_char");
  r.witness_prime = p;
  r.fitted_constant = detail::log_ratio(p, r.log_base);
  return r;
}

/// Theorem C with d = 1: least p not in S, unramified for both, χ(p) != χ'(p).
/// The fitted constant is p / (Q^{1+ε} N_S^ε).
inline WitnessReport witness_search_pair(const DirichletCharacter& chi, const DirichletCharacter& chip,
                                         const ExclusionSet& S, const WitnessOptions& o = {}) {
  const auto a = chi.primitive(), b = chip.primitive();
  if (same_primitive(a, b)) throw NoWitnessError("witness_search_pair: the two characters are equal");
  const std::int64_t fa = a.conductor(), fb = b.conductor();
  WitnessReport r;
  r.theorem_tag = TheoremTag::C;
  r.excluded_S = S;
  r.search_cap = o.cap;
  r.subject = a.key() + " vs " + b.key();
  BoundParams bp;
  bp.C = 1.0;
  bp.Q = std::exp(std::max(conductor_of(a).log_extended(), conductor_of(b).log_extended()));
  bp.N_S = std::exp(S.log_norm_product());
  bp.epsilon = o.epsilon;
  bp.H = o.H;
  bp.R = o.R;
  const double unit = theorem_bound(TheoremTag::C, bp);
  bp.C = o.C;
  r.bound_value = theorem_bound(TheoremTag::C, bp);
  r.log_base = std::log(unit);
  r.log_bound = std::log(o.C) + r.log_base;
  const auto p = detail::least_prime(
      o, S, [&](std::int64_t q) { return fa % q != 0 && fb % q != 0 && a.exponent(q) * b.order() != b.exponent(q) * a.order(); },
      "witness_search_pair");
  r.witness_prime = p;
  r.fitted_constant = static_cast<double>(p) / unit;
  return r;
}

/// Theorem A: least unramified p not in S with Artin symbol equal to class C.
inline WitnessReport witness_search_chebotarev(const AbelianExtension& ext, int cls, const ExclusionSet& S,
                                               const WitnessOptions& o = {}) {
  if (ext.degree() <= 1) throw PreconditionError("witness_search_chebotarev: extension is Q itself");
  if (cls < 0 || cls >= ext.degree()) throw InputError("witness_search_chebotarev: class index out of range");
  WitnessReport r;
  r.theorem_tag = TheoremTag::A;
  r.excluded_S = S;
  r.search_cap = o.cap;
  r.subject = "n=" + std::to_string(ext.conductor_n()) + " class=" + std::to_string(ext.class_representatives()[cls]);
  BoundParams bp;
  bp.C = o.C;
  bp.d_L = std::exp(log_big(ext.discriminant()));
  bp.N_S = std::exp(S.log_norm_product());
  bp.n_L = ext.degree();
  r.bound_value = theorem_bound(TheoremTag::A, bp);
  r.log_base = log_big(ext.discriminant()) + ext.degree() * S.log_norm_product();
  r.log_bound = o.C * r.log_base;
  const auto p = detail::least_prime(
      o, S, [&](std::int64_t q) { return !ext.is_ramified(q) && ext.artin_symbol(q) == cls; }, "witness_search_chebotarev");
  r.witness_prime = p;
  r.fitted_constant = detail::log_ratio(p, r.log_base);
  return r;
}

struct FitPoint {
  std::int64_t p = 0;
  double log_base = 0.0;
};

struct FitRow {
  FitPoint point;
  double ratio = 0.0;     // log p / log base
  double residual = 0.0;  // log p - C_ls log base
};

struct ConstantFit {
  double least_squares = 0.0;  // argmin Σ (log p - C log base)^2
  double max_ratio = 0.0;      // least C with p <= base^C on every point
  std::size_t used = 0;
  std::size_t skipped = 0;     // points with base <= 1
  std::vector<FitRow> rows;
};

/// Fits log p ≈ C log(base) through the origin.
inline ConstantFit fit_constants(const std::vector<FitPoint>& data) {
  if (data.empty()) throw InputError("fit_constants: empty dataset");
  ConstantFit f;
  double num = 0, den = 0;
  for (const auto& d : data) {
    if (!(d.log_base > 0)) {
      ++f.skipped;
      continue;
    }
    const double lp = std::log(static_cast<double>(d.p));
    num += lp * d.log_base;
    den += d.log_base * d.log_base;
    f.max_ratio = std::max(f.max_ratio, lp / d.log_base);
    ++f.used;
  }
  if (f.used == 0) throw InputError("fit_constants: no point has a bound base above 1");
  f.least_squares = num / den;
  for (const auto& d : data) {
    if (!(d.log_base > 0)) continue;
    const double lp = std::log(static_cast<double>(d.p));
    f.rows.push_back({d, lp / d.log_base, lp - f.least_squares * d.log_base});
  }
  return f;
}

inline std::vector<FitPoint> fit_points(const std::vector<WitnessReport>& reports) {
  std::vector<FitPoint> out;
  for (const auto& r : reports)
    if (r.witness_prime) out.push_back({*r.witness_prime, r.log_base});
  return out;
}

/// Every subset of `pool` with at most k elements, in lexicographic order.
inline std::vector<ExclusionSet> small_subsets(const std::vector<std::int64_t>& pool, std::size_t k) {
  std::vector<ExclusionSet> out;
  const std::size_t n = pool.size();
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    std::vector<std::int64_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(pool[i]);
    if (s.size() <= k) out.emplace_back(s);
  }
  std::sort(out.begin(), out.end(), [](const ExclusionSet& a, const ExclusionSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.primes() < b.primes();
  });
  return out;
}

struct SweepOptions {
  WitnessOptions witness;
  std::int64_t max_conductor = 300;
  std::vector<std::int64_t> pool = {2, 3, 5, 7};
  std::size_t max_S = 2;
  unsigned threads = 1;
};

/// Theorem B sweep: every primitive χ with 1 < f <= max_conductor against every S.
inline std::vector<WitnessReport> sweep_theorem_b(const SweepOptions& o) {
  std::vector<DirichletCharacter> chars;
  for (std::int64_t f = 3; f <= o.max_conductor; ++f)
    for (auto& c : primitive_characters(f)) chars.push_back(c);
  const auto subsets = small_subsets(o.pool, o.max_S);
  auto per = parallel_map(
      chars.size(),
      [&](std::size_t i) {
        std::vector<WitnessReport> v;
        for (const auto& S : subsets) v.push_back(witness_search_char(chars[i], S, o.witness));
        return v;
      },
      o.threads);
  std::vector<WitnessReport> out;
  for (auto& v : per)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

/// Theorem A sweep: every class of Q(ζ_n), 2 < n <= max_conductor, n != 2 mod 4.
inline std::vector<WitnessReport> sweep_theorem_a(const SweepOptions& o) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 3; n <= o.max_conductor; ++n)
    if (n % 4 != 2) ns.push_back(n);
  const auto subsets = small_subsets(o.pool, o.max_S);
  auto per = parallel_map(
      ns.size(),
      [&](std::size_t i) {
        const auto ext = cyclotomic_field(ns[i]);
        std::vector<WitnessReport> v;
        for (int c = 0; c < ext.degree(); ++c)
          for (const auto& S : subsets) v.push_back(witness_search_chebotarev(ext, c, S, o.witness));
        return v;
      },
      o.threads);
  std::vector<WitnessReport> out;
  for (auto& v : per)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace wtk
