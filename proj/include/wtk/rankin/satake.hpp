#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/characters/dirichlet_character.hpp"
#include "wtk/core/primes.hpp"
#include "wtk/error.hpp"

namespace wtk {

using cplx = std::complex<double>;

/// Local parameters diag(α_1..α_d) at a place with residue field size q.
struct SatakeClass {
  std::int64_t q = 2;
  std::vector<cplx> alpha;

  SatakeClass() = default;
  SatakeClass(std::int64_t q_, std::vector<cplx> a) : q(q_), alpha(std::move(a)) { validate(); }

  int d() const { return static_cast<int>(alpha.size()); }

  void validate() const {
    if (q < 2 || as_prime_power(q).p == 0) throw InputError("SatakeClass: q must be a prime power");
    if (alpha.empty()) throw InputError("SatakeClass: need at least one parameter");
    for (const auto& a : alpha)
      if (a == cplx(0, 0)) throw InputError("SatakeClass: parameters must be nonzero");
  }

  /// max |Re log_q α_i|.
  double rb() const {
    double r = 0;
    for (const auto& a : alpha) r = std::max(r, std::abs(std::log(std::abs(a)) / std::log(static_cast<double>(q))));
    return r;
  }

  /// Parameters of the contragredient, taken as the complex conjugates.
  SatakeClass dual() const {
    SatakeClass s = *this;
    for (auto& a : s.alpha) a = std::conj(a);
    return s;
  }
};

inline std::vector<cplx> rs_local_eigenvalues(const SatakeClass& a, const SatakeClass& b) {
  if (a.q != b.q) throw InputError("rs_local_eigenvalues: residue sizes differ");
  std::vector<cplx> out;
  out.reserve(a.alpha.size() * b.alpha.size());
  for (const auto& x : a.alpha)
    for (const auto& y : b.alpha) out.push_back(x * y);
  return out;
}

/// Eigenvalues of the pairing with the contragredient.
inline std::vector<cplx> rs_self_dual_eigenvalues(const SatakeClass& s) { return rs_local_eigenvalues(s, s.dual()); }

/// a_{q^k}, k = 0..M: coefficients of prod_e (1 - e X)^{-1}.
inline std::vector<cplx> rs_coefficients(const std::vector<cplx>& eigs, int M) {
  if (M < 0) throw InputError("rs_coefficients: M must be nonnegative");
  std::vector<cplx> c(M + 1, cplx(0, 0));
  c[0] = 1;
  for (const auto& e : eigs)
    for (int k = 1; k <= M; ++k) c[k] += e * c[k - 1];
  return c;
}

struct SchurCheck {
  double a_qd = 0.0;
  double imag = 0.0;  // |Im a_{q^d}|, round-off only for closed multisets
  bool pass = false;
};

inline SchurCheck schur_positivity_check(const SatakeClass& s) {
  const int d = s.d();
  auto c = rs_coefficients(rs_self_dual_eigenvalues(s), d);
  SchurCheck r;
  r.a_qd = c[d].real();
  r.imag = std::abs(c[d].imag());
  r.pass = r.a_qd >= 1 - 1e-9;
  return r;
}

inline double rb_of(const std::vector<SatakeClass>& family) {
  if (family.empty()) throw InputError("rb_of: empty family");
  double r = 0;
  for (const auto& s : family) r = std::max(r, s.rb());
  return r;
}

struct MajorantCheck {
  bool holds = true;
  double worst_margin = INFINITY;  // min over classes of rhs - (partial + tail)
};

/// Σ_k |a_{q^k}| q^{-k(1+H+2R)} <= (1 - q^{-(1+H)})^{-d²} for each class.  The
/// series is summed to K terms and the rest bounded by the same expansion of
/// the right side, using |a_{q^k}| <= C(k+d²-1, d²-1) q^{2Rk}.
inline MajorantCheck coefficient_majorant_check(const std::vector<SatakeClass>& family, double H, double R, int K = 60) {
  if (!(H > 0)) throw PreconditionError("coefficient_majorant_check: H must be positive");
  MajorantCheck out;
  for (const auto& s : family) {
    if (s.rb() > R + 1e-12) throw PreconditionError("coefficient_majorant_check: class exceeds the Ramanujan bound R");
    const int D = s.d() * s.d();
    const double q = static_cast<double>(s.q);
    auto a = rs_coefficients(rs_self_dual_eigenvalues(s), K);
    const double z = std::pow(q, -(1 + H));
    const double w = std::pow(q, -(1 + H + 2 * R));
    double partial = 0, head = 0;
    for (int k = 0; k <= K; ++k) {
      partial += std::abs(a[k]) * std::pow(w, k);
      head += boost::math::binomial_coefficient<double>(k + D - 1, D - 1) * std::pow(z, k);
    }
    const double rhs = std::pow(1 - z, -D);
    const double tail = std::max(0.0, rhs - head);
    const double margin = rhs - (partial + tail);
    out.worst_margin = std::min(out.worst_margin, margin);
    if (margin < -1e-12 * rhs) out.holds = false;
  }
  return out;
}

/// Level and archimedean shifts b_j; C = N prod (1 + |b_j|).
struct SyntheticConductor {
  BigInt level = 1;
  std::vector<cplx> gamma_shifts;

  double log_extended() const {
    double s = log_big(level);
    for (const auto& b : gamma_shifts) s += std::log1p(std::abs(b));
    return s;
  }
  void validate() const {
    if (level < 1) throw InputError("SyntheticConductor: level must be positive");
    for (const auto& b : gamma_shifts)
      if (b.real() < 0) throw InputError("SyntheticConductor: shifts need Re b >= 0");
  }
};

/// Conductor data of L(s, χ): level f(χ), shift κ.
inline SyntheticConductor conductor_of(const DirichletCharacter& chi) {
  return {BigInt(chi.conductor()), {cplx(chi.parity_b(), 0)}};
}

struct ConductorVerdict {
  bool level_ok = false;
  bool extended_ok = false;
  double log_level_lhs = 0, log_level_rhs = 0;
  double log_C_lhs = 0, log_C_rhs = 0;
  bool pass() const { return level_ok && extended_ok; }
};

/// N(π×π') <= N(π)^{d'} N(π')^d and C(π×π') <= 2^{d d' n_K} C(π)^{d'} C(π')^d.
inline ConductorVerdict conductor_pair_bound(const SyntheticConductor& a, const SyntheticConductor& b,
                                             const SyntheticConductor& pair, int d, int dp, int n_K = 1) {
  a.validate();
  b.validate();
  pair.validate();
  if (d < 1 || dp < 1 || n_K < 1) throw InputError("conductor_pair_bound: degrees must be positive");
  ConductorVerdict v;
  BigInt rhs = boost::multiprecision::pow(a.level, dp) * boost::multiprecision::pow(b.level, d);
  v.level_ok = pair.level <= rhs;
  v.log_level_lhs = log_big(pair.level);
  v.log_level_rhs = log_big(rhs);
  v.log_C_lhs = pair.log_extended();
  v.log_C_rhs = d * dp * n_K * std::log(2.0) + dp * a.log_extended() + d * b.log_extended();
  v.extended_ok = v.log_C_lhs <= v.log_C_rhs + 1e-12;
  return v;
}

/// GL(1) case: the pair is the primitive character behind conj(χ)·χ'.
inline ConductorVerdict conductor_pair_bound(const DirichletCharacter& chi, const DirichletCharacter& chip) {
  return conductor_pair_bound(conductor_of(chi), conductor_of(chip), conductor_of(product_character(chi, chip)), 1, 1, 1);
}

/// Portable uniform double in [0,1) from a 64-bit engine.
inline double unit_uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Random class of size d at q.  rb_max = 0 gives unit-modulus parameters;
/// otherwise parameters come in pairs q^{±r} e^{iθ} with |r| <= rb_max, so the
/// multiset is stable under α -> 1/conj(α) as for a unitary representation.
inline SatakeClass random_satake(std::mt19937_64& g, std::int64_t q, int d, double rb_max = 0.0) {
  std::vector<cplx> a;
  const double lq = std::log(static_cast<double>(q));
  while (static_cast<int>(a.size()) < d) {
    const double th = 2 * M_PI * unit_uniform(g);
    if (rb_max > 0 && d - static_cast<int>(a.size()) >= 2) {
      const double r = rb_max * (2 * unit_uniform(g) - 1);
      a.push_back(std::polar(std::exp(r * lq), th));
      a.push_back(std::polar(std::exp(-r * lq), th));
    } else {
      a.push_back(std::polar(1.0, th));
    }
  }
  return SatakeClass(q, a);
}

/// One line per class: q, d, then Re/Im of each parameter.
inline std::string satake_to_csv(const std::vector<SatakeClass>& family) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& s : family) {
    os << s.q << ',' << s.d();
    for (const auto& a : s.alpha) os << ',' << a.real() << ',' << a.imag();
    os << '\n';
  }
  return os.str();
}

inline std::vector<SatakeClass> satake_from_csv(const std::string& text) {
  std::vector<SatakeClass> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() < 2) throw InputError("satake_from_csv: short line");
    std::int64_t q = std::stoll(f[0]);
    int d = std::stoi(f[1]);
    if (static_cast<int>(f.size()) != 2 + 2 * d) throw InputError("satake_from_csv: field count does not match d");
    std::vector<cplx> a;
    for (int i = 0; i < d; ++i) a.emplace_back(std::stod(f[2 + 2 * i]), std::stod(f[3 + 2 * i]));
    out.emplace_back(q, a);
  }
  return out;
}

}  // namespace wtk
