#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/error.hpp"
#include "wtk/explicit_formula/contour.hpp"

namespace wtk {

inline constexpr double kClassSumTolerance = 1e-8;

struct ClassSum {
  int cls = 0;
  double prime_side = 0.0;      // Σ θ(p^m) log p k̂(p^m)
  cplx character_side;          // (1/|G|) Σ χ̄(g) J(χ)
  double discrepancy = 0.0;
};

/// θ(p^m) for the class c: 1/|I_p| when c lies in Frob_p^m I_p, else 0.
inline double class_theta(const AbelianExtension& ext, int c, std::int64_t p, int m) {
  auto d = ext.local_data(p);
  int f = ext.power(d.frobenius, m);
  for (int i : d.inertia)
    if (ext.multiply(f, i) == c) return 1.0 / static_cast<double>(d.inertia.size());
  return 0.0;
}

/// Both evaluations of I for every class of G = Gal(L/Q), in one pass over
/// the prime powers up to the cutoff.  J(χ) uses the primitive character.
inline std::vector<ClassSum> class_sums(const AbelianExtension& ext, const KernelParams& p, std::int64_t cutoff = 0) {
  p.validate();
  const std::int64_t need = prime_side_cutoff(p);
  if (cutoff == 0) cutoff = need;
  if (cutoff < need) throw PreconditionError("class_sum_I: cutoff below the support bound " + std::to_string(need));
  const int h = ext.degree();
  std::vector<DirichletCharacter> prim;
  for (const auto& chi : ext.characters()) prim.push_back(chi.primitive());
  std::vector<long double> theta_sum(h, 0.0L);
  std::vector<std::complex<long double>> J(prim.size());
  std::map<std::int64_t, LocalGaloisData> local;
  for_each_prime_power(cutoff, [&](std::int64_t q, int m, std::int64_t v) {
    const double w = eval_kernel_hat(p, static_cast<double>(v));
    if (w == 0) return;
    const long double lw = std::log(static_cast<long double>(q)) * w;
    for (std::size_t i = 0; i < prim.size(); ++i) {
      cplx c = prim[i].value(v);
      J[i] += std::complex<long double>(c.real(), c.imag()) * lw;
    }
    auto it = local.find(q);
    if (it == local.end()) it = local.emplace(q, ext.local_data(q)).first;
    const auto& d = it->second;
    const int f = ext.power(d.frobenius, m);
    const long double share = lw / static_cast<long double>(d.inertia.size());
    for (int i : d.inertia) theta_sum[ext.multiply(f, i)] += share;
  });
  std::vector<ClassSum> out(h);
  const auto& reps = ext.class_representatives();
  for (int c = 0; c < h; ++c) {
    std::complex<long double> acc = 0;
    for (std::size_t i = 0; i < prim.size(); ++i) {
      cplx g = ext.characters()[i].value(reps[c]);
      acc += std::conj(std::complex<long double>(g.real(), g.imag())) * J[i];
    }
    acc /= static_cast<long double>(h);
    out[c].cls = c;
    out[c].prime_side = static_cast<double>(theta_sum[c]);
    out[c].character_side = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    out[c].discrepancy = std::abs(out[c].character_side - out[c].prime_side);
  }
  return out;
}

/// I for the class C, checked both ways.
inline ClassSum class_sum_I(const AbelianExtension& ext, int C, const KernelParams& p, std::int64_t cutoff = 0) {
  if (C < 0 || C >= ext.degree()) throw InputError("class_sum_I: class index out of range");
  ClassSum r = class_sums(ext, p, cutoff)[C];
  if (r.discrepancy > kClassSumTolerance * std::max(1.0, std::abs(r.prime_side)))
    throw IdentityViolation("class_sum_I: prime side and character side differ", r.discrepancy);
  return r;
}

}  // namespace wtk
