#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wtk/characters/dirichlet_character.hpp"
#include "wtk/core/primes.hpp"
#include "wtk/error.hpp"

namespace wtk {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer.
inline double log_big(const BigInt& v) {
  if (v <= 0) throw DomainError("log_big: argument must be positive");
  const unsigned b = boost::multiprecision::msb(v);
  if (b < 1000) return std::log(v.convert_to<double>());
  BigInt top = v >> (b - 60);
  return std::log(top.convert_to<double>()) + (b - 60) * std::log(2.0);
}

/// Frobenius and inertia of a prime in an abelian extension, as classes of G.
struct LocalGaloisData {
  int frobenius = 0;           // class index, well defined modulo inertia
  std::vector<int> inertia;    // class indices of the inertia image, sorted
  bool ramified() const { return inertia.size() > 1; }
};

/// L/Q abelian, cut out by a subgroup H of (Z/n)^x; G = (Z/n)^x / H.
class AbelianExtension {
 public:
  AbelianExtension(std::int64_t n, std::vector<std::int64_t> H) : n_(n) {
    if (n < 1) throw InputError("make_extension: conductor must be positive");
    group_ = UnitGroup::get(n);
    for (auto& h : H) h = ((h % n) + n) % n;
    if (n == 1) H = {0};
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());
    if (H.empty()) H.push_back(1 % n);
    std::set<std::int64_t> hs(H.begin(), H.end());
    for (auto h : H) {
      if (!group_->is_unit(h)) throw InputError("make_extension: " + std::to_string(h) + " is not a unit mod " + std::to_string(n));
      for (auto k : H)
        if (!hs.count(h * k % n))
          throw InputError("make_extension: H is not closed under multiplication (" + std::to_string(h) + "*" +
                           std::to_string(k) + ")");
    }
    if (!hs.count(1 % n)) throw InputError("make_extension: H must contain 1");
    H_ = H;
    // cosets, labelled by their least residue
    class_of_.assign(n, -1);
    for (auto u : group_->units()) {
      if (class_of_[u] >= 0) continue;
      int idx = static_cast<int>(reps_.size());
      reps_.push_back(u);
      for (auto h : H_) class_of_[u * h % n] = idx;
    }
    for (auto& chi : all_characters(n)) {
      bool trivial = true;
      for (auto h : H_)
        if (!chi.is_one(h)) {
          trivial = false;
          break;
        }
      if (trivial) chars_.push_back(chi);
    }
    d_L_ = 1;
    for (auto& chi : chars_) d_L_ *= chi.conductor();
    for (auto [p, e] : factorize(n))
      for (auto& chi : chars_)
        if (chi.conductor() % p == 0) {
          ramified_.push_back(p);
          break;
        }
  }

  std::int64_t conductor_n() const { return n_; }
  const std::vector<std::int64_t>& subgroup_H() const { return H_; }
  int degree() const { return static_cast<int>(reps_.size()); }
  const BigInt& discriminant() const { return d_L_; }
  const std::vector<std::int64_t>& ramified_primes() const { return ramified_; }
  bool is_ramified(std::int64_t p) const { return std::find(ramified_.begin(), ramified_.end(), p) != ramified_.end(); }
  /// Characters mod n trivial on H (the dual of G).
  const std::vector<DirichletCharacter>& characters() const { return chars_; }
  /// Least residue representing each class.
  const std::vector<std::int64_t>& class_representatives() const { return reps_; }

  int class_of(std::int64_t a) const {
    std::int64_t r = ((a % n_) + n_) % n_;
    int c = class_of_[r];
    if (c < 0) throw DomainError("class_of: " + std::to_string(a) + " is not a unit mod " + std::to_string(n_));
    return c;
  }

  int identity_class() const { return class_of(1); }
  int multiply(int a, int b) const { return class_of(reps_[a] * reps_[b] % n_); }
  int power(int a, std::int64_t m) const { return class_of(powmod64(reps_[a], m, n_)); }

  LocalGaloisData local_data(std::int64_t p) const {
    LocalGaloisData d;
    if (n_ % p != 0) {
      d.frobenius = class_of(p);
      d.inertia = {identity_class()};
      return d;
    }
    std::int64_t pk = 1, rest = n_;
    while (rest % p == 0) {
      rest /= p;
      pk *= p;
    }
    std::set<int> I;
    for (std::int64_t a = 1; a < n_; a += rest)
      if (gcd64(a, n_) == 1) I.insert(class_of(a));
    if (n_ == 1) I.insert(0);
    d.inertia.assign(I.begin(), I.end());
    // a = 1 mod p^k, a = p mod rest
    std::int64_t a = 1 % n_;
    if (rest > 1) {
      for (std::int64_t t = 0; t < rest; ++t) {
        std::int64_t c = 1 + pk * t;
        if ((c - p) % rest == 0) {
          a = c % n_;
          break;
        }
      }
    }
    d.frobenius = class_of(a);
    return d;
  }

  /// The class of p in G for p unramified in L (p may divide n).
  int artin_symbol(std::int64_t p) const {
    if (!is_prime(p)) throw InputError("artin_symbol: " + std::to_string(p) + " is not prime");
    auto d = local_data(p);
    if (d.ramified()) throw RamifiedPrimeError("artin_symbol: " + std::to_string(p) + " ramifies in L");
    return d.frobenius;
  }

 private:
  std::int64_t n_;
  std::shared_ptr<const UnitGroup> group_;
  std::vector<std::int64_t> H_;
  std::vector<int> class_of_;
  std::vector<std::int64_t> reps_;
  std::vector<DirichletCharacter> chars_;
  BigInt d_L_;
  std::vector<std::int64_t> ramified_;
};

inline AbelianExtension make_extension(std::int64_t n, const std::vector<std::int64_t>& H) { return AbelianExtension(n, H); }

/// Q(zeta_n): H = {1}.
inline AbelianExtension cyclotomic_field(std::int64_t n) { return AbelianExtension(n, {1}); }

/// n^phi(n) / prod_{p | n} p^{phi(n)/(p-1)}.
inline BigInt cyclotomic_discriminant(std::int64_t n) {
  std::int64_t phi = n;
  auto fac = factorize(n);
  for (auto [p, e] : fac) phi = phi / p * (p - 1);
  BigInt num = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(phi));
  BigInt den = 1;
  for (auto [p, e] : fac) den *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(phi / (p - 1)));
  return num / den;
}

/// d_L from the ramification filtration, without characters.  At p | n with
/// n = p^k r, the inertia group is the image I of {a = 1 mod r} in G and the
/// upper-numbering groups are the images I^j of {a = 1 mod r p^j}.  Hilbert's
/// different formula through Herbrand's function gives
///   v_p(d_L) = n_L (1 - 1/|I|) + sum_{j>=1} n_L (1 - 1/|I^j|).
inline BigInt discriminant_by_ramification(const AbelianExtension& ext) {
  const std::int64_t n = ext.conductor_n();
  const std::int64_t nL = ext.degree();
  BigInt d = 1;
  for (auto [p, k] : factorize(n)) {
    std::int64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    const std::int64_t r = n / pk;
    auto image = [&](std::int64_t m) {  // |image of {a : a = 1 mod m}|
      std::set<int> cls;
      for (std::int64_t a = 1; a < n; a += m)
        if (gcd64(a, n) == 1) cls.insert(ext.class_of(a));
      return static_cast<std::int64_t>(cls.size());
    };
    const std::int64_t e = image(r);
    std::int64_t v = nL - nL / e;
    std::int64_t pj = p;
    for (int j = 1; j <= k; ++j, pj *= p) {
      const std::int64_t s = image(r * pj);
      v += nL - nL / s;
    }
    d *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(v));
  }
  return d;
}

/// Every subgroup of (Z/n)^x, each as a sorted residue list.
inline std::vector<std::vector<std::int64_t>> unit_subgroups(std::int64_t n) {
  auto g = UnitGroup::get(n);
  auto units = g->units();
  std::set<std::vector<std::int64_t>> found;
  auto close = [&](std::set<std::int64_t> s) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::int64_t> v(s.begin(), s.end());
      for (auto a : v)
        for (auto b : v)
          if (s.insert(a * b % n).second) grew = true;
    }
    return std::vector<std::int64_t>(s.begin(), s.end());
  };
  std::vector<std::vector<std::int64_t>> frontier{close({1 % n})};
  found.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::vector<std::int64_t>> next;
    for (auto& h : frontier)
      for (auto u : units) {
        if (std::binary_search(h.begin(), h.end(), u)) continue;
        std::set<std::int64_t> s(h.begin(), h.end());
        s.insert(u);
        auto c = close(s);
        if (found.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

/// Finite set S of rational primes with N_S = prod p.
class ExclusionSet {
 public:
  ExclusionSet() = default;
  explicit ExclusionSet(std::vector<std::int64_t> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (auto p : primes_)
      if (!is_prime(p)) throw InputError("ExclusionSet: " + std::to_string(p) + " is not prime");
  }

  const std::vector<std::int64_t>& primes() const { return primes_; }
  bool contains(std::int64_t p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }
  bool empty() const { return primes_.empty(); }
  std::size_t size() const { return primes_.size(); }

  BigInt norm_product() const {
    BigInt r = 1;
    for (auto p : primes_) r *= p;
    return r;
  }
  double log_norm_product() const {
    double s = 0;
    for (auto p : primes_) s += std::log(static_cast<double>(p));
    return s;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < primes_.size(); ++i) s += (i ? "," : "") + std::to_string(primes_[i]);
    return s;
  }

 private:
  std::vector<std::int64_t> primes_;
};

}  // namespace wtk
