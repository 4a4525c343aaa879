#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "wtk/characters/unit_group.hpp"
#include "wtk/core/precision.hpp"
#include "wtk/error.hpp"

namespace wtk {

/// A root of unity e^{2 pi i num/den} given as a fraction of a full turn.
struct Turn {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// e^{2 pi i e / n}, exact at quarter turns.
template <class C>
C root_of_unity(std::int64_t e, std::int64_t n) {
  using std::cos;
  using std::sin;
  using R = real_of_t<C>;
  e = ((e % n) + n) % n;
  if ((4 * e) % n == 0) {
    switch (4 * e / n) {
      case 0: return C(R(1), R(0));
      case 1: return C(R(0), R(1));
      case 2: return C(R(-1), R(0));
      default: return C(R(0), R(-1));
    }
  }
  R th = R(2) * pi_v<R>() * R(e) / R(n);
  return C(cos(th), sin(th));
}

/// Dirichlet character mod q, stored by exponents on the generators of
/// (Z/q)^x.  chi(g_i) = e^{2 pi i k_i / ord_i}.
class DirichletCharacter {
 public:
  DirichletCharacter() : DirichletCharacter(from_exponents(1, {})) {}

  static DirichletCharacter from_exponents(std::int64_t q, std::vector<std::int64_t> k) {
    auto g = UnitGroup::get(q);
    if (k.size() != g->rank())
      throw InputError("make_character: expected " + std::to_string(g->rank()) + " generator images mod " + std::to_string(q));
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = ((k[i] % g->orders()[i]) + g->orders()[i]) % g->orders()[i];
    return DirichletCharacter(std::move(g), std::move(k));
  }

  static DirichletCharacter principal(std::int64_t q) {
    return from_exponents(q, std::vector<std::int64_t>(UnitGroup::get(q)->rank(), 0));
  }

  /// Images of the generators as roots of unity; each must have order
  /// dividing the generator's order.
  static DirichletCharacter from_images(std::int64_t q, const std::vector<Turn>& images) {
    auto g = UnitGroup::get(q);
    if (images.size() != g->rank())
      throw InputError("make_character: expected " + std::to_string(g->rank()) + " generator images mod " + std::to_string(q));
    std::vector<std::int64_t> k(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto& t = images[i];
      if (t.den <= 0) throw InputError("make_character: image denominator must be positive");
      std::int64_t ord = g->orders()[i];
      if ((t.num * ord) % t.den != 0)
        throw InputError("make_character: image of generator " + std::to_string(g->generators()[i]) +
                         " is not an ord-th root of unity (ord " + std::to_string(ord) + "), not a homomorphism");
      k[i] = t.num * ord / t.den;
    }
    return from_exponents(q, std::move(k));
  }

  /// Character mod q with chi(g_i) = e^{2 pi i e_i / n}, i.e. a value map
  /// on generators given over a common denominator n.
  static DirichletCharacter from_generator_values(std::int64_t q, const std::vector<std::int64_t>& e, std::int64_t n) {
    std::vector<Turn> t;
    for (auto x : e) t.push_back({x, n});
    return from_images(q, t);
  }

  std::int64_t modulus() const { return group_->modulus(); }
  std::int64_t order() const { return order_; }
  std::int64_t conductor() const { return conductor_; }
  bool is_principal() const { return conductor_ == 1; }
  bool is_primitive() const { return conductor_ == modulus(); }
  int parity_a() const { return 1 - parity_b_; }
  int parity_b() const { return parity_b_; }
  bool is_real() const { return order_ <= 2; }
  const std::vector<std::int64_t>& exponents() const { return k_; }
  const UnitGroup& group() const { return *group_; }

  /// chi(n) = e^{2 pi i e/order}; returns -1 when gcd(n, q) > 1.
  std::int64_t exponent(std::int64_t n) const {
    std::int64_t q = modulus();
    return table_[((n % q) + q) % q];
  }

  template <class C = std::complex<double>>
  C value(std::int64_t n) const {
    using R = real_of_t<C>;
    std::int64_t e = exponent(n);
    if (e < 0) return C(R(0), R(0));
    return root_of_unity<C>(e, order_);
  }

  /// chi(n) == 1 (false at non-units).
  bool is_one(std::int64_t n) const { return exponent(n) == 0; }

  DirichletCharacter conj() const {
    std::vector<std::int64_t> k = k_;
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = (group_->orders()[i] - k[i]) % group_->orders()[i];
    return from_exponents(modulus(), k);
  }

  /// The primitive character mod conductor() inducing this one.
  DirichletCharacter primitive() const {
    if (is_primitive()) return *this;
    const std::int64_t f = conductor_;
    auto g = UnitGroup::get(f);
    std::vector<std::int64_t> e;
    for (auto gen : g->generators()) {
      std::int64_t n = gen;
      while (gcd64(n, modulus()) != 1) n += f;
      e.push_back(exponent(n));
    }
    return from_generator_values(f, e, order_);
  }

  /// The character mod Q induced from this one; q must divide Q.
  DirichletCharacter induce(std::int64_t Q) const {
    if (Q % modulus() != 0) throw InputError("induce: modulus must divide target");
    auto g = UnitGroup::get(Q);
    std::vector<std::int64_t> e;
    for (auto gen : g->generators()) e.push_back(exponent(gen));
    return from_generator_values(Q, e, order_);
  }

  /// Text record "q|g1,g2|k1,k2".
  std::string key() const {
    std::ostringstream os;
    os << modulus() << "|";
    for (std::size_t i = 0; i < rank(); ++i) os << (i ? "," : "") << group_->generators()[i];
    os << "|";
    for (std::size_t i = 0; i < rank(); ++i) os << (i ? "," : "") << k_[i];
    return os.str();
  }

  static DirichletCharacter from_key(const std::string& key) {
    auto p1 = key.find('|');
    auto p2 = key.find('|', p1 == std::string::npos ? 0 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) throw InputError("character key: malformed '" + key + "'");
    auto split = [](const std::string& s) {
      std::vector<std::int64_t> v;
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) v.push_back(std::stoll(tok));
      return v;
    };
    std::int64_t q = std::stoll(key.substr(0, p1));
    auto gens = split(key.substr(p1 + 1, p2 - p1 - 1));
    auto ks = split(key.substr(p2 + 1));
    auto g = UnitGroup::get(q);
    if (gens != g->generators()) throw InputError("character key: generator list does not match modulus " + std::to_string(q));
    return from_exponents(q, ks);
  }

  bool operator==(const DirichletCharacter& o) const { return modulus() == o.modulus() && k_ == o.k_; }

 private:
  DirichletCharacter(std::shared_ptr<const UnitGroup> g, std::vector<std::int64_t> k)
      : group_(std::move(g)), k_(std::move(k)) {
    const auto& ord = group_->orders();
    order_ = 1;
    for (std::size_t i = 0; i < k_.size(); ++i) order_ = std::lcm(order_, ord[i] / std::gcd(k_[i], ord[i]));
    const std::int64_t q = group_->modulus();
    const std::int64_t N = group_->exponent();
    table_.assign(q, -1);
    for (std::int64_t n = 0; n < q; ++n) {
      if (!group_->is_unit(n)) continue;
      const std::int64_t* a = group_->coords(n);
      std::int64_t e = 0;
      for (std::size_t i = 0; i < k_.size(); ++i) e = (e + k_[i] * a[i] % ord[i] * (N / ord[i])) % N;
      table_[n] = e / (N / order_);
    }
    conductor_ = compute_conductor();
    parity_b_ = (q <= 2 || exponent(q - 1) == 0) ? 0 : 1;
  }

  std::size_t rank() const { return k_.size(); }

  std::int64_t compute_conductor() const {
    const std::int64_t q = modulus();
    for (std::int64_t f = 1; f <= q; ++f) {
      if (q % f) continue;
      bool ok = true;
      for (std::int64_t n = 1 % q; ok && n < q + 1; n += f) {
        std::int64_t r = n % q;
        if (table_[r] > 0) ok = false;
        if (f == q) break;
      }
      if (ok) return f;
    }
    return q;
  }

  std::shared_ptr<const UnitGroup> group_;
  std::vector<std::int64_t> k_;
  std::int64_t order_ = 1;
  std::int64_t conductor_ = 1;
  int parity_b_ = 0;
  std::vector<std::int64_t> table_;
};

/// make_character: q plus generator images as turns.
inline DirichletCharacter make_character(std::int64_t q, const std::vector<Turn>& images) {
  return DirichletCharacter::from_images(q, images);
}

inline std::int64_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }

/// Every character mod q, in lexicographic order of exponent tuples.
inline std::vector<DirichletCharacter> all_characters(std::int64_t q) {
  auto g = UnitGroup::get(q);
  std::vector<DirichletCharacter> out;
  std::vector<std::int64_t> k(g->rank(), 0);
  while (true) {
    out.push_back(DirichletCharacter::from_exponents(q, k));
    std::size_t i = 0;
    for (; i < k.size(); ++i) {
      if (++k[i] < g->orders()[i]) break;
      k[i] = 0;
    }
    if (i == k.size()) break;
  }
  return out;
}

inline std::vector<DirichletCharacter> primitive_characters(std::int64_t f) {
  std::vector<DirichletCharacter> out;
  for (auto& c : all_characters(f))
    if (c.is_primitive()) out.push_back(c);
  return out;
}

/// Gauss sum sum_{a mod q} chi(a) e^{2 pi i a/q}.
template <class C = std::complex<double>>
C gauss_sum(const DirichletCharacter& chi) {
  using R = real_of_t<C>;
  const std::int64_t q = chi.modulus();
  C s(R(0), R(0));
  for (std::int64_t a = 0; a < q; ++a) {
    std::int64_t e = chi.exponent(a);
    if (e < 0) continue;
    // common denominator lcm(order, q)
    std::int64_t n = std::lcm(chi.order(), q);
    s += root_of_unity<C>(e * (n / chi.order()) + a * (n / q), n);
  }
  return s;
}

/// W(chi) = g(chi) / (i^b sqrt f) for primitive chi.
template <class C = std::complex<double>>
C root_number(const DirichletCharacter& chi) {
  using std::sqrt;
  using R = real_of_t<C>;
  if (!chi.is_primitive())
    throw PreconditionError("root_number: character mod " + std::to_string(chi.modulus()) + " has conductor " +
                            std::to_string(chi.conductor()) + "; reduce to the primitive character first");
  C g = gauss_sum<C>(chi);
  C ib = chi.parity_b() ? C(R(0), R(1)) : C(R(1), R(0));
  return g / (ib * sqrt(R(chi.modulus())));
}

/// The primitive character inducing conj(a) * b.
inline DirichletCharacter product_character(const DirichletCharacter& a, const DirichletCharacter& b) {
  const std::int64_t L = std::lcm(a.modulus(), b.modulus());
  const std::int64_t M = std::lcm(a.order(), b.order());
  auto g = UnitGroup::get(L);
  std::vector<std::int64_t> e;
  for (auto gen : g->generators()) {
    std::int64_t x = -a.exponent(gen) * (M / a.order()) + b.exponent(gen) * (M / b.order());
    e.push_back(((x % M) + M) % M);
  }
  return DirichletCharacter::from_generator_values(L, e, M).primitive();
}

/// Same primitive character (as functions on integers coprime to both moduli).
inline bool same_primitive(const DirichletCharacter& a, const DirichletCharacter& b) {
  return product_character(a, b).is_principal();
}

}  // namespace wtk
