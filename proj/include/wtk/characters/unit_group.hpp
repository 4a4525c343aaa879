#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "wtk/core/primes.hpp"
#include "wtk/error.hpp"

namespace wtk {

namespace detail {

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, b = ((a % m) + m) % m;
  while (b) {
    std::int64_t t = g / b;
    std::swap(g, b);
    b -= t * g;
    std::swap(x, x1);
    x1 -= t * x;
  }
  if (g != 1) throw DomainError("inverse_mod: not invertible");
  return ((x % m) + m) % m;
}

inline std::int64_t primitive_root_prime(std::int64_t p) {
  if (p == 2) return 1;
  auto fac = factorize(p - 1);
  for (std::int64_t g = 2;; ++g) {
    bool ok = true;
    for (auto [r, e] : fac)
      if (powmod64(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

}  // namespace detail

/// (Z/q)^x as a product of cyclic groups with fixed generators, plus a
/// discrete-log table giving every unit's coordinates.
class UnitGroup {
 public:
  explicit UnitGroup(std::int64_t q) : q_(q) {
    if (q < 1) throw InputError("UnitGroup: modulus must be positive");
    for (auto [p, e] : factorize(q)) {
      std::int64_t pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      std::int64_t rest = q / pe;
      auto lift = [&](std::int64_t g) {
        // x = g mod pe, x = 1 mod rest
        if (rest == 1) return g % q;
        std::int64_t t = ((1 - g) % rest + rest) % rest * detail::inverse_mod(pe % rest, rest) % rest;
        return (g + pe * t) % q;
      };
      if (p == 2) {
        if (e == 2) add(lift(pe - 1), 2);
        if (e >= 3) {
          add(lift(pe - 1), 2);
          add(lift(5), pe / 4);
        }
      } else {
        std::int64_t g = detail::primitive_root_prime(p);
        if (e >= 2 && powmod64(g, p - 1, p * p) == 1) g += p;
        add(lift(g), pe / p * (p - 1));
      }
    }
    build_table();
  }

  std::int64_t modulus() const { return q_; }
  std::int64_t size() const { return size_; }
  std::size_t rank() const { return gens_.size(); }
  const std::vector<std::int64_t>& generators() const { return gens_; }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  /// lcm of the generator orders.
  std::int64_t exponent() const { return exponent_; }

  bool is_unit(std::int64_t n) const { return unit_[reduce(n)]; }
  /// Coordinates of n on the generators; n must be a unit.
  const std::int64_t* coords(std::int64_t n) const { return &coords_[reduce(n) * rank()]; }

  std::vector<std::int64_t> units() const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 0; n < q_; ++n)
      if (unit_[n]) out.push_back(n);
    return out;
  }

  /// Shared instance per modulus.
  static std::shared_ptr<const UnitGroup> get(std::int64_t q) {
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const UnitGroup>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto g = std::make_shared<const UnitGroup>(q);
    cache.emplace(q, g);
    return g;
  }

 private:
  std::int64_t reduce(std::int64_t n) const { return ((n % q_) + q_) % q_; }

  void add(std::int64_t g, std::int64_t ord) {
    if (ord <= 1) return;
    gens_.push_back(g);
    orders_.push_back(ord);
  }

  void build_table() {
    exponent_ = 1;
    size_ = 1;
    for (auto o : orders_) {
      exponent_ = std::lcm(exponent_, o);
      size_ *= o;
    }
    const std::size_t r = rank();
    unit_.assign(q_, false);
    coords_.assign(q_ * r, 0);
    std::vector<std::int64_t> a(r, 0);
    std::int64_t v = 1 % q_;
    for (std::int64_t count = 0; count < size_; ++count) {
      unit_[v] = true;
      for (std::size_t i = 0; i < r; ++i) coords_[v * r + i] = a[i];
      // mixed-radix increment, updating v incrementally
      for (std::size_t i = 0; i < r; ++i) {
        if (++a[i] < orders_[i]) {
          v = v * gens_[i] % q_;
          break;
        }
        a[i] = 0;
        v = v * gens_[i] % q_;  // g^ord = 1 so this wraps back
      }
    }
  }

  std::int64_t q_;
  std::int64_t size_ = 1;
  std::int64_t exponent_ = 1;
  std::vector<std::int64_t> gens_;
  std::vector<std::int64_t> orders_;
  std::vector<bool> unit_;
  std::vector<std::int64_t> coords_;
};

}  // namespace wtk
