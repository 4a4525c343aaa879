#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "wtk/error.hpp"

namespace wtk {

struct PrimePower {
  std::int64_t p = 0;
  int m = 0;
  std::int64_t value = 0;

  bool operator==(const PrimePower&) const = default;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = static_cast<std::uint64_t>(n) - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, static_cast<std::uint64_t>(n));
    if (x == 1 || x == static_cast<std::uint64_t>(n) - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mulmod(x, x, static_cast<std::uint64_t>(n));
      if (x == static_cast<std::uint64_t>(n) - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Primes p <= limit by a plain sieve of Eratosthenes.
inline std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  std::vector<bool> comp(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) comp[j] = true;
  }
  return out;
}

/// Segmented sieve over [lo, hi]; memory is O(sqrt(hi) + segment).
class PrimeSieve {
 public:
  explicit PrimeSieve(std::int64_t segment = 1 << 18) : segment_(segment) {}

  /// Primes in [lo, hi], increasing.
  std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) const {
    std::vector<std::int64_t> out;
    lo = std::max<std::int64_t>(lo, 2);
    if (hi < lo) return out;
    auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    auto base = primes_up_to(root);
    for (std::int64_t a = lo; a <= hi; a += segment_) {
      std::int64_t b = std::min(hi, a + segment_ - 1);
      std::vector<bool> comp(static_cast<std::size_t>(b - a + 1), false);
      for (std::int64_t p : base) {
        if (p * p > b) break;
        std::int64_t start = std::max(p * p, (a + p - 1) / p * p);
        for (std::int64_t j = start; j <= b; j += p) comp[j - a] = true;
      }
      for (std::int64_t i = a; i <= b; ++i)
        if (!comp[i - a]) out.push_back(i);
    }
    return out;
  }

  /// Calls f(p) on primes in increasing order until f returns false or hi is
  /// passed; returns the last prime visited or 0.
  template <class F>
  std::int64_t for_each(std::int64_t lo, std::int64_t hi, F&& f) const {
    for (std::int64_t a = std::max<std::int64_t>(lo, 2); a <= hi; a += segment_) {
      std::int64_t b = std::min(hi, a + segment_ - 1);
      for (std::int64_t p : range(a, b))
        if (!f(p)) return p;
    }
    return 0;
  }

 private:
  std::int64_t segment_;
};

/// All prime powers p^m <= limit in increasing order of value.
inline std::vector<PrimePower> enumerate_prime_powers(std::int64_t limit, bool rational_prime_only) {
  std::vector<PrimePower> out;
  if (limit < 2) return out;
  for (std::int64_t p : PrimeSieve().range(2, limit)) {
    std::int64_t v = p;
    int m = 1;
    while (true) {
      out.push_back({p, m, v});
      if (rational_prime_only || v > limit / p) break;
      v *= p;
      ++m;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
  return out;
}

/// If n = p^m with m >= 1 returns it, otherwise {0,0,0}.
inline PrimePower as_prime_power(std::int64_t n) {
  if (n < 2) return {};
  std::int64_t p = 0;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return {n, 1, n};
  std::int64_t v = n;
  int m = 0;
  while (v % p == 0) {
    v /= p;
    ++m;
  }
  if (v != 1) return {};
  return {p, m, n};
}

/// Prime factorisation by trial division, as (p, exponent) pairs.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    f.emplace_back(d, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a < 0 ? -a : a;
}

inline std::int64_t powmod64(std::int64_t a, std::int64_t e, std::int64_t n) {
  a %= n;
  if (a < 0) a += n;
  return static_cast<std::int64_t>(detail::powmod(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(n)));
}

}  // namespace wtk
