#pragma once

// Brute-force reference implementations used as test oracles. They work on
// raw image tables and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Perm = std::vector<std::uint32_t>;

inline Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = b[a[x]];
  return r;
}

inline Perm invert(const Perm& a) {
  Perm r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[a[x]] = static_cast<std::uint32_t>(x);
  return r;
}

inline std::set<Perm> closure(const std::vector<Perm>& gens) {
  Perm id(gens.front().size());
  std::iota(id.begin(), id.end(), 0u);
  std::set<Perm> seen{id};
  std::vector<Perm> todo{id};
  while (!todo.empty()) {
    Perm p = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Perm q = compose(p, g);
      if (seen.insert(q).second) todo.push_back(q);
    }
  }
  return seen;
}

inline unsigned orbit_count(const Perm& p) {
  std::vector<bool> seen(p.size());
  unsigned c = 0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    ++c;
    for (std::size_t y = x; !seen[y]; y = p[y]) seen[y] = true;
  }
  return c;
}

inline unsigned index(const Perm& p) { return static_cast<unsigned>(p.size()) - orbit_count(p); }

inline std::uint64_t order(const Perm& p) {
  Perm id(p.size());
  std::iota(id.begin(), id.end(), 0u);
  Perm q = p;
  std::uint64_t k = 1;
  while (q != id) {
    q = compose(q, p);
    ++k;
  }
  return k;
}

/// Sizes of conjugacy classes, sorted ascending.
inline std::vector<std::size_t> class_sizes(const std::set<Perm>& g) {
  std::set<Perm> done;
  std::vector<std::size_t> sizes;
  for (const auto& x : g) {
    if (done.count(x)) continue;
    std::set<Perm> cls;
    for (const auto& h : g) cls.insert(compose(compose(invert(h), x), h));
    done.insert(cls.begin(), cls.end());
    sizes.push_back(cls.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }


inline bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool squarefree(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

/// d = 1 mod 4 squarefree, or 4m with m = 2, 3 mod 4 squarefree.
inline bool fundamental(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  const std::uint64_t a = static_cast<std::uint64_t>(d < 0 ? -d : d);
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(a);
  if (r != 0) return false;
  const std::int64_t m = d / 4, rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(a / 4);
}

/// |G / G^l| for G = (Z/M)^x, by listing l-th powers of units.
inline std::uint64_t l_quotient(std::uint64_t modulus, std::uint64_t ell) {
  if (modulus == 1) return 1;
  std::set<std::uint64_t> powers;
  std::uint64_t units = 0;
  for (std::uint64_t u = 1; u < modulus; ++u) {
    if (std::gcd(u, modulus) != 1) continue;
    ++units;
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < ell; ++i) v = v * u % modulus;
    powers.insert(v);
  }
  return units / powers.size();
}

/// Largest conductor exponent of an order-l character at p.
inline unsigned top_exponent(std::uint64_t p, std::uint64_t ell) {
  if (p != ell) return 1;
  return ell == 2 ? 3 : 2;
}

inline std::uint64_t power(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Number of C_l fields over Q ramified at every prime of S and
/// unramified outside S u T: characters of order l factor into local
/// characters at each prime, nontrivial exactly on S.
inline std::uint64_t exact_fields(std::uint64_t ell, const std::vector<std::uint64_t>& s,
                                  const std::vector<std::uint64_t>& t) {
  std::uint64_t chars = 1;
  for (auto p : s) chars *= l_quotient(power(p, top_exponent(p, ell)), ell) - 1;
  for (auto p : t) chars *= l_quotient(power(p, top_exponent(p, ell)), ell);
  if (s.empty()) chars -= 1;
  return chars / (ell - 1);
}

/// Number of C_l fields of conductor exactly f: Mobius inversion of the
/// character counts mod each divisor, over l - 1 generators.
inline std::uint64_t fields_with_conductor(std::uint64_t f, std::uint64_t ell) {
  if (f == 1) return 0;
  std::int64_t prim = 0;
  for (std::uint64_t g = 1; g <= f; ++g) {
    if (f % g) continue;
    std::uint64_t q = f / g;
    int mu = 1;
    for (std::uint64_t p = 2; p <= q; ++p) {
      if (q % p) continue;
      q /= p;
      if (q % p == 0) {
        mu = 0;
        break;
      }
      mu = -mu;
    }
    if (mu == 0) continue;
    prim += mu * static_cast<std::int64_t>(l_quotient(g, ell));
  }
  return static_cast<std::uint64_t>(prim) / (ell - 1);
}

}  // namespace oracle
