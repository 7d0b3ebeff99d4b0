#include "nilgal/counting.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

#include "nilgal/catalog.hpp"
#include "nilgal/error.hpp"

namespace nilgal {

namespace {

void require_primes(const std::vector<std::uint64_t>& s) {
  std::set<std::uint64_t> seen;
  for (auto p : s) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) throw Error(ErrorKind::InvalidInput, "repeated prime " + std::to_string(p));
  }
}

bool key_less(std::int64_t a, std::int64_t b) {
  auto aa = std::llabs(a), bb = std::llabs(b);
  return aa != bb ? aa < bb : a < b;
}

unsigned omega(std::uint64_t n) { return static_cast<unsigned>(prime_divisors(n).size()); }

/// Fundamental discriminant of Q(sqrt(m)) for squarefree m != 1.
std::int64_t discriminant_of(std::int64_t m) {
  const std::int64_t r = ((m % 4) + 4) % 4;
  return r == 1 ? m : 4 * m;
}

/// Count of odd squarefree n <= y for every query, by a segmented sieve.
std::vector<std::uint64_t> odd_squarefree_counts(const std::vector<std::uint64_t>& queries) {
  std::vector<std::size_t> order(queries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return queries[a] < queries[b]; });
  std::vector<std::uint64_t> out(queries.size(), 0);
  if (queries.empty()) return out;
  const std::uint64_t ymax = *std::max_element(queries.begin(), queries.end());
  const auto primes = primes_up_to(static_cast<std::uint32_t>(iroot(ymax, 2)));
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 20;
  std::vector<bool> bad;
  std::uint64_t running = 0;
  std::size_t qi = 0;
  while (qi < order.size() && queries[order[qi]] == 0) out[order[qi++]] = 0;
  for (std::uint64_t lo = 1; lo <= ymax; lo += kSegment) {
    const std::uint64_t hi = std::min(ymax + 1, lo + kSegment);
    bad.assign(hi - lo, false);
    for (std::uint64_t p : primes) {
      const std::uint64_t q = p * p;
      if (q >= hi) break;
      for (std::uint64_t n = (lo + q - 1) / q * q; n < hi; n += q) bad[n - lo] = true;
    }
    for (std::uint64_t n = lo; n < hi; ++n) {
      if (n % 2 == 1 && !bad[n - lo]) ++running;
      while (qi < order.size() && queries[order[qi]] == n) out[order[qi++]] = running;
    }
  }
  return out;
}

}  // namespace

std::int64_t squarefree_kernel(std::int64_t n) {
  if (n == 0) return 0;
  std::int64_t sign = n < 0 ? -1 : 1;
  std::uint64_t a = static_cast<std::uint64_t>(std::llabs(n)), k = 1;
  for (std::uint64_t p = 2; p * p <= a; ++p) {
    unsigned v = 0;
    while (a % p == 0) {
      a /= p;
      ++v;
    }
    if (v % 2) k *= p;
  }
  k *= a;
  return sign * static_cast<std::int64_t>(k);
}

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (auto p : prime_divisors(n)) r *= p;
  return r;
}

unsigned character_rank(std::uint64_t ell, const std::vector<std::uint64_t>& s) {
  unsigned t = 0;
  for (auto p : s) {
    if (p == ell)
      t += ell == 2 ? 2 : 1;
    else if (p % ell == 1)
      ++t;
  }
  return t;
}

std::uint64_t count_unramified_outside(std::uint64_t ell, const std::vector<std::uint64_t>& s) {
  if (!is_prime(ell)) throw Error(ErrorKind::NotPrime, "l must be prime");
  require_primes(s);
  return (ipow(ell, character_rank(ell, s)) - 1) / (ell - 1);
}

std::uint64_t count_exactly_ramified(std::uint64_t ell, const std::vector<std::uint64_t>& s,
                                     const std::vector<std::uint64_t>& t) {
  if (!is_prime(ell)) throw Error(ErrorKind::NotPrime, "l must be prime");
  std::vector<std::uint64_t> all = s;
  all.insert(all.end(), t.begin(), t.end());
  require_primes(all);
  if (s.size() > 20) throw Error(ErrorKind::InvalidInput, "S too large for inclusion-exclusion");
  // characters whose conductor is divisible by every prime of S
  std::int64_t chars = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.size()); ++mask) {
    std::vector<std::uint64_t> sub = t;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (mask >> i & 1)
        sub.push_back(s[i]);
      else
        ++dropped;
    }
    const auto term = static_cast<std::int64_t>(ipow(ell, character_rank(ell, sub)));
    chars += dropped % 2 ? -term : term;
  }
  // the trivial character survives only when S is empty
  if (s.empty()) --chars;
  return static_cast<std::uint64_t>(chars) / (ell - 1);
}

std::uint64_t count_exactly_ramified_local(std::uint64_t ell, const std::vector<std::uint64_t>& s,
                                           const std::vector<std::uint64_t>& t) {
  if (!is_prime(ell)) throw Error(ErrorKind::NotPrime, "l must be prime");
  std::vector<std::uint64_t> all = s;
  all.insert(all.end(), t.begin(), t.end());
  require_primes(all);
  auto local = [ell](std::uint64_t p) -> std::uint64_t {
    if (p == ell) return ell == 2 ? 4 : ell;
    return p % ell == 1 ? ell : 1;
  };
  std::uint64_t chars = 1;
  for (auto p : s) chars *= local(p) - 1;
  for (auto p : t) chars *= local(p);
  if (s.empty()) --chars;
  return chars / (ell - 1);
}

unsigned rank_bound_s(const BaseFieldData& k, std::uint64_t ell, std::size_t s_size) {
  unsigned s = k.class_rank(ell) + static_cast<unsigned>(s_size) + k.degree();
  if (ell == 2) s += k.real_places();
  return s;
}

std::uint64_t rank_bound(const BaseFieldData& k, std::uint64_t ell, std::size_t s_size) {
  return (ipow(ell, rank_bound_s(k, ell, s_size)) - 1) / (ell - 1);
}

CReadings c_constant(const BaseFieldData& k, std::uint64_t ell, unsigned s0) {
  return {k.class_rank(ell) + k.degree() + s0 + k.real_places(), k.class_rank(ell) + 3 * k.degree()};
}

std::uint64_t exact_ramification_bound(std::uint64_t ell, unsigned c, std::size_t s_size, std::size_t t_size) {
  return ipow(ell, c + static_cast<unsigned>(t_size)) * ipow(ell - 1, static_cast<unsigned>(s_size));
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree_kernel(d) == d;
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree_kernel(m) == m;
}

std::vector<std::int64_t> enumerate_quadratic(std::uint64_t x) {
  std::vector<bool> sqfree(x + 1, true);
  for (std::uint64_t p : primes_up_to(static_cast<std::uint32_t>(iroot(x, 2))))
    for (std::uint64_t n = p * p; n <= x; n += p * p) sqfree[n] = false;
  auto fundamental = [&](std::int64_t d) -> bool {
    const auto a = static_cast<std::uint64_t>(std::llabs(d));
    const std::int64_t r = ((d % 4) + 4) % 4;
    if (r == 1) return sqfree[a];
    if (r != 0) return false;
    const std::int64_t rm = (((d / 4) % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && sqfree[a / 4];
  };
  std::vector<std::int64_t> out;
  for (std::int64_t n = 3; n <= static_cast<std::int64_t>(x); ++n)
    for (std::int64_t d : {-n, n})
      if (fundamental(d)) out.push_back(d);
  return out;
}

std::vector<std::uint64_t> count_quadratic(const std::vector<std::uint64_t>& checkpoints) {
  // |d| odd squarefree > 1 gives one field, 4m with m odd squarefree one,
  // 8m with m odd squarefree two (d = 8m and d = -8m)
  std::vector<std::uint64_t> queries;
  for (auto x : checkpoints) {
    queries.push_back(x);
    queries.push_back(x / 4);
    queries.push_back(x / 8);
  }
  const auto q = odd_squarefree_counts(queries);
  std::vector<std::uint64_t> out;
  for (std::size_t j = 0; j < checkpoints.size(); ++j) {
    const std::uint64_t odd = q[3 * j] > 0 ? q[3 * j] - 1 : 0;
    out.push_back(odd + q[3 * j + 1] + 2 * q[3 * j + 2]);
  }
  return out;
}

std::vector<CyclicConductor> enumerate_cyclic_ell(std::uint64_t ell, std::uint64_t x) {
  if (!is_prime(ell) || ell == 2) throw Error(ErrorKind::InvalidInput, "l must be an odd prime");
  const auto e = static_cast<unsigned>(ell - 1);
  const std::uint64_t fmax = iroot(x, e);
  std::vector<std::uint64_t> tame;
  for (auto p : primes_up_to(static_cast<std::uint32_t>(std::min<std::uint64_t>(fmax, 0xffffffffu))))
    if (p % ell == 1) tame.push_back(p);
  std::vector<CyclicConductor> out;
  std::vector<std::uint64_t> chosen;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t from, std::uint64_t f) {
    for (bool wild : {false, true}) {
      const std::uint64_t base = wild ? ell * ell : 1;
      if (f > fmax / base) continue;
      const std::uint64_t cond = f * base;
      const unsigned w = wild ? 1 : 0;
      if (chosen.empty() && !wild) continue;
      CyclicConductor c;
      c.conductor = cond;
      c.discriminant = ipow(cond, e);
      c.fields = ipow(ell - 1, static_cast<unsigned>(chosen.size()) + w - 1);
      c.tame_primes = chosen;
      c.wild = wild;
      out.push_back(std::move(c));
    }
    for (std::size_t i = from; i < tame.size(); ++i) {
      if (tame[i] > fmax / f) break;
      chosen.push_back(tame[i]);
      rec(i + 1, f * tame[i]);
      chosen.pop_back();
    }
  };
  rec(0, 1);
  std::sort(out.begin(), out.end(),
            [](const CyclicConductor& a, const CyclicConductor& b) { return a.conductor < b.conductor; });
  return out;
}

std::vector<std::uint64_t> count_cyclic_ell(std::uint64_t ell, const std::vector<std::uint64_t>& checkpoints) {
  std::vector<std::uint64_t> out;
  if (checkpoints.empty()) return out;
  const auto conds = enumerate_cyclic_ell(ell, *std::max_element(checkpoints.begin(), checkpoints.end()));
  for (auto x : checkpoints) {
    std::uint64_t n = 0;
    for (const auto& c : conds)
      if (c.discriminant <= x) n += c.fields;
    out.push_back(n);
  }
  return out;
}

std::vector<V4Field> enumerate_v4(std::uint64_t x) {
  // |d1| <= |d2| <= |d3| and |d1| >= 3, so |d2| <= sqrt(x / 3)
  const std::uint64_t dmax = iroot(x / 3, 2);
  std::vector<std::int64_t> ds = enumerate_quadratic(dmax);
  std::vector<V4Field> out;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      const std::int64_t d1 = ds[i], d2 = ds[j];
      const auto a1 = static_cast<std::uint64_t>(std::llabs(d1));
      const auto a2 = static_cast<std::uint64_t>(std::llabs(d2));
      if (a1 * a2 * a2 > x) break;
      const std::int64_t d3 = discriminant_of(squarefree_kernel(d1 * d2));
      if (!key_less(d2, d3)) continue;
      const auto a3 = static_cast<std::uint64_t>(std::llabs(d3));
      if (a3 > x / (a1 * a2)) continue;
      V4Field f;
      f.d = {d1, d2, d3};
      f.discriminant = a1 * a2 * a3;
      f.a1 = radical(a1);
      f.a2 = radical(f.discriminant) / f.a1;
      out.push_back(f);
    }
  std::sort(out.begin(), out.end(), [](const V4Field& a, const V4Field& b) {
    if (a.discriminant != b.discriminant) return a.discriminant < b.discriminant;
    return a.d < b.d;
  });
  return out;
}

FiberCheck v4_fiber_check(std::uint64_t x) {
  FiberCheck rep;
  rep.x = x;
  const auto k = BaseFieldData::rationals();
  const auto fields = enumerate_v4(x);
  rep.fields = fields.size();

  // index of an inertia generator: an involution of the regular C2 x C2
  const auto v4 = group_by_name("V4");
  unsigned involution_index = 0;
  for (const auto& p : v4.elements())
    if (!p.is_identity()) involution_index = ind(p);
  // and of a transposition, for the quadratic subfields
  unsigned transposition_index = 0;
  const auto c2 = group_by_name("C2");
  for (const auto& p : c2.elements())
    if (!p.is_identity()) transposition_index = ind(p);

  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> fibers;
  for (const auto& f : fields) {
    ++fibers[{f.a1, f.a2}];
    for (auto p : prime_divisors(f.discriminant)) {
      if (p == 2) continue;
      unsigned v = 0;
      for (std::uint64_t r = f.discriminant; r % p == 0; r /= p) ++v;
      ++rep.valuation_checks;
      if (v != involution_index) ++rep.valuation_failures;
    }
    for (auto d : f.d) {
      const auto a = static_cast<std::uint64_t>(std::llabs(d));
      for (auto p : prime_divisors(a)) {
        if (p == 2) continue;
        unsigned v = 0;
        for (std::uint64_t r = a; r % p == 0; r /= p) ++v;
        ++rep.valuation_checks;
        if (v != transposition_index) ++rep.valuation_failures;
      }
    }
  }
  rep.fibers = fibers.size();
  for (const auto& [tuple, size] : fibers) {
    rep.largest_fiber = std::max(rep.largest_fiber, size);
    const auto [a1, a2] = tuple;
    // b_i = omega(a_1 ... a_{i-1}) + c(k, 2); |S_0| counts 2 among the primes of a_i
    const auto c1 = c_constant(k, 2, a1 % 2 == 0 ? 1 : 0);
    const auto c2 = c_constant(k, 2, a2 % 2 == 0 ? 1 : 0);
    const unsigned w1 = omega(a1);
    const std::uint64_t tight = ipow(2, c1.tight) * ipow(2, w1 + c2.tight);
    const std::uint64_t loose = ipow(2, c1.loose) * ipow(2, w1 + c2.loose);
    if (size > tight) ++rep.violations_tight;
    if (size > loose) ++rep.violations_loose;
  }
  return rep;
}

}  // namespace nilgal
