#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "nilgal/counting.hpp"
#include "nilgal/error.hpp"
#include "oracles.hpp"

using namespace nilgal;

namespace {

std::vector<std::uint64_t> small_primes(std::uint64_t below) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < below; ++p)
    if (oracle::trial_prime(p)) out.push_back(p);
  return out;
}

/// Fundamental discriminants whose prime support lies in S.
std::size_t quadratic_fields_supported_in(const std::vector<std::uint64_t>& s) {
  std::uint64_t bound = 8;
  for (auto p : s) bound *= p;
  std::size_t n = 0;
  for (std::int64_t a = 3; a <= static_cast<std::int64_t>(bound); ++a) {
    std::uint64_t r = static_cast<std::uint64_t>(a);
    for (auto p : s)
      while (r % p == 0) r /= p;
    if (r != 1) continue;
    n += oracle::fundamental(a) + oracle::fundamental(-a);
  }
  return n;
}

}  // namespace

TEST_CASE("character rank and unramified counts") {
  CHECK(character_rank(2, {2, 3}) == 3);
  CHECK(count_unramified_outside(2, {2, 3}) == 7);
  CHECK(quadratic_fields_supported_in({2, 3}) == 7);
  CHECK(count_unramified_outside(3, {}) == 0);
  CHECK(count_unramified_outside(3, {7, 13}) == 4);
  CHECK(oracle::exact_fields(3, {}, {7, 13}) == 4);
  for (auto s : std::vector<std::vector<std::uint64_t>>{{2}, {3, 5}, {2, 7, 11}, {5, 13}, {2, 3, 5, 7}})
    CHECK(count_unramified_outside(2, s) == quadratic_fields_supported_in(s));
  CHECK_THROWS_AS(count_unramified_outside(2, {4}), Error);
  CHECK_THROWS_AS(count_unramified_outside(6, {5}), Error);
}

TEST_CASE("exactly ramified counts") {
  CHECK(count_exactly_ramified(2, {5}, {}) == 1);
  CHECK(count_exactly_ramified(3, {7}, {}) == 1);
  for (std::uint64_t ell : {2, 3, 5}) CHECK(count_exactly_ramified(ell, {}, {}) == 0);
  CHECK(count_exactly_ramified(2, {2}, {}) == 3);
  CHECK_THROWS_AS(count_exactly_ramified(2, {3}, {3}), Error);

  std::mt19937_64 rng(7);
  const auto primes = small_primes(120);
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint64_t ell = std::vector<std::uint64_t>{2, 3, 5}[rng() % 3];
    std::vector<std::uint64_t> pool = primes;
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t ns = rng() % 4, nt = rng() % 4;
    std::vector<std::uint64_t> s(pool.begin(), pool.begin() + ns);
    std::vector<std::uint64_t> t(pool.begin() + ns, pool.begin() + ns + nt);
    const auto exact = count_exactly_ramified(ell, s, t);
    CHECK(exact == oracle::exact_fields(ell, s, t));

    // fields unramified outside S u T split by their ramified subset of S
    std::uint64_t total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
      std::vector<std::uint64_t> sub;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (mask >> i & 1) sub.push_back(s[i]);
      total += count_exactly_ramified(ell, sub, t);
    }
    std::vector<std::uint64_t> all = s;
    all.insert(all.end(), t.begin(), t.end());
    CHECK(total == count_unramified_outside(ell, all));

    const auto k = BaseFieldData::rationals();
    CHECK(count_unramified_outside(ell, all) <= rank_bound(k, ell, all.size()));
    unsigned s0 = std::count(s.begin(), s.end(), ell);
    const auto c = c_constant(k, ell, s0);
    CHECK(exact <= exact_ramification_bound(ell, c.tight, s.size(), t.size()));
    CHECK(exact <= exact_ramification_bound(ell, c.loose, s.size(), t.size()));
  }
}

TEST_CASE("rank bound evaluator") {
  const auto q = BaseFieldData::rationals();
  CHECK(rank_bound_s(q, 2, 2) == 4);
  CHECK(rank_bound(q, 2, 2) == 15);
  CHECK(rank_bound_s(q, 3, 0) == 1);
  CHECK(rank_bound(q, 3, 0) == 1);
  BaseFieldData k;
  k.set_degree(2, 0).set_class_rank(3, 1);
  CHECK(rank_bound_s(k, 3, 1) == 4);
  CHECK(c_constant(q, 3, 0).loose == 3);
  CHECK(c_constant(q, 3, 0).tight == 2);
  CHECK(c_constant(q, 2, 1).tight == 3);
  CHECK(exact_ramification_bound(3, 3, 2, 1) == 81 * 4);
}

TEST_CASE("quadratic fields") {
  CHECK(enumerate_quadratic(2).empty());
  const auto ten = enumerate_quadratic(10);
  CHECK(std::set<std::int64_t>(ten.begin(), ten.end()) == std::set<std::int64_t>{5, 8, -3, -4, -7, -8});
  CHECK(ten.front() == -3);

  std::vector<std::uint64_t> xs{3, 10, 100, 1000, 4321, 20000};
  const auto counts = count_quadratic(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::uint64_t brute = 0;
    for (std::int64_t a = 1; a <= static_cast<std::int64_t>(xs[i]); ++a)
      brute += oracle::fundamental(a) + oracle::fundamental(-a);
    CHECK(counts[i] == brute);
    CHECK(enumerate_quadratic(xs[i]).size() == brute);
  }
  for (auto d : enumerate_quadratic(3000)) CHECK(is_fundamental_discriminant(d) == oracle::fundamental(d));
  const auto big = count_quadratic({1000000, 2000000});
  CHECK(big[0] <= big[1]);
  CHECK(std::abs(static_cast<double>(big[1]) / 2e6 - 6 / (M_PI * M_PI)) < 0.01);
}

TEST_CASE("cyclic fields of prime degree") {
  const auto c49 = enumerate_cyclic_ell(3, 49);
  REQUIRE(c49.size() == 1);
  CHECK(c49[0].conductor == 7);
  CHECK(c49[0].fields == 1);
  CHECK(count_cyclic_ell(3, {48, 49}) == std::vector<std::uint64_t>{0, 1});

  bool has63 = false;
  for (const auto& c : enumerate_cyclic_ell(3, 3969))
    if (c.conductor == 63) {
      has63 = true;
      CHECK(c.fields == 2);
      CHECK(c.discriminant == 3969);
    }
  CHECK(has63);
  CHECK(enumerate_cyclic_ell(5, 11 * 11 * 11 * 11 - 1).empty());
  CHECK(count_cyclic_ell(5, {14641}) == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(enumerate_cyclic_ell(2, 100), Error);

  for (std::uint64_t ell : {3, 5, 7}) {
    const std::uint64_t fmax = ell == 3 ? 1500 : 400;
    const std::uint64_t x = static_cast<std::uint64_t>(std::pow(fmax, ell - 1) + 0.5);
    std::map<std::uint64_t, std::uint64_t> lib;
    for (const auto& c : enumerate_cyclic_ell(ell, x)) lib[c.conductor] = c.fields;
    for (std::uint64_t f = 2; f <= fmax; ++f) {
      const auto expect = oracle::fields_with_conductor(f, ell);
      const auto it = lib.find(f);
      CHECK((it == lib.end() ? 0 : it->second) == expect);
    }
  }
}

TEST_CASE("biquadratic fields") {
  CHECK(enumerate_v4(143).empty());
  const auto first = enumerate_v4(144);
  REQUIRE(first.size() == 1);
  CHECK(first[0].d == std::array<std::int64_t, 3>{-3, -4, 12});
  CHECK(first[0].a1 == 3);
  CHECK(first[0].a2 == 2);
  // Q(i, sqrt 2): conductors 4, 8, 8
  bool found = false;
  for (const auto& f : enumerate_v4(256))
    if (f.d == std::array<std::int64_t, 3>{-4, -8, 8}) found = f.discriminant == 256;
  CHECK(found);

  // every pair of distinct quadratic characters, no pruning
  const std::uint64_t x = 20000;
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> brute;
  std::vector<std::int64_t> ds;
  for (std::int64_t a = 3; a <= static_cast<std::int64_t>(x / 12); ++a)
    for (std::int64_t d : {a, -a})
      if (oracle::fundamental(d)) ds.push_back(d);
  for (auto d1 : ds)
    for (auto d2 : ds) {
      if (d1 == d2) continue;
      // discriminant of the third subfield: squarefree part of d1 d2
      std::int64_t m = d1 * d2, core = m < 0 ? -1 : 1;
      std::uint64_t r = static_cast<std::uint64_t>(m < 0 ? -m : m);
      for (std::uint64_t p = 2; p * p <= r; ++p)
        while (r % (p * p) == 0) r /= p * p;
      core *= static_cast<std::int64_t>(r);
      const std::int64_t d3 = ((core % 4) + 4) % 4 == 1 ? core : 4 * core;
      const std::uint64_t disc = static_cast<std::uint64_t>(std::llabs(d1) * std::llabs(d2) * std::llabs(d3));
      if (disc > x) continue;
      std::vector<std::int64_t> v{d1, d2, d3};
      std::sort(v.begin(), v.end(), [](auto a, auto b) {
        return std::llabs(a) != std::llabs(b) ? std::llabs(a) < std::llabs(b) : a < b;
      });
      brute.insert({v[0], v[1], v[2]});
    }
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> lib;
  for (const auto& f : enumerate_v4(x)) lib.insert({f.d[0], f.d[1], f.d[2]});
  CHECK(lib == brute);
}

TEST_CASE("biquadratic fiber bound") {
  const auto small = v4_fiber_check(100);
  CHECK(small.fields == 0);
  CHECK(small.passed());
  const auto rep = v4_fiber_check(200000);
  CHECK(rep.fields > 300);
  CHECK(rep.fibers <= rep.fields);
  CHECK(rep.valuation_checks > rep.fields);
  CHECK(rep.valuation_failures == 0);
  CHECK(rep.violations_tight == 0);
  CHECK(rep.violations_loose == 0);
  CHECK(rep.passed());
}
