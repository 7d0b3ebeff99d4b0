#include <doctest.h>

#include <cmath>
#include <functional>

#include "nilgal/dirichlet.hpp"
#include "nilgal/error.hpp"

using namespace nilgal;

namespace {

/// m^omega(n) by trial division, 0 unless squarefree with allowed primes.
std::uint64_t weight(std::uint64_t n, const FactorSpec& s) {
  std::uint64_t w = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    if (!(p == s.ell || p % s.ell == 1)) return 0;
    w *= s.m;
  }
  if (n > 1) {
    if (!(n == s.ell || n % s.ell == 1)) return 0;
    w *= s.m;
  }
  return w;
}

/// Sum over all tuples with prod a_i^{d_i} <= x, by nested loops.
std::uint64_t brute_sum(const std::vector<FactorSpec>& specs, std::uint64_t x) {
  std::function<std::uint64_t(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) -> std::uint64_t {
    if (i == specs.size()) return 1;
    std::uint64_t total = 0;
    for (std::uint64_t a = 1;; ++a) {
      std::uint64_t ad = 1;
      for (unsigned j = 0; j < specs[i].d; ++j) ad *= a;
      if (ad > left) break;
      auto w = weight(a, specs[i]);
      if (w) total += w * rec(i + 1, left / ad);
    }
    return total;
  };
  return rec(0, x);
}

}  // namespace

TEST_CASE("factor identity") {
  CHECK(factor_identity_check(1).coefficients == std::vector<std::int64_t>{1, 0, -1});
  CHECK(factor_identity_check(2).coefficients == std::vector<std::int64_t>{1, 0, -3, 2});
  CHECK(factor_identity_check(5).coefficients[2] == -15);
  for (std::uint64_t m = 1; m <= 50; ++m) CHECK(factor_identity_check(m).passed());
}

TEST_CASE("coefficient sieve") {
  auto c = coefficient_sieve({2, 1, 1}, 10);
  std::uint64_t sum = 0;
  for (auto v : c) sum += v;
  CHECK(sum == 7);
  auto c3 = coefficient_sieve({3, 1, 1}, 100);
  CHECK(c3[1] == 1);
  CHECK(c3[7] == 1);
  CHECK(c3[5] == 0);
  CHECK(c3[21] == 1);
  CHECK(c3[9] == 0);
  for (FactorSpec s : {FactorSpec{2, 1, 3}, FactorSpec{3, 1, 2}, FactorSpec{5, 2, 4}, FactorSpec{7, 1, 1}}) {
    auto arr = coefficient_sieve(s, 5000);
    for (std::uint64_t n = 1; n <= 5000; ++n) REQUIRE(arr[n] == weight(n, s));
  }
  CHECK_THROWS_AS(coefficient_sieve({2, 1, 1}, 1000000, 1000), Error);
}

TEST_CASE("partial sums against nested loops") {
  CHECK(to_string(multi_factor_sum({{2, 1, 1}}, std::vector<std::uint64_t>{10}).values[0]) == "7");
  std::vector<std::vector<FactorSpec>> cases{
      {{2, 1, 1}, {2, 2, 1}},
      {{3, 1, 2}},
      {{3, 2, 2}, {5, 1, 1}},
      {{2, 1, 1}, {3, 1, 2}, {5, 2, 3}},
      {{3, 2, 1}, {2, 3, 2}, {7, 2, 1}},
      {{5, 3, 4}, {3, 3, 1}}};
  std::vector<std::uint64_t> xs{1, 2, 10, 99, 1000, 4096, 10000};
  for (const auto& specs : cases) {
    auto s = multi_factor_sum(specs, xs);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      CAPTURE(xs[j]);
      CHECK(s.values[j] == brute_sum(specs, xs[j]));
      if (j) CHECK(s.values[j] >= s.values[j - 1]);
      CHECK(s.values[j] >= 1);
    }
  }
  auto s = multi_factor_sum({{3, 1, 2}, {5, 1, 4}, {2, 2, 1}}, 1000);
  CHECK(s.alpha == Rational(1));
  CHECK(s.e == Rational(2));
}

TEST_CASE("checkpoints and spec parsing") {
  auto c = geometric_checkpoints(10000000);
  CHECK(c.front() == 1000);
  CHECK(c.back() == 10000000);
  CHECK(c.size() == 15);
  auto specs = parse_factor_specs("3:1:4,2:2:1");
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].ell == 3);
  CHECK(specs[0].m == 4);
  CHECK(specs[1].d == 2);
  CHECK_THROWS_AS(parse_factor_spec("4:1:1"), Error);
  CHECK_THROWS_AS(parse_factor_spec("3:1"), Error);
  CHECK_THROWS_AS(parse_factor_spec("3:0:1"), Error);
}

TEST_CASE("slope estimates") {
  auto sq = multi_factor_sum({{2, 1, 1}}, 10000000);
  // the count of squarefree integers up to x is 6 x / pi^2 + O(sqrt x)
  CHECK(std::abs(to_double(sq.values.back()) / 1e7 - 6 / (M_PI * M_PI)) < 0.01 * 6 / (M_PI * M_PI));
  auto est = slope_estimate(sq);
  CHECK(std::abs(est.alpha_hat - 1) < 0.01);
  CHECK(std::abs(est.beta_hat) < 0.15);
  CHECK(est.running_beta.size() == sq.checkpoints.size());
  CHECK_THROWS_AS(slope_estimate(multi_factor_sum({{2, 1, 1}}, 100000)), Error);
}

TEST_CASE("Euler product decomposition") {
  for (std::uint64_t ell : {2u, 3u, 5u})
    for (std::uint64_t m : {1u, 4u})
      for (unsigned d : {1u, 3u}) {
        auto r = euler_identity_check({ell, d, m}, 2000);
        CAPTURE(ell);
        CAPTURE(m);
        CAPTURE(d);
        CHECK(r.passed());
      }
  CHECK(euler_identity_check({7, 2, 3}, 3000).passed());
}
