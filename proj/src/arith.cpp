#include "nilgal/arith.hpp"

#include <cmath>
#include <limits>

#include "nilgal/error.hpp"

namespace nilgal {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t prime_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

std::string to_string(const Rational& r) {
  std::string out = std::to_string(r.numerator());
  if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

namespace {

// base^k <= x without overflow
bool pow_le(std::uint64_t base, unsigned k, std::uint64_t x) {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (base != 0 && acc > x / base) return false;
    acc *= base;
  }
  return acc <= x;
}

}  // namespace

std::uint64_t iroot(std::uint64_t x, unsigned k) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "iroot with k = 0");
  if (k == 1 || x < 2) return x;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(x), 1.0 / k));
  while (r > 0 && !pow_le(r, k, x)) --r;
  while (pow_le(r + 1, k, x)) ++r;
  return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace nilgal
