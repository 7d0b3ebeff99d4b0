#pragma once

// Small integer helpers shared by the group and sieve code.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace nilgal {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);

bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Largest power of p dividing n.
std::uint64_t prime_part(std::uint64_t n, std::uint64_t p);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// floor(x^(1/k)) computed exactly.
std::uint64_t iroot(std::uint64_t x, unsigned k);

/// Primes up to and including n.
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

}  // namespace nilgal
