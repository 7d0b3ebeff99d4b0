#pragma once

// Counting over Q through Dirichlet characters: cyclic extensions with
// prescribed ramification, the matching upper bounds, enumeration of
// quadratic, cyclic and biquadratic fields by discriminant, and the fiber
// bound for the ideal tuples of a biquadratic chain.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "nilgal/malle.hpp"

namespace nilgal {

/// Rank of the group of characters of order dividing l unramified outside
/// S: #{p in S : p = 1 mod l} plus 2 if l = 2 is in S, 1 if odd l is in S.
unsigned character_rank(std::uint64_t ell, const std::vector<std::uint64_t>& s);

/// C_l extensions of Q unramified outside S: (l^t - 1)/(l - 1).
std::uint64_t count_unramified_outside(std::uint64_t ell, const std::vector<std::uint64_t>& s);

/// C_l extensions of Q ramified at every prime of S and unramified outside
/// S u T, by inclusion-exclusion over subsets of S. S and T must be
/// disjoint sets of primes (InvalidInput otherwise).
std::uint64_t count_exactly_ramified(std::uint64_t ell, const std::vector<std::uint64_t>& s,
                                     const std::vector<std::uint64_t>& t);

/// The same count from local characters: a character of order dividing l
/// is a product of local ones, and the local group at p has order l for
/// p = 1 mod l or p = l odd, 4 for p = l = 2, 1 otherwise.
std::uint64_t count_exactly_ramified_local(std::uint64_t ell, const std::vector<std::uint64_t>& s,
                                           const std::vector<std::uint64_t>& t);

/// s = rk_l(Cl_k) + |S| + [k:Q] (+ r_1 when l = 2).
unsigned rank_bound_s(const BaseFieldData& k, std::uint64_t ell, std::size_t s_size);
/// (l^s - 1)/(l - 1)
std::uint64_t rank_bound(const BaseFieldData& k, std::uint64_t ell, std::size_t s_size);

struct CReadings {
  /// rk + [k:Q] + |S_0| + r_1, with S_0 the primes of S above l
  unsigned tight = 0;
  /// rk + 3 [k:Q]
  unsigned loose = 0;
};

/// `s0` is the number of primes above l among the primes that must ramify.
CReadings c_constant(const BaseFieldData& k, std::uint64_t ell, unsigned s0);

/// l^{c + |T|} (l - 1)^{|S|}
std::uint64_t exact_ramification_bound(std::uint64_t ell, unsigned c, std::size_t s_size, std::size_t t_size);

bool is_fundamental_discriminant(std::int64_t d);

/// Fundamental discriminants with |d| <= x, ordered by (|d|, d).
std::vector<std::int64_t> enumerate_quadratic(std::uint64_t x);
/// Z(Q, C_2; x) at each checkpoint (ascending), by a segmented squarefree sieve.
std::vector<std::uint64_t> count_quadratic(const std::vector<std::uint64_t>& checkpoints);

struct CyclicConductor {
  std::uint64_t conductor = 0;
  /// conductor^(l - 1)
  std::uint64_t discriminant = 0;
  /// number of C_l fields with this conductor
  std::uint64_t fields = 0;
  /// primes = 1 mod l dividing the conductor
  std::vector<std::uint64_t> tame_primes;
  /// whether l^2 divides the conductor
  bool wild = false;
};

/// Conductors of C_l fields (odd l) with discriminant <= x, ascending.
std::vector<CyclicConductor> enumerate_cyclic_ell(std::uint64_t ell, std::uint64_t x);
/// Z(Q, C_l; x) at each checkpoint.
std::vector<std::uint64_t> count_cyclic_ell(std::uint64_t ell, const std::vector<std::uint64_t>& checkpoints);

struct V4Field {
  /// the three quadratic subfields, ordered by (|d|, d); K_1 is d[0]
  std::array<std::int64_t, 3> d{};
  std::uint64_t discriminant = 0;
  /// primes ramified in K_1 (product)
  std::uint64_t a1 = 1;
  /// the other ramified primes (product)
  std::uint64_t a2 = 1;
};

/// Biquadratic fields with |disc| <= x, ordered by (discriminant, d).
std::vector<V4Field> enumerate_v4(std::uint64_t x);

struct FiberCheck {
  std::uint64_t x = 0;
  std::size_t fields = 0;
  std::size_t fibers = 0;
  std::size_t largest_fiber = 0;
  /// fibers exceeding the bound under each reading of c
  std::size_t violations_tight = 0;
  std::size_t violations_loose = 0;
  /// odd ramified primes checked against the index of the inertia generator
  std::size_t valuation_checks = 0;
  std::size_t valuation_failures = 0;
  bool passed() const { return violations_tight == 0 && valuation_failures == 0; }
};

/// Groups the biquadratic fields by their tuple (a_1, a_2) for the chain
/// E < <s> < C_2 x C_2 with K_1 = d[0] and compares every fiber with
/// 2^{b_1} 2^{b_2}, b_1 = c, b_2 = omega(a_1) + c.
FiberCheck v4_fiber_check(std::uint64_t x);

/// Squarefree kernel with sign; 0 stays 0.
std::int64_t squarefree_kernel(std::int64_t n);
/// Distinct prime divisors of |n| multiplied together.
std::uint64_t radical(std::uint64_t n);

}  // namespace nilgal
