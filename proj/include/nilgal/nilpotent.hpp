#pragma once

// Sylow block decomposition of transitive nilpotent permutation groups and
// the a(G) arithmetic of natural direct products.

#include <cstdint>
#include <vector>

#include "nilgal/arith.hpp"
#include "nilgal/permcore.hpp"

namespace nilgal {

/// G1 x G2 acting coordinatewise on the n1 * n2 grid; point (i, j) is i * n2 + j.
PermGroup natural_product(const PermGroup& g1, const PermGroup& g2);

/// True iff every Sylow subgroup is normal.
bool is_nilpotent(const Group& g);

struct SylowFactor {
  std::uint64_t ell = 0;
  /// Transitive action of the Sylow ell-subgroup on the blocks of its
  /// complement; degree is the ell-part of n.
  PermGroup group;
  /// n_ell * a(G_ell) / n, the contribution of this factor to a(G).
  Rational a_contribution;
};

struct SylowDecomposition {
  std::vector<SylowFactor> factors;  // ascending ell
  std::uint64_t critical_prime = 0;
  /// max of the contributions; equals a(G).
  Rational a;
};

/// Throws NotNilpotent, NotTransitive, TrivialGroup, or PropertyViolated
/// (the block map is not a permutation isomorphism onto the natural
/// product, or the maximum is attained twice).
SylowDecomposition sylow_decompose(const PermGroup& g);

/// Order shared by all minimal-index elements; PropertyViolated if they
/// disagree or the order is not prime.
std::uint64_t critical_prime_check(const PermGroup& g);

struct CoprimeProductCheck {
  Rational left;    // a(G1) / n2
  Rational right;   // a(G2) / n1
  Rational formula; // max(left, right)
  Rational direct;  // a(G1 x G2) by an index scan of the product
  bool distinct() const { return left != right; }
  bool agrees() const { return formula == direct; }
};

/// Requires coprime orders and degrees > 1.
CoprimeProductCheck coprime_product_check(const PermGroup& g1, const PermGroup& g2);

/// ind((g1, g2)) on the grid from cycle types alone: n1 n2 - sum of gcds
/// over pairs of cycle lengths.
unsigned product_index_formula(const Permutation& g1, const Permutation& g2);

}  // namespace nilgal
