#pragma once

// Central-series refinements E = G_r < ... < G_0 = G with central quotients of
// prime order, their layer data, and the log-exponent d(G), d(k,G).

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilgal/arith.hpp"
#include "nilgal/malle.hpp"
#include "nilgal/permcore.hpp"

namespace nilgal {

inline constexpr std::size_t kDefaultExhaustiveCap = 128;
inline constexpr std::size_t kDefaultChainLimit = 200000;

/// Layer i (1-based in the mathematical indexing) is stored at position i - 1
/// of the per-layer vectors.
struct Refinement {
  /// chain[0] = G, ..., chain[r] = {identity}; element indices of the input group.
  std::vector<ElementSet> chain;
  /// |G_{i-1}| / |G_i|
  std::vector<std::uint64_t> primes;
  /// A_i = G_{i-1} \ G_i
  std::vector<ElementSet> layer_sets;
  /// a_i = min ind over A_i, in the input permutation representation.
  std::vector<unsigned> layer_min_index;
  /// m_i = (l_i - 1) * prod_{j > i} l_j = |A_i|
  std::vector<std::uint64_t> weights;

  std::size_t length() const noexcept { return primes.size(); }
  std::vector<std::size_t> subgroup_orders() const;
};

/// Validates the chain and fills the derived data. Throws InvalidChain.
Refinement refinement_data(const PermGroup& g, std::vector<ElementSet> chain);

/// Every maximal chain of normal subgroups with central prime quotients,
/// built upward from E by adjoining an element of prime order modulo the
/// current subgroup that is central modulo it. Deterministic order.
/// Throws CapExceeded when |G| > cap or more than `chain_limit` chains exist.
std::vector<Refinement> enumerate_refinements(const PermGroup& g,
                                              std::size_t cap = kDefaultExhaustiveCap,
                                              std::size_t chain_limit = kDefaultChainLimit);

struct DConstant {
  /// min a_i, which equals ind(G)
  unsigned min_index = 0;
  std::uint64_t critical_prime = 0;
  std::uint64_t n_ell = 1;
  /// sum of m_i over the layers with a_i = ind(G)
  std::uint64_t d_group = 0;
  /// d_group / n_ell
  Rational d_field;
};

DConstant d_constant(const PermGroup& g, const Refinement& r, const BaseFieldData& k);

struct OptimizedD {
  Refinement refinement;
  DConstant d;
  /// Set when |G| exceeded the exhaustive cap and the greedy rule was used.
  bool heuristic_only = false;
};

/// Minimal d(k,G) over all refinements for |G| <= exhaustive_cap, found by
/// dynamic programming over the normal subgroups reachable from E. Ties go to
/// the lexicographically smallest sequence of (|G_i|, elements) read upward
/// from E. Above the cap a greedy top-down rule is used instead.
OptimizedD optimize_d(const PermGroup& g, const BaseFieldData& k,
                      std::size_t exhaustive_cap = kDefaultExhaustiveCap);

/// Whether every element of minimal index is central. When it is, the count
/// of such elements must be l^s - 1 (PropertyViolated otherwise).
bool min_index_elements_central(const PermGroup& g);

/// Number of non-identity elements of minimal index.
std::size_t min_index_element_count(const PermGroup& g);

nlohmann::json to_json(const Refinement& r, const DConstant& d);

}  // namespace nilgal
