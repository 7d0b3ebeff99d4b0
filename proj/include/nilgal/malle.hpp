#pragma once

// Index, a(G), k-conjugacy classes and b(k,G) of a transitive permutation group.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilgal/arith.hpp"
#include "nilgal/permcore.hpp"

namespace nilgal {

/// The base field k, described only by the data the counting bounds consume.
///
/// The cyclotomic action is recorded as generators of subgroups of
/// (Z/eZ)^x for one or more moduli e: the image of Gal(kbar/k) acting on
/// e-th roots of unity. Subgroups for a divisor of a stored modulus are
/// obtained by reduction. Without any cyclotomic data the action is full,
/// which is the situation for Q and for every k linearly disjoint from the
/// cyclotomic fields.
class BaseFieldData {
 public:
  BaseFieldData() = default;

  static BaseFieldData rationals();
  /// Keys of class_rank and cyclo_generators are decimal strings.
  static BaseFieldData from_json(const nlohmann::json& j);
  /// Accepts the preset name "Q" or a path to a JSON file.
  static BaseFieldData load(const std::string& spec);
  nlohmann::json to_json() const;

  unsigned degree() const noexcept { return degree_; }
  unsigned real_places() const noexcept { return real_places_; }
  unsigned class_rank(std::uint64_t ell) const;
  bool full_cyclotomic_action() const noexcept { return !cyclo_generators_.has_value(); }

  /// Residues m in [1, e) (or {1} for e = 1) of the cyclotomic image mod e.
  /// Throws InvalidInput when no stored modulus is a multiple of e.
  std::vector<std::uint64_t> cyclo_subgroup(std::uint64_t e) const;
  /// n_l = [k(zeta_l) : k], the size of the image in (Z/lZ)^x.
  std::uint64_t n_ell(std::uint64_t ell) const;

  BaseFieldData& set_degree(unsigned degree, unsigned real_places);
  BaseFieldData& set_class_rank(std::uint64_t ell, unsigned rank);
  /// Restricts the cyclotomic action; generators must be units mod `modulus`.
  BaseFieldData& add_cyclotomic_generators(std::uint64_t modulus,
                                           std::vector<std::uint64_t> generators);

 private:
  unsigned degree_ = 1;
  unsigned real_places_ = 1;
  std::map<std::uint64_t, unsigned> class_rank_;
  std::optional<std::map<std::uint64_t, std::vector<std::uint64_t>>> cyclo_generators_;
};

/// n minus the number of orbits of g.
unsigned ind(const Permutation& g);

struct MinIndex {
  unsigned ind = 0;
  Rational a;
};

/// Throws TrivialGroup or NotTransitive.
MinIndex min_index(const PermGroup& g);

struct KClass {
  /// Positions in conjugacy_classes(g).
  std::vector<std::size_t> classes;
  /// Common index of the merged classes (always set: power maps by units
  /// preserve the cycle type).
  std::optional<unsigned> index;
};

/// Orbits of the conjugacy classes under C -> C^m, m in the cyclotomic image
/// modulo exponent(G). Ordered by their first class.
std::vector<KClass> k_classes(const PermGroup& g, const BaseFieldData& k);

/// Number of k-classes of minimal index. Throws TrivialGroup.
unsigned b_constant(const PermGroup& g, const BaseFieldData& k);

}  // namespace nilgal
