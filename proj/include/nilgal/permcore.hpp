#pragma once

// Exact permutation and finite-group arithmetic. Groups are held by full
// element enumeration plus a Cayley table; every other module builds on the
// types in this header.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nilgal {

inline constexpr std::size_t kDefaultElementCap = 20000;
/// Largest order for which a Cayley table is built.
inline constexpr std::size_t kTableCap = 4096;

class Permutation {
 public:
  using Point = std::uint32_t;

  Permutation() = default;
  /// Identity on `degree` points.
  explicit Permutation(std::size_t degree);
  /// 0-based image table; throws InvalidInput unless it is a bijection.
  explicit Permutation(std::vector<Point> images);

  /// Cycles use 0-based points.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  /// Number of orbits of <this> on the points, fixed points included.
  std::size_t orbit_count() const;
  /// Cycle lengths, descending.
  std::vector<std::size_t> cycle_type() const;
  std::uint64_t order() const;

  /// 1-based cycle notation, "()" for the identity.
  std::string to_cycles() const;

  /// Left-to-right composition: (a * b)[x] = b[a[x]].
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  // Lexicographic on image tables.
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// Parses "(1,2,3)(4,5)" with 1-based points. `degree` 0 means "largest point".
Permutation parse_permutation(std::string_view text, std::size_t degree = 0);

/// Parses a ';'-separated generator list; all generators share the largest
/// degree mentioned unless `degree` is given.
std::vector<Permutation> parse_generators(std::string_view text, std::size_t degree = 0);

using Elem = std::uint32_t;
/// Sorted, duplicate-free element indices.
using ElementSet = std::vector<Elem>;

/// Abstract finite group given by its Cayley table. Element 0 is the identity.
class Group {
 public:
  Group() = default;
  /// Row-major table with table[a * order + b] = a * b. Validates the latin
  /// square property and that 0 is the identity; associativity is the
  /// caller's responsibility (see is_associative).
  Group(std::size_t order, std::vector<Elem> table);

  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, std::int64_t k) const;
  /// g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  /// a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  std::uint64_t element_order(Elem a) const;

  bool is_associative() const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  std::size_t order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
};

Group cyclic_group(std::size_t n);
/// Elements (a, b) are indexed a * |B| + b.
Group direct_product(const Group& a, const Group& b);

ElementSet all_elements(const Group& g);
/// Subgroup generated by `gens`.
ElementSet closure(const Group& g, std::span<const Elem> gens);
bool is_subgroup(const Group& g, const ElementSet& h);
bool is_normal(const Group& g, const ElementSet& n);
ElementSet center(const Group& g);
ElementSet commutator_subgroup(const Group& g);
std::vector<ElementSet> conjugacy_classes(const Group& g);
std::uint64_t exponent(const Group& g);
bool is_abelian(const Group& g);
/// element order -> number of elements of that order
std::map<std::uint64_t, std::size_t> order_profile(const Group& g);
/// l-rank of the abelianization; throws NotPrime for composite l.
unsigned abelianization_rank(const Group& g, std::uint64_t ell);

struct Quotient {
  Group group;
  /// coset_of[g] = index of gN in `group`; the coset N itself is 0.
  std::vector<Elem> coset_of;
};

/// Cosets are numbered by their smallest element. Throws NotNormal.
Quotient quotient_group(const Group& g, const ElementSet& n);

/// Subgroups L with lower <= L <= upper and |L| = order, reached by adjoining
/// one element at a time. Sorted lexicographically.
std::vector<ElementSet> intermediate_subgroups(const Group& g, const ElementSet& lower,
                                               const ElementSet& upper, std::size_t order);

/// Subgroup as a group in its own right; indices follow the sorted order of `h`.
Group subgroup_table(const Group& g, const ElementSet& h);

class PermGroup {
 public:
  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  /// Lexicographically sorted; element 0 is the identity.
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(Elem e) const { return elements_[e]; }
  std::optional<Elem> index_of(const Permutation& p) const;

  bool has_table() const noexcept { return table_ != nullptr; }
  /// Throws CapExceeded when the order is above kTableCap.
  const Group& table() const;

 private:
  friend PermGroup generate(std::span<const Permutation>, std::size_t);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Elem, PermutationHash> index_;
  std::shared_ptr<const Group> table_;
};

/// Closure of `gens`. Throws DegreeMismatch, CapExceeded, InvalidInput (no generators).
PermGroup generate(std::span<const Permutation> gens, std::size_t cap = kDefaultElementCap);

/// Right regular representation x -> x * g on |G| points.
PermGroup regular_representation(const Group& g);

/// Orbits of the generated group on points, each sorted, ordered by smallest point.
std::vector<std::vector<Permutation::Point>> orbits(const PermGroup& g);
bool is_transitive(const PermGroup& g);

struct ConjClass {
  Permutation representative;
  ElementSet members;
  std::uint64_t element_order = 1;
};

/// Classes ordered by smallest member; the representative is that member.
std::vector<ConjClass> conjugacy_classes(const PermGroup& g);
ElementSet center(const PermGroup& g);
/// Quotient by a normal subgroup, realised by the regular action on cosets.
PermGroup quotient(const PermGroup& g, const ElementSet& n);
std::uint64_t element_order(const Permutation& p);
std::uint64_t exponent(const PermGroup& g);
unsigned abelianization_rank(const PermGroup& g, std::uint64_t ell);

}  // namespace nilgal
