#pragma once

// Group extensions 1 -> A -> G -> H -> 1, fiber products, semidirect
// products, an isomorphism test, and checks of the embedding-problem
// identities built from them. Everything here works on Cayley tables.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nilgal/permcore.hpp"

namespace nilgal {

inline constexpr std::size_t kDefaultIsoCap = 512;

struct ExtensionData {
  Group g;
  Group h;
  /// kappa[x] is the image of x in h.
  std::vector<Elem> kappa;
  /// ker(kappa), sorted.
  ElementSet kernel;
  bool central = false;
};

/// G -> G/A with the quotient numbering of quotient_group. Throws NotNormal.
ExtensionData make_extension(const Group& g, const ElementSet& kernel);
/// Explicit epimorphism. Throws InvalidInput unless kappa is a surjective
/// homomorphism onto h.
ExtensionData make_extension(const Group& g, const Group& h, std::vector<Elem> kappa);

struct FiberProduct {
  Group group;
  /// pairs[i] = (g1, g2) is element i; sorted, so (0, 0) comes first.
  std::vector<std::pair<Elem, Elem>> pairs;
};

/// {(g1, g2) : kappa1(g1) = kappa2(g2)}. Both extensions must have the same H
/// table, otherwise QuotientMismatch.
FiberProduct fiber_product(const ExtensionData& e1, const ExtensionData& e2);

/// psi[h][a] is the image of a under the automorphism attached to h.
using Action = std::vector<std::vector<Elem>>;

/// A x| H with (a1, h1)(a2, h2) = (a1 psi(h1)(a2), h1 h2); (a, h) is indexed
/// a * |H| + h, so the trivial action gives direct_product(A, H). Throws
/// NotAction unless psi is a homomorphism H -> Aut(A).
Group semidirect(const Group& a, const Group& h, const Action& psi);

/// Conjugation g a g^-1 of G on its abelian normal subgroup A, read through
/// kappa: psi[kappa(g)]. Indices of A follow the sorted order of the kernel.
Action kernel_action(const ExtensionData& e);

struct Fingerprint {
  std::size_t order = 0;
  std::map<std::uint64_t, std::size_t> order_profile;
  std::size_t center_size = 0;
  std::size_t commutator_size = 0;
  std::map<std::uint64_t, std::size_t> abelianization_profile;
  std::vector<std::size_t> class_sizes;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const Group& g);

/// Witness phi with phi[x] the image of x, or nullopt. The first witness in
/// the canonical search order is returned. Throws CapExceeded above cap.
std::optional<std::vector<Elem>> find_isomorphism(const Group& g1, const Group& g2,
                                                  std::size_t cap = kDefaultIsoCap);
bool is_isomorphic(const Group& g1, const Group& g2, std::size_t cap = kDefaultIsoCap);

/// Whether phi is a bijective homomorphism g1 -> g2.
bool is_isomorphism(const Group& g1, const Group& g2, const std::vector<Elem>& phi);

struct FiberSemidirectReport {
  std::size_t fiber_order = 0;
  std::size_t semidirect_order = 0;
  /// Phi(u, g) = (g, u g) is a bijective homomorphism A x| G -> G x_H G.
  bool map_is_isomorphism = false;
  bool passed() const { return map_is_isomorphism && fiber_order == semidirect_order; }
};

/// A x| G with G acting on its abelian kernel by conjugation, against G x_H G.
FiberSemidirectReport check_fiber_semidirect(const ExtensionData& e);

struct PullbackReport {
  std::size_t fiber_order = 0;
  /// G x_H G = G x_H (A x| H)
  bool pullback_isomorphic = false;
  /// A x| H = (G x_H G) / {(a, a)}
  bool quotient_isomorphic = false;
  bool passed() const { return pullback_isomorphic && quotient_isomorphic; }
};

/// Requires an abelian kernel.
PullbackReport check_pullback(const ExtensionData& e);

struct DoubleQuotientReport {
  std::uint64_t ell = 0;
  std::size_t subgroup_count = 0;
  bool d_central = false;
  bool all_normal = false;
  std::size_t quotients_like_g = 0;
  std::size_t quotients_like_split = 0;
  bool passed() const {
    return d_central && all_normal && subgroup_count == ell + 1 && quotients_like_g == ell &&
           quotients_like_split == 1;
  }
};

/// Central kernel of prime order l. In C_l x G with D = C_l x A, every
/// subgroup of order l of D is normal; l of the quotients are isomorphic to
/// G and one to C_l x H. Throws InvalidInput on a non-central or non-prime kernel.
DoubleQuotientReport check_double_quotients(const ExtensionData& e);

struct SolutionClassCounts {
  unsigned rank = 0;
  std::uint64_t trivial_class_size = 0;
  std::uint64_t other_class_size = 0;
  std::uint64_t trivial_multiplicity = 1;
  std::uint64_t other_multiplicity = 0;
  /// Index-l subgroups containing [G,G] G^l, counted directly.
  std::uint64_t subgroup_count = 0;
  bool agrees() const {
    const std::uint64_t predicted = trivial_class_size - 1;
    return subgroup_count == predicted;
  }
};

SolutionClassCounts solution_class_counts(const Group& g, std::uint64_t ell);

}  // namespace nilgal
