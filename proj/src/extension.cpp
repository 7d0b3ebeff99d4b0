#include "nilgal/extension.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "nilgal/arith.hpp"
#include "nilgal/error.hpp"

namespace nilgal {

namespace {

constexpr Elem kUnset = ~Elem{0};

bool is_homomorphism(const Group& g, const Group& h, const std::vector<Elem>& phi) {
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (phi[g.mul(static_cast<Elem>(a), static_cast<Elem>(b))] != h.mul(phi[a], phi[b])) return false;
  return true;
}

std::vector<Elem> local_index(const Group& g, const ElementSet& subset) {
  std::vector<Elem> local(g.order(), kUnset);
  for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = static_cast<Elem>(i);
  return local;
}

/// Greedy generating set: elements by decreasing order, kept when new.
std::vector<Elem> generating_set(const Group& g) {
  std::vector<Elem> elems(g.order());
  for (std::size_t i = 0; i < elems.size(); ++i) elems[i] = static_cast<Elem>(i);
  std::vector<std::uint64_t> ord(g.order());
  for (Elem x : elems) ord[x] = g.element_order(x);
  std::stable_sort(elems.begin(), elems.end(), [&](Elem a, Elem b) { return ord[a] > ord[b]; });
  std::vector<Elem> gens;
  ElementSet span{0};
  for (Elem x : elems) {
    if (span.size() == g.order()) break;
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = closure(g, gens);
  }
  return gens;
}

/// Per-element invariants preserved by isomorphisms: order and class size.
std::vector<std::pair<std::uint64_t, std::size_t>> element_invariants(const Group& g) {
  std::vector<std::pair<std::uint64_t, std::size_t>> inv(g.order());
  for (const auto& cls : conjugacy_classes(g))
    for (Elem x : cls) inv[x] = {g.element_order(x), cls.size()};
  return inv;
}

class IsoSearch {
 public:
  IsoSearch(const Group& g1, const Group& g2)
      : g1_(g1), g2_(g2), gens_(generating_set(g1)), inv1_(element_invariants(g1)),
        inv2_(element_invariants(g2)) {}

  std::optional<std::vector<Elem>> run() {
    std::vector<Elem> map(g1_.order(), kUnset);
    std::vector<bool> used(g2_.order(), false);
    map[0] = 0;
    used[0] = true;
    std::vector<Elem> images;
    if (search(0, map, used, images)) return map;
    return std::nullopt;
  }

 private:
  bool search(std::size_t k, std::vector<Elem>& map, std::vector<bool>& used, std::vector<Elem>& images) {
    if (k == gens_.size()) return true;
    for (std::size_t y = 0; y < g2_.order(); ++y) {
      if (inv2_[y] != inv1_[gens_[k]]) continue;
      auto map2 = map;
      auto used2 = used;
      images.push_back(static_cast<Elem>(y));
      if (extend(k, map2, used2, images) && search(k + 1, map2, used2, images)) {
        map = std::move(map2);
        return true;
      }
      images.pop_back();
    }
    return false;
  }

  /// Extends the map to <gens_[0..k]> along Cayley-graph edges; false on a
  /// conflict or a collision of images.
  bool extend(std::size_t k, std::vector<Elem>& map, std::vector<bool>& used,
              const std::vector<Elem>& images) const {
    std::vector<Elem> queue;
    for (std::size_t x = 0; x < map.size(); ++x)
      if (map[x] != kUnset) queue.push_back(static_cast<Elem>(x));
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Elem x = queue[qi];
      for (std::size_t j = 0; j <= k; ++j) {
        Elem z = g1_.mul(x, gens_[j]);
        Elem w = g2_.mul(map[x], images[j]);
        if (map[z] == kUnset) {
          if (used[w]) return false;
          map[z] = w;
          used[w] = true;
          queue.push_back(z);
        } else if (map[z] != w) {
          return false;
        }
      }
    }
    return true;
  }

  const Group& g1_;
  const Group& g2_;
  std::vector<Elem> gens_;
  std::vector<std::pair<std::uint64_t, std::size_t>> inv1_, inv2_;
};

}  // namespace

ExtensionData make_extension(const Group& g, const ElementSet& kernel) {
  auto q = quotient_group(g, kernel);
  ExtensionData e;
  e.g = g;
  e.h = std::move(q.group);
  e.kappa = std::move(q.coset_of);
  e.kernel = kernel;
  auto z = center(g);
  e.central = std::includes(z.begin(), z.end(), kernel.begin(), kernel.end());
  return e;
}

ExtensionData make_extension(const Group& g, const Group& h, std::vector<Elem> kappa) {
  if (kappa.size() != g.order()) throw Error(ErrorKind::InvalidInput, "kappa has the wrong length");
  std::vector<bool> hit(h.order(), false);
  for (Elem y : kappa) {
    if (y >= h.order()) throw Error(ErrorKind::InvalidInput, "kappa leaves H");
    hit[y] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end())
    throw Error(ErrorKind::InvalidInput, "kappa is not surjective");
  if (!is_homomorphism(g, h, kappa)) throw Error(ErrorKind::InvalidInput, "kappa is not a homomorphism");
  ExtensionData e;
  e.g = g;
  e.h = h;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (kappa[x] == 0) e.kernel.push_back(static_cast<Elem>(x));
  e.kappa = std::move(kappa);
  auto z = center(g);
  e.central = std::includes(z.begin(), z.end(), e.kernel.begin(), e.kernel.end());
  return e;
}

FiberProduct fiber_product(const ExtensionData& e1, const ExtensionData& e2) {
  if (!(e1.h == e2.h)) throw Error(ErrorKind::QuotientMismatch, "the two quotients differ");
  FiberProduct f;
  const std::size_t n2 = e2.g.order();
  std::vector<Elem> index(e1.g.order() * n2, kUnset);
  for (std::size_t a = 0; a < e1.g.order(); ++a)
    for (std::size_t b = 0; b < n2; ++b)
      if (e1.kappa[a] == e2.kappa[b]) {
        index[a * n2 + b] = static_cast<Elem>(f.pairs.size());
        f.pairs.emplace_back(static_cast<Elem>(a), static_cast<Elem>(b));
      }
  const std::size_t m = f.pairs.size();
  std::vector<Elem> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Elem a = e1.g.mul(f.pairs[i].first, f.pairs[j].first);
      Elem b = e2.g.mul(f.pairs[i].second, f.pairs[j].second);
      table[i * m + j] = index[a * n2 + b];
    }
  f.group = Group(m, std::move(table));
  return f;
}

Group semidirect(const Group& a, const Group& h, const Action& psi) {
  const std::size_t na = a.order(), nh = h.order();
  if (psi.size() != nh) throw Error(ErrorKind::NotAction, "action has the wrong number of entries");
  for (const auto& p : psi) {
    if (p.size() != na) throw Error(ErrorKind::NotAction, "automorphism has the wrong length");
    std::vector<bool> hit(na, false);
    for (Elem y : p) {
      if (y >= na || hit[y]) throw Error(ErrorKind::NotAction, "not a bijection of A");
      hit[y] = true;
    }
    if (!is_homomorphism(a, a, p)) throw Error(ErrorKind::NotAction, "not an automorphism of A");
  }
  for (std::size_t x = 0; x < na; ++x)
    if (psi[0][x] != x) throw Error(ErrorKind::NotAction, "identity acts nontrivially");
  for (std::size_t g1 = 0; g1 < nh; ++g1)
    for (std::size_t g2 = 0; g2 < nh; ++g2) {
      const auto& p12 = psi[h.mul(static_cast<Elem>(g1), static_cast<Elem>(g2))];
      for (std::size_t x = 0; x < na; ++x)
        if (p12[x] != psi[g1][psi[g2][x]]) throw Error(ErrorKind::NotAction, "not a homomorphism H -> Aut(A)");
    }
  const std::size_t n = na * nh;
  std::vector<Elem> table(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      Elem a1 = static_cast<Elem>(u / nh), h1 = static_cast<Elem>(u % nh);
      Elem a2 = static_cast<Elem>(v / nh), h2 = static_cast<Elem>(v % nh);
      table[u * n + v] = static_cast<Elem>(a.mul(a1, psi[h1][a2]) * nh + h.mul(h1, h2));
    }
  return Group(n, std::move(table));
}

Action kernel_action(const ExtensionData& e) {
  const auto local = local_index(e.g, e.kernel);
  Action psi(e.h.order());
  for (std::size_t x = 0; x < e.g.order(); ++x) {
    std::vector<Elem> p(e.kernel.size());
    for (std::size_t i = 0; i < e.kernel.size(); ++i) p[i] = local[e.g.conj(static_cast<Elem>(x), e.kernel[i])];
    auto& slot = psi[e.kappa[x]];
    if (slot.empty())
      slot = std::move(p);
    else if (slot != p)
      throw Error(ErrorKind::InvalidInput, "conjugation on the kernel depends on the lift; kernel not abelian");
  }
  return psi;
}

Fingerprint fingerprint(const Group& g) {
  Fingerprint f;
  f.order = g.order();
  f.order_profile = order_profile(g);
  f.center_size = center(g).size();
  auto comm = commutator_subgroup(g);
  f.commutator_size = comm.size();
  f.abelianization_profile = order_profile(quotient_group(g, comm).group);
  for (const auto& c : conjugacy_classes(g)) f.class_sizes.push_back(c.size());
  std::sort(f.class_sizes.begin(), f.class_sizes.end());
  return f;
}

bool is_isomorphism(const Group& g1, const Group& g2, const std::vector<Elem>& phi) {
  if (g1.order() != g2.order() || phi.size() != g1.order()) return false;
  std::vector<bool> hit(g2.order(), false);
  for (Elem y : phi) {
    if (y >= g2.order() || hit[y]) return false;
    hit[y] = true;
  }
  return is_homomorphism(g1, g2, phi);
}

std::optional<std::vector<Elem>> find_isomorphism(const Group& g1, const Group& g2, std::size_t cap) {
  if (g1.order() != g2.order()) return std::nullopt;
  if (g1.order() > cap)
    throw Error(ErrorKind::CapExceeded, "isomorphism test above order " + std::to_string(cap));
  if (!(fingerprint(g1) == fingerprint(g2))) return std::nullopt;
  auto phi = IsoSearch(g1, g2).run();
  if (phi && !is_isomorphism(g1, g2, *phi))
    throw Error(ErrorKind::VerificationFailed, "isomorphism search returned an invalid map");
  return phi;
}

bool is_isomorphic(const Group& g1, const Group& g2, std::size_t cap) {
  return find_isomorphism(g1, g2, cap).has_value();
}

FiberSemidirectReport check_fiber_semidirect(const ExtensionData& e) {
  const Group a = subgroup_table(e.g, e.kernel);
  if (!is_abelian(a)) throw Error(ErrorKind::InvalidInput, "kernel is not abelian");
  const auto local = local_index(e.g, e.kernel);
  const std::size_t ng = e.g.order();
  Action psi(ng);
  for (std::size_t x = 0; x < ng; ++x) {
    psi[x].resize(e.kernel.size());
    for (std::size_t i = 0; i < e.kernel.size(); ++i)
      psi[x][i] = local[e.g.conj(static_cast<Elem>(x), e.kernel[i])];
  }
  const Group sd = semidirect(a, e.g, psi);
  const auto fp = fiber_product(e, e);
  std::map<std::pair<Elem, Elem>, Elem> index;
  for (std::size_t i = 0; i < fp.pairs.size(); ++i) index[fp.pairs[i]] = static_cast<Elem>(i);

  FiberSemidirectReport r;
  r.fiber_order = fp.group.order();
  r.semidirect_order = sd.order();
  if (r.fiber_order != r.semidirect_order) return r;
  std::vector<Elem> phi(sd.order());
  for (std::size_t v = 0; v < sd.order(); ++v) {
    Elem u = static_cast<Elem>(v / ng), g = static_cast<Elem>(v % ng);
    auto it = index.find({g, e.g.mul(e.kernel[u], g)});
    if (it == index.end()) return r;
    phi[v] = it->second;
  }
  r.map_is_isomorphism = is_isomorphism(sd, fp.group, phi);
  return r;
}

PullbackReport check_pullback(const ExtensionData& e) {
  const Group a = subgroup_table(e.g, e.kernel);
  if (!is_abelian(a)) throw Error(ErrorKind::InvalidInput, "kernel is not abelian");
  const Group ah = semidirect(a, e.h, kernel_action(e));
  std::vector<Elem> proj(ah.order());
  for (std::size_t v = 0; v < ah.order(); ++v) proj[v] = static_cast<Elem>(v % e.h.order());
  const auto split = make_extension(ah, e.h, std::move(proj));

  const auto f1 = fiber_product(e, e);
  const auto f2 = fiber_product(e, split);
  PullbackReport r;
  r.fiber_order = f1.group.order();
  r.pullback_isomorphic = is_isomorphic(f1.group, f2.group);

  ElementSet diagonal;
  for (std::size_t i = 0; i < f1.pairs.size(); ++i)
    if (f1.pairs[i].first == f1.pairs[i].second &&
        std::binary_search(e.kernel.begin(), e.kernel.end(), f1.pairs[i].first))
      diagonal.push_back(static_cast<Elem>(i));
  r.quotient_isomorphic = is_isomorphic(quotient_group(f1.group, diagonal).group, ah);
  return r;
}

DoubleQuotientReport check_double_quotients(const ExtensionData& e) {
  const std::uint64_t ell = e.kernel.size();
  if (!is_prime(ell)) throw Error(ErrorKind::InvalidInput, "kernel order is not prime");
  if (!e.central) throw Error(ErrorKind::InvalidInput, "kernel is not central");
  const std::size_t ng = e.g.order();
  const Group big = direct_product(cyclic_group(ell), e.g);
  ElementSet d;
  for (std::uint64_t c = 0; c < ell; ++c)
    for (Elem a : e.kernel) d.push_back(static_cast<Elem>(c * ng + a));
  std::sort(d.begin(), d.end());

  DoubleQuotientReport r;
  r.ell = ell;
  const auto z = center(big);
  r.d_central = std::includes(z.begin(), z.end(), d.begin(), d.end());
  const auto subs = intermediate_subgroups(big, ElementSet{0}, d, ell);
  r.subgroup_count = subs.size();
  r.all_normal = true;
  // 1 x A is the subgroup whose quotient splits
  const ElementSet inner = e.kernel;
  const Group split = direct_product(cyclic_group(ell), e.h);
  for (const auto& u : subs) {
    if (!is_normal(big, u)) {
      r.all_normal = false;
      continue;
    }
    const Group q = quotient_group(big, u).group;
    if (u == inner) {
      if (is_isomorphic(q, split)) ++r.quotients_like_split;
    } else if (is_isomorphic(q, e.g)) {
      ++r.quotients_like_g;
    }
  }
  return r;
}

SolutionClassCounts solution_class_counts(const Group& g, std::uint64_t ell) {
  SolutionClassCounts s;
  s.rank = abelianization_rank(g, ell);
  const std::uint64_t lr = ipow(ell, s.rank);
  s.trivial_class_size = (lr - 1) / (ell - 1) + 1;
  s.other_class_size = lr;
  s.trivial_multiplicity = 1;
  s.other_multiplicity = ell - 1;

  std::vector<Elem> gens;
  for (std::size_t x = 0; x < g.order(); ++x) {
    gens.push_back(g.pow(static_cast<Elem>(x), static_cast<std::int64_t>(ell)));
    for (std::size_t y = 0; y < g.order(); ++y)
      gens.push_back(g.commutator(static_cast<Elem>(x), static_cast<Elem>(y)));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  const ElementSet frattini = closure(g, gens);
  // maximal subgroups of the elementary abelian quotient, found by search
  const auto q = quotient_group(g, frattini);
  if (q.group.order() > 1)
    s.subgroup_count =
        intermediate_subgroups(q.group, ElementSet{0}, all_elements(q.group), q.group.order() / ell).size();
  return s;
}

}  // namespace nilgal
