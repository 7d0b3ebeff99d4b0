#include "nilgal/nilpotent.hpp"

#include <algorithm>
#include <numeric>

#include "nilgal/error.hpp"
#include "nilgal/malle.hpp"

namespace nilgal {

namespace {

Permutation lift(const Permutation& p, std::size_t n1, std::size_t n2, bool first) {
  std::vector<Permutation::Point> images(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      std::size_t ii = first ? p[static_cast<Permutation::Point>(i)] : i;
      std::size_t jj = first ? j : p[static_cast<Permutation::Point>(j)];
      images[i * n2 + j] = static_cast<Permutation::Point>(ii * n2 + jj);
    }
  return Permutation(std::move(images));
}

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

// Greedy generating set of a subgroup, in element order.
std::vector<Elem> generating_set(const Group& g, const ElementSet& h) {
  std::vector<Elem> gens;
  ElementSet span{0};
  for (Elem x : h) {
    if (span.size() == h.size()) break;
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = closure(g, gens);
  }
  return gens;
}

}  // namespace

PermGroup natural_product(const PermGroup& g1, const PermGroup& g2) {
  const std::size_t n1 = g1.degree(), n2 = g2.degree();
  std::vector<Permutation> gens;
  for (const auto& s : g1.generators()) gens.push_back(lift(s, n1, n2, true));
  for (const auto& s : g2.generators()) gens.push_back(lift(s, n1, n2, false));
  return generate(gens, std::max(kDefaultElementCap, g1.order() * g2.order()));
}

unsigned product_index_formula(const Permutation& g1, const Permutation& g2) {
  std::size_t orbits = 0;
  for (auto c : g1.cycle_type())
    for (auto d : g2.cycle_type()) orbits += std::gcd(c, d);
  return static_cast<unsigned>(g1.degree() * g2.degree() - orbits);
}

bool is_nilpotent(const Group& g) {
  for (auto p : prime_divisors(g.order())) {
    ElementSet sylow;
    for (std::size_t x = 0; x < g.order(); ++x)
      if (is_power_of(g.element_order(static_cast<Elem>(x)), p)) sylow.push_back(static_cast<Elem>(x));
    if (sylow.size() != prime_part(g.order(), p) || !is_subgroup(g, sylow)) return false;
  }
  return true;
}

SylowDecomposition sylow_decompose(const PermGroup& g) {
  const Group& t = g.table();
  if (!is_nilpotent(t)) throw Error(ErrorKind::NotNilpotent, "some Sylow subgroup is not normal");
  const MinIndex direct = min_index(g);
  const std::size_t n = g.degree();

  SylowDecomposition out;
  std::vector<std::vector<std::size_t>> block_of;  // per factor: point -> block
  for (auto p : prime_divisors(t.order())) {
    ElementSet sylow, complement;
    for (std::size_t x = 0; x < t.order(); ++x) {
      auto o = t.element_order(static_cast<Elem>(x));
      if (is_power_of(o, p)) sylow.push_back(static_cast<Elem>(x));
      if (o % p != 0) complement.push_back(static_cast<Elem>(x));
    }
    // Blocks: orbits of the complement on points, numbered by smallest point.
    std::vector<std::size_t> block(n, n);
    std::size_t blocks = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (block[x] != n) continue;
      for (Elem c : complement) block[g.element(c)[static_cast<Permutation::Point>(x)]] = blocks;
      ++blocks;
    }
    if (blocks != prime_part(n, p))
      throw Error(ErrorKind::PropertyViolated, "block count differs from the ell-part of n");
    std::vector<Permutation::Point> rep(blocks);
    for (std::size_t x = n; x-- > 0;) rep[block[x]] = static_cast<Permutation::Point>(x);

    std::vector<Permutation> gens;
    for (Elem s : generating_set(t, sylow)) {
      std::vector<Permutation::Point> images(blocks);
      for (std::size_t b = 0; b < blocks; ++b)
        images[b] = static_cast<Permutation::Point>(block[g.element(s)[rep[b]]]);
      gens.emplace_back(std::move(images));
    }
    SylowFactor f;
    f.ell = p;
    f.group = generate(gens);
    if (f.group.order() != sylow.size())
      throw Error(ErrorKind::PropertyViolated, "Sylow block action is not faithful");
    f.a_contribution = min_index(f.group).a * Rational(static_cast<std::int64_t>(blocks),
                                                        static_cast<std::int64_t>(n));
    out.factors.push_back(std::move(f));
    block_of.push_back(std::move(block));
  }

  // The point -> block-tuple map must be a bijection onto the grid and carry
  // G onto the natural product of the factors.
  std::vector<std::size_t> coord(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t f = 0; f < out.factors.size(); ++f)
      coord[x] = coord[x] * out.factors[f].group.degree() + block_of[f][x];
  {
    std::vector<bool> hit(n, false);
    for (auto c : coord) {
      if (c >= n || hit[c]) throw Error(ErrorKind::PropertyViolated, "block map is not bijective");
      hit[c] = true;
    }
  }
  if (!out.factors.empty()) {
    PermGroup product = out.factors.front().group;
    for (std::size_t f = 1; f < out.factors.size(); ++f)
      product = natural_product(product, out.factors[f].group);
    for (const auto& s : g.generators()) {
      std::vector<Permutation::Point> images(n);
      for (std::size_t x = 0; x < n; ++x)
        images[coord[x]] = static_cast<Permutation::Point>(coord[s[static_cast<Permutation::Point>(x)]]);
      if (!product.index_of(Permutation(std::move(images))))
        throw Error(ErrorKind::PropertyViolated, "G is not the natural product of its factors");
    }
    if (product.order() != g.order())
      throw Error(ErrorKind::PropertyViolated, "natural product has the wrong order");
  }

  std::size_t attained = 0;
  for (const auto& f : out.factors) {
    if (f.a_contribution > out.a) {
      out.a = f.a_contribution;
      out.critical_prime = f.ell;
      attained = 1;
    } else if (f.a_contribution == out.a) {
      ++attained;
    }
  }
  if (attained != 1) throw Error(ErrorKind::PropertyViolated, "maximum attained more than once");
  if (out.a != direct.a)
    throw Error(ErrorKind::PropertyViolated, "Sylow formula disagrees with the index scan");
  return out;
}

std::uint64_t critical_prime_check(const PermGroup& g) {
  const unsigned minimal = min_index(g).ind;
  std::uint64_t order = 0;
  for (std::size_t e = 1; e < g.order(); ++e) {
    const auto& p = g.element(e);
    if (ind(p) != minimal) continue;
    auto o = p.order();
    if (order == 0) order = o;
    if (o != order)
      throw Error(ErrorKind::PropertyViolated, "minimal-index elements of different orders");
  }
  if (!is_prime(order))
    throw Error(ErrorKind::PropertyViolated, "minimal-index elements are not of prime order");
  return order;
}

CoprimeProductCheck coprime_product_check(const PermGroup& g1, const PermGroup& g2) {
  if (std::gcd(g1.order(), g2.order()) != 1)
    throw Error(ErrorKind::InvalidInput, "factor orders must be coprime");
  if (g1.degree() < 2 || g2.degree() < 2)
    throw Error(ErrorKind::InvalidInput, "factor degrees must exceed 1");
  CoprimeProductCheck c;
  c.left = min_index(g1).a / Rational(static_cast<std::int64_t>(g2.degree()));
  c.right = min_index(g2).a / Rational(static_cast<std::int64_t>(g1.degree()));
  c.formula = std::max(c.left, c.right);
  c.direct = min_index(natural_product(g1, g2)).a;
  return c;
}

}  // namespace nilgal
