#include "nilgal/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "nilgal/error.hpp"
#include "nilgal/nilpotent.hpp"

namespace nilgal {

Group dicyclic_table(std::size_t n) {
  const std::size_t m = 2 * n, order = 2 * m;
  std::vector<Elem> table(order * order);
  for (std::size_t u = 0; u < order; ++u)
    for (std::size_t v = 0; v < order; ++v) {
      std::size_t a = u % m, b = u / m, c = v % m, d = v / m;
      std::size_t i, j;
      if (b == 0) {
        i = (a + c) % m;
        j = d;
      } else if (d == 0) {
        i = (a + m - c) % m;
        j = 1;
      } else {
        i = (a + m - c + n) % m;
        j = 0;
      }
      table[u * order + v] = static_cast<Elem>(j * m + i);
    }
  return Group(order, std::move(table));
}

Group dihedral_table(std::size_t n) {
  const std::size_t order = 2 * n;
  std::vector<Elem> table(order * order);
  for (std::size_t u = 0; u < order; ++u)
    for (std::size_t v = 0; v < order; ++v) {
      std::size_t a = u % n, b = u / n, c = v % n, d = v / n;
      std::size_t i = b == 0 ? (a + c) % n : (a + n - c) % n;
      table[u * order + v] = static_cast<Elem>(((b + d) % 2) * n + i);
    }
  return Group(order, std::move(table));
}

namespace {

std::string cycles_of(const std::vector<Permutation>& gens) {
  std::string out;
  for (const auto& g : gens) {
    if (!out.empty()) out += ';';
    out += g.to_cycles();
  }
  return out;
}

Permutation from_map(std::size_t n, const std::function<std::size_t(std::size_t)>& f) {
  std::vector<Permutation::Point> images(n);
  for (std::size_t x = 0; x < n; ++x) images[x] = static_cast<Permutation::Point>(f(x));
  return Permutation(std::move(images));
}

Permutation cycle(std::size_t n) {
  return from_map(n, [n](std::size_t x) { return (x + 1) % n; });
}

PermGroup cyclic_perm(std::size_t n) {
  std::vector<Permutation> gens{cycle(n)};
  return generate(gens);
}

PermGroup power_of_cyclic(std::size_t p, unsigned k) {
  Group g = cyclic_group(p);
  for (unsigned i = 1; i < k; ++i) g = direct_product(g, cyclic_group(p));
  return regular_representation(g);
}

CatalogEntry make_entry(std::string name, std::string description, const PermGroup& g) {
  CatalogEntry e;
  e.name = std::move(name);
  e.description = std::move(description);
  e.generators = cycles_of(g.generators());
  e.degree = g.degree();
  e.order = g.order();
  e.nilpotent = !g.has_table() || is_nilpotent(g.table());
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](std::string name, std::string description, const PermGroup& g) -> CatalogEntry& {
    out.push_back(make_entry(std::move(name), std::move(description), g));
    return out.back();
  };
  auto from_text = [](const std::string& text) {
    auto gens = parse_generators(text);
    return generate(gens);
  };
  auto abelian_l_group = [&](std::string name, std::size_t p, unsigned rank, const PermGroup& g) {
    auto& e = add(std::move(name), "abelian, regular", g);
    e.d_optimal = ipow(p, rank) - 1;
  };

  for (std::size_t n : {2, 3, 4, 5, 8, 9}) {
    auto& e = add("C" + std::to_string(n), "cyclic, regular", cyclic_perm(n));
    e.a = Rational(1, static_cast<std::int64_t>(n - n / prime_divisors(n).front()));
    e.d_optimal = prime_divisors(n).front() - 1;
  }
  add("C6", "cyclic, regular", cyclic_perm(6));
  abelian_l_group("V4", 2, 2, power_of_cyclic(2, 2));
  abelian_l_group("C2^3", 2, 3, power_of_cyclic(2, 3));
  abelian_l_group("C2^4", 2, 4, power_of_cyclic(2, 4));
  abelian_l_group("C2^5", 2, 5, power_of_cyclic(2, 5));
  abelian_l_group("C2^6", 2, 6, power_of_cyclic(2, 6));
  abelian_l_group("C3^2", 3, 2, power_of_cyclic(3, 2));
  abelian_l_group("C3^3", 3, 3, power_of_cyclic(3, 3));
  abelian_l_group("C5^2", 5, 2, power_of_cyclic(5, 2));
  abelian_l_group("C7^2", 7, 2, power_of_cyclic(7, 2));
  abelian_l_group("C4xC4", 2, 2, regular_representation(direct_product(cyclic_group(4), cyclic_group(4))));
  abelian_l_group("C8xC2", 2, 2, regular_representation(direct_product(cyclic_group(8), cyclic_group(2))));
  abelian_l_group("C9xC3", 3, 2, regular_representation(direct_product(cyclic_group(9), cyclic_group(3))));
  {
    auto& e = add("C4xC2_S8", "C4 x C2, regular",
                  from_text("(1,2,3,4)(5,6,7,8);(1,5)(2,6)(3,7)(4,8)"));
    e.a = Rational(1, 4);
    e.b = 3;
    e.d_optimal = 3;
  }
  {
    auto& e = add("Q8", "quaternion group, regular",
                  from_text("(1,2,3,4)(5,6,7,8);(1,5,3,7)(2,8,4,6)"));
    e.a = Rational(1, 4);
    e.b = 1;
    e.d_optimal = 1;
  }
  {
    auto& e = add("D4_S8", "dihedral group of order 8, regular",
                  from_text("(1,2,3,4)(5,6,7,8);(1,5)(2,8)(3,7)(4,6)"));
    e.a = Rational(1, 4);
    e.b = 3;
    e.d_optimal = 5;
  }
  {
    auto& e = add("D4_S4", "dihedral group of order 8 on the square's vertices",
                  from_text("(1,2,3,4);(1,3)"));
    e.a = Rational(1);
    e.b = 1;
    e.d_optimal = 2;
  }
  for (std::size_t n : {4, 8}) {
    auto& e = add("Q" + std::to_string(4 * n), "generalised quaternion group, regular",
                  regular_representation(dicyclic_table(n)));
    e.a = Rational(1, static_cast<std::int64_t>(2 * n));
    e.b = 1;
    e.d_optimal = 1;
  }
  add("D8_S8", "dihedral group of order 16 on the octagon's vertices",
      from_text("(1,2,3,4,5,6,7,8);(2,8)(3,7)(4,6)"));
  add("D8_S16", "dihedral group of order 16, regular", regular_representation(dihedral_table(8)));
  {
    // (x, y) -> (x + c y + a, y + b) on F_3^2, point x + 3y.
    const std::size_t n = 9;
    std::vector<Permutation> gens{
        from_map(n, [](std::size_t p) { return (p % 3 + 1) % 3 + 3 * (p / 3); }),
        from_map(n, [](std::size_t p) { return p % 3 + 3 * ((p / 3 + 1) % 3); }),
        from_map(n, [](std::size_t p) { return (p % 3 + p / 3) % 3 + 3 * (p / 3); })};
    add("Heis27", "Heisenberg group mod 3 acting on the affine plane", generate(gens));
  }
  {
    std::vector<Permutation> q8 = parse_generators("(1,2,3,4)(5,6,7,8);(1,5,3,7)(2,8,4,6)");
    std::vector<Permutation> c3{cycle(3)};
    auto& e = add("Q8xC3", "natural product of Q8 (8 points) and C3 (3 points)",
                  natural_product(generate(q8), generate(c3)));
    e.a = Rational(1, 12);
    e.b = 1;
    e.d_optimal = 1;
  }
  {
    std::vector<Permutation> d4 = parse_generators("(1,2,3,4);(1,3)");
    std::vector<Permutation> c3{cycle(3)};
    add("D4xC3_S12", "natural product of D4 (4 points) and C3 (3 points)",
        natural_product(generate(d4), generate(c3)));
  }
  add("S3", "symmetric group on 3 points (not nilpotent)", from_text("(1,2,3);(1,2)"));
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

PermGroup group_by_name(const std::string& name) {
  if (!name.empty() && name.front() == '(') {
    auto gens = parse_generators(name);
    return generate(gens);
  }
  for (const auto& e : catalog())
    if (e.name == name) {
      auto gens = parse_generators(e.generators, e.degree);
      return generate(gens);
    }
  if (name.size() > 1 && name[0] == 'C' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const auto n = std::stoull(name.substr(1));
    if (n < 1 || n > kDefaultElementCap) throw Error(ErrorKind::InvalidInput, "cyclic order out of range");
    return cyclic_perm(n);
  }
  throw Error(ErrorKind::InvalidInput, "unknown group " + name);
}

}  // namespace nilgal
