#include <doctest.h>

#include "nilgal/catalog.hpp"
#include "nilgal/error.hpp"
#include "nilgal/malle.hpp"
#include "oracles.hpp"

using namespace nilgal;

namespace {

oracle::Perm raw(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

Elem find(const PermGroup& g, const char* cycles) {
  return *g.index_of(parse_permutation(cycles, g.degree()));
}

}  // namespace

TEST_CASE("ind matches orbit counting") {
  for (const auto& entry : catalog()) {
    auto g = group_by_name(entry.name);
    unsigned best = ~0u;
    for (const auto& p : g.elements()) {
      CHECK(ind(p) == oracle::index(raw(p)));
      if (!p.is_identity()) best = std::min(best, oracle::index(raw(p)));
    }
    CAPTURE(entry.name);
    auto mi = min_index(g);
    CHECK(mi.ind == best);
    CHECK(mi.a == Rational(1, best));
    if (entry.a) CHECK(mi.a == *entry.a);
    // constant on classes
    for (const auto& c : conjugacy_classes(g))
      for (Elem m : c.members) CHECK(ind(g.element(m)) == ind(c.representative));
  }
}

TEST_CASE("spec examples for ind and a") {
  auto g = group_by_name("C4xC2_S8");
  CHECK(ind(Permutation(8)) == 0);
  CHECK(ind(g.element(find(g, "(1,2,3,4)(5,6,7,8)"))) == 6);
  CHECK(ind(g.element(find(g, "(1,5)(2,6)(3,7)(4,8)"))) == 4);
  CHECK(min_index(group_by_name("Q8")).ind == 4);
  CHECK(min_index(group_by_name("D4_S4")).a == Rational(1));
  for (unsigned l : {2u, 3u, 5u, 7u, 11u}) CHECK(min_index(group_by_name("C" + std::to_string(l))).ind == l - 1);
  auto gens = parse_generators("()", 3);
  CHECK_THROWS_AS(min_index(generate(gens)), Error);
  auto nt = parse_generators("(1,2)", 4);
  CHECK_THROWS_AS(min_index(generate(nt)), Error);
}

TEST_CASE("k-classes and b over Q") {
  auto q = BaseFieldData::rationals();
  CHECK(k_classes(group_by_name("C3"), q).size() == 2);
  auto c4c2 = group_by_name("C4xC2_S8");
  auto kc = k_classes(c4c2, q);
  // identity, three involution classes, and the order-4 classes merged in pairs
  CHECK(kc.size() == 6);
  CHECK(b_constant(c4c2, q) == 3);
  CHECK(b_constant(group_by_name("Q8"), q) == 1);
  CHECK(b_constant(group_by_name("D4_S8"), q) == 3);
  for (const auto& entry : catalog())
    if (entry.b) {
      CAPTURE(entry.name);
      CHECK(b_constant(group_by_name(entry.name), q) == *entry.b);
    }
}

TEST_CASE("b(k, C_l) = (l - 1) / n_l") {
  for (std::uint64_t l : {3u, 5u, 7u, 13u}) {
    auto g = group_by_name("C" + std::to_string(l));
    // every subgroup of (Z/l)^x is cyclic, generated by a power of a primitive root
    std::uint64_t root = 2;
    while (true) {
      std::uint64_t x = 1, ord = 0;
      do {
        x = x * root % l;
        ++ord;
      } while (x != 1);
      if (ord == l - 1) break;
      ++root;
    }
    for (std::uint64_t n = 1; n <= l - 1; ++n) {
      if ((l - 1) % n) continue;
      std::uint64_t gen = 1;
      for (std::uint64_t i = 0; i < (l - 1) / n; ++i) gen = gen * root % l;
      BaseFieldData k;
      k.add_cyclotomic_generators(l, {gen});
      CAPTURE(l);
      CAPTURE(n);
      CHECK(k.n_ell(l) == n);
      CHECK(b_constant(g, k) == (l - 1) / n);
    }
  }
}

TEST_CASE("trivial cyclotomic action gives conjugacy classes; coarsening never raises b") {
  for (const char* name : {"Q8", "D4_S8", "C4xC2_S8", "C9", "Heis27", "C3^2"}) {
    auto g = group_by_name(name);
    const auto e = exponent(g);
    BaseFieldData trivial;
    trivial.add_cyclotomic_generators(e, {1});
    CHECK(k_classes(g, trivial).size() == conjugacy_classes(g).size());
    auto fine = b_constant(g, trivial);
    auto coarse = b_constant(g, BaseFieldData::rationals());
    CHECK(coarse <= fine);
    std::size_t min_elems = 0;
    auto mi = min_index(g).ind;
    for (const auto& p : g.elements())
      if (!p.is_identity() && ind(p) == mi) ++min_elems;
    CHECK(fine <= min_elems);
  }
}

TEST_CASE("base field data JSON") {
  auto j = nlohmann::json::parse(R"({"degree":2,"real_places":0,"class_rank":{"3":1},"cyclo_generators":{"12":[5]}})");
  auto k = BaseFieldData::from_json(j);
  CHECK(k.degree() == 2);
  CHECK(k.real_places() == 0);
  CHECK(k.class_rank(3) == 1);
  CHECK(k.class_rank(5) == 0);
  CHECK(k.cyclo_subgroup(12) == std::vector<std::uint64_t>{1, 5});
  CHECK(k.n_ell(3) == 2);
  CHECK(k.n_ell(2) == 1);
  CHECK(BaseFieldData::from_json(k.to_json()).to_json() == k.to_json());
  CHECK_THROWS_AS(k.cyclo_subgroup(5), Error);
  CHECK_THROWS_AS(BaseFieldData().add_cyclotomic_generators(12, {2}), Error);
  CHECK(BaseFieldData::load("Q").full_cyclotomic_action());
}
