#include <doctest.h>

#include <random>

#include "nilgal/catalog.hpp"
#include "nilgal/error.hpp"
#include "nilgal/permcore.hpp"
#include "oracles.hpp"

using namespace nilgal;

namespace {

std::vector<oracle::Perm> raw(const std::vector<Permutation>& gens) {
  std::vector<oracle::Perm> out;
  for (const auto& g : gens) out.emplace_back(g.images().begin(), g.images().end());
  return out;
}

PermGroup gen(const std::string& text) {
  auto gens = parse_generators(text);
  return generate(gens);
}

}  // namespace

TEST_CASE("permutation parsing and arithmetic") {
  auto p = parse_permutation("(1,2,3)(4,5)");
  CHECK(p.degree() == 5);
  CHECK(p.order() == 6);
  CHECK(p.to_cycles() == "(1,2,3)(4,5)");
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.cycle_type() == std::vector<std::size_t>{3, 2});
  CHECK(parse_permutation("()", 3).is_identity());
  auto a = parse_permutation("(1,2)", 3), b = parse_permutation("(2,3)", 3);
  // left to right: 1 -> 2 -> 3
  CHECK((a * b)[0] == 2);
  CHECK_THROWS_AS(parse_permutation("(1,1)"), Error);
  CHECK_THROWS_AS(Permutation(std::vector<Permutation::Point>{0, 0}), Error);
}

TEST_CASE("generate") {
  CHECK(gen("(1,2,3,4)").order() == 4);
  auto d4 = gen("(1,2,3,4);(1,3)");
  CHECK(d4.order() == oracle::closure(raw(d4.generators())).size());
  CHECK(d4.order() == 8);
  CHECK(generate(std::vector<Permutation>{Permutation(5)}).order() == 1);
  CHECK(d4.element(0).is_identity());
  try {
    auto gens = parse_generators("(1,2,3,4,5,6,7);(1,2)");
    generate(gens, 100);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
  try {
    std::vector<Permutation> gens{parse_permutation("(1,2)"), parse_permutation("(1,2,3)")};
    generate(gens);
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeMismatch);
  }
}

TEST_CASE("conjugacy classes agree with brute force across the catalog") {
  for (const auto& entry : catalog()) {
    CAPTURE(entry.name);
    auto g = group_by_name(entry.name);
    CHECK(g.order() == entry.order);
    CHECK(g.degree() == entry.degree);
    CHECK(is_transitive(g));
    auto ref = oracle::closure(raw(g.generators()));
    REQUIRE(ref.size() == g.order());
    auto classes = conjugacy_classes(g);
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    for (const auto& c : classes) {
      sizes.push_back(c.members.size());
      total += c.members.size();
      CHECK(g.order() % c.members.size() == 0);
      for (Elem m : c.members) {
        CHECK(element_order(g.element(m)) == c.element_order);
        CHECK(g.element(m).cycle_type() == c.representative.cycle_type());
      }
    }
    CHECK(total == g.order());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == oracle::class_sizes(ref));
    const auto ex = exponent(g);
    CHECK(g.order() % ex == 0);
    for (const auto& p : g.elements()) CHECK(ex % oracle::order({p.images().begin(), p.images().end()}) == 0);
  }
}

TEST_CASE("spec examples for classes, center, quotient, ranks") {
  auto q8 = group_by_name("Q8");
  auto classes = conjugacy_classes(q8);
  std::vector<std::size_t> sizes;
  for (const auto& c : classes) sizes.push_back(c.members.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2, 2});
  CHECK(conjugacy_classes(group_by_name("D4_S4")).size() == 5);
  CHECK(conjugacy_classes(group_by_name("C4xC2_S8")).size() == 8);

  CHECK(center(q8).size() == 2);
  CHECK(center(group_by_name("D4_S8")).size() == 2);
  CHECK(center(group_by_name("C4xC2_S8")).size() == 8);

  auto v = quotient(q8, center(q8));
  CHECK(v.order() == 4);
  for (const auto& p : v.elements()) CHECK(p.order() <= 2);
  CHECK(quotient(q8, all_elements(q8.table())).order() == 1);
  auto same = quotient(q8, ElementSet{0});
  CHECK(same.order() == 8);
  CHECK(order_profile(same.table()) == order_profile(q8.table()));

  auto c4c2 = group_by_name("C4xC2_S8");
  auto a = *c4c2.index_of(parse_permutation("(1,2,3,4)(5,6,7,8)"));
  Elem a2 = c4c2.table().mul(a, a);
  CHECK(quotient(c4c2, ElementSet{0, a2}).order() == 4);
  CHECK_THROWS_AS(quotient(group_by_name("S3"), ElementSet{0, 1}), Error);

  CHECK(abelianization_rank(q8, 2) == 2);
  CHECK(abelianization_rank(c4c2, 2) == 2);
  CHECK(exponent(group_by_name("D4_S4")) == 4);
  CHECK_THROWS_AS(abelianization_rank(q8, 4), Error);
}

TEST_CASE("random words: associativity, inverses, table consistency") {
  std::mt19937_64 rng(7);
  for (const char* name : {"Q16", "Heis27", "D4xC3_S12", "C2^4"}) {
    auto g = group_by_name(name);
    const auto& t = g.table();
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
    for (int i = 0; i < 200; ++i) {
      Elem a = pick(rng), b = pick(rng), c = pick(rng);
      CHECK(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
      CHECK(g.element(t.mul(a, b)) == g.element(a) * g.element(b));
      CHECK(t.mul(a, t.inv(a)) == 0);
    }
  }
}

TEST_CASE("table constructions") {
  auto q = dicyclic_table(2);
  CHECK(q.is_associative());
  CHECK(order_profile(q) == std::map<std::uint64_t, std::size_t>{{1, 1}, {2, 1}, {4, 6}});
  auto d = dihedral_table(4);
  CHECK(d.is_associative());
  CHECK(order_profile(d) == std::map<std::uint64_t, std::size_t>{{1, 1}, {2, 5}, {4, 2}});
  auto g = direct_product(cyclic_group(4), cyclic_group(2));
  CHECK(is_abelian(g));
  CHECK(exponent(g) == 4);
  auto subs = intermediate_subgroups(g, ElementSet{0}, all_elements(g), 2);
  CHECK(subs.size() == 3);
}
