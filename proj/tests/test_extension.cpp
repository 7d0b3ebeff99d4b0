#include <doctest.h>

#include "nilgal/catalog.hpp"
#include "nilgal/error.hpp"
#include "nilgal/extension.hpp"
#include "nilgal/nilpotent.hpp"

using namespace nilgal;

namespace {

const Group& table_of(const char* name) {
  static std::map<std::string, PermGroup> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, group_by_name(name)).first;
  return it->second.table();
}

ExtensionData by_center(const char* name) {
  const Group& g = table_of(name);
  return make_extension(g, center(g));
}

Group s3() { return table_of("S3"); }

ExtensionData s3_over_c2() {
  Group g = s3();
  // the elements of order 1 and 3
  ElementSet a;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.element_order(x) != 2) a.push_back(x);
  return make_extension(g, a);
}

/// C_{l^2} over C_l with kernel generated by l.
ExtensionData cyclic_over(std::size_t ell) {
  Group g = cyclic_group(ell * ell);
  ElementSet a;
  for (std::size_t i = 0; i < ell; ++i) a.push_back(static_cast<Elem>(i * ell));
  return make_extension(g, a);
}

}  // namespace

TEST_CASE("fiber products") {
  const Group& q8 = table_of("Q8");
  // kappa = id
  std::vector<Elem> id(q8.order());
  for (Elem x = 0; x < id.size(); ++x) id[x] = x;
  auto e = make_extension(q8, q8, id);
  auto diag = fiber_product(e, e);
  CHECK(diag.group.order() == 8);
  CHECK(is_isomorphic(diag.group, q8));

  auto q = by_center("Q8");
  CHECK(q.h.order() == 4);
  CHECK(fiber_product(q, q).group.order() == 16);
  CHECK(fiber_product(q, q).group.is_associative());

  auto s = s3_over_c2();
  CHECK(fiber_product(s, s).group.order() == 18);

  // |G1||G2|/|H| across the catalog
  for (const auto& entry : catalog()) {
    if (entry.order > 32) continue;
    auto g = group_by_name(entry.name);
    auto ex = make_extension(g.table(), commutator_subgroup(g.table()));
    CAPTURE(entry.name);
    CHECK(fiber_product(ex, ex).group.order() == g.order() * g.order() / ex.h.order());
  }
  CHECK_THROWS_AS(fiber_product(q, s), Error);
}

TEST_CASE("semidirect products") {
  Group c3 = cyclic_group(3), c2 = cyclic_group(2);
  Action trivial{{0, 1, 2}, {0, 1, 2}};
  CHECK(semidirect(c3, c2, trivial) == direct_product(c3, c2));
  Action inversion{{0, 1, 2}, {0, 2, 1}};
  Group sd = semidirect(c3, c2, inversion);
  CHECK(sd.is_associative());
  CHECK(order_profile(sd) == std::map<std::uint64_t, std::size_t>{{1, 1}, {2, 3}, {3, 2}});
  CHECK_FALSE(is_abelian(sd));
  CHECK(is_isomorphic(sd, s3()));
  Action broken{{0, 1, 2}, {0, 1, 1}};
  CHECK_THROWS_AS(semidirect(c3, c2, broken), Error);
  Action not_hom{{0, 2, 1}, {0, 2, 1}};
  CHECK_THROWS_AS(semidirect(c3, c2, not_hom), Error);
  // central kernel: the conjugation action is trivial
  auto e = by_center("D4_S8");
  Group a = subgroup_table(e.g, e.kernel);
  Action conj(e.g.order(), std::vector<Elem>{0, 1});
  CHECK(semidirect(a, e.g, conj) == direct_product(a, e.g));
}

TEST_CASE("isomorphism test") {
  const Group& q8 = table_of("Q8");
  const Group& d4 = table_of("D4_S8");
  CHECK(is_isomorphic(q8, q8));
  CHECK_FALSE(is_isomorphic(q8, d4));
  CHECK(is_isomorphic(d4, table_of("D4_S4")));
  CHECK_FALSE(is_isomorphic(table_of("C4xC2_S8"), table_of("C2^3")));
  CHECK(is_isomorphic(table_of("C4xC2_S8"), direct_product(cyclic_group(4), cyclic_group(2))));
  CHECK(is_isomorphic(table_of("D8_S8"), table_of("D8_S16")));
  CHECK(is_isomorphic(table_of("Q16"), dicyclic_table(4)));
  CHECK(is_isomorphic(table_of("Q8xC3"), direct_product(dicyclic_table(2), cyclic_group(3))));
  CHECK(is_isomorphic(table_of("C6"), direct_product(cyclic_group(2), cyclic_group(3))));
  auto phi = find_isomorphism(d4, table_of("D4_S4"));
  REQUIRE(phi);
  CHECK(is_isomorphism(d4, table_of("D4_S4"), *phi));
  CHECK_THROWS_AS(find_isomorphism(q8, q8, 4), Error);

  std::vector<std::string> names;
  for (const auto& entry : catalog())
    if (entry.order <= 32) names.push_back(entry.name);
  for (const auto& a : names)
    for (const auto& b : names) {
      const Group& ga = table_of(a.c_str());
      const Group& gb = table_of(b.c_str());
      if (ga.order() != gb.order()) continue;
      bool ab = is_isomorphic(ga, gb), ba = is_isomorphic(gb, ga);
      CHECK(ab == ba);
      if (ab) CHECK(fingerprint(ga) == fingerprint(gb));
    }
}

TEST_CASE("fiber product and semidirect product identity") {
  for (auto e : {by_center("Q8"), by_center("D4_S8"), s3_over_c2(), by_center("Heis27"), cyclic_over(3)}) {
    auto r = check_fiber_semidirect(e);
    CHECK(r.passed());
  }
}

TEST_CASE("pullback identities") {
  auto q = by_center("Q8");
  auto r = check_pullback(q);
  CHECK(r.passed());
  // A x| H is C2 x V4 here
  Group ah = semidirect(subgroup_table(q.g, q.kernel), q.h, kernel_action(q));
  CHECK(is_isomorphic(ah, direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2)))));
  CHECK(check_pullback(by_center("D4_S8")).passed());
  CHECK(check_pullback(s3_over_c2()).passed());
  // a nonabelian kernel has no well-defined action
  CHECK_THROWS_AS(kernel_action(make_extension(table_of("Q8"), all_elements(table_of("Q8")))), Error);
}

TEST_CASE("double quotients") {
  auto q = check_double_quotients(by_center("Q8"));
  CHECK(q.subgroup_count == 3);
  CHECK(q.quotients_like_g == 2);
  CHECK(q.quotients_like_split == 1);
  CHECK(q.passed());
  CHECK(check_double_quotients(by_center("D4_S4")).passed());
  auto c9 = check_double_quotients(cyclic_over(3));
  CHECK(c9.subgroup_count == 4);
  CHECK(c9.passed());
  CHECK_THROWS_AS(check_double_quotients(s3_over_c2()), Error);
}

TEST_CASE("solution class counts") {
  auto q = solution_class_counts(table_of("Q8"), 2);
  CHECK(q.rank == 2);
  CHECK(q.trivial_class_size == 4);
  CHECK(q.other_class_size == 4);
  CHECK(q.other_multiplicity == 1);
  CHECK(q.agrees());
  auto c2 = solution_class_counts(cyclic_group(2), 2);
  CHECK(c2.trivial_class_size == 2);
  CHECK(c2.other_class_size == 2);
  auto c33 = solution_class_counts(table_of("C3^2"), 3);
  CHECK(c33.trivial_class_size == 5);
  CHECK(c33.subgroup_count == 4);
  CHECK(c33.other_multiplicity == 2);
  CHECK(solution_class_counts(table_of("C9"), 2).subgroup_count == 0);
}
