#include <doctest.h>

#include "nilgal/catalog.hpp"
#include "nilgal/error.hpp"
#include "nilgal/malle.hpp"
#include "nilgal/nilpotent.hpp"
#include "oracles.hpp"

using namespace nilgal;

namespace {

unsigned scan_min_index(const PermGroup& g) {
  unsigned best = ~0u;
  for (const auto& p : g.elements())
    if (!p.is_identity()) best = std::min(best, oracle::index({p.images().begin(), p.images().end()}));
  return best;
}

}  // namespace

TEST_CASE("natural product") {
  auto c2 = group_by_name("C2"), c3 = group_by_name("C3");
  auto c6 = natural_product(c2, c3);
  CHECK(c6.degree() == 6);
  CHECK(c6.order() == 6);
  CHECK(is_transitive(c6));
  CHECK(is_abelian(c6.table()));
  auto q = natural_product(group_by_name("Q8"), c3);
  CHECK(q.degree() == 24);
  CHECK(q.order() == 24);
}

TEST_CASE("product index formula equals direct orbit count") {
  auto g1 = group_by_name("D4_S4"), g2 = group_by_name("C9");
  auto prod = natural_product(g1, g2);
  for (const auto& a : g1.elements())
    for (const auto& b : g2.elements()) {
      std::vector<Permutation::Point> img(prod.degree());
      for (std::size_t i = 0; i < g1.degree(); ++i)
        for (std::size_t j = 0; j < g2.degree(); ++j)
          img[i * g2.degree() + j] = static_cast<Permutation::Point>(a[i] * g2.degree() + b[j]);
      CHECK(product_index_formula(a, b) == oracle::index(img));
    }
}

TEST_CASE("nilpotency") {
  for (const auto& entry : catalog()) {
    CAPTURE(entry.name);
    CHECK(is_nilpotent(group_by_name(entry.name).table()) == entry.nilpotent);
  }
  CHECK_FALSE(is_nilpotent(group_by_name("S3").table()));
  CHECK_THROWS_AS(sylow_decompose(group_by_name("S3")), Error);
}

TEST_CASE("Sylow decomposition matches the index scan") {
  for (const auto& entry : catalog()) {
    if (!entry.nilpotent) continue;
    CAPTURE(entry.name);
    auto g = group_by_name(entry.name);
    auto dec = sylow_decompose(g);
    CHECK(dec.a == Rational(1, scan_min_index(g)));
    std::size_t deg = 1;
    for (const auto& f : dec.factors) {
      deg *= f.group.degree();
      CHECK(is_transitive(f.group));
      CHECK(prime_divisors(f.group.order()) == std::vector<std::uint64_t>{f.ell});
    }
    CHECK(deg == g.degree());
    CHECK(critical_prime_check(g) == dec.critical_prime);
  }
}

TEST_CASE("C6 regular") {
  auto dec = sylow_decompose(group_by_name("C6"));
  // the involution of C6 on 6 points has 3 orbits
  CHECK(dec.a == Rational(1, 3));
  CHECK(dec.critical_prime == 2);
  CHECK(critical_prime_check(group_by_name("C6")) == 2);
  CHECK(critical_prime_check(group_by_name("Q8")) == 2);
  CHECK(critical_prime_check(group_by_name("C4xC2_S8")) == 2);
}

TEST_CASE("coprime products: two sides never tie and the formula holds") {
  std::vector<std::string> twos{"C2", "C4", "V4", "D4_S4", "Q8", "D4_S8"};
  std::vector<std::string> odds{"C3", "C5", "C9", "C3^2"};
  for (const auto& a : twos)
    for (const auto& b : odds) {
      CAPTURE(a);
      CAPTURE(b);
      auto chk = coprime_product_check(group_by_name(a), group_by_name(b));
      CHECK(chk.distinct());
      CHECK(chk.agrees());
      auto dec = sylow_decompose(natural_product(group_by_name(a), group_by_name(b)));
      REQUIRE(dec.factors.size() == 2);
      CHECK(dec.factors[0].group.order() == group_by_name(a).order());
      CHECK(dec.factors[1].group.order() == group_by_name(b).order());
    }
}
