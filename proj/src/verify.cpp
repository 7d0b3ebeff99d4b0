#include "nilgal/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "nilgal/catalog.hpp"
#include "nilgal/counting.hpp"
#include "nilgal/error.hpp"
#include "nilgal/extension.hpp"
#include "nilgal/nilpotent.hpp"

namespace nilgal {

bool VerifyResult::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const VerifyCase& c) { return c.passed; });
}

std::size_t VerifyResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const VerifyCase& c) { return !c.passed; }));
}

nlohmann::json VerifyResult::to_json() const {
  nlohmann::json j;
  j["target"] = target;
  j["description"] = description;
  j["passed"] = passed();
  j["case_count"] = cases.size();
  j["failures"] = failures();
  j["cases"] = nlohmann::json::array();
  for (const auto& c : cases) j["cases"].push_back({{"subject", c.subject}, {"passed", c.passed}, {"detail", c.detail}});
  return j;
}

const std::vector<VerifyTarget>& verify_targets() {
  static const std::vector<VerifyTarget> targets{
      {"fiber-semidirect", "G x_H G is A x| G for an abelian kernel A"},
      {"pullback", "G x_H G = G x_H (A x| H), and its quotient by the diagonal of A is A x| H"},
      {"double-quotients", "central C_l kernel: l quotients of C_l x G are G, one is C_l x H"},
      {"solution-classes", "trivial class has (l^r-1)/(l-1)+1 members, the others l^r"},
      {"rank-bound", "C_l fields unramified outside S are at most (l^s-1)/(l-1)"},
      {"exact-ramification", "exactly ramified C_l fields are at most l^{c+|T|}(l-1)^{|S|}"},
      {"coprime-product", "a(G1 x G2) = max(a(G1)/n2, a(G2)/n1) for coprime orders"},
      {"sylow-product", "a(G) is the largest n_l a(G_l)/n over the Sylow factors"},
      {"critical-prime", "all minimal-index elements share one prime order"},
      {"fiber-bound", "biquadratic tuple fibers respect the layered bound; tame valuations match ind"},
      {"d-bounds", "#minimal-index elements <= d(G) <= |G|-1"},
      {"abelian-d", "abelian l-group of rank s: d(G) = l^s-1 and d(k,G) = b(k,G)"},
      {"central-min-index", "central minimal-index elements give d(k,G) = b(k,G), otherwise d exceeds the class count"},
  };
  return targets;
}

namespace {

struct Subject {
  std::string name;
  PermGroup group;
  const CatalogEntry* entry = nullptr;
};

std::vector<Subject> subjects(const VerifyOptions& o, bool nilpotent_only) {
  std::vector<Subject> out;
  if (o.group) {
    Subject s{*o.group, group_by_name(*o.group), nullptr};
    for (const auto& e : catalog())
      if (e.name == *o.group) s.entry = &e;
    if (nilpotent_only && !is_nilpotent(s.group.table()))
      throw Error(ErrorKind::NotNilpotent, *o.group + " is not nilpotent");
    out.push_back(std::move(s));
    return out;
  }
  for (const auto& e : catalog()) {
    if (e.order > o.max_order || (nilpotent_only && !e.nilpotent)) continue;
    out.push_back({e.name, group_by_name(e.name), &e});
  }
  return out;
}

/// Subgroup of order p inside the center, from an element of order p.
std::optional<ElementSet> central_subgroup_of_order(const Group& g, std::uint64_t p) {
  for (Elem z : center(g))
    if (g.element_order(z) == p) {
      std::vector<Elem> gens{z};
      return closure(g, gens);
    }
  return std::nullopt;
}

/// Abelian normal subgroups used as kernels: a central subgroup of prime
/// order, the center when proper, the commutator subgroup when abelian.
std::vector<ElementSet> abelian_kernels(const Group& g) {
  std::vector<ElementSet> out;
  auto add = [&](const ElementSet& a) {
    if (a.size() <= 1 || a.size() >= g.order()) return;
    if (!is_abelian(subgroup_table(g, a))) return;
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  };
  const ElementSet z = center(g);
  if (z.size() > 1)
    if (auto a = central_subgroup_of_order(g, prime_divisors(z.size()).front())) add(*a);
  add(z);
  add(commutator_subgroup(g));
  return out;
}

std::string kernel_label(const std::string& name, const ElementSet& a, bool central) {
  return name + " / " + (central ? "central " : "") + "A of order " + std::to_string(a.size());
}

void fiber_semidirect(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, false)) {
    const Group& g = s.group.table();
    for (const auto& a : abelian_kernels(g)) {
      const auto e = make_extension(g, a);
      const auto rep = check_fiber_semidirect(e);
      r.cases.push_back({kernel_label(s.name, a, e.central), rep.passed(),
                         {{"kernel_order", a.size()},
                          {"fiber_order", rep.fiber_order},
                          {"semidirect_order", rep.semidirect_order},
                          {"map_is_isomorphism", rep.map_is_isomorphism}}});
    }
  }
}

void pullback(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, false)) {
    const Group& g = s.group.table();
    for (const auto& a : abelian_kernels(g)) {
      const auto e = make_extension(g, a);
      const auto rep = check_pullback(e);
      r.cases.push_back({kernel_label(s.name, a, e.central), rep.passed(),
                         {{"kernel_order", a.size()},
                          {"central", e.central},
                          {"fiber_order", rep.fiber_order},
                          {"pullback_isomorphic", rep.pullback_isomorphic},
                          {"quotient_isomorphic", rep.quotient_isomorphic}}});
    }
  }
}

void double_quotients(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, false)) {
    const Group& g = s.group.table();
    const auto z = center(g);
    for (auto p : prime_divisors(z.size())) {
      const auto a = central_subgroup_of_order(g, p);
      const auto rep = check_double_quotients(make_extension(g, *a));
      r.cases.push_back({s.name + " / central C" + std::to_string(p), rep.passed(),
                         {{"ell", rep.ell},
                          {"subgroups_of_order_ell", rep.subgroup_count},
                          {"all_normal", rep.all_normal},
                          {"quotients_like_g", rep.quotients_like_g},
                          {"quotients_like_split", rep.quotients_like_split}}});
    }
  }
}

void solution_classes(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, false))
    for (auto ell : prime_divisors(s.group.order())) {
      const auto c = solution_class_counts(s.group.table(), ell);
      r.cases.push_back({s.name + " / l=" + std::to_string(ell), c.agrees(),
                         {{"ell", ell},
                          {"rank", c.rank},
                          {"trivial_class_size", c.trivial_class_size},
                          {"other_class_size", c.other_class_size},
                          {"other_multiplicity", c.other_multiplicity},
                          {"index_l_subgroups", c.subgroup_count}}});
    }
}

struct Draw {
  std::uint64_t ell = 2;
  std::vector<std::uint64_t> s, t;
};

std::vector<Draw> draws(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<std::uint64_t> pool;
  for (auto p : primes_up_to(199)) pool.push_back(p);
  std::vector<Draw> out;
  const std::uint64_t ells[] = {2, 3, 5};
  for (std::size_t i = 0; i < o.trials; ++i) {
    Draw d;
    d.ell = ells[rng() % 3];
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t ns = rng() % 7, nt = rng() % 7;
    d.s.assign(pool.begin(), pool.begin() + ns);
    d.t.assign(pool.begin() + ns, pool.begin() + ns + nt);
    std::sort(d.s.begin(), d.s.end());
    std::sort(d.t.begin(), d.t.end());
    out.push_back(std::move(d));
  }
  return out;
}

std::string draw_label(const Draw& d) {
  auto list = [](const std::vector<std::uint64_t>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
  };
  return "l=" + std::to_string(d.ell) + " S=" + list(d.s) + " T=" + list(d.t);
}

void rank_bound_target(const VerifyOptions& o, VerifyResult& r) {
  const auto q = BaseFieldData::rationals();
  for (const auto& d : draws(o)) {
    std::vector<std::uint64_t> all = d.s;
    all.insert(all.end(), d.t.begin(), d.t.end());
    const auto count = count_unramified_outside(d.ell, all);
    const auto bound = rank_bound(q, d.ell, all.size());
    r.cases.push_back({draw_label(d), count <= bound,
                       {{"primes", all.size()},
                        {"character_rank", character_rank(d.ell, all)},
                        {"s", rank_bound_s(q, d.ell, all.size())},
                        {"count", count},
                        {"bound", bound}}});
  }
}

void exact_ramification_target(const VerifyOptions& o, VerifyResult& r) {
  const auto q = BaseFieldData::rationals();
  for (const auto& d : draws(o)) {
    const auto exact = count_exactly_ramified(d.ell, d.s, d.t);
    const auto local = count_exactly_ramified_local(d.ell, d.s, d.t);
    const auto s0 = static_cast<unsigned>(std::count(d.s.begin(), d.s.end(), d.ell));
    const auto c = c_constant(q, d.ell, s0);
    const auto tight = exact_ramification_bound(d.ell, c.tight, d.s.size(), d.t.size());
    const auto loose = exact_ramification_bound(d.ell, c.loose, d.s.size(), d.t.size());
    // fields unramified outside S u T, split by the part of S where they ramify
    std::uint64_t split = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d.s.size()); ++mask) {
      std::vector<std::uint64_t> sub;
      for (std::size_t i = 0; i < d.s.size(); ++i)
        if (mask >> i & 1) sub.push_back(d.s[i]);
      split += count_exactly_ramified(d.ell, sub, d.t);
    }
    std::vector<std::uint64_t> all = d.s;
    all.insert(all.end(), d.t.begin(), d.t.end());
    const auto whole = count_unramified_outside(d.ell, all);
    const bool ok = exact == local && exact <= tight && exact <= loose && split == whole;
    r.cases.push_back({draw_label(d), ok,
                       {{"count", exact},
                        {"count_from_local_characters", local},
                        {"c_tight", c.tight},
                        {"c_loose", c.loose},
                        {"bound_tight", tight},
                        {"bound_loose", loose},
                        {"sum_over_subsets", split},
                        {"unramified_outside_union", whole}}});
  }
}

void coprime_product(const VerifyOptions& o, VerifyResult& r) {
  std::vector<Subject> left = subjects(o, true);
  VerifyOptions all = o;
  all.group.reset();
  const std::vector<Subject> right = subjects(all, true);
  for (const auto& a : left)
    for (const auto& b : right) {
      if (std::gcd(a.group.order(), b.group.order()) != 1 || a.group.order() == 1 || b.group.order() == 1) continue;
      if (!o.group && a.name >= b.name) continue;
      if (a.group.order() * b.group.order() > 256 || a.group.degree() * b.group.degree() > 96) continue;
      const auto c = coprime_product_check(a.group, b.group);
      r.cases.push_back({a.name + " x " + b.name, c.agrees(),
                         {{"a_left", to_string(c.left)},
                          {"a_right", to_string(c.right)},
                          {"formula", to_string(c.formula)},
                          {"direct", to_string(c.direct)}}});
    }
}

void sylow_product(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, true)) {
    const auto sd = sylow_decompose(s.group);
    const auto scan = min_index(s.group);
    std::size_t at_max = 0;
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : sd.factors) {
      at_max += f.a_contribution == sd.a;
      factors.push_back({{"ell", f.ell}, {"order", f.group.order()}, {"contribution", to_string(f.a_contribution)}});
    }
    r.cases.push_back({s.name, sd.a == scan.a && at_max == 1,
                       {{"a_formula", to_string(sd.a)},
                        {"a_scan", to_string(scan.a)},
                        {"critical_prime", sd.critical_prime},
                        {"factors", factors}}});
  }
}

void critical_prime(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, true)) {
    const auto sd = sylow_decompose(s.group);
    try {
      const auto ell = critical_prime_check(s.group);
      r.cases.push_back({s.name, ell == sd.critical_prime,
                         {{"order_of_min_index_elements", ell}, {"critical_prime", sd.critical_prime}}});
    } catch (const Error& e) {
      r.cases.push_back({s.name, false, {{"error", e.what()}}});
    }
  }
}

void fiber_bound(const VerifyOptions& o, VerifyResult& r) {
  const auto rep = v4_fiber_check(o.max_x);
  r.cases.push_back({"C2xC2 over Q, x=" + std::to_string(o.max_x), rep.passed(),
                     {{"fields", rep.fields},
                      {"fibers", rep.fibers},
                      {"largest_fiber", rep.largest_fiber},
                      {"violations_tight", rep.violations_tight},
                      {"violations_loose", rep.violations_loose},
                      {"valuation_checks", rep.valuation_checks},
                      {"valuation_failures", rep.valuation_failures}}});
}

void d_bounds(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, true)) {
    const std::size_t lower = min_index_element_count(s.group), upper = s.group.order() - 1;
    const auto opt = optimize_d(s.group, o.field, o.exhaustive_cap);
    bool ok = lower <= opt.d.d_group && opt.d.d_group <= upper;
    nlohmann::json detail{{"min_index_elements", lower},
                          {"d_optimal", opt.d.d_group},
                          {"order_minus_one", upper},
                          {"heuristic_only", opt.heuristic_only}};
    if (s.entry && s.entry->d_optimal && !opt.heuristic_only) {
      ok = ok && *s.entry->d_optimal == opt.d.d_group;
      detail["d_expected"] = *s.entry->d_optimal;
    }
    // every refinement, where there are few enough of them
    if (s.group.order() <= 32) {
      try {
        std::uint64_t lo = ~std::uint64_t{0}, hi = 0;
        const auto all = enumerate_refinements(s.group, o.exhaustive_cap);
        for (const auto& ref : all) {
          const auto d = d_constant(s.group, ref, o.field).d_group;
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
        ok = ok && lower <= lo && hi <= upper && lo == opt.d.d_group;
        detail["refinements"] = all.size();
        detail["d_min_enumerated"] = lo;
        detail["d_max_enumerated"] = hi;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
        detail["refinements"] = "cap exceeded";
      }
    }
    r.cases.push_back({s.name, ok, detail});
  }
}

void abelian_d(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, true)) {
    const Group& g = s.group.table();
    const auto primes = prime_divisors(s.group.order());
    if (!is_abelian(g) || primes.size() != 1) continue;
    const std::uint64_t ell = primes.front();
    std::uint64_t omega1 = 0;
    for (Elem x = 0; x < g.order(); ++x) omega1 += g.element_order(x) <= ell;
    unsigned rank = 0;
    for (std::uint64_t q = omega1; q > 1; q /= ell) ++rank;
    const auto opt = optimize_d(s.group, o.field, o.exhaustive_cap);
    const auto b = b_constant(s.group, o.field);
    const std::uint64_t expect = ipow(ell, rank) - 1;
    r.cases.push_back({s.name, opt.d.d_group == expect && opt.d.d_field == Rational(b),
                       {{"ell", ell},
                        {"rank", rank},
                        {"d_G", opt.d.d_group},
                        {"expected", expect},
                        {"d_kG", to_string(opt.d.d_field)},
                        {"b_kG", b}}});
  }
}

void central_min_index(const VerifyOptions& o, VerifyResult& r) {
  for (const auto& s : subjects(o, true)) {
    nlohmann::json detail;
    bool ok = false;
    try {
      const bool central = min_index_elements_central(s.group);
      const auto opt = optimize_d(s.group, o.field, o.exhaustive_cap);
      const auto b = b_constant(s.group, o.field);
      const auto m = min_index(s.group);
      std::size_t classes = 0;
      for (const auto& c : conjugacy_classes(s.group))
        if (c.element_order > 1 && ind(c.representative) == m.ind) ++classes;
      detail = {{"central", central},
                {"min_index_elements", min_index_element_count(s.group)},
                {"min_index_classes", classes},
                {"d_G", opt.d.d_group},
                {"d_kG", to_string(opt.d.d_field)},
                {"b_kG", b}};
      if (central)
        ok = opt.d.d_field == Rational(b) && opt.d.d_group == min_index_element_count(s.group);
      else
        ok = opt.d.d_group > classes;  // b over k(zeta_l) is the class count
    } catch (const Error& e) {
      detail = {{"error", e.what()}};
    }
    r.cases.push_back({s.name, ok, detail});
  }
}

}  // namespace

VerifyResult run_verify(const std::string& target, const VerifyOptions& options) {
  static const std::map<std::string, std::function<void(const VerifyOptions&, VerifyResult&)>> run{
      {"fiber-semidirect", fiber_semidirect},
      {"pullback", pullback},
      {"double-quotients", double_quotients},
      {"solution-classes", solution_classes},
      {"rank-bound", rank_bound_target},
      {"exact-ramification", exact_ramification_target},
      {"coprime-product", coprime_product},
      {"sylow-product", sylow_product},
      {"critical-prime", critical_prime},
      {"fiber-bound", fiber_bound},
      {"d-bounds", d_bounds},
      {"abelian-d", abelian_d},
      {"central-min-index", central_min_index},
  };
  const auto it = run.find(target);
  if (it == run.end()) throw Error(ErrorKind::UnknownTheorem, "unknown verify target " + target);
  VerifyResult r;
  r.target = target;
  for (const auto& t : verify_targets())
    if (t.name == target) r.description = t.description;
  it->second(options, r);
  return r;
}

}  // namespace nilgal
