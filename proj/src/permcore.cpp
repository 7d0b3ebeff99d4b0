#include "nilgal/permcore.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "nilgal/arith.hpp"
#include "nilgal/error.hpp"

namespace nilgal {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw Error(ErrorKind::InvalidInput, "image table is not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point x = cycle[i];
      if (x >= degree) throw Error(ErrorKind::InvalidInput, "cycle point exceeds degree");
      if (used[x]) throw Error(ErrorKind::InvalidInput, "point repeated in cycle notation");
      used[x] = true;
      images[x] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  Permutation out;
  out.images_ = std::move(inv);
  return out;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::size_t Permutation::orbit_count() const { return cycle_type().size(); }

std::uint64_t Permutation::order() const {
  std::uint64_t o = 1;
  for (std::size_t len : cycle_type()) o = std::lcm(o, static_cast<std::uint64_t>(len));
  return o;
}

std::string Permutation::to_cycles() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (!first) os << ',';
      os << x + 1;
      first = false;
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "composing permutations");
  Permutation out;
  out.images_.resize(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) out.images_[i] = b.images_[a.images_[i]];
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t element_order(const Permutation& p) { return p.order(); }

namespace {

std::vector<std::vector<Permutation::Point>> parse_cycles(std::string_view text,
                                                          std::size_t& max_point) {
  std::vector<std::vector<Permutation::Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorKind::InvalidInput, "expected '(' in cycle notation");
    ++i;
    std::vector<Permutation::Point> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(ErrorKind::InvalidInput, "expected a point in cycle notation");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
      if (v == 0) throw Error(ErrorKind::InvalidInput, "points are 1-based");
      max_point = std::max(max_point, v);
      cycle.push_back(static_cast<Permutation::Point>(v - 1));
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      }
    }
    if (i >= text.size()) throw Error(ErrorKind::InvalidInput, "unterminated cycle");
    ++i;
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return cycles;
}

}  // namespace

Permutation parse_permutation(std::string_view text, std::size_t degree) {
  std::size_t max_point = 0;
  auto cycles = parse_cycles(text, max_point);
  if (degree == 0) degree = std::max<std::size_t>(max_point, 1);
  if (max_point > degree) throw Error(ErrorKind::InvalidInput, "point exceeds stated degree");
  return Permutation::from_cycles(degree, cycles);
}

std::vector<Permutation> parse_generators(std::string_view text, std::size_t degree) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto part = text.substr(start, end - start);
    if (part.find('(') != std::string_view::npos) parts.push_back(part);
    start = end + 1;
  }
  if (parts.empty()) throw Error(ErrorKind::InvalidInput, "no generators given");
  if (degree == 0) {
    for (auto part : parts) {
      std::size_t max_point = 0;
      parse_cycles(part, max_point);
      degree = std::max(degree, max_point);
    }
    degree = std::max<std::size_t>(degree, 1);
  }
  std::vector<Permutation> out;
  for (auto part : parts) out.push_back(parse_permutation(part, degree));
  return out;
}

// ---------------------------------------------------------------------------
// Group

Group::Group(std::size_t order, std::vector<Elem> table)
    : order_(order), table_(std::move(table)), inverse_(order) {
  if (order == 0 || table_.size() != order * order)
    throw Error(ErrorKind::InvalidInput, "Cayley table has the wrong size");
  for (std::size_t a = 0; a < order; ++a) {
    if (mul(0, static_cast<Elem>(a)) != a || mul(static_cast<Elem>(a), 0) != a)
      throw Error(ErrorKind::InvalidInput, "element 0 is not the identity");
  }
  std::vector<int> row_seen(order), col_seen(order);
  for (std::size_t a = 0; a < order; ++a) {
    std::fill(row_seen.begin(), row_seen.end(), 0);
    std::fill(col_seen.begin(), col_seen.end(), 0);
    for (std::size_t b = 0; b < order; ++b) {
      Elem r = mul(static_cast<Elem>(a), static_cast<Elem>(b));
      Elem c = mul(static_cast<Elem>(b), static_cast<Elem>(a));
      if (r >= order || c >= order || row_seen[r]++ || col_seen[c]++)
        throw Error(ErrorKind::InvalidInput, "Cayley table is not a latin square");
      if (r == 0) inverse_[a] = static_cast<Elem>(b);
    }
  }
}

Elem Group::pow(Elem a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem result = 0;
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::uint64_t Group::element_order(Elem a) const {
  std::uint64_t o = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++o;
  return o;
}

bool Group::is_associative() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) {
      Elem ab = mul(static_cast<Elem>(a), static_cast<Elem>(b));
      for (std::size_t c = 0; c < order_; ++c)
        if (mul(ab, static_cast<Elem>(c)) !=
            mul(static_cast<Elem>(a), mul(static_cast<Elem>(b), static_cast<Elem>(c))))
          return false;
    }
  return true;
}

Group cyclic_group(std::size_t n) {
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>((a + b) % n);
  return Group(n, std::move(table));
}

Group direct_product(const Group& a, const Group& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Elem first = a.mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb));
      Elem second = b.mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb));
      table[x * n + y] = static_cast<Elem>(first * nb + second);
    }
  return Group(n, std::move(table));
}

ElementSet all_elements(const Group& g) {
  ElementSet out(g.order());
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

ElementSet closure(const Group& g, std::span<const Elem> gens) {
  std::vector<bool> in(g.order(), false);
  ElementSet members{0};
  in[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem s : gens) {
      Elem x = g.mul(members[i], s);
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_subgroup(const Group& g, const ElementSet& h) {
  if (h.empty() || h.front() != 0) return false;
  std::vector<bool> in(g.order(), false);
  for (Elem x : h) in[x] = true;
  for (Elem a : h)
    for (Elem b : h)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

bool is_normal(const Group& g, const ElementSet& n) {
  if (!is_subgroup(g, n)) return false;
  std::vector<bool> in(g.order(), false);
  for (Elem x : n) in[x] = true;
  for (Elem x : n)
    for (std::size_t a = 0; a < g.order(); ++a)
      if (!in[g.conj(static_cast<Elem>(a), x)]) return false;
  return true;
}

ElementSet center(const Group& g) {
  ElementSet z;
  for (std::size_t a = 0; a < g.order(); ++a) {
    bool central = true;
    for (std::size_t b = 0; b < g.order() && central; ++b)
      central = g.mul(static_cast<Elem>(a), static_cast<Elem>(b)) ==
                g.mul(static_cast<Elem>(b), static_cast<Elem>(a));
    if (central) z.push_back(static_cast<Elem>(a));
  }
  return z;
}

bool is_abelian(const Group& g) { return center(g).size() == g.order(); }

ElementSet commutator_subgroup(const Group& g) {
  std::vector<bool> seen(g.order(), false);
  ElementSet gens;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) {
      Elem c = g.commutator(static_cast<Elem>(a), static_cast<Elem>(b));
      if (!seen[c]) {
        seen[c] = true;
        gens.push_back(c);
      }
    }
  return closure(g, gens);
}

std::vector<ElementSet> conjugacy_classes(const Group& g) {
  std::vector<bool> done(g.order(), false);
  std::vector<ElementSet> classes;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    ElementSet cls;
    for (std::size_t a = 0; a < g.order(); ++a) {
      Elem y = g.conj(static_cast<Elem>(a), static_cast<Elem>(x));
      if (!done[y]) {
        done[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::uint64_t exponent(const Group& g) {
  std::uint64_t e = 1;
  for (std::size_t a = 0; a < g.order(); ++a)
    e = std::lcm(e, g.element_order(static_cast<Elem>(a)));
  return e;
}

std::map<std::uint64_t, std::size_t> order_profile(const Group& g) {
  std::map<std::uint64_t, std::size_t> profile;
  for (std::size_t a = 0; a < g.order(); ++a) ++profile[g.element_order(static_cast<Elem>(a))];
  return profile;
}

unsigned abelianization_rank(const Group& g, std::uint64_t ell) {
  if (!is_prime(ell)) throw Error(ErrorKind::NotPrime, std::to_string(ell) + " is not prime");
  // [G,G] G^ell is the kernel of G -> (G^ab)/(G^ab)^ell = C_ell^r.
  ElementSet gens = commutator_subgroup(g);
  for (std::size_t a = 0; a < g.order(); ++a)
    gens.push_back(g.pow(static_cast<Elem>(a), static_cast<std::int64_t>(ell)));
  std::size_t index = g.order() / closure(g, gens).size();
  unsigned r = 0;
  while (index > 1) {
    index /= ell;
    ++r;
  }
  return r;
}

Quotient quotient_group(const Group& g, const ElementSet& n) {
  if (!is_normal(g, n)) throw Error(ErrorKind::NotNormal, "quotient by a non-normal subset");
  const std::size_t order = g.order();
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> coset_of(order, kUnset);
  std::vector<Elem> reps;
  for (std::size_t x = 0; x < order; ++x) {
    if (coset_of[x] != kUnset) continue;
    Elem id = static_cast<Elem>(reps.size());
    reps.push_back(static_cast<Elem>(x));
    for (Elem m : n) coset_of[g.mul(static_cast<Elem>(x), m)] = id;
  }
  const std::size_t q = reps.size();
  std::vector<Elem> table(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) table[a * q + b] = coset_of[g.mul(reps[a], reps[b])];
  return Quotient{Group(q, std::move(table)), std::move(coset_of)};
}

std::vector<ElementSet> intermediate_subgroups(const Group& g, const ElementSet& lower,
                                               const ElementSet& upper, std::size_t order) {
  std::set<ElementSet> seen{lower};
  std::vector<ElementSet> frontier{lower};
  std::vector<ElementSet> found;
  if (lower.size() == order) found.push_back(lower);
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (const auto& s : frontier) {
      for (Elem x : upper) {
        if (std::binary_search(s.begin(), s.end(), x)) continue;
        ElementSet gens = s;
        gens.push_back(x);
        ElementSet l = closure(g, gens);
        if (l.size() > order || order % l.size() != 0) continue;
        if (!seen.insert(l).second) continue;
        if (l.size() == order)
          found.push_back(l);
        else
          next.push_back(std::move(l));
      }
    }
    frontier = std::move(next);
  }
  std::sort(found.begin(), found.end());
  return found;
}

Group subgroup_table(const Group& g, const ElementSet& h) {
  if (!is_subgroup(g, h)) throw Error(ErrorKind::InvalidInput, "not a subgroup");
  std::vector<Elem> local(g.order(), 0);
  for (std::size_t i = 0; i < h.size(); ++i) local[h[i]] = static_cast<Elem>(i);
  const std::size_t m = h.size();
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = local[g.mul(h[a], h[b])];
  return Group(m, std::move(table));
}

// ---------------------------------------------------------------------------
// PermGroup

std::optional<Elem> PermGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Group& PermGroup::table() const {
  if (!table_)
    throw Error(ErrorKind::CapExceeded,
                "group of order " + std::to_string(order()) + " has no Cayley table");
  return *table_;
}

PermGroup generate(std::span<const Permutation> gens, std::size_t cap) {
  if (gens.empty()) throw Error(ErrorKind::InvalidInput, "no generators");
  const std::size_t degree = gens.front().degree();
  for (const auto& s : gens)
    if (s.degree() != degree) throw Error(ErrorKind::DegreeMismatch, "generator degrees differ");

  // Breadth-first closure under right multiplication by generators. The
  // spanning tree (parent, generator) is kept for the table construction.
  std::vector<Permutation> found{Permutation(degree)};
  std::unordered_map<Permutation, Elem, PermutationHash> index{{found[0], 0}};
  std::vector<Elem> parent{0};
  std::vector<std::uint32_t> via{0};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::uint32_t s = 0; s < gens.size(); ++s) {
      Permutation next = found[i] * gens[s];
      if (index.contains(next)) continue;
      if (found.size() >= cap)
        throw Error(ErrorKind::CapExceeded,
                    "closure exceeds " + std::to_string(cap) + " elements");
      index.emplace(next, static_cast<Elem>(found.size()));
      found.push_back(std::move(next));
      parent.push_back(static_cast<Elem>(i));
      via.push_back(s);
    }
  }

  const std::size_t order = found.size();
  std::vector<Elem> bfs_to_sorted(order);
  {
    std::vector<Elem> perm(order);
    std::iota(perm.begin(), perm.end(), Elem{0});
    std::sort(perm.begin(), perm.end(), [&](Elem a, Elem b) { return found[a] < found[b]; });
    for (std::size_t k = 0; k < order; ++k) bfs_to_sorted[perm[k]] = static_cast<Elem>(k);
  }

  PermGroup g;
  g.degree_ = degree;
  g.generators_.assign(gens.begin(), gens.end());
  g.elements_.resize(order);
  for (std::size_t b = 0; b < order; ++b) g.elements_[bfs_to_sorted[b]] = found[b];
  for (std::size_t k = 0; k < order; ++k) g.index_.emplace(g.elements_[k], static_cast<Elem>(k));

  if (order <= kTableCap) {
    // right[s][x] = x * gens[s] in sorted indexing
    std::vector<std::vector<Elem>> right(gens.size(), std::vector<Elem>(order));
    for (std::size_t s = 0; s < gens.size(); ++s)
      for (std::size_t x = 0; x < order; ++x)
        right[s][x] = g.index_.at(g.elements_[x] * gens[s]);
    // a * b = (a * parent(b)) * s, filled in BFS order of b.
    std::vector<Elem> table(order * order);
    for (std::size_t a = 0; a < order; ++a) {
      Elem* row = &table[a * order];
      row[0] = static_cast<Elem>(a);
      for (std::size_t b = 1; b < order; ++b) {
        Elem sb = bfs_to_sorted[b];
        Elem sp = bfs_to_sorted[parent[b]];
        row[sb] = right[via[b]][row[sp]];
      }
    }
    g.table_ = std::make_shared<const Group>(order, std::move(table));
  }
  return g;
}

PermGroup regular_representation(const Group& g) {
  const std::size_t n = g.order();
  std::vector<Permutation> gens;
  // Minimal-ish generating set: add elements not yet in the generated subgroup.
  std::vector<Elem> chosen;
  ElementSet span{0};
  for (std::size_t a = 1; a < n && span.size() < n; ++a) {
    if (std::binary_search(span.begin(), span.end(), static_cast<Elem>(a))) continue;
    chosen.push_back(static_cast<Elem>(a));
    span = closure(g, chosen);
  }
  if (chosen.empty()) chosen.push_back(0);
  for (Elem s : chosen) {
    std::vector<Permutation::Point> images(n);
    for (std::size_t x = 0; x < n; ++x) images[x] = g.mul(static_cast<Elem>(x), s);
    gens.emplace_back(std::move(images));
  }
  return generate(gens, std::max(n, kDefaultElementCap));
}

std::vector<std::vector<Permutation::Point>> orbits(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Permutation::Point>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<Permutation::Point> orbit{static_cast<Permutation::Point>(start)};
    seen[start] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const auto& s : g.generators()) {
        auto y = s[orbit[i]];
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool is_transitive(const PermGroup& g) { return orbits(g).size() == 1; }

std::vector<ConjClass> conjugacy_classes(const PermGroup& g) {
  std::vector<ConjClass> out;
  for (auto& members : conjugacy_classes(g.table())) {
    ConjClass c;
    c.representative = g.element(members.front());
    c.element_order = c.representative.order();
    c.members = std::move(members);
    out.push_back(std::move(c));
  }
  return out;
}

ElementSet center(const PermGroup& g) { return center(g.table()); }

PermGroup quotient(const PermGroup& g, const ElementSet& n) {
  return regular_representation(quotient_group(g.table(), n).group);
}

std::uint64_t exponent(const PermGroup& g) {
  std::uint64_t e = 1;
  for (const auto& p : g.elements()) e = std::lcm(e, p.order());
  return e;
}

unsigned abelianization_rank(const PermGroup& g, std::uint64_t ell) {
  return abelianization_rank(g.table(), ell);
}

}  // namespace nilgal
