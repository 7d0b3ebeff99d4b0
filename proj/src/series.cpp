#include "nilgal/series.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

#include "nilgal/error.hpp"
#include "nilgal/nilpotent.hpp"

namespace nilgal {

namespace {

bool contains(const ElementSet& s, Elem x) { return std::binary_search(s.begin(), s.end(), x); }

bool subset_of(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ElementSet difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<bool> minimal_index_flags(const PermGroup& g, unsigned minimal) {
  std::vector<bool> flags(g.order(), false);
  for (std::size_t e = 1; e < g.order(); ++e) flags[e] = ind(g.element(e)) == minimal;
  return flags;
}

// Subgroups M > N with M/N of prime order and central in G/N, sorted by
// (|M|, elements).
std::vector<ElementSet> upward_candidates(const Group& t, const ElementSet& n) {
  std::vector<bool> covered(t.order(), false);
  for (Elem x : n) covered[x] = true;
  std::vector<ElementSet> out;
  for (std::size_t z = 0; z < t.order(); ++z) {
    if (covered[z]) continue;
    bool central = true;
    for (std::size_t g = 0; g < t.order() && central; ++g)
      central = contains(n, t.commutator(static_cast<Elem>(z), static_cast<Elem>(g)));
    ElementSet gens = n;
    gens.push_back(static_cast<Elem>(z));
    ElementSet m = closure(t, gens);
    if (central && is_prime(m.size() / n.size())) {
      for (Elem x : m) covered[x] = true;
      out.push_back(std::move(m));
    }
  }
  std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

// Subgroups M < H of prime index containing [H, G], so that H/M is central in
// G/M (and M is normal in G).
std::vector<ElementSet> downward_candidates(const Group& t, const ElementSet& h) {
  ElementSet comm;
  for (Elem x : h)
    for (std::size_t g = 0; g < t.order(); ++g)
      comm.push_back(t.commutator(x, static_cast<Elem>(g)));
  std::sort(comm.begin(), comm.end());
  comm.erase(std::unique(comm.begin(), comm.end()), comm.end());
  std::vector<ElementSet> out;
  for (auto p : prime_divisors(h.size())) {
    ElementSet gens = comm;
    for (Elem x : h) gens.push_back(t.pow(x, static_cast<std::int64_t>(p)));
    ElementSet base = closure(t, gens);
    if (h.size() % (base.size() * p) != 0) continue;
    for (auto& m : intermediate_subgroups(t, base, h, h.size() / p)) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  return out;
}

std::uint64_t layer_cost(const ElementSet& upper, const ElementSet& lower,
                         const std::vector<bool>& minimal) {
  for (Elem x : difference(upper, lower))
    if (minimal[x]) return upper.size() - lower.size();
  return 0;
}

// Memoised search over the subgroups reachable upward from E.
class ChainSearch {
 public:
  ChainSearch(const Group& t, std::vector<bool> minimal) : t_(t), minimal_(std::move(minimal)) {}

  std::size_t id(const ElementSet& s) {
    auto [it, inserted] = ids_.try_emplace(s, sets_.size());
    if (inserted) {
      sets_.push_back(s);
      children_.emplace_back();
      expanded_.push_back(false);
      best_.push_back(0);
    }
    return it->second;
  }

  const std::vector<std::size_t>& children(std::size_t node) {
    if (!expanded_[node]) {
      expanded_[node] = true;
      std::vector<std::size_t> kids;
      for (auto& m : upward_candidates(t_, sets_[node])) kids.push_back(id(m));
      children_[node] = std::move(kids);
    }
    return children_[node];
  }

  std::uint64_t best(std::size_t node) {
    if (auto it = solved_.find(node); it != solved_.end()) return it->second;
    std::uint64_t value = 0;
    if (sets_[node].size() != t_.order()) {
      value = std::numeric_limits<std::uint64_t>::max();
      auto kids = children(node);
      for (auto kid : kids)
        value = std::min(value, layer_cost(sets_[kid], sets_[node], minimal_) + best(kid));
    }
    solved_[node] = value;
    return value;
  }

  // Upward sequence of subgroups realising best(node), first-candidate ties.
  std::vector<ElementSet> best_chain(std::size_t node) {
    std::vector<ElementSet> out{sets_[node]};
    while (sets_[node].size() != t_.order()) {
      const auto target = best(node);
      auto kids = children(node);
      for (auto kid : kids)
        if (layer_cost(sets_[kid], sets_[node], minimal_) + best(kid) == target) {
          node = kid;
          break;
        }
      out.push_back(sets_[node]);
    }
    return out;
  }

  const ElementSet& set(std::size_t node) const { return sets_[node]; }

 private:
  const Group& t_;
  std::vector<bool> minimal_;
  std::map<ElementSet, std::size_t> ids_;
  std::vector<ElementSet> sets_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<bool> expanded_;
  std::vector<std::uint64_t> best_;
  std::map<std::size_t, std::uint64_t> solved_;
};

}  // namespace

std::vector<std::size_t> Refinement::subgroup_orders() const {
  std::vector<std::size_t> out;
  for (const auto& s : chain) out.push_back(s.size());
  return out;
}

Refinement refinement_data(const PermGroup& g, std::vector<ElementSet> chain) {
  const Group& t = g.table();
  for (auto& s : chain) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  if (chain.size() < 1 || chain.front() != all_elements(t) || chain.back() != ElementSet{0})
    throw Error(ErrorKind::InvalidChain, "chain must run from G down to E");
  Refinement r;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto& upper = chain[i - 1];
    const auto& lower = chain[i];
    if (!subset_of(lower, upper) || lower.size() == upper.size() || upper.size() % lower.size())
      throw Error(ErrorKind::InvalidChain, "chain is not strictly decreasing");
    if (!is_normal(t, lower)) throw Error(ErrorKind::InvalidChain, "G_i is not normal in G");
    const auto ell = upper.size() / lower.size();
    if (!is_prime(ell)) throw Error(ErrorKind::InvalidChain, "quotient order is not prime");
    for (Elem x : upper)
      for (std::size_t a = 0; a < t.order(); ++a)
        if (!contains(lower, t.commutator(x, static_cast<Elem>(a))))
          throw Error(ErrorKind::InvalidChain, "quotient layer is not central");
    r.primes.push_back(ell);
    r.layer_sets.push_back(difference(upper, lower));
    unsigned a_i = std::numeric_limits<unsigned>::max();
    for (Elem x : r.layer_sets.back()) a_i = std::min(a_i, ind(g.element(x)));
    r.layer_min_index.push_back(a_i);
  }
  const std::size_t layers = r.primes.size();
  r.weights.assign(layers, 0);
  std::uint64_t below = 1;
  for (std::size_t i = layers; i-- > 0;) {
    r.weights[i] = (r.primes[i] - 1) * below;
    below *= r.primes[i];
    if (r.weights[i] != r.layer_sets[i].size())
      throw Error(ErrorKind::InvalidChain, "layer weight differs from layer size");
  }
  r.chain = std::move(chain);
  return r;
}

std::vector<Refinement> enumerate_refinements(const PermGroup& g, std::size_t cap,
                                              std::size_t chain_limit) {
  if (g.order() > cap)
    throw Error(ErrorKind::CapExceeded,
                "group order " + std::to_string(g.order()) + " above exhaustive cap");
  const Group& t = g.table();
  if (!is_nilpotent(t)) throw Error(ErrorKind::NotNilpotent, "refinements need a nilpotent group");
  ChainSearch search(t, std::vector<bool>(t.order(), false));
  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::size_t> path{search.id(ElementSet{0})};
  std::function<void()> walk = [&] {
    const auto node = path.back();
    if (search.set(node).size() == t.order()) {
      if (chains.size() >= chain_limit)
        throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(chain_limit) + " chains");
      chains.push_back(path);
      return;
    }
    auto kids = search.children(node);
    for (auto kid : kids) {
      path.push_back(kid);
      walk();
      path.pop_back();
    }
  };
  walk();

  std::vector<Refinement> out;
  out.reserve(chains.size());
  for (const auto& c : chains) {
    std::vector<ElementSet> top_down;
    for (auto it = c.rbegin(); it != c.rend(); ++it) top_down.push_back(search.set(*it));
    out.push_back(refinement_data(g, std::move(top_down)));
  }
  return out;
}

DConstant d_constant(const PermGroup& g, const Refinement& r, const BaseFieldData& k) {
  DConstant d;
  d.min_index = *std::min_element(r.layer_min_index.begin(), r.layer_min_index.end());
  if (d.min_index != min_index(g).ind)
    throw Error(ErrorKind::PropertyViolated, "minimal layer index differs from ind(G)");
  d.critical_prime = critical_prime_check(g);
  d.n_ell = k.n_ell(d.critical_prime);
  for (std::size_t i = 0; i < r.length(); ++i)
    if (r.layer_min_index[i] == d.min_index) d.d_group += r.weights[i];
  d.d_field = Rational(static_cast<std::int64_t>(d.d_group), static_cast<std::int64_t>(d.n_ell));
  return d;
}

std::size_t min_index_element_count(const PermGroup& g) {
  const auto flags = minimal_index_flags(g, min_index(g).ind);
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

bool min_index_elements_central(const PermGroup& g) {
  const Group& t = g.table();
  const auto flags = minimal_index_flags(g, min_index(g).ind);
  const ElementSet z = center(t);
  ElementSet s{0};
  for (std::size_t e = 1; e < g.order(); ++e) {
    if (!flags[e]) continue;
    if (!contains(z, static_cast<Elem>(e))) return false;
    s.push_back(static_cast<Elem>(e));
  }
  // All minimal-index elements have one prime order l, so together with the
  // identity they form an elementary abelian subgroup of order l^s.
  const auto primes = prime_divisors(s.size());
  if (primes.size() != 1 || !is_subgroup(t, s))
    throw Error(ErrorKind::PropertyViolated,
                "central minimal-index elements do not form C_l^s minus the identity");
  return true;
}

OptimizedD optimize_d(const PermGroup& g, const BaseFieldData& k, std::size_t exhaustive_cap) {
  const Group& t = g.table();
  if (!is_nilpotent(t)) throw Error(ErrorKind::NotNilpotent, "d(G) needs a nilpotent group");
  const unsigned minimal = min_index(g).ind;
  const auto flags = minimal_index_flags(g, minimal);

  OptimizedD out;
  std::vector<ElementSet> top_down;
  if (g.order() <= exhaustive_cap) {
    ChainSearch search(t, flags);
    auto upward = search.best_chain(search.id(ElementSet{0}));
    top_down.assign(upward.rbegin(), upward.rend());
  } else {
    out.heuristic_only = true;
    // Keep minimal-index elements out of the upper layers. When they are all
    // central the chain is routed through the subgroup they span.
    ElementSet floor{0};
    if (min_index_elements_central(g)) {
      for (std::size_t e = 1; e < g.order(); ++e)
        if (flags[e]) floor.push_back(static_cast<Elem>(e));
    }
    top_down.push_back(all_elements(t));
    while (top_down.back().size() > 1) {
      const auto& h = top_down.back();
      auto candidates = downward_candidates(t, h);
      const bool need_floor = h.size() > floor.size();
      const ElementSet* pick = nullptr;
      std::tuple<std::uint64_t, int> pick_score{};
      for (const auto& m : candidates) {
        if (need_floor && !subset_of(floor, m)) continue;
        std::uint64_t waste = 0;
        bool has_min = false;
        for (Elem x : difference(h, m)) {
          has_min = has_min || flags[x];
          waste += flags[x] ? 0 : 1;
        }
        std::tuple<std::uint64_t, int> score{has_min ? waste : 0, has_min ? 1 : 0};
        if (!pick || score < pick_score) {
          pick = &m;
          pick_score = score;
        }
      }
      if (!pick) throw Error(ErrorKind::PropertyViolated, "no central refinement step found");
      top_down.push_back(*pick);
    }
  }
  out.refinement = refinement_data(g, std::move(top_down));
  out.d = d_constant(g, out.refinement, k);
  return out;
}

nlohmann::json to_json(const Refinement& r, const DConstant& d) {
  nlohmann::json j;
  j["subgroup_orders"] = r.subgroup_orders();
  j["primes"] = r.primes;
  j["layer_min_index"] = r.layer_min_index;
  j["weights"] = r.weights;
  j["min_index"] = d.min_index;
  j["critical_prime"] = d.critical_prime;
  j["n_ell"] = d.n_ell;
  j["d_G"] = d.d_group;
  j["d_kG"] = to_string(d.d_field);
  return j;
}

}  // namespace nilgal
