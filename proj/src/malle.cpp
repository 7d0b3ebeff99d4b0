#include "nilgal/malle.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "nilgal/error.hpp"

namespace nilgal {

BaseFieldData BaseFieldData::rationals() { return BaseFieldData{}; }

BaseFieldData& BaseFieldData::set_degree(unsigned degree, unsigned real_places) {
  if (degree == 0 || real_places > degree)
    throw Error(ErrorKind::InvalidInput, "need degree >= 1 and real places <= degree");
  degree_ = degree;
  real_places_ = real_places;
  return *this;
}

BaseFieldData& BaseFieldData::set_class_rank(std::uint64_t ell, unsigned rank) {
  if (!is_prime(ell)) throw Error(ErrorKind::NotPrime, "class rank key must be prime");
  class_rank_[ell] = rank;
  return *this;
}

BaseFieldData& BaseFieldData::add_cyclotomic_generators(std::uint64_t modulus,
                                                        std::vector<std::uint64_t> generators) {
  if (modulus == 0) throw Error(ErrorKind::InvalidInput, "modulus must be positive");
  for (auto& g : generators) {
    g %= modulus;
    if (modulus > 1 && std::gcd(g, modulus) != 1)
      throw Error(ErrorKind::InvalidInput,
                  "cyclotomic generator " + std::to_string(g) + " is not a unit mod " +
                      std::to_string(modulus));
  }
  if (!cyclo_generators_) cyclo_generators_.emplace();
  (*cyclo_generators_)[modulus] = std::move(generators);
  return *this;
}

unsigned BaseFieldData::class_rank(std::uint64_t ell) const {
  auto it = class_rank_.find(ell);
  return it == class_rank_.end() ? 0 : it->second;
}

std::vector<std::uint64_t> BaseFieldData::cyclo_subgroup(std::uint64_t e) const {
  if (e == 0) throw Error(ErrorKind::InvalidInput, "modulus must be positive");
  if (e == 1) return {1};
  std::vector<std::uint64_t> gens;
  if (!cyclo_generators_) {
    for (std::uint64_t m = 1; m < e; ++m)
      if (std::gcd(m, e) == 1) gens.push_back(m);
  } else {
    const std::vector<std::uint64_t>* stored = nullptr;
    std::uint64_t best = 0;
    for (const auto& [modulus, g] : *cyclo_generators_)
      if (modulus % e == 0 && (best == 0 || modulus < best)) {
        best = modulus;
        stored = &g;
      }
    if (!stored)
      throw Error(ErrorKind::InvalidInput,
                  "no cyclotomic data covering modulus " + std::to_string(e));
    for (auto g : *stored) gens.push_back(g % e);
  }
  std::vector<bool> in(e, false);
  std::vector<std::uint64_t> members{1};
  in[1] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (auto g : gens) {
      auto x = members[i] * g % e;
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::uint64_t BaseFieldData::n_ell(std::uint64_t ell) const {
  if (!is_prime(ell)) throw Error(ErrorKind::NotPrime, std::to_string(ell) + " is not prime");
  return cyclo_subgroup(ell).size();
}

BaseFieldData BaseFieldData::from_json(const nlohmann::json& j) {
  BaseFieldData k;
  k.set_degree(j.value("degree", 1u), j.value("real_places", j.value("degree", 1u)));
  if (j.contains("class_rank"))
    for (const auto& [key, value] : j.at("class_rank").items())
      k.set_class_rank(std::stoull(key), value.get<unsigned>());
  if (j.contains("cyclo_generators"))
    for (const auto& [key, value] : j.at("cyclo_generators").items())
      k.add_cyclotomic_generators(std::stoull(key), value.get<std::vector<std::uint64_t>>());
  return k;
}

BaseFieldData BaseFieldData::load(const std::string& spec) {
  if (spec.empty() || spec == "Q") return rationals();
  std::ifstream in(spec);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open field file " + spec);
  return from_json(nlohmann::json::parse(in));
}

nlohmann::json BaseFieldData::to_json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  j["real_places"] = real_places_;
  j["class_rank"] = nlohmann::json::object();
  for (const auto& [ell, rank] : class_rank_) j["class_rank"][std::to_string(ell)] = rank;
  if (cyclo_generators_) {
    j["cyclo_generators"] = nlohmann::json::object();
    for (const auto& [e, g] : *cyclo_generators_) j["cyclo_generators"][std::to_string(e)] = g;
  }
  return j;
}

unsigned ind(const Permutation& g) {
  return static_cast<unsigned>(g.degree() - g.orbit_count());
}

MinIndex min_index(const PermGroup& g) {
  if (g.order() < 2) throw Error(ErrorKind::TrivialGroup, "a(G) needs a nontrivial group");
  if (!is_transitive(g)) throw Error(ErrorKind::NotTransitive, "group is not transitive");
  unsigned best = static_cast<unsigned>(g.degree());
  for (std::size_t e = 1; e < g.order(); ++e) best = std::min(best, ind(g.element(e)));
  return MinIndex{best, Rational(1, best)};
}

std::vector<KClass> k_classes(const PermGroup& g, const BaseFieldData& k) {
  const Group& t = g.table();
  const auto classes = conjugacy_classes(g);
  std::vector<std::size_t> class_of(g.order());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (Elem x : classes[c].members) class_of[x] = c;

  const auto units = k.cyclo_subgroup(exponent(t));
  std::vector<bool> done(classes.size(), false);
  std::vector<KClass> out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (done[c]) continue;
    KClass kc;
    Elem rep = classes[c].members.front();
    for (auto m : units) {
      std::size_t image = class_of[t.pow(rep, static_cast<std::int64_t>(m))];
      if (!done[image]) {
        done[image] = true;
        kc.classes.push_back(image);
      }
    }
    std::sort(kc.classes.begin(), kc.classes.end());
    unsigned index = ind(g.element(rep));
    bool common = true;
    for (auto i : kc.classes) common = common && ind(classes[i].representative) == index;
    if (common) kc.index = index;
    out.push_back(std::move(kc));
  }
  return out;
}

unsigned b_constant(const PermGroup& g, const BaseFieldData& k) {
  const unsigned minimal = min_index(g).ind;
  unsigned count = 0;
  for (const auto& kc : k_classes(g, k))
    if (kc.index && *kc.index == minimal) ++count;
  return count;
}

}  // namespace nilgal
