#pragma once

// Named transitive groups used by the CLI, the falsifier suites and tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilgal/arith.hpp"
#include "nilgal/permcore.hpp"

namespace nilgal {

struct CatalogEntry {
  std::string name;
  std::string description;
  /// ';'-separated generators in 1-based cycle notation.
  std::string generators;
  std::size_t degree = 0;
  std::size_t order = 0;
  bool nilpotent = true;
  // Known values over Q, where established independently of this code.
  std::optional<Rational> a;
  std::optional<unsigned> b;
  std::optional<std::uint64_t> d_optimal;
};

const std::vector<CatalogEntry>& catalog();

/// Catalog name, "C<n>" for the regular cyclic group, or raw generators in
/// cycle notation (anything starting with '(').
PermGroup group_by_name(const std::string& name);

/// Regular dicyclic group Q_{4n} = <x, y | x^{2n} = y^4 = 1, x^n = y^2, y^-1 x y = x^-1>.
Group dicyclic_table(std::size_t n);
/// Dihedral group of order 2n as a table: r^i s^j indexed j * n + i.
Group dihedral_table(std::size_t n);

}  // namespace nilgal
