#pragma once

// Brute-force reference for the enumerators: polygon-by-polygon development
// with floating-point angular pruning, exact certification of saddle
// connections, and cylinder detection by marching leaves in doubles.

#include <cstdint>
#include <vector>

#include "eigenflat/counting.hpp"

namespace eigenflat::oracle {

struct OracleCylinder {
  double hx, hy;  // core holonomy, unoriented
  double circumference;
  double area;
};

/// Canonical holonomies of all saddle connections of length <= L, with
/// multiplicity, sorted by (length, angle).
std::vector<Vec2> saddle_connections(const TranslationSurface& s, double L);

/// Cylinders with circumference <= L, found from the connections above.
std::vector<OracleCylinder> cylinders(const TranslationSurface& s, double L);

struct Comparison {
  std::size_t enumerated = 0;
  std::size_t reference = 0;
  std::size_t mismatches = 0;
  bool agree() const { return mismatches == 0 && enumerated == reference; }
};

/// Holonomy multisets, exact.
Comparison compare_saddle_connections(const std::vector<SaddleConnection>& scs, const std::vector<Vec2>& ref);
/// Holonomy and area, to relative tolerance 1e-6.
Comparison compare_cylinders(const std::vector<Cylinder>& cyl, const std::vector<OracleCylinder>& ref);

}  // namespace eigenflat::oracle
