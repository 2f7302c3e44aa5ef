#pragma once
//
// Codes from surfaces w^(r+1) = f(x,y,z) in P^3: fibers of the projection
// to P^2 over points off the branch curve, evaluated on z != 0.
//

#include <array>
#include <vector>

#include "geolrc/engine.hpp"

namespace geolrc {

/// Exponent triples (i,j,l) with i+j+l = m, lexicographically descending:
/// (m,0,0), (m-1,1,0), (m-1,0,1), ...
std::vector<std::array<int, 3>> monomials(int m);

struct SurfaceSpec {
  RatExpr f;  // homogeneous of degree r+1 in x, y, z
  int r = 2;
  int m = 2;
};

/// Raw rows for tiers m, m-1, ..., m-r+1; the row for (i,j,l) in tier m-o
/// takes the value w^o x^i y^j at [x:y:1:w].  Throws ConstructionError when
/// r+1 does not divide q-1 or m < r-1.
LinearCode build_surface_code(const SurfaceSpec& spec);

/// n - (3m+1)q - 1 (a lower bound on d for r = 2; may be negative).
long cubic_distance_bound(long n, int m, long q);

}  // namespace geolrc
