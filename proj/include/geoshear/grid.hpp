#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "geoshear/errors.hpp"

namespace geoshear {

// Polar sampling of the disk for suprema scans.  Radii cluster
// geometrically toward the boundary (r_max < 1); enumeration is
// deterministic, radius-major then angle, which fixes tie-breaking.
struct DiskGrid {
  std::vector<double> radii;
  int angles = 512;
  int refine_levels = 2;
  int refine_factor = 4;

  static DiskGrid standard(int n_radii = 200, int n_angles = 512,
                           double r_max = 0.999, int levels = 2) {
    if (n_radii < 1 || n_angles < 1 || !(r_max > 0.0) || r_max >= 1.0)
      throw DomainError("invalid grid parameters");
    DiskGrid g;
    g.angles = n_angles;
    g.refine_levels = levels;
    g.radii.reserve(n_radii);
    // a short inner prefix so functionals peaking near the origin are
    // seen, then r_k = 1 - (1-r_max)^{k/n}, dense near the boundary
    const double inner[] = {1e-4, 1e-3, 5e-3, 1e-2, 2e-2};
    int prefix = n_radii > 12 ? 5 : 0;
    for (int k = 0; k < prefix; ++k) g.radii.push_back(inner[k]);
    int rest = n_radii - prefix;
    for (int k = 1; k <= rest; ++k)
      g.radii.push_back(1.0 - std::pow(1.0 - r_max, double(k) / rest));
    g.radii.back() = r_max;
    return g;
  }

  Complex point(int i, int j) const {
    return std::polar(radii[std::size_t(i)],
                      2.0 * std::numbers::pi * j / angles);
  }
};

}  // namespace geoshear
