#pragma once

#include <optional>
#include <vector>

#include "geoshear/errors.hpp"

namespace geoshear {

struct SegmentPair {
  int a = -1, b = -1;  // indices of the intersecting segments
  Complex near{};      // a point on/near the crossing
};

/// Shamos–Hoey sweep over the closed polyline p[0] p[1] ... p[n-1] p[0].
/// Returns the first intersecting pair of non-adjacent segments, or
/// nullopt when the polyline is simple.  Throws DomainError on degenerate
/// (zero-length) segments.
std::optional<SegmentPair> polyline_self_intersection(
    const std::vector<Complex>& pts);

struct CrossingCount {
  int max_crossings = 0;      // over all counted levels
  double worst_level = 0.0;   // y of the level attaining max_crossings
  int levels_counted = 0;
  int levels_skipped = 0;     // tangency band hits
};

/// Count transversal crossings of the closed polyline with `levels`
/// horizontal lines spanning its vertical extent; levels passing within
/// `tangency_tol` of a vertex are skipped.
CrossingCount horizontal_crossings(const std::vector<Complex>& pts, int levels,
                                   double tangency_tol);

/// Halton low-discrepancy sequence value (index >= 0, prime base).
double halton(long index, int base);

/// Deterministic quasi-random points in the disk of radius r_cap
/// (area-uniform).  The seed offsets the sequence start.
std::vector<Complex> disk_samples(int n, double r_cap, unsigned seed);

}  // namespace geoshear
