#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "geoshear/check_report.hpp"
#include "geoshear/geometry.hpp"
#include "geoshear/grid.hpp"
#include "geoshear/shear.hpp"

namespace geoshear {

// A mapping of the disk under empirical test: analytic F or harmonic
// H + conj(G).  deriv_pair gives (a, b) with dF = a dz + conj(b dz);
// marcher() returns a fast incremental evaluator for curve tracing.
struct DiskMapping {
  std::function<Complex(Complex)> value;
  std::function<std::pair<Complex, Complex>(Complex)> deriv_pair;
  std::function<std::function<Complex(Complex)>()> marcher;
};

DiskMapping mapping_of(const AnalyticFn& f);
DiskMapping mapping_of(const HarmonicShear& s);

struct PointMap {
  DiskMapping map;
  double r_test = 0.995;
  int n_boundary = 4096;
  int n_interior = 20000;
  unsigned seed = 1;
};

struct CollisionWitness {
  Complex z1{}, z2{};
  double image_distance = 0.0;
  double preimage_distance = 0.0;
};

struct InjectivityResult {
  bool collision_found = false;
  CollisionWitness witness;
  long candidates_refined = 0;
  long samples_failed = 0;
};

/// Spatial-hash near-pair search over quasi-random interior samples,
/// followed by damped Gauss–Newton refinement of each candidate pair.
/// "No collision found" is evidence, not proof; a returned witness always
/// satisfies image_distance < collision_tol and preimage_distance >
/// separation_floor.
InjectivityResult injectivity_test(const PointMap& m,
                                   double separation_floor = 0.05,
                                   double collision_tol = 1e-8);

struct BoundaryResult {
  bool simple = true;
  SegmentPair intersection;  // valid when !simple
  int n_boundary = 0;
};

/// Sweep-line self-intersection test of the image of the circle
/// |z| = r_test (a simple image curve is necessary for univalence).
BoundaryResult boundary_simplicity(const PointMap& m);

/// sup |omega| and min Jacobian over the grid; certified only when the
/// dilatation stays clear of 1 by the slack margin.
CheckReport sense_preserving_scan(const HarmonicShear& s, const DiskGrid& grid,
                                  double slack = 1e-3);

struct ConvexDirResult {
  bool convex = false;
  int max_crossings = 0;
  double worst_level = 0.0;
  int levels_skipped = 0;
};

/// Rotate the image by -theta and count boundary crossings on horizontal
/// levels; convex in direction theta iff every counted level crosses the
/// boundary at most twice.  Throws DomainError when the boundary is not
/// simple (the crossing count would be meaningless).
ConvexDirResult convex_in_direction_test(const PointMap& m, double theta,
                                         int levels = 256);

struct CompareResult {
  double max_error = 0.0;
  Complex argmax{};
};

/// max |numeric - closed| over n quasi-random points with |z| <= r_cap.
CompareResult closed_form_compare(const AnalyticFn& numeric,
                                  const AnalyticFn& closed, int n,
                                  double r_cap = 0.95, unsigned seed = 1);

}  // namespace geoshear
