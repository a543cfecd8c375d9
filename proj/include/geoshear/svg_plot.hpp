#pragma once

#include <string>
#include <vector>

#include "geoshear/verify.hpp"

namespace geoshear {

struct PlotOptions {
  int circles = 11;             // images of |z| = k/12, k = 1..circles
  int rays = 24;                // images of radial segments
  double r_test = 0.995;        // outermost boundary curve
  int samples_per_circle = 720;
  int samples_per_ray = 120;
};

/// Render the disk image of a mapping as SVG 1.1: concentric-circle and
/// radial-segment images plus the r_test boundary curve, scaled into a
/// fixed 1000x1000 viewbox.  Output is deterministic for a fixed mapping
/// and options.
std::string render_svg(const DiskMapping& m, const PlotOptions& opts = {});

}  // namespace geoshear
