#include "geoshear/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace geoshear {

namespace {

constexpr double kPi = std::numbers::pi;

struct Curve {
  std::vector<Complex> pts;
  const char* color;
  double width;
  bool closed;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const DiskMapping& m, const PlotOptions& opts) {
  std::vector<Curve> curves;

  // circle images, marched around each circle
  for (int k = 1; k <= opts.circles; ++k) {
    double r = double(k) / (opts.circles + 1);
    auto march = m.marcher();
    Curve c{{}, "#2e6fb7", 1.0, true};
    c.pts.reserve(opts.samples_per_circle);
    for (int i = 0; i < opts.samples_per_circle; ++i)
      c.pts.push_back(march(std::polar(r, 2.0 * kPi * i / opts.samples_per_circle)));
    curves.push_back(std::move(c));
  }

  // radial segment images out to the outermost circle
  double r_ray = double(opts.circles) / (opts.circles + 1);
  for (int j = 0; j < opts.rays; ++j) {
    double t = 2.0 * kPi * j / opts.rays;
    auto march = m.marcher();
    Curve c{{}, "#9a9a9a", 0.7, false};
    c.pts.reserve(opts.samples_per_ray);
    for (int i = 1; i <= opts.samples_per_ray; ++i)
      c.pts.push_back(march(std::polar(r_ray * i / opts.samples_per_ray, t)));
    curves.push_back(std::move(c));
  }

  // boundary curve
  {
    auto march = m.marcher();
    Curve c{{}, "#b23a2e", 1.6, true};
    int n = 2 * opts.samples_per_circle;
    c.pts.reserve(n);
    for (int i = 0; i < n; ++i)
      c.pts.push_back(march(std::polar(opts.r_test, 2.0 * kPi * i / n)));
    curves.push_back(std::move(c));
  }

  // frame the circle/ray grid; the boundary curve may blow up near the
  // rim and is allowed to run off-canvas
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (std::size_t ci = 0; ci + 1 < curves.size(); ++ci)
    for (Complex p : curves[ci].pts) {
      lo_x = std::min(lo_x, p.real());
      hi_x = std::max(hi_x, p.real());
      lo_y = std::min(lo_y, p.imag());
      hi_y = std::max(hi_y, p.imag());
    }
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (!(span > 0)) span = 1.0;
  double margin = 40.0;
  double scale = (1000.0 - 2 * margin) / span;
  double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  auto map_x = [&](double x) { return 500.0 + scale * (x - cx); };
  auto map_y = [&](double y) { return 500.0 - scale * (y - cy); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "viewBox=\"0 0 1000 1000\">\n";
  out += "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  for (const Curve& c : curves) {
    out += "<path d=\"";
    for (std::size_t i = 0; i < c.pts.size(); ++i) {
      out += i == 0 ? "M" : "L";
      out += fmt(map_x(c.pts[i].real()));
      out += " ";
      out += fmt(map_y(c.pts[i].imag()));
    }
    if (c.closed) out += "Z";
    out += "\" fill=\"none\" stroke=\"";
    out += c.color;
    out += "\" stroke-width=\"";
    out += fmt(c.width);
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace geoshear
