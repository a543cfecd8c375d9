#include "geoshear/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace geoshear {

namespace {

struct Seg {
  double x0, y0, x1, y1;  // left endpoint first (lexicographic)
  int id;
};

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// > 0 left turn, < 0 right turn, 0 collinear
double orient(double px, double py, double qx, double qy, double rx, double ry) {
  return cross(qx - px, qy - py, rx - px, ry - py);
}

bool segments_intersect(const Seg& s, const Seg& t) {
  double d1 = orient(s.x0, s.y0, s.x1, s.y1, t.x0, t.y0);
  double d2 = orient(s.x0, s.y0, s.x1, s.y1, t.x1, t.y1);
  double d3 = orient(t.x0, t.y0, t.x1, t.y1, s.x0, s.y0);
  double d4 = orient(t.x0, t.y0, t.x1, t.y1, s.x1, s.y1);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 &&
      d3 != 0 && d4 != 0)
    return true;
  auto on = [](double px, double py, double qx, double qy, double rx, double ry) {
    return std::min(px, qx) <= rx && rx <= std::max(px, qx) &&
           std::min(py, qy) <= ry && ry <= std::max(py, qy);
  };
  if (d1 == 0 && on(s.x0, s.y0, s.x1, s.y1, t.x0, t.y0)) return true;
  if (d2 == 0 && on(s.x0, s.y0, s.x1, s.y1, t.x1, t.y1)) return true;
  if (d3 == 0 && on(t.x0, t.y0, t.x1, t.y1, s.x0, s.y0)) return true;
  if (d4 == 0 && on(t.x0, t.y0, t.x1, t.y1, s.x1, s.y1)) return true;
  return false;
}

Complex crossing_point(const Seg& s, const Seg& t) {
  // best-effort line intersection for the witness; falls back to a midpoint
  double rx = s.x1 - s.x0, ry = s.y1 - s.y0;
  double qx = t.x1 - t.x0, qy = t.y1 - t.y0;
  double den = cross(rx, ry, qx, qy);
  if (den != 0.0) {
    double u = cross(t.x0 - s.x0, t.y0 - s.y0, qx, qy) / den;
    return {s.x0 + u * rx, s.y0 + u * ry};
  }
  return {0.5 * (s.x0 + t.x1), 0.5 * (s.y0 + t.y1)};
}

struct Event {
  double x, y;
  int seg;
  bool left;
  bool operator<(const Event& o) const {
    if (x != o.x) return x < o.x;
    if (left != o.left) return left && !o.left;  // insertions first
    if (y != o.y) return y < o.y;
    return seg < o.seg;
  }
};

// Active segments ordered by y at the current sweep x.
struct SweepLess {
  const std::vector<Seg>* segs;
  const double* sweep_x;

  double y_at(const Seg& s, double x) const {
    if (s.x1 == s.x0) return std::min(s.y0, s.y1);
    double t = (x - s.x0) / (s.x1 - s.x0);
    t = std::clamp(t, 0.0, 1.0);
    return s.y0 + t * (s.y1 - s.y0);
  }

  bool operator()(int a, int b) const {
    if (a == b) return false;
    const Seg& sa = (*segs)[a];
    const Seg& sb = (*segs)[b];
    double ya = y_at(sa, *sweep_x), yb = y_at(sb, *sweep_x);
    if (ya != yb) return ya < yb;
    // same y at the sweep: order by slope, then id
    double ma = sa.x1 == sa.x0 ? 1e300 : (sa.y1 - sa.y0) / (sa.x1 - sa.x0);
    double mb = sb.x1 == sb.x0 ? 1e300 : (sb.y1 - sb.y0) / (sb.x1 - sb.x0);
    if (ma != mb) return ma < mb;
    return a < b;
  }
};

bool adjacent_on_ring(int a, int b, int n) {
  int d = std::abs(a - b);
  return d == 1 || d == n - 1;
}

}  // namespace

std::optional<SegmentPair> polyline_self_intersection(
    const std::vector<Complex>& pts) {
  const int n = int(pts.size());
  if (n < 3) throw DomainError("polyline needs at least 3 points");

  std::vector<Seg> segs(n);
  for (int i = 0; i < n; ++i) {
    Complex a = pts[i], b = pts[(i + 1) % n];
    if (a == b) throw DomainError("degenerate zero-length polyline segment");
    if (a.real() > b.real() || (a.real() == b.real() && a.imag() > b.imag()))
      std::swap(a, b);
    segs[i] = {a.real(), a.imag(), b.real(), b.imag(), i};
  }

  std::vector<Event> events;
  events.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    events.push_back({segs[i].x0, segs[i].y0, i, true});
    events.push_back({segs[i].x1, segs[i].y1, i, false});
  }
  std::sort(events.begin(), events.end());

  double sweep_x = 0.0;
  SweepLess less{&segs, &sweep_x};
  std::multiset<int, SweepLess> active(less);
  std::vector<std::multiset<int, SweepLess>::iterator> where(n, active.end());

  auto check = [&](int a, int b) -> bool {
    if (adjacent_on_ring(a, b, n)) return false;
    return segments_intersect(segs[a], segs[b]);
  };

  for (const Event& ev : events) {
    sweep_x = ev.x;
    if (ev.left) {
      auto it = active.insert(ev.seg);
      where[ev.seg] = it;
      auto above = std::next(it);
      if (above != active.end() && check(ev.seg, *above))
        return SegmentPair{ev.seg, *above, crossing_point(segs[ev.seg], segs[*above])};
      if (it != active.begin()) {
        auto below = std::prev(it);
        if (check(ev.seg, *below))
          return SegmentPair{ev.seg, *below, crossing_point(segs[ev.seg], segs[*below])};
      }
    } else {
      auto it = where[ev.seg];
      if (it == active.end()) continue;
      auto above = std::next(it);
      bool has_below = it != active.begin();
      auto below = has_below ? std::prev(it) : active.end();
      if (above != active.end() && has_below && check(*below, *above))
        return SegmentPair{*below, *above, crossing_point(segs[*below], segs[*above])};
      active.erase(it);
      where[ev.seg] = active.end();
    }
  }
  return std::nullopt;
}

CrossingCount horizontal_crossings(const std::vector<Complex>& pts, int levels,
                                   double tangency_tol) {
  const int n = int(pts.size());
  if (n < 3) throw DomainError("polyline needs at least 3 points");
  double y_min = pts[0].imag(), y_max = y_min;
  for (const Complex& p : pts) {
    y_min = std::min(y_min, p.imag());
    y_max = std::max(y_max, p.imag());
  }
  CrossingCount out;
  if (y_max <= y_min) return out;

  for (int k = 0; k < levels; ++k) {
    double y = y_min + (y_max - y_min) * (k + 0.5) / levels;
    bool tangent = false;
    for (const Complex& p : pts)
      if (std::abs(p.imag() - y) < tangency_tol) {
        tangent = true;
        break;
      }
    if (tangent) {
      ++out.levels_skipped;
      continue;
    }
    int crossings = 0;
    for (int i = 0; i < n; ++i) {
      double a = pts[i].imag(), b = pts[(i + 1) % n].imag();
      if ((a < y && b > y) || (a > y && b < y)) ++crossings;
    }
    ++out.levels_counted;
    if (crossings > out.max_crossings) {
      out.max_crossings = crossings;
      out.worst_level = y;
    }
  }
  return out;
}

double halton(long index, int base) {
  double f = 1.0, r = 0.0;
  long i = index + 1;  // skip the zero
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

std::vector<Complex> disk_samples(int n, double r_cap, unsigned seed) {
  std::vector<Complex> out;
  out.reserve(n);
  long offset = long(seed) * 7919;
  for (int k = 0; k < n; ++k) {
    double u = halton(k + offset, 2);
    double v = halton(k + offset, 3);
    double r = r_cap * std::sqrt(u);
    if (r == 0.0) r = 1e-6;
    out.push_back(std::polar(r, 2.0 * std::numbers::pi * v));
  }
  return out;
}

}  // namespace geoshear
