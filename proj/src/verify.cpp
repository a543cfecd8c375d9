#include "geoshear/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <numbers>
#include <vector>

#include "geoshear/criteria.hpp"

namespace geoshear {

namespace {
constexpr double kPi = std::numbers::pi;
}

DiskMapping mapping_of(const AnalyticFn& f) {
  DiskMapping m;
  m.value = [f](Complex z) { return f.value(z); };
  m.deriv_pair = [f](Complex z) {
    return std::pair<Complex, Complex>{f.deriv(z), Complex{0, 0}};
  };
  m.marcher = [f]() {
    auto tracer = std::shared_ptr<PathTracer>(f.tracer());
    return [tracer](Complex z) { return tracer->advance(z); };
  };
  return m;
}

DiskMapping mapping_of(const HarmonicShear& s) {
  DiskMapping m;
  m.value = [s](Complex z) { return s.map(z); };
  m.deriv_pair = [s](Complex z) {
    Complex hp = s.H.deriv(z);
    return std::pair<Complex, Complex>{hp, s.omega.value(z) * hp};
  };
  m.marcher = [s]() {
    auto tracer = std::shared_ptr<ShearPathTracer>(s.tracer());
    return [tracer](Complex z) {
      auto [h, g] = tracer->advance(z);
      return h + std::conj(g);
    };
  };
  return m;
}

// ── Injectivity ─────────────────────────────────────────────────────────

namespace {

// Real 2x2 matrix of the map increment d -> a d + conj(b d).
struct Lin {
  double m00, m01, m10, m11;

  static Lin from(Complex a, Complex b) {
    return {a.real() + b.real(), -a.imag() - b.imag(),
            a.imag() - b.imag(), a.real() - b.real()};
  }
  // M M^T accumulated into (s00,s01,s11)
  void add_mmt(double& s00, double& s01, double& s11) const {
    s00 += m00 * m00 + m01 * m01;
    s01 += m00 * m10 + m01 * m11;
    s11 += m10 * m10 + m11 * m11;
  }
  Complex mt_apply(Complex v) const {  // M^T v
    return {m00 * v.real() + m10 * v.imag(), m01 * v.real() + m11 * v.imag()};
  }
};

struct Candidate {
  int i, j;
  double image_dist;
};

// Damped minimal-norm Gauss–Newton on |F(z1) - F(z2)|^2.
bool refine_pair(const DiskMapping& map, double r_cap, double floor,
                 double tol, Complex& z1, Complex& z2, double& image_dist) {
  Complex f1 = map.value(z1), f2 = map.value(z2);
  Complex r = f1 - f2;
  for (int iter = 0; iter < 60; ++iter) {
    image_dist = std::abs(r);
    if (image_dist < tol) return std::abs(z1 - z2) > floor;
    auto [a1, b1] = map.deriv_pair(z1);
    auto [a2, b2] = map.deriv_pair(z2);
    Lin m1 = Lin::from(a1, b1), m2 = Lin::from(a2, b2);
    double s00 = 0, s01 = 0, s11 = 0;
    m1.add_mmt(s00, s01, s11);
    m2.add_mmt(s00, s01, s11);
    double det = s00 * s11 - s01 * s01;
    if (!(std::abs(det) > 1e-300)) return false;
    Complex rhs = -r;
    Complex s{(s11 * rhs.real() - s01 * rhs.imag()) / det,
              (-s01 * rhs.real() + s00 * rhs.imag()) / det};
    Complex d1 = m1.mt_apply(s);
    Complex d2 = -m2.mt_apply(s);

    double step = 1.0;
    bool moved = false;
    for (int h = 0; h < 24; ++h, step *= 0.5) {
      Complex n1 = z1 + step * d1;
      Complex n2 = z2 + step * d2;
      if (std::abs(n1) > r_cap) n1 *= r_cap / std::abs(n1);
      if (std::abs(n2) > r_cap) n2 *= r_cap / std::abs(n2);
      if (std::abs(n1 - n2) <= floor) return false;  // collapsing to the diagonal
      Complex nf1, nf2;
      try {
        nf1 = map.value(n1);
        nf2 = map.value(n2);
      } catch (const std::exception&) {
        continue;
      }
      Complex nr = nf1 - nf2;
      if (std::abs(nr) < std::abs(r)) {
        z1 = n1;
        z2 = n2;
        r = nr;
        moved = true;
        break;
      }
    }
    if (!moved) return false;
  }
  image_dist = std::abs(r);
  return image_dist < tol && std::abs(z1 - z2) > floor;
}

}  // namespace

InjectivityResult injectivity_test(const PointMap& m, double separation_floor,
                                   double collision_tol) {
  InjectivityResult out;
  std::vector<Complex> zs = disk_samples(m.n_interior, m.r_test, m.seed);
  std::vector<Complex> ws(zs.size());
  std::vector<double> scale(zs.size(), 0.0);  // local image scale |dF| * spacing
  std::vector<char> ok(zs.size(), 0);
  long failures = 0;
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  const double spacing = std::sqrt(kPi * m.r_test * m.r_test /
                                   std::max(1, m.n_interior));
  for (std::size_t k = 0; k < zs.size(); ++k) {
    try {
      ws[k] = m.map.value(zs[k]);
      auto [a, b] = m.map.deriv_pair(zs[k]);
      scale[k] = (std::abs(a) + std::abs(b)) * spacing;
      ok[k] = 1;
      lo_x = std::min(lo_x, ws[k].real());
      hi_x = std::max(hi_x, ws[k].real());
      lo_y = std::min(lo_y, ws[k].imag());
      hi_y = std::max(hi_y, ws[k].imag());
    } catch (const std::exception&) {
      ++failures;
    }
  }
  out.samples_failed = failures;
  if (failures * 100 > long(zs.size()))
    throw NumericError("mapping evaluation failed at more than 1% of samples");

  // Near-pair search over the images.  Image magnitudes span many orders
  // (transform derivatives blow up near the boundary) so one global cell
  // size cannot work.  Each point scans a hash whose cell matches its own
  // local image scale: at that level a cell holds O(1) samples per sheet,
  // and every qualifying pair is seen once from its larger-scale side.
  auto level_of = [&](double s) {
    double r = std::max(8.0 * s, 4.0 * collision_tol);
    return int(std::ceil(std::log2(r)));
  };
  std::map<int, std::multimap<long, int>> levels;  // level -> image hash
  for (std::size_t k = 0; k < zs.size(); ++k)
    if (ok[k]) levels[level_of(scale[k])];  // touch the used levels
  for (auto& [ell, hash] : levels) {
    double cell = std::ldexp(1.0, ell);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      if (!ok[k]) continue;
      long gx = long(std::floor((ws[k].real() - lo_x) / cell));
      long gy = long(std::floor((ws[k].imag() - lo_y) / cell));
      hash.insert({gx * 1000003L + gy, int(k)});
    }
  }

  std::vector<Candidate> candidates;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    if (!ok[k]) continue;
    int ell = level_of(scale[k]);
    double cell = std::ldexp(1.0, ell);
    const auto& hash = levels[ell];
    long gx = long(std::floor((ws[k].real() - lo_x) / cell));
    long gy = long(std::floor((ws[k].imag() - lo_y) / cell));
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto range = hash.equal_range((gx + dx) * 1000003L + (gy + dy));
        for (auto it = range.first; it != range.second; ++it) {
          int j = it->second;
          if (j == int(k)) continue;
          // register from the larger-scale point; ties break by index
          if (scale[j] > scale[k] ||
              (scale[j] == scale[k] && j < int(k)))
            continue;
          double idist = std::abs(ws[k] - ws[j]);
          if (idist >= 4.0 * std::max(scale[k], std::max(scale[j], collision_tol)))
            continue;
          if (std::abs(zs[k] - zs[j]) <= separation_floor) continue;
          candidates.push_back(
              {int(k), j, idist / (scale[k] + scale[j] + 1e-300)});
        }
      }
  }
  // most promising first: image distance relative to the local scale
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.image_dist != b.image_dist) return a.image_dist < b.image_dist;
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  if (candidates.size() > 512) candidates.resize(512);

  for (const Candidate& c : candidates) {
    Complex z1 = zs[c.i], z2 = zs[c.j];
    double idist = 0;
    ++out.candidates_refined;
    if (refine_pair(m.map, m.r_test, separation_floor, collision_tol, z1, z2,
                    idist)) {
      out.collision_found = true;
      out.witness = {z1, z2, idist, std::abs(z1 - z2)};
      return out;
    }
  }
  return out;
}

// ── Boundary curve checks ───────────────────────────────────────────────

namespace {

std::vector<Complex> boundary_polyline(const PointMap& m) {
  if (m.n_boundary < 64) throw DomainError("n_boundary must be >= 64");
  auto march = m.map.marcher();
  std::vector<Complex> pts;
  pts.reserve(m.n_boundary);
  for (int k = 0; k < m.n_boundary; ++k) {
    double t = 2.0 * kPi * k / m.n_boundary;
    pts.push_back(march(std::polar(m.r_test, t)));
  }
  return pts;
}

}  // namespace

BoundaryResult boundary_simplicity(const PointMap& m) {
  std::vector<Complex> pts = boundary_polyline(m);
  BoundaryResult out;
  out.n_boundary = m.n_boundary;
  auto hit = polyline_self_intersection(pts);
  if (hit) {
    out.simple = false;
    out.intersection = *hit;
  }
  return out;
}

CheckReport sense_preserving_scan(const HarmonicShear& s, const DiskGrid& grid,
                                  double slack) {
  CheckReport r;
  r.criterion = "sense";
  r.condition = "sup|omega| < 1";
  r.bound = 1.0;
  r.flags = s.flags;

  ScanResult omg =
      sup_scan([&s](Complex z) { return std::abs(s.omega.value(z)); }, grid);
  ScanResult jac = min_scan([&s](Complex z) { return jacobian(s, z); }, grid);

  r.sup_value = omg.value;
  r.argmax = omg.arg;
  r.witnesses.push_back({jac.arg, jac.value});  // min Jacobian and where

  if (omg.value >= 1.0 || jac.value <= 0.0)
    r.verdict = Verdict::BoundViolated;
  else if (1.0 - omg.value > slack)
    r.verdict = Verdict::Certified;
  else
    r.verdict = Verdict::Inconclusive;
  return r;
}

ConvexDirResult convex_in_direction_test(const PointMap& m, double theta,
                                         int levels) {
  std::vector<Complex> pts = boundary_polyline(m);
  if (polyline_self_intersection(pts))
    throw DomainError("convex-in-direction test needs a simple boundary curve");

  if (theta != 0.0) {
    Complex rot = std::polar(1.0, -theta);
    for (Complex& p : pts) p *= rot;
  }
  double y_min = pts[0].imag(), y_max = y_min;
  for (const Complex& p : pts) {
    y_min = std::min(y_min, p.imag());
    y_max = std::max(y_max, p.imag());
  }
  CrossingCount cc = horizontal_crossings(pts, levels, 1e-6 * (y_max - y_min));
  ConvexDirResult out;
  out.max_crossings = cc.max_crossings;
  out.worst_level = cc.worst_level;
  out.levels_skipped = cc.levels_skipped;
  out.convex = cc.max_crossings <= 2;
  return out;
}

CompareResult closed_form_compare(const AnalyticFn& numeric,
                                  const AnalyticFn& closed, int n, double r_cap,
                                  unsigned seed) {
  CompareResult out;
  for (Complex z : disk_samples(n, r_cap, seed)) {
    double e = std::abs(numeric.value(z) - closed.value(z));
    if (e > out.max_error) {
      out.max_error = e;
      out.argmax = z;
    }
  }
  return out;
}

}  // namespace geoshear
