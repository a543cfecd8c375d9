#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "geoshear/analytic_fn.hpp"
#include "geoshear/errors.hpp"

namespace geoshear {

// Adaptive Gauss–Kronrod (7,15) over a straight segment in the complex
// plane.  Subintervals are processed in path order so that integrands
// carrying branch state see evaluation points with monotone path
// position; the integrand's save/restore rewinds that state when an
// interval is split.

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr long kDefaultNodeBudget = 20000;

namespace gk15 {

// Kronrod abscissae on [0,1] of |x|, paired with Kronrod weights; the
// Gauss-7 rule lives on every second abscissa.
inline constexpr std::array<double, 8> abscissa = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};

inline constexpr std::array<double, 8> weight_k = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};

inline constexpr std::array<double, 4> weight_g = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

}  // namespace gk15

// Value-type requirements: default-constructible zero, operator+=,
// scalar multiplication by Complex and double, and norm() -> double.
struct DualComplex {
  Complex a{}, b{};
  DualComplex& operator+=(const DualComplex& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend DualComplex operator*(const DualComplex& v, Complex s) {
    return {v.a * s, v.b * s};
  }
  friend DualComplex operator*(const DualComplex& v, double s) {
    return {v.a * s, v.b * s};
  }
  friend DualComplex operator-(const DualComplex& x, const DualComplex& y) {
    return {x.a - y.a, x.b - y.b};
  }
  double norm() const { return std::max(std::abs(a), std::abs(b)); }
};

namespace detail {

inline double vnorm(Complex v) { return std::abs(v); }
inline double vnorm(const DualComplex& v) { return v.norm(); }
inline Complex vzero(Complex*) { return {}; }
inline DualComplex vzero(DualComplex*) { return {}; }

}  // namespace detail

template <class Value>
struct SegmentQuadResult {
  Value value{};
  double error_estimate = 0.0;
  long nodes_used = 0;
  bool converged = true;
};

// Integrand concept:
//   Value eval(Complex zeta)
//   std::size_t save();                 // snapshot branch state
//   void restore(std::size_t);          // rewind to snapshot
//   void discard(std::size_t);          // drop snapshot, keep state
template <class Value, class Integrand>
class SegmentIntegrator {
 public:
  SegmentIntegrator(Integrand& g, double tol, long budget)
      : g_(g), tol_(tol), budget_(budget) {}

  SegmentQuadResult<Value> run(Complex a, Complex b) {
    SegmentQuadResult<Value> out;
    if (a == b) return out;
    total_length_ = std::abs(b - a);
    rec(a, b, tol_, out, 0);
    return out;
  }

 private:
  // One GK15 pass over [a,b]; nodes visited in path order a -> b.
  void pass(Complex a, Complex b, Value& kron, Value& gauss, double& resasc,
            long& nodes) {
    const Complex mid = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    std::array<Value, 15> f{};
    // path order: t = -x[0], -x[1], ..., 0, ..., x[1], x[0]
    for (int i = 0; i < 7; ++i) f[i] = g_.eval(mid - half * gk15::abscissa[i]);
    f[7] = g_.eval(mid);
    for (int i = 6; i >= 0; --i) f[14 - i] = g_.eval(mid + half * gk15::abscissa[i]);
    nodes += 15;

    kron = detail::vzero(static_cast<Value*>(nullptr));
    gauss = detail::vzero(static_cast<Value*>(nullptr));
    for (int i = 0; i < 7; ++i) {
      Value s = f[i];
      s += f[14 - i];
      kron += s * gk15::weight_k[i];
      if (i % 2 == 1) gauss += s * gk15::weight_g[i / 2];
    }
    kron += f[7] * gk15::weight_k[7];
    gauss += f[7] * gk15::weight_g[3];
    const double habs = std::abs(half);
    // scale for the error heuristic: integral of |f - mean|
    const double mean_norm = detail::vnorm(kron) / 2.0;
    resasc = 0.0;
    for (int i = 0; i < 15; ++i) {
      int wi = i < 8 ? i : 14 - i;
      resasc += gk15::weight_k[wi] * std::abs(detail::vnorm(f[i]) - mean_norm);
    }
    resasc *= habs;
    kron = kron * half;
    gauss = gauss * half;
  }

  void rec(Complex a, Complex b, double tol_budget, SegmentQuadResult<Value>& out,
           int depth) {
    std::size_t token = g_.save();
    Value kron, gauss;
    double resasc = 0.0;
    pass(a, b, kron, gauss, resasc, out.nodes_used);
    double raw = detail::vnorm(kron - gauss);
    double err = raw;
    if (resasc > 0.0 && raw > 0.0)
      err = resasc * std::min(1.0, std::pow(200.0 * raw / resasc, 1.5));

    // huge integrands hit the roundoff floor long before an absolute
    // tolerance; accept once the error is at the limit of double
    const double rel_floor = 1e-13 * (detail::vnorm(kron) + resasc);
    const bool out_of_budget = out.nodes_used >= budget_;
    const bool too_narrow = std::abs(b - a) < 1e-14 * total_length_ || depth > 52;
    if (err <= tol_budget || err <= rel_floor || out_of_budget || too_narrow) {
      g_.discard(token);
      out.value += kron;
      out.error_estimate += err;
      if (err > tol_budget && err > rel_floor) out.converged = false;
      return;
    }
    g_.restore(token);
    Complex m = 0.5 * (a + b);
    rec(a, m, 0.5 * tol_budget, out, depth + 1);
    rec(m, b, 0.5 * tol_budget, out, depth + 1);
  }

  Integrand& g_;
  double tol_;
  long budget_;
  double total_length_ = 0.0;
};

template <class Value, class Integrand>
SegmentQuadResult<Value> integrate_chord(Integrand& g, Complex a, Complex b,
                                         double tol = kDefaultQuadTol,
                                         long budget = kDefaultNodeBudget) {
  SegmentIntegrator<Value, Integrand> engine(g, tol, budget);
  return engine.run(a, b);
}

// Adapter for stateless callables.
template <class F>
struct PlainIntegrand {
  F f;
  Complex eval(Complex zeta) { return f(zeta); }
  std::size_t save() { return 0; }
  void restore(std::size_t) {}
  void discard(std::size_t) {}
};

/// Integral of g over the straight segment [0, z].
template <class F>
QuadratureResult integrate_segment(F&& g, Complex z, double tol = kDefaultQuadTol,
                                   long budget = kDefaultNodeBudget) {
  PlainIntegrand<std::decay_t<F>> wrapped{std::forward<F>(g)};
  auto r = integrate_chord<Complex>(wrapped, Complex{0, 0}, z, tol, budget);
  return {r.value, r.error_estimate, r.nodes_used, r.converged};
}

// Adaptive quadrature of a real-valued function over a real interval
// (arc integrals of criteria functionals).
template <class F>
double integrate_real(F&& f, double a, double b, double tol = 1e-9,
                      long budget = kDefaultNodeBudget) {
  auto g = [&f](Complex t) { return Complex{f(t.real()), 0.0}; };
  PlainIntegrand<decltype(g)> wrapped{g};
  auto r = integrate_chord<Complex>(wrapped, Complex{a, 0}, Complex{b, 0}, tol, budget);
  if (!r.converged)
    throw NumericError("real quadrature failed to converge");
  return r.value.real();
}

}  // namespace geoshear
