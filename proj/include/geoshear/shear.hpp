#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "geoshear/transforms.hpp"

namespace geoshear {

// Incremental evaluation of the pair (H, G) along a polyline path.
class ShearPathTracer {
 public:
  virtual ~ShearPathTracer() = default;
  virtual std::pair<Complex, Complex> advance(Complex zeta) = 0;
};

struct ShearCore;

// The Clunie–Sheil-Small horizontal shear of phi with dilatation omega:
//
//   H' = phi' / (1 - omega),   G' = omega phi' / (1 - omega),
//   H(0) = G(0) = 0,           F = H + conj(G).
//
// H - G = phi and G'/H' = omega hold in closed form by construction.
struct HarmonicShear {
  AnalyticFn H;
  AnalyticFn G;
  AnalyticFn omega;  // dilatation G'/H'
  AnalyticFn phi;    // the sheared analytic function H - G
  std::vector<std::string> flags;  // construction warnings (never fatal)
  std::shared_ptr<const ShearCore> core;

  /// F(z) = H(z) + conj(G(z)), one quadrature pass for both parts.
  Complex map(Complex z) const;

  /// (H(z), G(z)) with a shared path and branch state.
  std::pair<Complex, Complex> parts(Complex z) const;

  std::unique_ptr<ShearPathTracer> tracer() const;

  bool sense_preserving_warned() const;
};

/// Solve h - g = phi, g'/h' = omega.  |omega| >= 1 on a coarse scan is a
/// warning flag, not an error: counterexample studies build such shears
/// deliberately.
HarmonicShear shear_solve(const AnalyticFn& phi, const AnalyticFn& omega,
                          const QuadOptions& opts = {});

/// The harmonic mapping attached to the transform: shear of
/// C^theta_{alpha beta}[phi] with dilatation alpha(1+beta) w.  Parameters
/// outside the alpha,beta >= 0 range are flagged, not rejected.
HarmonicShear build_F(const TransformSpec& spec, const AnalyticFn& w,
                      const QuadOptions& opts = {});

/// The analytic family member Phi_lambda = H + lambda G, |lambda| = 1,
/// with closed-form derivative H'(1 + lambda omega).
AnalyticFn lambda_family(const HarmonicShear& s, Complex lambda);

/// J_F(z) = |H'(z)|^2 - |G'(z)|^2.
double jacobian(const HarmonicShear& s, Complex z);

}  // namespace geoshear
