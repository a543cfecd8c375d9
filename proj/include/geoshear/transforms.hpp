#pragma once

#include "geoshear/analytic_fn.hpp"
#include "geoshear/quadrature.hpp"

namespace geoshear {

struct QuadOptions {
  double tol = kDefaultQuadTol;
  long node_budget = kDefaultNodeBudget;
};

// Parameters of the Cesàro-type transform
//
//   C^theta_{ab}[phi](z) = e^{-i theta} Integral_0^{e^{i theta} z}
//                          ( phi(zeta) / (zeta (1-zeta)^beta) )^alpha dzeta
//
// phi must be normalized (phi(0)=0, phi'(0)=1) so the integrand has the
// removable singularity value 1 at zeta=0; the fractional power takes the
// analytic branch fixed by that normalization, continued along the path.
struct TransformSpec {
  Complex alpha{};
  Complex beta{};
  double theta = 0.0;
  AnalyticFn phi;

  void validate() const;  // throws DomainError if phi is not normalized
};

/// The transform C^theta_{alpha beta}[phi] as an evaluable function; its
/// derivative is the integrand in closed form and its pre-Schwarzian is
/// alpha (phi'/phi - 1/z + beta/(1-z)), never a differentiated quadrature.
AnalyticFn cesaro_transform(const TransformSpec& spec, const QuadOptions& opts = {});

/// J_alpha[phi] = C_{alpha 0}[phi].
AnalyticFn j_alpha(const AnalyticFn& phi, Complex alpha, const QuadOptions& opts = {});

/// C_beta[phi] = C_{1 beta}[phi].
AnalyticFn c_beta(const AnalyticFn& phi, Complex beta, const QuadOptions& opts = {});

/// Hornich scalar multiplication: I_alpha[phi](z) = Integral_0^z (phi'(zeta))^alpha dzeta.
/// Requires phi'(0) != 0; the power is branch-tracked from the seed log phi'(0).
AnalyticFn i_alpha(const AnalyticFn& phi, Complex alpha, const QuadOptions& opts = {});

/// Hornich addition: (f (+) g)(z) = Integral_0^z f'(zeta) g'(zeta) dzeta.
AnalyticFn hornich_add(const AnalyticFn& f, const AnalyticFn& g,
                       const QuadOptions& opts = {});

}  // namespace geoshear
