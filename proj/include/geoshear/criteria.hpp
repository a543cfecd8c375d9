#pragma once

#include <functional>
#include <optional>
#include <string>

#include "geoshear/check_report.hpp"
#include "geoshear/grid.hpp"
#include "geoshear/shear.hpp"

namespace geoshear {

// Margin required beyond a sufficient bound before a grid scan may report
// "certified" (grid maxima under-estimate suprema).
inline constexpr double kCertifySlack = 1e-3;

// ── Pointwise functionals ───────────────────────────────────────────────

/// h''/h' for analytic h.
Complex pre_schwarzian_analytic(const AnalyticFn& h, Complex z);

/// Harmonic pre-Schwarzian from its ingredients:
/// P = h''/h' - conj(omega) omega' / (1 - |omega|^2).
Complex pre_schwarzian_harmonic(Complex h_pre_schwarzian, Complex omega,
                                Complex omega_deriv);

/// Harmonic pre-Schwarzian of a shear (sense-preserving at z required).
Complex pre_schwarzian_harmonic(const HarmonicShear& s, Complex z);

/// Harmonic Becker functional
/// (1-|z|^2)|z P(z)| + |z omega'(z)| (1-|z|^2) / (1-|omega(z)|^2);
/// staying within 1 on the disk suffices for univalence.
double becker_harmonic_functional(const HarmonicShear& s, Complex z);

/// (1-|z|^2) |h''/h'| — exceeds 6 somewhere only for non-univalent h.
double becker_analytic_functional(const AnalyticFn& h, Complex z);

/// (1-|z|^2) |z h''/h'| — at most 1 everywhere suffices for univalence.
double becker_analytic_weighted(const AnalyticFn& h, Complex z);

/// Re[1 + z h''/h'] (positive everywhere means convex).
double convexity_functional(const AnalyticFn& h, Complex z);

/// Re{ e^{i mu} (1 - 2 z e^{-i mu} cos nu + z^2 e^{-2i mu}) phi'(z) };
/// nonnegative on the disk for some (mu, nu) characterizes CHD.
double lemma_e_form(const AnalyticFn& phi, double mu, double nu, Complex z);

// ── Grid scans ──────────────────────────────────────────────────────────

struct ScanResult {
  double value = 0.0;  // extremum over the grid (after refinement)
  Complex arg{};
  long evaluated = 0;
  long errored = 0;
};

ScanResult sup_scan(const std::function<double(Complex)>& f, const DiskGrid& grid);
ScanResult min_scan(const std::function<double(Complex)>& f, const DiskGrid& grid);

/// Supremum estimate packaged as a report: certified when sup <= bound -
/// slack, violated when sup > bound, inconclusive in the slack band.
CheckReport sup_functional(const std::string& name,
                           const std::function<double(Complex)>& f,
                           const DiskGrid& grid, double bound,
                           double slack = kCertifySlack);

/// ||w|| — grid supremum of |w|.  Errors if |w| >= 1 at a grid point.
double norm_sup(const AnalyticFn& w, const DiskGrid& grid);

/// ||w*|| — hyperbolic norm sup |w'|(1-|z|^2)/(1-|w|^2), <= 1 by
/// Schwarz–Pick.
double norm_hyperbolic(const AnalyticFn& w, const DiskGrid& grid);

// ── Theorem bound calculators ───────────────────────────────────────────
// Each returns the largest admissible alpha for the stated criterion.

/// Univalence of the transform for phi in S: alpha <= 1/(2(2+|beta|)).
double thm31_bound(double beta);

/// Convexity in one direction for phi starlike of order delta:
/// alpha (beta + 2(1-delta)) <= 3.
double thm34_bound(double beta, double delta);

/// Univalence of the shear via linear connectivity:
/// alpha (beta + 2(1-delta)) <= 2 and alpha (1+beta)||w|| < 1/3.
double thm37_bound(double beta, double delta, double norm_w);

/// Stable harmonic univalence: alpha <= 1/(2(2+beta+(1+beta)||w*||(1+||w||))).
double shu_bound(double beta, double norm_w, double norm_wstar);

struct LifBound {
  double alpha_max = 0.0;
  std::string case_used;  // which printed inequality applied
};

/// Univalence of the shear for phi in a LIF of order gamma (harmonic
/// Becker route); case split exactly as printed.
LifBound lif_univ_bound(double gamma, double beta, double norm_w, double norm_wstar);

/// Stable harmonic univalence for phi in a LIF of order gamma.
LifBound lif_shu_bound(double gamma, double beta, double norm_w, double norm_wstar);

/// Close-to-convexity: alpha(1+beta) <= 1 and alpha(2(1-delta)+beta) <= -2c.
double ctc_bound(double delta, double beta, double c);

/// Stable harmonic close-to-convexity: alpha <= 1/((1+beta) sqrt 2).
double shcc_bound(double beta);

/// Bound by name ("thm31", "thm34", "thm37", "lif-univ", "shu",
/// "lif-shu", "ctc", "shcc"); optional fields default from Params.
double bound_by_name(const std::string& theorem, double beta, double delta,
                     double gamma, double c, double norm_w, double norm_wstar,
                     std::string* condition_out = nullptr);

// ── Criterion checks ────────────────────────────────────────────────────

/// Close-to-convexity test: Re[1 + z H''/H'] > c on the grid together
/// with sup|omega| < cos(pi|c|), for -1/2 < c <= 0.
CheckReport lemma_b_check(const HarmonicShear& s, double c, const DiskGrid& grid,
                          double slack = kCertifySlack);

/// Integral of Re[1 + z h''/h'] over the arc z = r e^{it}, t in [t1, t2];
/// close-to-convexity needs every such integral > -pi.
double ctc_arc_integral(const AnalyticFn& h, double r, double t1, double t2);

/// Argument bound 2 arcsin(r alpha (1+beta)) on the family quotient;
/// requires r alpha (1+beta) <= 1.
double arcsin_bound(double r, double alpha, double beta);

struct LemmaEScan {
  bool chd_certified = false;
  double mu = 0.0, nu = 0.0;  // certifying pair when found
  double min_value = 0.0;     // grid min of the form for that pair
  Complex argmin{};
  long pairs_tested = 0;
  // per-pair negative witnesses when nothing certifies
  std::vector<Witness> failures;
};

/// Scan (mu, nu) in [0,2pi) x [0,pi] for a pair making the directional
/// form nonnegative on the grid.  Falsification (a negative witness for
/// every pair) is exact; certification is a grid verdict.
LemmaEScan lemma_e_chd_scan(const AnalyticFn& phi, const DiskGrid& grid,
                            int mu_count = 64, int nu_count = 33);

/// Run an analytic criterion over Phi_lambda = H + lambda G for
/// lambda_count uniformly spaced unit-modulus lambda; stable properties
/// hold exactly when every member passes.  A failing lambda is a true
/// counterexample; an all-pass is a sampled verdict.
CheckReport stable_sweep(const HarmonicShear& s,
                         const std::function<CheckReport(const AnalyticFn&)>& checker,
                         int lambda_count = 64);

/// Checker for stable_sweep: certified when the grid sup of the weighted
/// Becker functional stays within the univalence bound 1.
std::function<CheckReport(const AnalyticFn&)> becker_sufficiency_checker(
    const DiskGrid& grid, double slack = kCertifySlack);

/// Checker for stable_sweep: bound-violated when the unweighted Becker
/// functional exceeds the class-S necessity threshold 6.
std::function<CheckReport(const AnalyticFn&)> becker_necessity_checker(
    const DiskGrid& grid);

}  // namespace geoshear
