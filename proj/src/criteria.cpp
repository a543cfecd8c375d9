#include "geoshear/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "geoshear/quadrature.hpp"

namespace geoshear {

namespace {
constexpr double kPi = std::numbers::pi;
}

// ── Pointwise functionals ───────────────────────────────────────────────

Complex pre_schwarzian_analytic(const AnalyticFn& h, Complex z) {
  return h.pre_schwarzian(z);
}

Complex pre_schwarzian_harmonic(Complex h_ps, Complex omega, Complex omega_deriv) {
  double m = std::norm(omega);
  if (m >= 1.0)
    throw DomainError("not sense-preserving: |omega| >= 1");
  return h_ps - std::conj(omega) * omega_deriv / (1.0 - m);
}

Complex pre_schwarzian_harmonic(const HarmonicShear& s, Complex z) {
  return pre_schwarzian_harmonic(s.H.pre_schwarzian(z), s.omega.value(z),
                                 s.omega.deriv(z));
}

double becker_harmonic_functional(const HarmonicShear& s, Complex z) {
  Complex w = s.omega.value(z);
  Complex wp = s.omega.deriv(z);
  double m = std::norm(w);
  if (m >= 1.0) throw DomainError("not sense-preserving: |omega| >= 1");
  double one_minus_r2 = 1.0 - std::norm(z);
  Complex p = pre_schwarzian_harmonic(s.H.pre_schwarzian(z), w, wp);
  return one_minus_r2 * std::abs(z * p) +
         std::abs(z * wp) * one_minus_r2 / (1.0 - m);
}

double becker_analytic_functional(const AnalyticFn& h, Complex z) {
  return (1.0 - std::norm(z)) * std::abs(h.pre_schwarzian(z));
}

double becker_analytic_weighted(const AnalyticFn& h, Complex z) {
  return (1.0 - std::norm(z)) * std::abs(z * h.pre_schwarzian(z));
}

double convexity_functional(const AnalyticFn& h, Complex z) {
  return 1.0 + (z * h.pre_schwarzian(z)).real();
}

double lemma_e_form(const AnalyticFn& phi, double mu, double nu, Complex z) {
  Complex emi = std::polar(1.0, -mu);
  Complex factor = 1.0 - 2.0 * z * emi * std::cos(nu) + z * z * emi * emi;
  return (std::polar(1.0, mu) * factor * phi.deriv(z)).real();
}

// ── Grid scans ──────────────────────────────────────────────────────────

namespace {

// sign = +1 maximize, -1 minimize; result reported in original sign.
ScanResult extremum_scan(const std::function<double(Complex)>& f,
                         const DiskGrid& grid, double sign) {
  ScanResult out;
  bool found = false;
  double best = 0.0;
  int best_i = 0, best_j = 0;
  for (std::size_t i = 0; i < grid.radii.size(); ++i) {
    for (int j = 0; j < grid.angles; ++j) {
      Complex z = grid.point(int(i), j);
      double v;
      try {
        v = f(z);
      } catch (const std::exception&) {
        ++out.errored;
        continue;
      }
      ++out.evaluated;
      if (!std::isfinite(v)) {
        ++out.errored;
        continue;
      }
      if (!found || sign * v > sign * best) {
        found = true;
        best = v;
        best_i = int(i);
        best_j = int(j);
        out.arg = z;
      }
    }
  }
  if (!found) throw NumericError("functional errored at every grid point");

  // local refinement around the argmax cell
  double r_lo = best_i > 0 ? grid.radii[best_i - 1] : grid.radii[best_i] * 0.5;
  double r_hi = best_i + 1 < int(grid.radii.size()) ? grid.radii[best_i + 1]
                                                    : grid.radii[best_i];
  double dt = 2.0 * kPi / grid.angles;
  double t_mid = dt * best_j;
  double t_lo = t_mid - dt, t_hi = t_mid + dt;
  for (int level = 0; level < grid.refine_levels; ++level) {
    int n = 2 * grid.refine_factor;  // (n+1)^2 samples per level
    double r_best = 0, t_best = 0;
    bool improved = false;
    for (int a = 0; a <= n; ++a) {
      double r = r_lo + (r_hi - r_lo) * a / n;
      if (r <= 0.0 || r >= 1.0) continue;
      for (int b = 0; b <= n; ++b) {
        double t = t_lo + (t_hi - t_lo) * b / n;
        Complex z = std::polar(r, t);
        double v;
        try {
          v = f(z);
        } catch (const std::exception&) {
          continue;
        }
        ++out.evaluated;
        if (std::isfinite(v) && sign * v > sign * best) {
          best = v;
          out.arg = z;
          r_best = r;
          t_best = t;
          improved = true;
        }
      }
    }
    double r_span = (r_hi - r_lo) / grid.refine_factor;
    double t_span = (t_hi - t_lo) / grid.refine_factor;
    if (!improved) {
      // shrink around the incumbent best point
      r_best = std::abs(out.arg);
      t_best = std::arg(out.arg);
    }
    r_lo = std::max(r_best - r_span / 2, 0.0);
    r_hi = std::min(r_best + r_span / 2, grid.radii.back());
    t_lo = t_best - t_span / 2;
    t_hi = t_best + t_span / 2;
  }
  out.value = best;
  return out;
}

}  // namespace

ScanResult sup_scan(const std::function<double(Complex)>& f, const DiskGrid& grid) {
  return extremum_scan(f, grid, +1.0);
}

ScanResult min_scan(const std::function<double(Complex)>& f, const DiskGrid& grid) {
  return extremum_scan(f, grid, -1.0);
}

CheckReport sup_functional(const std::string& name,
                           const std::function<double(Complex)>& f,
                           const DiskGrid& grid, double bound, double slack) {
  ScanResult s = sup_scan(f, grid);
  CheckReport r;
  r.criterion = name;
  r.sup_value = s.value;
  r.argmax = s.arg;
  r.bound = bound;
  if (s.errored > 0) r.flags.push_back("grid-points-skipped");
  if (s.value > bound) {
    r.verdict = Verdict::BoundViolated;
    r.witnesses.push_back({s.arg, s.value});
  } else if (s.value <= bound - slack) {
    r.verdict = Verdict::Certified;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

double norm_sup(const AnalyticFn& w, const DiskGrid& grid) {
  ScanResult s = sup_scan(
      [&w](Complex z) {
        double m = std::abs(w.value(z));
        if (m >= 1.0) throw DomainError("|w| >= 1 inside the disk");
        return m;
      },
      grid);
  if (s.errored > 0) throw DomainError("|w| >= 1 at a grid point");
  return s.value;
}

double norm_hyperbolic(const AnalyticFn& w, const DiskGrid& grid) {
  ScanResult s = sup_scan(
      [&w](Complex z) {
        double m = std::norm(w.value(z));
        if (m >= 1.0) throw DomainError("|w| >= 1 inside the disk");
        return std::abs(w.deriv(z)) * (1.0 - std::norm(z)) / (1.0 - m);
      },
      grid);
  if (s.errored > 0) throw DomainError("|w| >= 1 at a grid point");
  return s.value;
}

// ── Theorem bound calculators ───────────────────────────────────────────

double thm31_bound(double beta) { return 1.0 / (2.0 * (2.0 + std::abs(beta))); }

double thm34_bound(double beta, double delta) {
  Params{0, beta, 0, delta}.validate();
  return 3.0 / (beta + 2.0 * (1.0 - delta));
}

double thm37_bound(double beta, double delta, double norm_w) {
  Params{0, beta, 0, delta}.validate();
  double a1 = 2.0 / (beta + 2.0 * (1.0 - delta));
  if (norm_w <= 0.0) return a1;
  double a2 = 1.0 / (3.0 * (1.0 + beta) * norm_w);
  return std::min(a1, a2);
}

double shu_bound(double beta, double norm_w, double norm_wstar) {
  return 1.0 /
         (2.0 * (2.0 + beta + (1.0 + beta) * norm_wstar * (1.0 + norm_w)));
}

namespace {

bool lif_case_a(double beta, double nw, double nws) {
  return beta + 2.0 * (1.0 + beta) * nws * (1.0 + nw) <= 2.0 * (1.0 - beta);
}

}  // namespace

LifBound lif_univ_bound(double gamma, double beta, double nw, double nws) {
  if (!(gamma >= 1.0)) throw DomainError("gamma must be >= 1");
  if (!(beta >= 0.0)) throw DomainError("beta must be >= 0");
  double eq33 = 1.0 / (2.0 * gamma + 2.0 * beta + (1.0 + beta) * nws * (1.0 + nw));
  if (beta >= 1.0) return {eq33, "beta >= 1"};
  if (lif_case_a(beta, nw, nws)) {
    double q = beta + (1.0 + beta) * nws * (1.0 + nw);
    double denom = 4.0 * (2.0 * gamma + 1.0) * (1.0 - beta) + q * q +
                   4.0 * (1.0 - beta * beta) * nws;
    return {4.0 * (1.0 - beta) / denom, "case (a)"};
  }
  return {eq33, "case (b)"};
}

LifBound lif_shu_bound(double gamma, double beta, double nw, double nws) {
  if (!(gamma >= 1.0)) throw DomainError("gamma must be >= 1");
  if (!(beta >= 0.0)) throw DomainError("beta must be >= 0");
  double eq44 =
      1.0 / (2.0 * (gamma + beta + (1.0 + beta) * nws * (1.0 + nw)));
  if (beta >= 1.0) return {eq44, "beta >= 1"};
  if (lif_case_a(beta, nw, nws)) {
    double q = beta + 2.0 * (1.0 + beta) * nws * (1.0 + nw);
    double denom = 4.0 * (2.0 * gamma + 1.0) * (1.0 - beta) + q * q;
    return {4.0 * (1.0 - beta) / denom, "case (a)"};
  }
  return {eq44, "case (b)"};
}

double ctc_bound(double delta, double beta, double c) {
  Params p;
  p.beta = beta;
  p.delta = delta;
  p.c = c;
  p.validate();
  double a1 = 1.0 / (1.0 + beta);
  double a2 = c == 0.0 ? 0.0 : -2.0 * c / (2.0 * (1.0 - delta) + beta);
  return std::min(a1, a2);
}

double shcc_bound(double beta) {
  if (!(beta >= 0.0)) throw DomainError("beta must be >= 0");
  return 1.0 / ((1.0 + beta) * std::sqrt(2.0));
}

double bound_by_name(const std::string& theorem, double beta, double delta,
                     double gamma, double c, double norm_w, double norm_wstar,
                     std::string* condition_out) {
  auto set = [&](const std::string& s) {
    if (condition_out) *condition_out = s;
  };
  if (theorem == "thm31") {
    set("alpha <= 1/(2(2+|beta|))");
    return thm31_bound(beta);
  }
  if (theorem == "thm34") {
    set("alpha(beta+2(1-delta)) <= 3");
    return thm34_bound(beta, delta);
  }
  if (theorem == "thm37") {
    set("alpha(beta+2(1-delta)) <= 2 and alpha(1+beta)||w|| < 1/3");
    return thm37_bound(beta, delta, norm_w);
  }
  if (theorem == "shu") {
    set("alpha <= 1/(2(2+beta+(1+beta)||w*||(1+||w||)))");
    return shu_bound(beta, norm_w, norm_wstar);
  }
  if (theorem == "lif-univ") {
    LifBound b = lif_univ_bound(gamma, beta, norm_w, norm_wstar);
    set(b.case_used);
    return b.alpha_max;
  }
  if (theorem == "lif-shu") {
    LifBound b = lif_shu_bound(gamma, beta, norm_w, norm_wstar);
    set(b.case_used);
    return b.alpha_max;
  }
  if (theorem == "ctc") {
    set("alpha(1+beta) <= 1 and alpha(2(1-delta)+beta) <= -2c");
    return ctc_bound(delta, beta, c);
  }
  if (theorem == "shcc") {
    set("alpha <= 1/((1+beta) sqrt 2)");
    return shcc_bound(beta);
  }
  throw DomainError("unknown theorem '" + theorem +
                    "' (thm31|thm34|thm37|lif-univ|shu|lif-shu|ctc|shcc)");
}

// ── Criterion checks ────────────────────────────────────────────────────

CheckReport lemma_b_check(const HarmonicShear& s, double c, const DiskGrid& grid,
                          double slack) {
  if (!(c > -0.5 && c <= 0.0)) throw DomainError("c must be in (-1/2, 0]");
  (void)slack;  // the clauses are strict inequalities; grid values decide
  CheckReport r;
  r.criterion = "lemma-b";
  double cosc = std::cos(kPi * std::abs(c));
  r.condition = "Re[1+zH''/H'] > c and sup|omega| < cos(pi|c|)";

  ScanResult conv = min_scan(
      [&s](Complex z) { return convexity_functional(s.H, z); }, grid);
  ScanResult omg =
      sup_scan([&s](Complex z) { return std::abs(s.omega.value(z)); }, grid);

  r.sup_value = omg.value;
  r.argmax = omg.arg;
  r.bound = cosc;
  r.witnesses.push_back({conv.arg, conv.value});

  if (conv.value <= c || omg.value >= cosc) {
    r.verdict = Verdict::BoundViolated;
    if (conv.value <= c) {
      r.flags.push_back("convexity-clause-violated");
      r.witnesses.push_back({conv.arg, conv.value});
    }
    if (omg.value >= cosc) {
      r.flags.push_back("dilatation-clause-violated");
      r.witnesses.push_back({omg.arg, omg.value});
    }
  } else {
    r.verdict = Verdict::Certified;
  }
  return r;
}

double ctc_arc_integral(const AnalyticFn& h, double r, double t1, double t2) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must be in (0,1)");
  if (!(t1 < t2 && t2 <= t1 + 2.0 * kPi))
    throw DomainError("need t1 < t2 <= t1 + 2 pi");
  return integrate_real(
      [&h, r](double t) {
        return convexity_functional(h, std::polar(r, t));
      },
      t1, t2, 1e-9);
}

double arcsin_bound(double r, double alpha, double beta) {
  double x = r * alpha * (1.0 + beta);
  if (x > 1.0) throw DomainError("r alpha (1+beta) must be <= 1");
  return 2.0 * std::asin(x);
}

LemmaEScan lemma_e_chd_scan(const AnalyticFn& phi, const DiskGrid& grid,
                            int mu_count, int nu_count) {
  if (mu_count < 1 || nu_count < 1) throw DomainError("scan counts must be >= 1");
  LemmaEScan out;

  // phi' is reused for every (mu, nu); precompute it over the grid
  const std::size_t nr = grid.radii.size();
  std::vector<Complex> zs, dphis;
  zs.reserve(nr * grid.angles);
  dphis.reserve(nr * grid.angles);
  for (std::size_t i = 0; i < nr; ++i)
    for (int j = 0; j < grid.angles; ++j) {
      Complex z = grid.point(int(i), j);
      zs.push_back(z);
      dphis.push_back(phi.deriv(z));
    }

  for (int a = 0; a < mu_count && !out.chd_certified; ++a) {
    double mu = 2.0 * kPi * a / mu_count;
    Complex ei = std::polar(1.0, mu), emi = std::polar(1.0, -mu);
    Complex emi2 = emi * emi;
    for (int b = 0; b < nu_count; ++b) {
      double nu = nu_count == 1 ? 0.0 : kPi * b / (nu_count - 1);
      double cn = std::cos(nu);
      ++out.pairs_tested;
      double mn = 0.0;
      Complex argmin{};
      bool first = true;
      bool negative = false;
      for (std::size_t k = 0; k < zs.size(); ++k) {
        Complex z = zs[k];
        double v = (ei * (1.0 - 2.0 * z * emi * cn + z * z * emi2) * dphis[k]).real();
        if (first || v < mn) {
          first = false;
          mn = v;
          argmin = z;
        }
        if (v < 0.0) {
          negative = true;
          break;  // this pair is falsified; witness recorded below
        }
      }
      if (negative) {
        out.failures.push_back({argmin, mn});
      } else {
        out.chd_certified = true;
        out.mu = mu;
        out.nu = nu;
        out.min_value = mn;
        out.argmin = argmin;
        break;
      }
    }
  }
  return out;
}

CheckReport stable_sweep(const HarmonicShear& s,
                         const std::function<CheckReport(const AnalyticFn&)>& checker,
                         int lambda_count) {
  if (lambda_count < 1) throw DomainError("lambda_count must be >= 1");
  CheckReport r;
  r.criterion = "stable-sweep";
  r.verdict = Verdict::Certified;
  for (int k = 0; k < lambda_count; ++k) {
    Complex lambda = std::polar(1.0, 2.0 * kPi * k / lambda_count);
    AnalyticFn member = lambda_family(s, lambda);
    CheckReport one = checker(member);
    r.sup_value = std::max(r.sup_value, one.sup_value);
    r.bound = one.bound;
    if (one.verdict == Verdict::BoundViolated) {
      r.verdict = Verdict::BoundViolated;
      r.witnesses.push_back({lambda, one.sup_value});
      r.argmax = one.argmax;
      r.condition = "failed at lambda #" + std::to_string(k);
      for (auto& f : one.flags) r.flags.push_back(std::move(f));
      return r;
    }
    if (one.verdict == Verdict::Inconclusive) r.verdict = Verdict::Inconclusive;
  }
  r.condition = "all " + std::to_string(lambda_count) + " lambda samples passed";
  return r;
}

std::function<CheckReport(const AnalyticFn&)> becker_sufficiency_checker(
    const DiskGrid& grid, double slack) {
  return [grid, slack](const AnalyticFn& h) {
    CheckReport r = sup_functional(
        "becker-weighted",
        [&h](Complex z) { return becker_analytic_weighted(h, z); }, grid, 1.0,
        slack);
    // exceeding a sufficient bound falsifies nothing
    if (r.verdict == Verdict::BoundViolated) {
      r.verdict = Verdict::Inconclusive;
      r.flags.push_back("sufficient-bound-exceeded");
    }
    return r;
  };
}

std::function<CheckReport(const AnalyticFn&)> becker_necessity_checker(
    const DiskGrid& grid) {
  return [grid](const AnalyticFn& h) {
    CheckReport r = sup_functional(
        "becker-necessity",
        [&h](Complex z) { return becker_analytic_functional(h, z); }, grid, 6.0,
        0.0);
    // staying under the necessity threshold proves nothing
    if (r.verdict != Verdict::BoundViolated) r.verdict = Verdict::Inconclusive;
    return r;
  };
}

}  // namespace geoshear
