#include "geoshear/cli_app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "geoshear/criteria.hpp"
#include "geoshear/scenario.hpp"
#include "geoshear/svg_plot.hpp"
#include "geoshear/verify.hpp"

namespace geoshear {

namespace {

using nlohmann::json;

Complex parse_point(const std::string& text) {
  ExprPtr tree = parse(text);
  if (depends_on_z(tree)) throw DomainError("point '" + text + "' must be constant");
  return eval(tree, {0, 0});
}

struct ScenarioFlags {
  Scenario sc;
  std::string scenario_path;
  std::string out_path;
  bool json_out = false;

  void attach(CLI::App* cmd, bool with_checks) {
    cmd->add_option("--phi", sc.phi_tag, "builtin family: identity|cayley|koebe|twostrip|logmap");
    cmd->add_option("--phi-expr", sc.phi_expr, "expression for phi, e.g. \"z/(1-z)^2\"");
    cmd->add_option("--w", sc.w_expr, "dilatation generator expression, e.g. \"z/2\"");
    cmd->add_option("--alpha", sc.alpha, "transform parameter alpha");
    cmd->add_option("--beta", sc.beta, "transform parameter beta");
    cmd->add_option("--theta", sc.theta, "rotation angle (radians)");
    cmd->add_option("--delta", delta_value, "starlikeness order of phi")
        ->each([this](const std::string&) { delta_given = true; });
    cmd->add_option("--gamma", sc.gamma, "order of the linearly invariant family");
    cmd->add_option("--c", sc.c, "close-to-convexity constant, -1/2 < c <= 0");
    cmd->add_option("--lambda-count", sc.lambda_count, "unit-circle samples for stable sweeps");
    cmd->add_option("--grid-radii", sc.grid_radii, "radial grid resolution");
    cmd->add_option("--grid-angles", sc.grid_angles, "angular grid resolution");
    cmd->add_option("--seed", sc.seed, "seed for quasi-random sampling");
    cmd->add_option("--tol", sc.tol, "quadrature tolerance");
    cmd->add_option("--r-test", sc.r_test, "radius of the test circle");
    cmd->add_option("--n-boundary", sc.n_boundary, "boundary polyline resolution");
    cmd->add_option("--n-interior", sc.n_interior, "interior sample count");
    cmd->add_option("--z", sc.z_points, "evaluation points (complex literals)");
    if (with_checks)
      cmd->add_option("--check", sc.checks,
                      "checks: becker-harmonic|becker-analytic|shu-sweep|lemma-b|"
                      "lemma-e-chd|inject|boundary|sense|convex-dir|bounds");
    cmd->add_option("--scenario", scenario_path, "scenario JSON file (overrides flags)");
    cmd->add_option("--out", out_path, "output file");
    cmd->add_flag("--json", json_out, "emit JSON instead of text");
  }

  Scenario resolve() {
    if (!scenario_path.empty()) {
      std::ifstream in(scenario_path);
      if (!in) throw std::ios_base::failure("cannot read scenario file " + scenario_path);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw DomainError(std::string("scenario JSON: ") + e.what());
      }
      Scenario s = Scenario::from_json(j);
      s.validate();
      return s;
    }
    if (delta_given) sc.delta = delta_value;
    sc.validate();
    return sc;
  }

  double delta_value = 0.0;
  bool delta_given = false;
};

// ── checks ──────────────────────────────────────────────────────────────

// Certified by the weighted Becker bound 1; falsified by the unweighted
// necessity threshold 6; inconclusive in between.
CheckReport becker_univalence_check(const std::string& name, const AnalyticFn& h,
                                    const DiskGrid& grid) {
  CheckReport weighted = sup_functional(
      name, [&h](Complex z) { return becker_analytic_weighted(h, z); }, grid, 1.0);
  ScanResult plain =
      sup_scan([&h](Complex z) { return becker_analytic_functional(h, z); }, grid);
  if (plain.value > 6.0) {
    weighted.verdict = Verdict::BoundViolated;
    weighted.witnesses.push_back({plain.arg, plain.value});
    weighted.flags.push_back("necessity-threshold-6-exceeded");
  } else if (weighted.verdict == Verdict::BoundViolated) {
    // sufficiency failing proves nothing by itself
    weighted.verdict = Verdict::Inconclusive;
    weighted.flags.push_back("sufficient-bound-exceeded");
  }
  weighted.condition = "sup(1-|z|^2)|zh''/h'| <= 1 certifies; sup(1-|z|^2)|h''/h'| > 6 falsifies";
  return weighted;
}

struct CheckContext {
  Scenario sc;
  QuadOptions opts;
  DiskGrid grid;
  AnalyticFn target;  // the analytic transform C^theta_{alpha beta}[phi]
  std::optional<HarmonicShear> shear;

  PointMap point_map() const {
    DiskMapping m = shear ? mapping_of(*shear) : mapping_of(target);
    return {m, sc.r_test, sc.n_boundary, sc.n_interior, sc.seed};
  }

  const HarmonicShear& need_shear(const std::string& check) const {
    if (!shear)
      throw DomainError("check '" + check + "' needs a dilatation generator --w");
    return *shear;
  }
};

CheckReport run_one_check(const CheckContext& cx, const std::string& name) {
  const Scenario& sc = cx.sc;
  if (name == "becker-harmonic") {
    const HarmonicShear& s = cx.need_shear(name);
    return sup_functional(
        name, [&s](Complex z) { return becker_harmonic_functional(s, z); },
        cx.grid, 1.0);
  }
  if (name == "becker-analytic")
    return becker_univalence_check(name, cx.target, cx.grid);
  if (name == "shu-sweep") {
    const HarmonicShear& s = cx.need_shear(name);
    DiskGrid grid = cx.grid;
    CheckReport r = stable_sweep(
        s,
        [&grid](const AnalyticFn& member) {
          return becker_univalence_check("becker-analytic", member, grid);
        },
        sc.lambda_count);
    r.criterion = name;
    return r;
  }
  if (name == "lemma-b") return lemma_b_check(cx.need_shear(name), sc.c, cx.grid);
  if (name == "lemma-e-chd") {
    LemmaEScan scan = lemma_e_chd_scan(cx.target, cx.grid);
    CheckReport r;
    r.criterion = name;
    r.bound = 0.0;
    if (scan.chd_certified) {
      r.verdict = Verdict::Certified;
      r.sup_value = scan.min_value;
      r.argmax = scan.argmin;
      std::ostringstream os;
      os << "certifying pair mu=" << scan.mu << " nu=" << scan.nu;
      r.condition = os.str();
    } else {
      r.verdict = Verdict::BoundViolated;
      r.condition = "negative witness for every (mu,nu) sampled";
      r.flags.push_back("finite-scan");
      if (!scan.failures.empty()) {
        r.witnesses.push_back(scan.failures.front());
        r.sup_value = scan.failures.front().value;
        r.argmax = scan.failures.front().z;
      }
    }
    return r;
  }
  if (name == "inject") {
    InjectivityResult res = injectivity_test(cx.point_map());
    CheckReport r;
    r.criterion = name;
    if (res.collision_found) {
      r.verdict = Verdict::BoundViolated;
      r.condition = "collision witness found";
      r.witnesses.push_back({res.witness.z1, res.witness.image_distance});
      r.witnesses.push_back({res.witness.z2, res.witness.preimage_distance});
      r.sup_value = res.witness.image_distance;
    } else {
      r.verdict = Verdict::Certified;
      r.condition = "no collision found";
      r.flags.push_back("empirical-not-a-proof");
    }
    return r;
  }
  if (name == "boundary") {
    BoundaryResult res = boundary_simplicity(cx.point_map());
    CheckReport r;
    r.criterion = name;
    if (res.simple) {
      r.verdict = Verdict::Certified;
      r.condition = "boundary polyline is simple";
      r.flags.push_back("empirical-not-a-proof");
    } else {
      r.verdict = Verdict::BoundViolated;
      r.condition = "boundary polyline self-intersects";
      r.witnesses.push_back({res.intersection.near, 0.0});
    }
    return r;
  }
  if (name == "sense") return sense_preserving_scan(cx.need_shear(name), cx.grid);
  if (name == "convex-dir") {
    ConvexDirResult res = convex_in_direction_test(cx.point_map(), 0.0);
    CheckReport r;
    r.criterion = name;
    r.sup_value = res.max_crossings;
    r.bound = 2.0;
    r.condition = "horizontal line crossings <= 2";
    r.verdict = res.convex ? Verdict::Certified : Verdict::BoundViolated;
    if (!res.convex) r.witnesses.push_back({{0.0, res.worst_level}, double(res.max_crossings)});
    if (res.levels_skipped > 0) r.flags.push_back("tangency-levels-skipped");
    return r;
  }
  if (name == "bounds") {
    // summary check: is the scenario's alpha inside each theorem bound?
    CheckReport r;
    r.criterion = name;
    r.sup_value = sc.alpha;
    r.verdict = Verdict::Certified;
    double delta = sc.effective_delta();
    double nw = 0.0, nws = 0.0;
    bool have_norms = false;
    if (cx.shear) {
      AnalyticFn w = sc.make_w();
      nw = norm_sup(w, cx.grid);
      nws = norm_hyperbolic(w, cx.grid);
      have_norms = true;
    }
    auto add = [&r, &sc](const std::string& theorem, double bound) {
      std::ostringstream os;
      os << theorem << ": alpha <= " << bound;
      r.flags.push_back(os.str() + (sc.alpha <= bound ? " (holds)" : " (exceeded)"));
      if (sc.alpha > bound) r.verdict = Verdict::Inconclusive;
    };
    add("thm31", thm31_bound(sc.beta));
    add("thm34", thm34_bound(sc.beta, delta));
    if (have_norms) {
      add("thm37", thm37_bound(sc.beta, delta, nw));
      add("shu", shu_bound(sc.beta, nw, nws));
      add("lif-univ", lif_univ_bound(sc.gamma, sc.beta, nw, nws).alpha_max);
      add("lif-shu", lif_shu_bound(sc.gamma, sc.beta, nw, nws).alpha_max);
      if (sc.c < 0.0) add("ctc", ctc_bound(delta, sc.beta, sc.c));
      add("shcc", shcc_bound(sc.beta));
      std::ostringstream os;
      os << "norms: ||w|| = " << nw << ", ||w*|| = " << nws;
      r.condition = os.str();
    }
    return r;
  }
  throw DomainError("unknown check '" + name + "'");
}

std::vector<std::string> default_checks(bool has_shear) {
  if (has_shear) return {"sense", "inject", "boundary", "bounds"};
  return {"becker-analytic", "inject", "boundary", "bounds"};
}

int verdict_exit(const std::vector<CheckReport>& checks) {
  bool inconclusive = false;
  for (const CheckReport& c : checks) {
    if (c.verdict == Verdict::BoundViolated) return kExitViolated;
    if (c.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? kExitInconclusive : kExitOk;
}

// ── subcommands ─────────────────────────────────────────────────────────

int cmd_transform(ScenarioFlags& flags, std::ostream& out) {
  Scenario sc = flags.resolve();
  AnalyticFn f = cesaro_transform(sc.make_transform_spec(), sc.quad_options());
  if (sc.z_points.empty()) throw DomainError("transform needs at least one --z point");
  json rows = json::array();
  if (!flags.json_out) out << "# z  ->  C^theta_{alpha beta}[phi](z)   (quadrature error)\n";
  for (const std::string& zs : sc.z_points) {
    Complex z = parse_point(zs);
    QuadratureResult q = f.value_quad(z);
    if (flags.json_out) {
      rows.push_back({{"z", zs},
                      {"value", {q.value.real(), q.value.imag()}},
                      {"error", q.error_estimate}});
    } else {
      out << zs << "  ->  " << q.value.real();
      out << (q.value.imag() < 0 ? " - " : " + ") << std::abs(q.value.imag()) << "i";
      out << "   (err " << q.error_estimate << ")\n";
    }
  }
  if (flags.json_out) out << rows.dump(2) << "\n";
  return kExitOk;
}

int cmd_shear(ScenarioFlags& flags, std::ostream& out) {
  Scenario sc = flags.resolve();
  HarmonicShear s = build_F(sc.make_transform_spec(), sc.make_w(), sc.quad_options());
  if (sc.z_points.empty()) throw DomainError("shear needs at least one --z point");
  json rows = json::array();
  if (!flags.json_out) {
    for (const std::string& f : s.flags) out << "# flag: " << f << "\n";
    out << "# z  ->  H(z)  G(z)  F(z)=H+conj(G)  omega(z)  J_F(z)\n";
  }
  for (const std::string& zs : sc.z_points) {
    Complex z = parse_point(zs);
    auto [h, g] = s.parts(z);
    Complex fv = h + std::conj(g);
    if (flags.json_out) {
      Complex w = s.omega.value(z);
      rows.push_back({{"z", zs},
                      {"H", {h.real(), h.imag()}},
                      {"G", {g.real(), g.imag()}},
                      {"F", {fv.real(), fv.imag()}},
                      {"omega", {w.real(), w.imag()}},
                      {"jacobian", jacobian(s, z)}});
    } else {
      out << zs << "  ->  " << h << "  " << g << "  " << fv << "  "
          << s.omega.value(z) << "  " << jacobian(s, z) << "\n";
    }
  }
  if (flags.json_out) {
    json doc{{"flags", s.flags}, {"values", rows}};
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_check(ScenarioFlags& flags, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  Scenario sc = flags.resolve();

  CheckContext cx{sc, sc.quad_options(), sc.make_grid(), {}, std::nullopt};
  cx.target = cesaro_transform(sc.make_transform_spec(), cx.opts);
  if (sc.has_dilatation())
    cx.shear = build_F(sc.make_transform_spec(), sc.make_w(), cx.opts);

  std::vector<std::string> checks =
      sc.checks.empty() ? default_checks(sc.has_dilatation()) : sc.checks;

  Report report;
  report.tool_version = kToolVersion;
  report.scenario = sc.to_json();
  for (const std::string& name : checks)
    report.checks.push_back(run_one_check(cx, name));
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();

  json j = report_to_json(report);
  if (!flags.out_path.empty()) {
    std::ofstream f(flags.out_path);
    if (!f) throw std::ios_base::failure("cannot write " + flags.out_path);
    f << j.dump(2) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return verdict_exit(report.checks);
}

int cmd_bounds(const std::string& theorem, ScenarioFlags& flags, double norm_w,
               double norm_wstar, std::ostream& out) {
  Scenario sc = flags.resolve();
  if (sc.has_dilatation() && norm_w < 0) {
    DiskGrid grid = sc.make_grid();
    AnalyticFn w = sc.make_w();
    norm_w = norm_sup(w, grid);
    norm_wstar = norm_hyperbolic(w, grid);
  }
  if (norm_w < 0) norm_w = 1.0;      // worst case for a self-map
  if (norm_wstar < 0) norm_wstar = 1.0;
  double delta = sc.delta ? *sc.delta : sc.effective_delta();
  std::string condition;
  double bound =
      bound_by_name(theorem, sc.beta, delta, sc.gamma, sc.c, norm_w, norm_wstar,
                    &condition);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", bound);
  out << buf << "\n";
  out << "# " << theorem << ": " << condition << "\n";
  return kExitOk;
}

int cmd_plot(ScenarioFlags& flags, std::ostream&) {
  Scenario sc = flags.resolve();
  if (flags.out_path.empty()) throw std::ios_base::failure("plot needs --out file.svg");
  DiskMapping m;
  if (sc.has_dilatation()) {
    HarmonicShear s = build_F(sc.make_transform_spec(), sc.make_w(), sc.quad_options());
    m = mapping_of(s);
  } else {
    m = mapping_of(cesaro_transform(sc.make_transform_spec(), sc.quad_options()));
  }
  PlotOptions opts;
  opts.r_test = sc.r_test;
  std::string svg = render_svg(m, opts);
  std::ofstream f(flags.out_path);
  if (!f) throw std::ios_base::failure("cannot write " + flags.out_path);
  f << svg;
  if (!f) throw std::ios_base::failure("failed writing " + flags.out_path);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Cesàro-type transforms, harmonic shears, and univalence checks"};
  app.require_subcommand(1);

  ScenarioFlags tf, sf, cf, bf, pf;
  std::string theorem;
  double norm_w = -1.0, norm_wstar = -1.0;

  CLI::App* transform = app.add_subcommand("transform", "evaluate the integral transform");
  tf.attach(transform, false);
  CLI::App* shear = app.add_subcommand("shear", "evaluate the harmonic shear");
  sf.attach(shear, false);
  CLI::App* check = app.add_subcommand("check", "run criteria and emit a JSON report");
  cf.attach(check, true);
  CLI::App* bounds = app.add_subcommand("bounds", "theorem parameter bounds");
  bf.attach(bounds, false);
  bounds->add_option("--theorem", theorem,
                     "thm31|thm34|thm37|lif-univ|shu|lif-shu|ctc|shcc")
      ->required();
  bounds->add_option("--norm-w", norm_w, "override ||w||");
  bounds->add_option("--norm-wstar", norm_wstar, "override ||w*||");
  CLI::App* plot = app.add_subcommand("plot", "render the disk image as SVG");
  pf.attach(plot, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help goes to stdout and exits cleanly
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (transform->parsed()) return cmd_transform(tf, out);
    if (shear->parsed()) return cmd_shear(sf, out);
    if (check->parsed()) return cmd_check(cf, out);
    if (bounds->parsed()) return cmd_bounds(theorem, bf, norm_w, norm_wstar, out);
    if (plot->parsed()) return cmd_plot(pf, out);
    err << "error: no subcommand\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EvalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace geoshear
