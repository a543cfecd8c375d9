#include "geoshear/scenario.hpp"

#include "geoshear/errors.hpp"

namespace geoshear {

using nlohmann::json;

Scenario Scenario::from_json(const json& j) {
  Scenario s;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("phi", s.phi_tag);
  get("phi-expr", s.phi_expr);
  get("w", s.w_expr);
  get("alpha", s.alpha);
  get("beta", s.beta);
  get("theta", s.theta);
  if (j.contains("delta") && !j.at("delta").is_null())
    s.delta = j.at("delta").get<double>();
  get("gamma", s.gamma);
  get("c", s.c);
  get("lambda-count", s.lambda_count);
  get("grid-radii", s.grid_radii);
  get("grid-angles", s.grid_angles);
  get("seed", s.seed);
  get("tol", s.tol);
  get("r-test", s.r_test);
  get("n-boundary", s.n_boundary);
  get("n-interior", s.n_interior);
  get("checks", s.checks);
  get("z", s.z_points);
  return s;
}

json Scenario::to_json() const {
  json j;
  j["phi"] = phi_tag;
  if (!phi_expr.empty()) j["phi-expr"] = phi_expr;
  if (!w_expr.empty()) j["w"] = w_expr;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["theta"] = theta;
  if (delta) j["delta"] = *delta;
  j["gamma"] = gamma;
  j["c"] = c;
  j["lambda-count"] = lambda_count;
  j["grid-radii"] = grid_radii;
  j["grid-angles"] = grid_angles;
  j["seed"] = seed;
  j["tol"] = tol;
  j["r-test"] = r_test;
  j["n-boundary"] = n_boundary;
  j["n-interior"] = n_interior;
  if (!checks.empty()) j["checks"] = checks;
  if (!z_points.empty()) j["z"] = z_points;
  return j;
}

void Scenario::validate() const {
  if (phi_expr.empty()) parse_family(phi_tag);  // throws on unknown tag
  if (!(tol > 0)) throw DomainError("tol must be positive");
  if (grid_radii < 1 || grid_angles < 8) throw DomainError("grid too small");
  if (!(r_test > 0 && r_test < 1)) throw DomainError("r-test must be in (0,1)");
  if (lambda_count < 1) throw DomainError("lambda-count must be >= 1");
  if (delta && !(*delta >= 0.0 && *delta < 1.0))
    throw DomainError("delta must be in [0,1)");
  if (!(c > -0.5 && c <= 0.0)) throw DomainError("c must be in (-1/2, 0]");
  if (!(gamma >= 1.0)) throw DomainError("gamma must be >= 1");
}

AnalyticFn Scenario::make_phi() const {
  if (!phi_expr.empty()) return from_expr(phi_expr);
  return builtin(phi_tag);
}

AnalyticFn Scenario::make_w() const {
  if (w_expr.empty()) throw DomainError("this operation needs a dilatation generator --w");
  return from_expr(w_expr);
}

TransformSpec Scenario::make_transform_spec() const {
  return {Complex{alpha, 0}, Complex{beta, 0}, theta, make_phi()};
}

double Scenario::effective_delta() const {
  if (delta) return *delta;
  if (!phi_expr.empty())
    throw DomainError("expression phi needs an explicit --delta");
  switch (parse_family(phi_tag)) {
    case Family::Cayley: return 0.5;
    case Family::Koebe: return 0.0;
    case Family::Twostrip: return 0.0;
    case Family::Identity: return 0.5;
    case Family::Logmap: return 0.5;  // logmap is convex
  }
  return 0.0;
}

json check_report_to_json(const CheckReport& r) {
  json j;
  j["criterion"] = r.criterion;
  j["sup-value"] = r.sup_value;
  j["argmax"] = {r.argmax.real(), r.argmax.imag()};
  j["bound"] = r.bound;
  j["condition"] = r.condition;
  j["verdict"] = verdict_name(r.verdict);
  json w = json::array();
  for (const auto& wit : r.witnesses)
    w.push_back({wit.z.real(), wit.z.imag(), wit.value});
  j["witnesses"] = w;
  j["flags"] = r.flags;
  return j;
}

CheckReport check_report_from_json(const json& j) {
  CheckReport r;
  r.criterion = j.at("criterion").get<std::string>();
  r.sup_value = j.at("sup-value").get<double>();
  r.argmax = {j.at("argmax")[0].get<double>(), j.at("argmax")[1].get<double>()};
  r.bound = j.at("bound").get<double>();
  r.condition = j.at("condition").get<std::string>();
  std::string v = j.at("verdict").get<std::string>();
  r.verdict = v == "certified" ? Verdict::Certified
            : v == "bound-violated" ? Verdict::BoundViolated
                                    : Verdict::Inconclusive;
  for (const auto& wit : j.at("witnesses"))
    r.witnesses.push_back(
        {{wit[0].get<double>(), wit[1].get<double>()}, wit[2].get<double>()});
  r.flags = j.at("flags").get<std::vector<std::string>>();
  return r;
}

json report_to_json(const Report& r) {
  json j;
  j["schema-version"] = r.schema_version;
  j["tool-version"] = r.tool_version;
  j["scenario"] = r.scenario;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_report_to_json(c));
  j["checks"] = checks;
  j["wall-time-ms"] = r.wall_time_ms;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.schema_version = j.at("schema-version").get<int>();
  r.tool_version = j.at("tool-version").get<std::string>();
  r.scenario = j.at("scenario");
  for (const auto& c : j.at("checks")) r.checks.push_back(check_report_from_json(c));
  r.wall_time_ms = j.at("wall-time-ms").get<double>();
  return r;
}

}  // namespace geoshear
