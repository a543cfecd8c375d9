#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geoshear/check_report.hpp"
#include "geoshear/grid.hpp"
#include "geoshear/shear.hpp"

namespace geoshear {

// One tool invocation: the mapping under study plus which checks to run.
// JSON field names equal the CLI flag names.
struct Scenario {
  std::string phi_tag = "cayley";   // builtin family
  std::string phi_expr;             // expression override for phi
  std::string w_expr;               // dilatation generator; empty = analytic study
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  std::optional<double> delta;      // starlikeness order (builtin defaults apply)
  double gamma = 2.0;
  double c = 0.0;
  int lambda_count = 64;
  int grid_radii = 200;
  int grid_angles = 512;
  unsigned seed = 1;
  double tol = 1e-10;
  double r_test = 0.995;
  int n_boundary = 4096;
  int n_interior = 20000;
  std::vector<std::string> checks;
  std::vector<std::string> z_points;  // evaluation points (complex literals)

  static Scenario from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  void validate() const;

  AnalyticFn make_phi() const;
  AnalyticFn make_w() const;  // throws if w_expr empty
  TransformSpec make_transform_spec() const;
  QuadOptions quad_options() const { return {tol, kDefaultNodeBudget}; }
  DiskGrid make_grid() const {
    return DiskGrid::standard(grid_radii, grid_angles);
  }
  bool has_dilatation() const { return !w_expr.empty(); }

  /// delta, falling back to the known order of the builtin family.
  double effective_delta() const;
};

nlohmann::json check_report_to_json(const CheckReport& r);
CheckReport check_report_from_json(const nlohmann::json& j);

struct Report {
  int schema_version = 1;
  std::string tool_version;
  nlohmann::json scenario;
  std::vector<CheckReport> checks;
  double wall_time_ms = 0.0;
};

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

}  // namespace geoshear
