#pragma once

#include <memory>
#include <string>

#include "geoshear/complex_branch.hpp"
#include "geoshear/expr.hpp"

namespace geoshear {

struct QuadratureResult {
  Complex value{};
  double error_estimate = 0.0;
  long nodes_used = 0;
  bool converged = true;
};

// Incremental evaluation along a polyline path inside the disk.  For
// quadrature-backed functions this threads the accumulated integral and
// the branch state through consecutive chords; for closed-form functions
// it degrades to pointwise evaluation.  save/restore exist so adaptive
// refinement can rewind.
class PathTracer {
 public:
  virtual ~PathTracer() = default;
  virtual Complex advance(Complex zeta) = 0;
  virtual std::size_t save() = 0;
  virtual void restore(std::size_t token) = 0;
  virtual void discard(std::size_t token) = 0;
};

class FnNode;

/// An analytic function on the unit disk with exact derivative access.
/// Value semantics over an immutable shared node; safe to copy and to
/// evaluate concurrently.
class AnalyticFn {
 public:
  AnalyticFn() = default;
  explicit AnalyticFn(std::shared_ptr<const FnNode> node) : node_(std::move(node)) {}

  Complex value(Complex z) const;
  Complex operator()(Complex z) const { return value(z); }

  /// f'(z)
  Complex deriv(Complex z) const;

  /// f''(z) / f'(z) — the pre-Schwarzian; closed form even for
  /// quadrature-backed functions.
  Complex pre_schwarzian(Complex z) const;

  /// The derivative as a function.
  AnalyticFn derivative() const;

  /// Value together with the quadrature error estimate (exact functions
  /// report zero error).
  QuadratureResult value_quad(Complex z) const;

  std::unique_ptr<PathTracer> tracer() const;

  bool valid() const { return node_ != nullptr; }
  const std::shared_ptr<const FnNode>& node() const { return node_; }

 private:
  std::shared_ptr<const FnNode> node_;
};

// Node interface behind AnalyticFn.
class FnNode : public std::enable_shared_from_this<FnNode> {
 public:
  virtual ~FnNode() = default;
  virtual Complex value(Complex z) const = 0;
  virtual Complex deriv(Complex z) const = 0;
  virtual Complex pre_schwarzian(Complex z) const = 0;
  virtual AnalyticFn derivative() const = 0;
  virtual QuadratureResult value_quad(Complex z) const {
    return {value(z), 0.0, 0, true};
  }
  virtual std::unique_ptr<PathTracer> tracer() const;  // pointwise by default
};

// ── Named function families ─────────────────────────────────────────────
//
//   identity  z
//   cayley    z/(1-z)        half-plane map, convex
//   koebe     z/(1-z)^2      extremal for the class S
//   twostrip  z/(1-z^2)      two-slit map, starlike
//   logmap    -log(1-z)      convex, chi of the Hornich decomposition

enum class Family { Identity, Cayley, Koebe, Twostrip, Logmap };

/// Closed-form builtin with hard-coded derivatives.  Throws DomainError on
/// an unknown tag string.
AnalyticFn builtin(Family tag);
AnalyticFn builtin(const std::string& tag);
Family parse_family(const std::string& tag);
std::string family_name(Family tag);

/// Function backed by an expression tree; derivatives are symbolic.
AnalyticFn from_expr(const ExprPtr& tree);
AnalyticFn from_expr(const std::string& source);

/// z -> e^{-i theta} f(e^{i theta} z)
AnalyticFn rotate_fn(const AnalyticFn& f, double theta);

/// Constant multiple c*f.
AnalyticFn scale_fn(const AnalyticFn& f, Complex c);

}  // namespace geoshear
