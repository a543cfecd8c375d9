#include "geoshear/transforms.hpp"

#include <functional>
#include <utility>
#include <vector>

#include "geoshear/branch_track.hpp"
#include "geoshear/errors.hpp"

namespace geoshear {

void TransformSpec::validate() const {
  if (!phi.valid()) throw DomainError("transform needs a source function phi");
  Complex p0 = phi.value({0, 0});
  Complex d0 = phi.deriv({0, 0});
  if (std::abs(p0) > 1e-8 || std::abs(d0 - Complex{1, 0}) > 1e-8)
    throw DomainError("phi must be normalized: phi(0)=0, phi'(0)=1");
}

namespace {

// u(zeta) = phi(zeta)/zeta, the ratio whose log is continued from the
// normalization seed u(0)=1.
struct RatioFn {
  AnalyticFn phi;
  Complex operator()(Complex zeta) const { return phi.value(zeta) / zeta; }
};

struct DerivFn {
  AnalyticFn phi;
  Complex operator()(Complex zeta) const { return phi.deriv(zeta); }
};

// (phi(zeta)/(zeta (1-zeta)^beta))^alpha with the tracked branch.
struct CesaroIntegrand {
  Complex alpha, beta;
  LogTracker<RatioFn> tracker;

  CesaroIntegrand(const AnalyticFn& phi, Complex a, Complex b)
      : alpha(a), beta(b), tracker(RatioFn{phi}, {0, 0}, {1, 0}, {0, 0}) {}

  Complex eval(Complex zeta) {
    Complex logu = tracker.log_at(zeta);
    // Re(1 - zeta) > 0 on the disk, so the principal log is the branch
    Complex s = alpha * (logu - beta * std::log(Complex{1, 0} - zeta));
    return std::exp(s);
  }
  std::size_t save() { return tracker.save(); }
  void restore(std::size_t t) { tracker.restore(t); }
  void discard(std::size_t t) { tracker.discard(t); }
};

// (phi'(zeta))^alpha, branch-tracked from log phi'(0).
struct PowerDerivIntegrand {
  Complex alpha;
  LogTracker<DerivFn> tracker;

  PowerDerivIntegrand(const AnalyticFn& phi, Complex a, Complex seed_w)
      : alpha(a), tracker(DerivFn{phi}, {0, 0}, seed_w, principal_log(seed_w)) {}

  Complex eval(Complex zeta) { return std::exp(alpha * tracker.log_at(zeta)); }
  std::size_t save() { return tracker.save(); }
  void restore(std::size_t t) { tracker.restore(t); }
  void discard(std::size_t t) { tracker.discard(t); }
};

void check_converged(const SegmentQuadResult<Complex>& r, Complex z) {
  if (!r.converged)
    throw NumericError("quadrature did not reach tolerance within node budget (z=(" +
                       std::to_string(z.real()) + "," + std::to_string(z.imag()) +
                       "), best error " + std::to_string(r.error_estimate) + ")");
}

// Incremental path evaluation: the accumulated integral plus the branch
// state march together along consecutive chords.
template <class Integrand>
class QuadTracer final : public PathTracer {
 public:
  QuadTracer(Integrand g, QuadOptions opts) : g_(std::move(g)), opts_(opts) {}

  Complex advance(Complex zeta) override {
    if (zeta != pos_) {
      auto r = integrate_chord<Complex>(g_, pos_, zeta, opts_.tol, opts_.node_budget);
      check_converged(r, zeta);
      value_ += r.value;
      pos_ = zeta;
    }
    return value_;
  }

  std::size_t save() override {
    stack_.push_back({pos_, value_, g_.save()});
    return stack_.size() - 1;
  }
  void restore(std::size_t token) override {
    pos_ = stack_[token].pos;
    value_ = stack_[token].value;
    g_.restore(stack_[token].inner);
    stack_.resize(token);
  }
  void discard(std::size_t token) override {
    if (token < stack_.size()) {
      g_.discard(stack_[token].inner);
      stack_.resize(token);
    }
  }

 private:
  struct Snap {
    Complex pos, value;
    std::size_t inner;
  };
  Integrand g_;
  QuadOptions opts_;
  Complex pos_{0, 0}, value_{0, 0};
  std::vector<Snap> stack_;
};

// ── C_{alpha beta} (unrotated; rotation is applied by rotate_fn) ────────

class CesaroNode;

// The transform's derivative as a function of its own: value is the
// integrand, evaluated by walking the branch from 0.
class CesaroDerivNode final : public FnNode {
 public:
  CesaroDerivNode(TransformSpec spec, QuadOptions opts)
      : spec_(std::move(spec)), opts_(opts) {}

  Complex value(Complex z) const override {
    if (z == Complex{0, 0}) return {1, 0};
    CesaroIntegrand g(spec_.phi, spec_.alpha, spec_.beta);
    return g.eval(z);
  }

  Complex deriv(Complex z) const override { return value(z) * log_deriv(z); }

  Complex pre_schwarzian(Complex z) const override {
    // (F'')'/F'' = S + S'/S where S = F''/F'
    if (z == Complex{0, 0})
      throw EvalError("pre-Schwarzian of the integrand needs z != 0", z);
    Complex s = log_deriv(z);
    Complex pp = spec_.phi.deriv(z) / spec_.phi.value(z);
    Complex one_m = Complex{1, 0} - z;
    Complex ds = spec_.alpha * (spec_.phi.pre_schwarzian(z) * pp - pp * pp +
                                1.0 / (z * z) + spec_.beta / (one_m * one_m));
    return s + ds / s;
  }

  AnalyticFn derivative() const override;

  std::unique_ptr<PathTracer> tracer() const override {
    // pointwise value is already a walk; incremental marching reuses it
    return FnNode::tracer();
  }

  // alpha (phi'/phi - 1/z + beta/(1-z)), with the removable-singularity
  // limit alpha (phi''(0)/2 + beta) near the origin.
  Complex log_deriv(Complex z) const {
    if (std::abs(z) < 1e-8) {
      Complex a2 = spec_.phi.derivative().deriv({0, 0}) / 2.0;
      return spec_.alpha * (a2 + spec_.beta);
    }
    return spec_.alpha * (spec_.phi.deriv(z) / spec_.phi.value(z) - 1.0 / z +
                          spec_.beta / (Complex{1, 0} - z));
  }

  const TransformSpec& spec() const { return spec_; }
  const QuadOptions& opts() const { return opts_; }

 private:
  TransformSpec spec_;
  QuadOptions opts_;
};

// Second derivative of the transform: integrand * its log-derivative.
class CesaroDeriv2Node final : public FnNode {
 public:
  explicit CesaroDeriv2Node(std::shared_ptr<const CesaroDerivNode> d1)
      : d1_(std::move(d1)) {}

  Complex value(Complex z) const override { return d1_->deriv(z); }
  Complex deriv(Complex z) const override {
    return value(z) * d1_->pre_schwarzian(z);
  }
  Complex pre_schwarzian(Complex) const override {
    throw DomainError("derivative chain beyond closed forms");
  }
  AnalyticFn derivative() const override {
    throw DomainError("derivative chain beyond closed forms");
  }

 private:
  std::shared_ptr<const CesaroDerivNode> d1_;
};

AnalyticFn CesaroDerivNode::derivative() const {
  return AnalyticFn(std::make_shared<CesaroDeriv2Node>(
      std::static_pointer_cast<const CesaroDerivNode>(shared_from_this())));
}

class CesaroNode final : public FnNode {
 public:
  CesaroNode(TransformSpec spec, QuadOptions opts)
      : deriv_node_(std::make_shared<CesaroDerivNode>(std::move(spec), opts)),
        opts_(opts) {}

  Complex value(Complex z) const override {
    QuadratureResult r = value_quad(z);
    return r.value;
  }

  QuadratureResult value_quad(Complex z) const override {
    if (z == Complex{0, 0}) return {Complex{0, 0}, 0.0, 0, true};
    const TransformSpec& spec = deriv_node_->spec();
    CesaroIntegrand g(spec.phi, spec.alpha, spec.beta);
    auto r = integrate_chord<Complex>(g, {0, 0}, z, opts_.tol, opts_.node_budget);
    check_converged(r, z);
    return {r.value, r.error_estimate, r.nodes_used, r.converged};
  }

  Complex deriv(Complex z) const override { return deriv_node_->value(z); }

  Complex pre_schwarzian(Complex z) const override { return deriv_node_->log_deriv(z); }

  AnalyticFn derivative() const override {
    return AnalyticFn(deriv_node_);
  }

  std::unique_ptr<PathTracer> tracer() const override {
    const TransformSpec& spec = deriv_node_->spec();
    return std::make_unique<QuadTracer<CesaroIntegrand>>(
        CesaroIntegrand(spec.phi, spec.alpha, spec.beta), opts_);
  }

 private:
  std::shared_ptr<CesaroDerivNode> deriv_node_;
  QuadOptions opts_;
};

// ── I_alpha ─────────────────────────────────────────────────────────────

class IAlphaDerivNode final : public FnNode {
 public:
  IAlphaDerivNode(AnalyticFn phi, Complex alpha, Complex seed, QuadOptions opts)
      : phi_(std::move(phi)), alpha_(alpha), seed_(seed), opts_(opts) {}

  Complex value(Complex z) const override {
    if (z == Complex{0, 0}) return std::exp(alpha_ * principal_log(seed_));
    PowerDerivIntegrand g(phi_, alpha_, seed_);
    return g.eval(z);
  }
  Complex deriv(Complex z) const override {
    return value(z) * alpha_ * phi_.pre_schwarzian(z);
  }
  Complex pre_schwarzian(Complex) const override {
    throw DomainError("derivative chain beyond closed forms");
  }
  AnalyticFn derivative() const override {
    throw DomainError("derivative chain beyond closed forms");
  }

  const AnalyticFn& phi() const { return phi_; }
  Complex alpha() const { return alpha_; }
  Complex seed() const { return seed_; }
  const QuadOptions& opts() const { return opts_; }

 private:
  AnalyticFn phi_;
  Complex alpha_, seed_;
  QuadOptions opts_;
};

class IAlphaNode final : public FnNode {
 public:
  IAlphaNode(AnalyticFn phi, Complex alpha, QuadOptions opts) : opts_(opts) {
    Complex d0 = phi.deriv({0, 0});
    if (d0 == Complex{0, 0})
      throw DomainError("I_alpha needs phi'(0) != 0 (locally univalent at 0)");
    deriv_node_ = std::make_shared<IAlphaDerivNode>(std::move(phi), alpha, d0, opts);
  }

  Complex value(Complex z) const override { return value_quad(z).value; }

  QuadratureResult value_quad(Complex z) const override {
    if (z == Complex{0, 0}) return {Complex{0, 0}, 0.0, 0, true};
    PowerDerivIntegrand g(deriv_node_->phi(), deriv_node_->alpha(), deriv_node_->seed());
    auto r = integrate_chord<Complex>(g, {0, 0}, z, opts_.tol, opts_.node_budget);
    check_converged(r, z);
    return {r.value, r.error_estimate, r.nodes_used, r.converged};
  }

  Complex deriv(Complex z) const override { return deriv_node_->value(z); }

  Complex pre_schwarzian(Complex z) const override {
    return deriv_node_->alpha() * deriv_node_->phi().pre_schwarzian(z);
  }

  AnalyticFn derivative() const override { return AnalyticFn(deriv_node_); }

  std::unique_ptr<PathTracer> tracer() const override {
    return std::make_unique<QuadTracer<PowerDerivIntegrand>>(
        PowerDerivIntegrand(deriv_node_->phi(), deriv_node_->alpha(),
                            deriv_node_->seed()),
        opts_);
  }

 private:
  std::shared_ptr<IAlphaDerivNode> deriv_node_;
  QuadOptions opts_;
};

// ── Hornich addition ────────────────────────────────────────────────────

struct ProductDerivIntegrand {
  std::unique_ptr<PathTracer> fd, gd;
  Complex eval(Complex zeta) { return fd->advance(zeta) * gd->advance(zeta); }
  std::size_t save() {
    std::size_t a = fd->save();
    gd->save();
    return a;
  }
  void restore(std::size_t t) {
    fd->restore(t);
    gd->restore(t);
  }
  void discard(std::size_t t) {
    fd->discard(t);
    gd->discard(t);
  }
};

class HornichDerivNode final : public FnNode {
 public:
  HornichDerivNode(AnalyticFn f, AnalyticFn g) : f_(std::move(f)), g_(std::move(g)) {}

  Complex value(Complex z) const override { return f_.deriv(z) * g_.deriv(z); }
  Complex deriv(Complex z) const override {
    return value(z) * (f_.pre_schwarzian(z) + g_.pre_schwarzian(z));
  }
  Complex pre_schwarzian(Complex) const override {
    throw DomainError("derivative chain beyond closed forms");
  }
  AnalyticFn derivative() const override {
    throw DomainError("derivative chain beyond closed forms");
  }

 private:
  AnalyticFn f_, g_;
};

class HornichNode final : public FnNode {
 public:
  HornichNode(AnalyticFn f, AnalyticFn g, QuadOptions opts)
      : f_(std::move(f)), g_(std::move(g)), opts_(opts) {}

  Complex value(Complex z) const override { return value_quad(z).value; }

  QuadratureResult value_quad(Complex z) const override {
    if (z == Complex{0, 0}) return {Complex{0, 0}, 0.0, 0, true};
    ProductDerivIntegrand prod{f_.derivative().tracer(), g_.derivative().tracer()};
    auto r = integrate_chord<Complex>(prod, {0, 0}, z, opts_.tol, opts_.node_budget);
    check_converged(r, z);
    return {r.value, r.error_estimate, r.nodes_used, r.converged};
  }

  Complex deriv(Complex z) const override { return f_.deriv(z) * g_.deriv(z); }

  Complex pre_schwarzian(Complex z) const override {
    return f_.pre_schwarzian(z) + g_.pre_schwarzian(z);
  }

  AnalyticFn derivative() const override {
    return AnalyticFn(std::make_shared<HornichDerivNode>(f_, g_));
  }

  std::unique_ptr<PathTracer> tracer() const override {
    return std::make_unique<QuadTracer<ProductDerivIntegrand>>(
        ProductDerivIntegrand{f_.derivative().tracer(), g_.derivative().tracer()},
        opts_);
  }

 private:
  AnalyticFn f_, g_;
  QuadOptions opts_;
};

}  // namespace

AnalyticFn cesaro_transform(const TransformSpec& spec, const QuadOptions& opts) {
  spec.validate();
  TransformSpec unrotated = spec;
  unrotated.theta = 0.0;
  AnalyticFn base(std::make_shared<CesaroNode>(unrotated, opts));
  return rotate_fn(base, spec.theta);
}

AnalyticFn j_alpha(const AnalyticFn& phi, Complex alpha, const QuadOptions& opts) {
  return cesaro_transform({alpha, Complex{0, 0}, 0.0, phi}, opts);
}

AnalyticFn c_beta(const AnalyticFn& phi, Complex beta, const QuadOptions& opts) {
  return cesaro_transform({Complex{1, 0}, beta, 0.0, phi}, opts);
}

AnalyticFn i_alpha(const AnalyticFn& phi, Complex alpha, const QuadOptions& opts) {
  return AnalyticFn(std::make_shared<IAlphaNode>(phi, alpha, opts));
}

AnalyticFn hornich_add(const AnalyticFn& f, const AnalyticFn& g,
                       const QuadOptions& opts) {
  return AnalyticFn(std::make_shared<HornichNode>(f, g, opts));
}

}  // namespace geoshear
