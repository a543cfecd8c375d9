#include "geoshear/shear.hpp"

#include <cmath>
#include <numbers>

#include "geoshear/errors.hpp"

namespace geoshear {

// (H', G') at zeta, sharing one branch-tracked phi' evaluation.
struct ShearIntegrand {
  std::unique_ptr<PathTracer> phi_deriv;
  AnalyticFn omega;

  DualComplex eval(Complex zeta) {
    Complex p = phi_deriv->advance(zeta);
    Complex w = omega.value(zeta);
    Complex d = Complex{1, 0} - w;
    if (d == Complex{0, 0})
      throw NumericError("shear breaks down: omega(zeta) = 1 on the path");
    return {p / d, p * w / d};
  }
  std::size_t save() { return phi_deriv->save(); }
  void restore(std::size_t t) { phi_deriv->restore(t); }
  void discard(std::size_t t) { phi_deriv->discard(t); }
};

struct ShearCore {
  AnalyticFn phi, omega;
  QuadOptions opts;

  ShearIntegrand integrand() const { return {phi.derivative().tracer(), omega}; }

  DualComplex integral_to(Complex z) const {
    if (z == Complex{0, 0}) return {};
    ShearIntegrand g = integrand();
    auto r = integrate_chord<DualComplex>(g, {0, 0}, z, opts.tol, opts.node_budget);
    if (!r.converged)
      throw NumericError("shear quadrature did not converge (best error " +
                         std::to_string(r.error_estimate) + ")");
    return r.value;
  }
};

namespace {

using CorePtr = std::shared_ptr<const ShearCore>;

class DerivViewNode final : public FnNode {
 public:
  explicit DerivViewNode(AnalyticFn parent) : parent_(std::move(parent)) {}
  Complex value(Complex z) const override { return parent_.deriv(z); }
  Complex deriv(Complex z) const override {
    return parent_.deriv(z) * parent_.pre_schwarzian(z);
  }
  Complex pre_schwarzian(Complex) const override {
    throw DomainError("derivative chain beyond closed forms");
  }
  AnalyticFn derivative() const override {
    throw DomainError("derivative chain beyond closed forms");
  }

 private:
  AnalyticFn parent_;
};

// part: 0 -> H, 1 -> G, else Phi_lambda = H + lambda G.
class ShearMemberNode final : public FnNode {
 public:
  enum Part { kH = 0, kG = 1, kLambda = 2 };

  ShearMemberNode(CorePtr core, Part part, Complex lambda = {1, 0})
      : core_(std::move(core)), part_(part), lambda_(lambda) {}

  Complex value(Complex z) const override {
    DualComplex hg = core_->integral_to(z);
    switch (part_) {
      case kH: return hg.a;
      case kG: return hg.b;
      default: return hg.a + lambda_ * hg.b;
    }
  }

  Complex deriv(Complex z) const override {
    Complex hp = core_->phi.deriv(z) / (Complex{1, 0} - core_->omega.value(z));
    switch (part_) {
      case kH: return hp;
      case kG: return core_->omega.value(z) * hp;
      default: return hp * (Complex{1, 0} + lambda_ * core_->omega.value(z));
    }
  }

  Complex pre_schwarzian(Complex z) const override {
    Complex w = core_->omega.value(z);
    Complex wp = core_->omega.deriv(z);
    Complex h_ps = core_->phi.pre_schwarzian(z) + wp / (Complex{1, 0} - w);
    switch (part_) {
      case kH: return h_ps;
      case kG:
        if (w == Complex{0, 0})
          throw EvalError("G''/G' undefined where omega vanishes", z);
        return h_ps + wp / w;
      default: return h_ps + lambda_ * wp / (Complex{1, 0} + lambda_ * w);
    }
  }

  AnalyticFn derivative() const override {
    return AnalyticFn(std::make_shared<DerivViewNode>(
        AnalyticFn(shared_from_this())));
  }

  QuadratureResult value_quad(Complex z) const override {
    if (z == Complex{0, 0}) return {Complex{0, 0}, 0.0, 0, true};
    ShearIntegrand g = core_->integrand();
    auto r = integrate_chord<DualComplex>(g, {0, 0}, z, core_->opts.tol,
                                          core_->opts.node_budget);
    Complex v = part_ == kH ? r.value.a
              : part_ == kG ? r.value.b
                            : r.value.a + lambda_ * r.value.b;
    return {v, r.error_estimate, r.nodes_used, r.converged};
  }

  std::unique_ptr<PathTracer> tracer() const override;

 private:
  CorePtr core_;
  Part part_;
  Complex lambda_;
};

class ShearMemberTracer final : public PathTracer {
 public:
  ShearMemberTracer(CorePtr core, int part, Complex lambda)
      : core_(std::move(core)), g_(core_->integrand()), part_(part), lambda_(lambda) {}

  Complex advance(Complex zeta) override {
    if (zeta != pos_) {
      auto r = integrate_chord<DualComplex>(g_, pos_, zeta, core_->opts.tol,
                                            core_->opts.node_budget);
      if (!r.converged) throw NumericError("shear quadrature did not converge");
      value_ += r.value;
      pos_ = zeta;
    }
    switch (part_) {
      case 0: return value_.a;
      case 1: return value_.b;
      default: return value_.a + lambda_ * value_.b;
    }
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
    g_.discard(stack_[token].inner);
    stack_.resize(token);
  }

 private:
  struct Snap {
    Complex pos;
    DualComplex value;
    std::size_t inner;
  };
  CorePtr core_;
  ShearIntegrand g_;
  int part_;
  Complex lambda_;
  Complex pos_{0, 0};
  DualComplex value_{};
  std::vector<Snap> stack_;
};

std::unique_ptr<PathTracer> ShearMemberNode::tracer() const {
  return std::make_unique<ShearMemberTracer>(core_, part_, lambda_);
}

class ShearPairTracer final : public ShearPathTracer {
 public:
  explicit ShearPairTracer(CorePtr core) : core_(std::move(core)), g_(core_->integrand()) {}

  std::pair<Complex, Complex> advance(Complex zeta) override {
    if (zeta != pos_) {
      auto r = integrate_chord<DualComplex>(g_, pos_, zeta, core_->opts.tol,
                                            core_->opts.node_budget);
      if (!r.converged) throw NumericError("shear quadrature did not converge");
      value_ += r.value;
      pos_ = zeta;
    }
    return {value_.a, value_.b};
  }

 private:
  CorePtr core_;
  ShearIntegrand g_;
  Complex pos_{0, 0};
  DualComplex value_{};
};

// Coarse |omega| scan used only to attach construction warnings.
bool omega_reaches_one(const AnalyticFn& omega) {
  for (int i = 1; i <= 24; ++i) {
    double r = 1.0 - std::pow(0.001, i / 24.0);
    if (i == 24) r = 0.999;
    for (int j = 0; j < 96; ++j) {
      double t = 2.0 * std::numbers::pi * j / 96.0;
      if (std::abs(omega.value(std::polar(r, t))) >= 1.0) return true;
    }
  }
  return false;
}

}  // namespace

Complex HarmonicShear::map(Complex z) const {
  auto [h, g] = parts(z);
  return h + std::conj(g);
}

std::pair<Complex, Complex> HarmonicShear::parts(Complex z) const {
  if (!core) throw DomainError("empty HarmonicShear");
  DualComplex hg = core->integral_to(z);
  return {hg.a, hg.b};
}

std::unique_ptr<ShearPathTracer> HarmonicShear::tracer() const {
  if (!core) throw DomainError("empty HarmonicShear");
  return std::make_unique<ShearPairTracer>(core);
}

bool HarmonicShear::sense_preserving_warned() const {
  for (const auto& f : flags)
    if (f == "dilatation-reaches-1") return true;
  return false;
}

HarmonicShear shear_solve(const AnalyticFn& phi, const AnalyticFn& omega,
                          const QuadOptions& opts) {
  if (!phi.valid() || !omega.valid())
    throw DomainError("shear_solve needs phi and omega");
  auto core = std::make_shared<const ShearCore>(ShearCore{phi, omega, opts});
  HarmonicShear s;
  s.core = core;
  s.phi = phi;
  s.omega = omega;
  s.H = AnalyticFn(std::make_shared<ShearMemberNode>(core, ShearMemberNode::kH));
  s.G = AnalyticFn(std::make_shared<ShearMemberNode>(core, ShearMemberNode::kG));
  if (omega_reaches_one(omega)) s.flags.push_back("dilatation-reaches-1");
  return s;
}

HarmonicShear build_F(const TransformSpec& spec, const AnalyticFn& w,
                      const QuadOptions& opts) {
  AnalyticFn target = cesaro_transform(spec, opts);
  Complex scale = spec.alpha * (Complex{1, 0} + spec.beta);
  HarmonicShear s = shear_solve(target, scale_fn(w, scale), opts);
  if (spec.alpha.imag() != 0.0 || spec.alpha.real() < 0.0)
    s.flags.push_back("alpha-out-of-range");
  if (spec.beta.imag() != 0.0 || spec.beta.real() < 0.0)
    s.flags.push_back("beta-negative");
  return s;
}

AnalyticFn lambda_family(const HarmonicShear& s, Complex lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw DomainError("lambda must have unit modulus");
  return AnalyticFn(
      std::make_shared<ShearMemberNode>(s.core, ShearMemberNode::kLambda, lambda));
}

double jacobian(const HarmonicShear& s, Complex z) {
  Complex hp = s.H.deriv(z);
  Complex gp = s.G.deriv(z);
  return std::norm(hp) - std::norm(gp);
}

}  // namespace geoshear
