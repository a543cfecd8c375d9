#include "geoshear/analytic_fn.hpp"

#include <vector>

#include "geoshear/errors.hpp"

namespace geoshear {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

class PointwiseTracer final : public PathTracer {
 public:
  explicit PointwiseTracer(std::shared_ptr<const FnNode> node) : node_(std::move(node)) {}
  Complex advance(Complex zeta) override { return node_->value(zeta); }
  std::size_t save() override { return 0; }
  void restore(std::size_t) override {}
  void discard(std::size_t) override {}

 private:
  std::shared_ptr<const FnNode> node_;
};

}  // namespace

std::unique_ptr<PathTracer> FnNode::tracer() const {
  return std::make_unique<PointwiseTracer>(shared_from_this());
}

Complex AnalyticFn::value(Complex z) const {
  require(node_ != nullptr, "empty AnalyticFn");
  return node_->value(z);
}

Complex AnalyticFn::deriv(Complex z) const {
  require(node_ != nullptr, "empty AnalyticFn");
  return node_->deriv(z);
}

Complex AnalyticFn::pre_schwarzian(Complex z) const {
  require(node_ != nullptr, "empty AnalyticFn");
  return node_->pre_schwarzian(z);
}

AnalyticFn AnalyticFn::derivative() const {
  require(node_ != nullptr, "empty AnalyticFn");
  return node_->derivative();
}

QuadratureResult AnalyticFn::value_quad(Complex z) const {
  require(node_ != nullptr, "empty AnalyticFn");
  return node_->value_quad(z);
}

std::unique_ptr<PathTracer> AnalyticFn::tracer() const {
  require(node_ != nullptr, "empty AnalyticFn");
  return node_->tracer();
}

// ── Expression-backed functions ─────────────────────────────────────────

namespace {

// Holds the tree plus its first and second symbolic derivatives; all
// built eagerly so sharing between threads needs no synchronization.
class ExprNode final : public FnNode {
 public:
  explicit ExprNode(ExprPtr tree)
      : tree_(std::move(tree)),
        dtree_(differentiate(tree_)),
        ddtree_(differentiate(dtree_)) {}

  Complex value(Complex z) const override { return eval(tree_, z); }
  Complex deriv(Complex z) const override { return eval(dtree_, z); }

  Complex pre_schwarzian(Complex z) const override {
    Complex d = eval(dtree_, z);
    if (d == Complex{0, 0}) throw EvalError("critical point: f'(z) = 0", z);
    return eval(ddtree_, z) / d;
  }

  AnalyticFn derivative() const override {
    return AnalyticFn(std::make_shared<ExprNode>(dtree_));
  }

  const ExprPtr& tree() const { return tree_; }

 private:
  ExprPtr tree_, dtree_, ddtree_;
};

// ── Builtins: hard-coded closed forms ───────────────────────────────────

struct ClosedForms {
  Complex (*f)(Complex);
  Complex (*f1)(Complex);
  Complex (*f2)(Complex);
  Complex (*f3)(Complex);
};

Complex one_minus(Complex z) { return Complex{1, 0} - z; }

const ClosedForms kIdentity{
    [](Complex z) { return z; },
    [](Complex) { return Complex{1, 0}; },
    [](Complex) { return Complex{0, 0}; },
    [](Complex) { return Complex{0, 0}; },
};

const ClosedForms kCayley{
    [](Complex z) { return z / one_minus(z); },
    [](Complex z) { Complex u = one_minus(z); return 1.0 / (u * u); },
    [](Complex z) { Complex u = one_minus(z); return 2.0 / (u * u * u); },
    [](Complex z) { Complex u = one_minus(z); return 6.0 / (u * u * u * u); },
};

const ClosedForms kKoebe{
    [](Complex z) { Complex u = one_minus(z); return z / (u * u); },
    [](Complex z) { Complex u = one_minus(z); return (1.0 + z) / (u * u * u); },
    [](Complex z) { Complex u = one_minus(z); return (4.0 + 2.0 * z) / (u * u * u * u); },
    [](Complex z) { Complex u = one_minus(z); return (18.0 + 6.0 * z) / (u * u * u * u * u); },
};

const ClosedForms kTwostrip{
    [](Complex z) { return z / (1.0 - z * z); },
    [](Complex z) { Complex u = 1.0 - z * z; return (1.0 + z * z) / (u * u); },
    [](Complex z) { Complex u = 1.0 - z * z; return (6.0 * z + 2.0 * z * z * z) / (u * u * u); },
    [](Complex z) {
      Complex u = 1.0 - z * z;
      Complex z2 = z * z;
      return (6.0 * z2 * z2 + 36.0 * z2 + 6.0) / (u * u * u * u);
    },
};

const ClosedForms kLogmap{
    [](Complex z) { return -std::log(one_minus(z)); },
    [](Complex z) { return 1.0 / one_minus(z); },
    [](Complex z) { Complex u = one_minus(z); return 1.0 / (u * u); },
    [](Complex z) { Complex u = one_minus(z); return 2.0 / (u * u * u); },
};

// depth picks which derivative of the family this node represents.
class BuiltinNode final : public FnNode {
 public:
  BuiltinNode(const ClosedForms* forms, int depth) : forms_(forms), depth_(depth) {}

  Complex value(Complex z) const override { return dispatch(depth_, z); }
  Complex deriv(Complex z) const override { return dispatch(depth_ + 1, z); }

  Complex pre_schwarzian(Complex z) const override {
    Complex d = dispatch(depth_ + 1, z);
    if (d == Complex{0, 0}) throw EvalError("critical point: f'(z) = 0", z);
    return dispatch(depth_ + 2, z) / d;
  }

  AnalyticFn derivative() const override {
    require(depth_ + 1 <= 3, "builtin derivative order beyond closed forms");
    return AnalyticFn(std::make_shared<BuiltinNode>(forms_, depth_ + 1));
  }

 private:
  Complex dispatch(int order, Complex z) const {
    switch (order) {
      case 0: return forms_->f(z);
      case 1: return forms_->f1(z);
      case 2: return forms_->f2(z);
      case 3: return forms_->f3(z);
      default: throw DomainError("builtin derivative order beyond closed forms");
    }
  }

  const ClosedForms* forms_;
  int depth_;
};

// ── Rotation: e^{-i theta} f(e^{i theta} z) ─────────────────────────────

class RotateNode final : public FnNode {
 public:
  RotateNode(AnalyticFn f, double theta)
      : f_(std::move(f)),
        theta_(theta),
        ei_(std::polar(1.0, theta)),
        emi_(std::polar(1.0, -theta)) {}

  Complex value(Complex z) const override { return emi_ * f_.value(ei_ * z); }
  Complex deriv(Complex z) const override { return f_.deriv(ei_ * z); }

  Complex pre_schwarzian(Complex z) const override {
    return ei_ * f_.pre_schwarzian(ei_ * z);
  }

  AnalyticFn derivative() const override;

  QuadratureResult value_quad(Complex z) const override {
    QuadratureResult r = f_.value_quad(ei_ * z);
    r.value *= emi_;
    return r;
  }

  std::unique_ptr<PathTracer> tracer() const override;

  const AnalyticFn& inner() const { return f_; }
  double theta() const { return theta_; }

 private:
  AnalyticFn f_;
  double theta_;
  Complex ei_, emi_;
};

class RotatedTracer final : public PathTracer {
 public:
  RotatedTracer(std::unique_ptr<PathTracer> inner, Complex ei, Complex emi)
      : inner_(std::move(inner)), ei_(ei), emi_(emi) {}
  Complex advance(Complex zeta) override { return emi_ * inner_->advance(ei_ * zeta); }
  std::size_t save() override { return inner_->save(); }
  void restore(std::size_t token) override { inner_->restore(token); }
  void discard(std::size_t token) override { inner_->discard(token); }

 private:
  std::unique_ptr<PathTracer> inner_;
  Complex ei_, emi_;
};

std::unique_ptr<PathTracer> RotateNode::tracer() const {
  return std::make_unique<RotatedTracer>(f_.tracer(), ei_, emi_);
}

// g(z) = f'(e^{i theta} z): value/derivative shift by one order.
class RotateDerivNode final : public FnNode {
 public:
  RotateDerivNode(AnalyticFn f, Complex ei) : f_(std::move(f)), ei_(ei) {}

  Complex value(Complex z) const override { return f_.deriv(ei_ * z); }
  Complex deriv(Complex z) const override {
    Complex w = ei_ * z;
    return ei_ * f_.deriv(w) * f_.pre_schwarzian(w);
  }
  Complex pre_schwarzian(Complex z) const override {
    // g''/g' where g' = e^{i t} f''(e^{i t} z)
    AnalyticFn fd = f_.derivative();
    Complex w = ei_ * z;
    return ei_ * fd.pre_schwarzian(w);
  }
  AnalyticFn derivative() const override {
    return scale_fn(AnalyticFn(std::make_shared<RotateDerivNode>(f_.derivative(), ei_)), ei_);
  }

 private:
  AnalyticFn f_;
  Complex ei_;
};

AnalyticFn RotateNode::derivative() const {
  return AnalyticFn(std::make_shared<RotateDerivNode>(f_, ei_));
}

class ScaleNode final : public FnNode {
 public:
  ScaleNode(AnalyticFn f, Complex c) : f_(std::move(f)), c_(c) {}
  Complex value(Complex z) const override { return c_ * f_.value(z); }
  Complex deriv(Complex z) const override { return c_ * f_.deriv(z); }
  Complex pre_schwarzian(Complex z) const override { return f_.pre_schwarzian(z); }
  AnalyticFn derivative() const override { return scale_fn(f_.derivative(), c_); }
  QuadratureResult value_quad(Complex z) const override {
    QuadratureResult r = f_.value_quad(z);
    r.value *= c_;
    r.error_estimate *= std::abs(c_);
    return r;
  }

 private:
  AnalyticFn f_;
  Complex c_;
};

}  // namespace

AnalyticFn builtin(Family tag) {
  const ClosedForms* forms = nullptr;
  switch (tag) {
    case Family::Identity: forms = &kIdentity; break;
    case Family::Cayley: forms = &kCayley; break;
    case Family::Koebe: forms = &kKoebe; break;
    case Family::Twostrip: forms = &kTwostrip; break;
    case Family::Logmap: forms = &kLogmap; break;
  }
  return AnalyticFn(std::make_shared<BuiltinNode>(forms, 0));
}

Family parse_family(const std::string& tag) {
  if (tag == "identity") return Family::Identity;
  if (tag == "cayley") return Family::Cayley;
  if (tag == "koebe") return Family::Koebe;
  if (tag == "twostrip") return Family::Twostrip;
  if (tag == "logmap") return Family::Logmap;
  throw DomainError("unknown family tag '" + tag +
                    "' (expected identity|cayley|koebe|twostrip|logmap)");
}

std::string family_name(Family tag) {
  switch (tag) {
    case Family::Identity: return "identity";
    case Family::Cayley: return "cayley";
    case Family::Koebe: return "koebe";
    case Family::Twostrip: return "twostrip";
    case Family::Logmap: return "logmap";
  }
  return "?";
}

AnalyticFn builtin(const std::string& tag) { return builtin(parse_family(tag)); }

AnalyticFn from_expr(const ExprPtr& tree) {
  return AnalyticFn(std::make_shared<ExprNode>(tree));
}

AnalyticFn from_expr(const std::string& source) { return from_expr(parse(source)); }

AnalyticFn rotate_fn(const AnalyticFn& f, double theta) {
  if (theta == 0.0) return f;
  return AnalyticFn(std::make_shared<RotateNode>(f, theta));
}

AnalyticFn scale_fn(const AnalyticFn& f, Complex c) {
  return AnalyticFn(std::make_shared<ScaleNode>(f, c));
}

}  // namespace geoshear
