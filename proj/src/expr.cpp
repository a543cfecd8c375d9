#include "geoshear/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "geoshear/complex_branch.hpp"

namespace geoshear {

std::string ParseError::format(const std::string& message, std::size_t offset,
                               const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "parse error at offset " << offset << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << ", ";
      os << expected[i];
    }
    os << ")";
  }
  return os.str();
}

namespace {

bool is_const(const ExprPtr& e) { return e->kind == ExprKind::Const; }
bool is_const(const ExprPtr& e, Complex v) {
  return e->kind == ExprKind::Const && e->value == v;
}

ExprPtr node(ExprKind k, Complex v, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  return std::make_shared<const Expr>(k, v, std::move(a), std::move(b));
}

// Fold a binary op over constants, but keep the node if evaluation would
// error (e.g. 1/0); the error then surfaces at eval with the location.
template <class F>
ExprPtr try_fold(ExprKind k, const ExprPtr& a, const ExprPtr& b, F op) {
  if (is_const(a) && is_const(b)) {
    try {
      return make_const(op(a->value, b->value));
    } catch (const std::exception&) {
    }
  }
  return node(k, {}, a, b);
}

}  // namespace

ExprPtr make_var() { return node(ExprKind::Var, {}); }

ExprPtr make_const(Complex v) { return node(ExprKind::Const, v); }

ExprPtr make_neg(ExprPtr u) {
  if (is_const(u)) return make_const(-u->value);
  return node(ExprKind::Neg, {}, std::move(u));
}

ExprPtr make_add(ExprPtr a, ExprPtr b) {
  if (is_const(a, {0, 0})) return b;
  if (is_const(b, {0, 0})) return a;
  return try_fold(ExprKind::Add, a, b, [](Complex x, Complex y) { return x + y; });
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
  if (is_const(b, {0, 0})) return a;
  if (is_const(a, {0, 0})) return make_neg(b);
  return try_fold(ExprKind::Sub, a, b, [](Complex x, Complex y) { return x - y; });
}

ExprPtr make_mul(ExprPtr a, ExprPtr b) {
  if (is_const(a, {0, 0}) || is_const(b, {0, 0})) return make_const({0, 0});
  if (is_const(a, {1, 0})) return b;
  if (is_const(b, {1, 0})) return a;
  return try_fold(ExprKind::Mul, a, b, [](Complex x, Complex y) { return x * y; });
}

ExprPtr make_div(ExprPtr a, ExprPtr b) {
  if (is_const(b, {1, 0})) return a;
  if (is_const(a, {0, 0}) && !is_const(b, {0, 0})) return make_const({0, 0});
  return try_fold(ExprKind::Div, a, b, [](Complex x, Complex y) {
    if (y == Complex{0, 0}) throw EvalError("division by zero", y);
    return x / y;
  });
}

ExprPtr make_pow(ExprPtr base, ExprPtr exponent) {
  if (is_const(exponent, {1, 0})) return base;
  if (is_const(exponent, {0, 0})) return make_const({1, 0});
  return try_fold(ExprKind::Pow, base, exponent,
                  [](Complex x, Complex y) { return principal_pow(x, y); });
}

ExprPtr make_call(ExprKind fn, ExprPtr u) {
  if (is_const(u)) {
    try {
      switch (fn) {
        case ExprKind::Exp:
          return make_const(std::exp(u->value));
        case ExprKind::Log:
          return make_const(principal_log(u->value));
        case ExprKind::Sqrt:
          return make_const(principal_sqrt(u->value));
        default:
          break;
      }
    } catch (const std::exception&) {
    }
  }
  return node(fn, {}, std::move(u));
}

// ── Parser ──────────────────────────────────────────────────────────────

namespace {

struct Parser {
  const std::string& src;
  std::size_t pos = 0;

  explicit Parser(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError("unexpected input", pos, {what});
  }

  [[noreturn]] void fail(const std::vector<std::string>& expected) {
    throw ParseError(pos < src.size() ? std::string("unexpected '") + src[pos] + "'"
                                      : "unexpected end of input",
                     pos, expected);
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    for (;;) {
      if (accept('+'))
        e = make_add(e, parse_term());
      else if (accept('-'))
        e = make_sub(e, parse_term());
      else
        return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (accept('*'))
        e = make_mul(e, parse_unary());
      else if (accept('/'))
        e = make_div(e, parse_unary());
      else
        return e;
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return make_neg(parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (accept('^')) return make_pow(base, parse_unary());
    return base;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos >= src.size()) fail({"number", "'z'", "'('", "function"});
    char c = src[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = parse_expr();
      expect(')', "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail({"number", "'z'", "'('", "function"});
  }

  ExprPtr parse_number() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
      ++pos;
    // exponent part
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      std::size_t mark = pos++;
      if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
      if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      } else {
        pos = mark;  // not an exponent; 'e...' belongs to the next token
      }
    }
    double v = 0;
    try {
      v = std::stod(src.substr(start, pos - start));
    } catch (const std::exception&) {
      throw ParseError("malformed number", start, {"number"});
    }
    if (pos < src.size() && src[pos] == 'i') {
      ++pos;
      return make_const({0.0, v});
    }
    return make_const({v, 0.0});
  }

  ExprPtr parse_ident() {
    std::size_t start = pos;
    while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) ++pos;
    std::string id = src.substr(start, pos - start);
    if (id == "z") return make_var();
    if (id == "i") return make_const({0.0, 1.0});
    if (id == "pi") return make_const({std::numbers::pi, 0.0});
    if (id == "exp" || id == "log" || id == "sqrt") {
      expect('(', "'('");
      ExprPtr arg = parse_expr();
      expect(')', "')'");
      if (id == "exp") return make_call(ExprKind::Exp, arg);
      if (id == "log") return make_call(ExprKind::Log, arg);
      return make_call(ExprKind::Sqrt, arg);
    }
    throw ParseError("unknown identifier '" + id + "'", start,
                     {"'z'", "'i'", "'pi'", "'exp'", "'log'", "'sqrt'"});
  }
};

}  // namespace

ExprPtr parse(const std::string& src) {
  Parser p(src);
  if (p.at_end()) throw ParseError("empty expression", 0, {"expression"});
  ExprPtr e = p.parse_expr();
  if (!p.at_end())
    throw ParseError("trailing input", p.pos, {"operator", "end of input"});
  return e;
}

// ── Differentiation ─────────────────────────────────────────────────────

ExprPtr differentiate(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var:
      return make_const({1, 0});
    case ExprKind::Const:
      return make_const({0, 0});
    case ExprKind::Neg:
      return make_neg(differentiate(e->lhs));
    case ExprKind::Add:
      return make_add(differentiate(e->lhs), differentiate(e->rhs));
    case ExprKind::Sub:
      return make_sub(differentiate(e->lhs), differentiate(e->rhs));
    case ExprKind::Mul:
      return make_add(make_mul(differentiate(e->lhs), e->rhs),
                      make_mul(e->lhs, differentiate(e->rhs)));
    case ExprKind::Div:
      // (u/v)' = (u'v - uv') / v^2
      return make_div(make_sub(make_mul(differentiate(e->lhs), e->rhs),
                               make_mul(e->lhs, differentiate(e->rhs))),
                      make_mul(e->rhs, e->rhs));
    case ExprKind::Pow: {
      const ExprPtr& u = e->lhs;
      const ExprPtr& v = e->rhs;
      ExprPtr du = differentiate(u);
      if (v->kind == ExprKind::Const) {
        // (u^c)' = c * u^(c-1) * u'
        ExprPtr cm1 = make_const(v->value - Complex{1, 0});
        return make_mul(make_mul(v, make_pow(u, cm1)), du);
      }
      // general u^v = exp(v log u):  u^v * (v' log u + v u'/u)
      ExprPtr dv = differentiate(v);
      ExprPtr term = make_add(make_mul(dv, make_call(ExprKind::Log, u)),
                              make_mul(v, make_div(du, u)));
      return make_mul(e, term);
    }
    case ExprKind::Exp:
      return make_mul(e, differentiate(e->lhs));
    case ExprKind::Log:
      return make_div(differentiate(e->lhs), e->lhs);
    case ExprKind::Sqrt:
      // u' / (2 sqrt u)
      return make_div(differentiate(e->lhs),
                      make_mul(make_const({2, 0}), e));
  }
  throw DomainError("malformed expression tree");
}

// ── Evaluation ──────────────────────────────────────────────────────────

Complex eval(const ExprPtr& e, Complex z) {
  switch (e->kind) {
    case ExprKind::Var:
      return z;
    case ExprKind::Const:
      return e->value;
    case ExprKind::Neg:
      return -eval(e->lhs, z);
    case ExprKind::Add:
      return eval(e->lhs, z) + eval(e->rhs, z);
    case ExprKind::Sub:
      return eval(e->lhs, z) - eval(e->rhs, z);
    case ExprKind::Mul:
      return eval(e->lhs, z) * eval(e->rhs, z);
    case ExprKind::Div: {
      Complex denom = eval(e->rhs, z);
      if (denom == Complex{0, 0}) throw EvalError("division by zero", z);
      return eval(e->lhs, z) / denom;
    }
    case ExprKind::Pow: {
      Complex base = eval(e->lhs, z);
      Complex expo = eval(e->rhs, z);
      try {
        return principal_pow(base, expo);
      } catch (const DomainError&) {
        throw EvalError("branch point: 0^a with Re(a) <= 0", z);
      }
    }
    case ExprKind::Exp:
      return std::exp(eval(e->lhs, z));
    case ExprKind::Log: {
      Complex u = eval(e->lhs, z);
      if (u == Complex{0, 0}) throw EvalError("log of zero", z);
      return std::log(u);
    }
    case ExprKind::Sqrt:
      return std::sqrt(eval(e->lhs, z));
  }
  throw DomainError("malformed expression tree");
}

// ── Printing ────────────────────────────────────────────────────────────

namespace {

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    default:
      return 5;  // atoms and calls
  }
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A literal prints as: re | "imi" | "(re+imi)"; negative parts use the
// sign characters so the reparse folds back into one Const node.
std::string fmt_const(Complex v, bool* needs_parens) {
  *needs_parens = false;
  if (v.imag() == 0.0) {
    *needs_parens = v.real() < 0.0;
    return fmt_double(v.real());
  }
  if (v.real() == 0.0) {
    *needs_parens = v.imag() < 0.0;
    return fmt_double(v.imag()) + "i";
  }
  std::string s = "(" + fmt_double(v.real());
  if (v.imag() >= 0.0) s += "+";
  s += fmt_double(v.imag()) + "i)";
  return s;
}

void print(const ExprPtr& e, std::string& out, int parent_prec, bool right_side) {
  int prec = precedence(e->kind);
  bool parens = prec < parent_prec || (prec == parent_prec && right_side);
  switch (e->kind) {
    case ExprKind::Var:
      out += "z";
      return;
    case ExprKind::Const: {
      bool neg;
      std::string s = fmt_const(e->value, &neg);
      // a negative literal under an operator needs parens: "a*-2" is valid
      // to parse but "a^-2" vs "-2^a" differ; be conservative
      if (neg && parent_prec > 0) out += "(" + s + ")";
      else out += s;
      return;
    }
    default:
      break;
  }
  std::string body;
  switch (e->kind) {
    case ExprKind::Neg:
      body = "-";
      print(e->lhs, body, precedence(ExprKind::Neg), false);
      break;
    case ExprKind::Add:
      print(e->lhs, body, prec, false);
      body += "+";
      print(e->rhs, body, prec, true);
      break;
    case ExprKind::Sub:
      print(e->lhs, body, prec, false);
      body += "-";
      print(e->rhs, body, prec, true);
      break;
    case ExprKind::Mul:
      print(e->lhs, body, prec, false);
      body += "*";
      print(e->rhs, body, prec, true);
      break;
    case ExprKind::Div:
      print(e->lhs, body, prec, false);
      body += "/";
      print(e->rhs, body, prec, true);
      break;
    case ExprKind::Pow:
      print(e->lhs, body, prec + 1, false);  // (a^b)^c keeps parens
      body += "^";
      print(e->rhs, body, prec, false);  // right associative
      break;
    case ExprKind::Exp:
      body = "exp(";
      print(e->lhs, body, 0, false);
      body += ")";
      parens = false;
      break;
    case ExprKind::Log:
      body = "log(";
      print(e->lhs, body, 0, false);
      body += ")";
      parens = false;
      break;
    case ExprKind::Sqrt:
      body = "sqrt(";
      print(e->lhs, body, 0, false);
      body += ")";
      parens = false;
      break;
    default:
      break;
  }
  if (parens)
    out += "(" + body + ")";
  else
    out += body;
}

}  // namespace

std::string to_string(const ExprPtr& e) {
  std::string out;
  print(e, out, 0, false);
  return out;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->kind == ExprKind::Const) return a->value == b->value;
  if (a->lhs && !equal(a->lhs, b->lhs)) return false;
  if (!a->lhs != !b->lhs) return false;
  if (a->rhs && !equal(a->rhs, b->rhs)) return false;
  if (!a->rhs != !b->rhs) return false;
  return true;
}

bool depends_on_z(const ExprPtr& e) {
  if (e->kind == ExprKind::Var) return true;
  if (e->lhs && depends_on_z(e->lhs)) return true;
  if (e->rhs && depends_on_z(e->rhs)) return true;
  return false;
}

}  // namespace geoshear
