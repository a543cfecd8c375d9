#include <doctest.h>

#include <cmath>

#include "geoshear/expr.hpp"
#include "oracles.hpp"

using namespace geoshear;
using doctest::Approx;

namespace {
Complex ev(const std::string& src, Complex z) { return eval(parse(src), z); }
}  // namespace

TEST_SUITE_BEGIN("exprlang");

TEST_CASE("variable parses to a variable node") {
  ExprPtr e = parse("z");
  CHECK(e->kind == ExprKind::Var);
}

TEST_CASE("rational evaluation") {
  CHECK(ev("z/(1-z)", {0.5, 0}).real() == Approx(1.0).epsilon(1e-14));
  CHECK(ev("z/(1-z)^2", {0.5, 0}).real() == Approx(2.0).epsilon(1e-14));
  Complex v = ev("z", {0, 0.5});
  CHECK(v == Complex{0, 0.5});
}

TEST_CASE("negated literal exponent keeps pow structure") {
  ExprPtr e = parse("(1-z)^(-0.3)");
  REQUIRE(e->kind == ExprKind::Pow);
  REQUIRE(e->rhs->kind == ExprKind::Const);
  CHECK(e->rhs->value == Complex{-0.3, 0});
}

TEST_CASE("precedence and associativity") {
  // pow binds tighter than unary minus: -z^2 = -(z^2)
  CHECK(ev("-z^2", {2, 0}) == Complex{-4, 0});
  // pow is right associative
  CHECK(ev("z^z^2", {2, 0}).real() == Approx(16.0));  // 2^(2^2)
  // left associativity of sub and div
  ExprPtr e = parse("z-z-z");
  CHECK(e->kind == ExprKind::Sub);
  CHECK(e->lhs->kind == ExprKind::Sub);
  CHECK(ev("z/z/z", {4, 0}).real() == Approx(0.25));
  CHECK(ev("1+2*z^2", {3, 0}).real() == Approx(19.0));
}

TEST_CASE("named constants and imaginary literals") {
  CHECK(ev("pi", {0, 0}).real() == Approx(3.14159265358979).epsilon(1e-14));
  CHECK(ev("2i", {0, 0}) == Complex{0, 2});
  CHECK(ev("i*i", {0, 0}).real() == Approx(-1.0));
}

TEST_CASE("inverse pair with principal branch") {
  CHECK(ev("exp(log(1-z))", {0.3, 0}).real() == Approx(0.7).epsilon(1e-15));
  CHECK(ev("sqrt(4)", {0, 0}).real() == Approx(2.0));
}

TEST_CASE("parse errors carry offsets and expectations") {
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("z+");
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
    CHECK(!e.expected().empty());
  }
  try {
    parse("fog(z)");
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 0);
    CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("1 2"), ParseError);
  CHECK_THROWS_AS(parse("(z"), ParseError);
}

TEST_CASE("evaluation errors report the location") {
  CHECK_THROWS_AS(ev("1/z", {0, 0}), EvalError);
  CHECK_THROWS_AS(ev("log(z)", {0, 0}), EvalError);
  CHECK_THROWS_AS(ev("z^(0-1)", {0, 0}), EvalError);
  try {
    ev("1/(1-z)", {1, 0});
    FAIL("expected throw");
  } catch (const EvalError& e) {
    CHECK(e.at() == Complex{1, 0});
  }
}

TEST_CASE("symbolic derivatives of the basic rules") {
  CHECK(eval(differentiate(parse("z^2")), {3, 0}).real() == Approx(6.0));
  CHECK(eval(differentiate(parse("log(1-z)")), {0, 0}).real() == Approx(-1.0));
  // quotient rule: d/dz z/(1-z) = 1/(1-z)^2 = 4 at 1/2
  Complex d = eval(differentiate(parse("z/(1-z)")), {0.5, 0});
  CHECK(d.real() == Approx(4.0).epsilon(1e-12));
  Complex fd = oracle::central_diff(
      [](Complex z) { return eval(parse("z/(1-z)"), z); }, {0.5, 0});
  CHECK(std::abs(d - fd) < 1e-5);
}

TEST_CASE("general power rule uses exp(v log u)") {
  ExprPtr e = parse("z^z");
  ExprPtr d = differentiate(e);
  Complex z{0.5, 0.2};
  Complex expected = oracle::central_diff([&e](Complex w) { return eval(e, w); }, z);
  CHECK(std::abs(eval(d, z) - expected) < 1e-6);
}

TEST_CASE("derivatives agree with finite differences at random points") {
  const char* exprs[] = {
      "z/(1-z)^2",      "exp(2*z)*z",  "log(1-z*z)",   "sqrt(1-z)",
      "(1-z)^(-1.5)",   "z^3-2*z^2+z", "1/(1-z)+exp(z)",
      "z*exp(8i*z)",    "(2*z+1)/(2+z)",
  };
  oracle::Rng rng(7);
  for (const char* src : exprs) {
    ExprPtr e = parse(src);
    ExprPtr d = differentiate(e);
    int checked = 0;
    for (int k = 0; k < 50; ++k) {
      Complex z = rng.in_disk(0.8);
      Complex sym, fd;
      try {
        sym = eval(d, z);
        fd = oracle::central_diff([&e](Complex w) { return eval(e, w); }, z);
      } catch (const std::exception&) {
        continue;  // too close to a singularity
      }
      if (std::abs(fd) > 1e6) continue;
      double scale = std::max(1.0, std::abs(sym));
      CHECK(std::abs(sym - fd) / scale < 1e-6);
      ++checked;
    }
    CHECK(checked > 30);
  }
}

TEST_CASE("round-trip: parse(print(e)) is structurally identical") {
  oracle::Rng rng(42);
  int done = 0;
  while (done < 1000) {
    ExprPtr t = oracle::random_tree(rng, 6);
    if (!oracle::tree_finite(t)) continue;
    std::string printed = to_string(t);
    ExprPtr back;
    try {
      back = parse(printed);
    } catch (const ParseError&) {
      CAPTURE(printed);
      FAIL_CHECK("printed form failed to parse");
      ++done;
      continue;
    }
    if (!equal(t, back)) {
      CAPTURE(printed);
      CAPTURE(to_string(back));
      FAIL_CHECK("round-trip changed the tree");
    }
    ++done;
  }
}

TEST_CASE("evaluation is deterministic") {
  ExprPtr e = parse("exp(z)*sqrt(1-z)/(1+z^2)");
  Complex z{0.3, -0.4};
  Complex a = eval(e, z), b = eval(e, z);
  CHECK(a == b);
}

TEST_CASE("constant folding and identity elimination") {
  CHECK(parse("1+2")->kind == ExprKind::Const);
  CHECK(parse("z*1")->kind == ExprKind::Var);
  CHECK(parse("z+0")->kind == ExprKind::Var);
  CHECK(parse("z^1")->kind == ExprKind::Var);
  CHECK(parse("0*z")->kind == ExprKind::Const);
  // but no deeper rewriting
  CHECK(parse("z+z")->kind == ExprKind::Add);
}

TEST_SUITE_END();
