#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geoshear/analytic_fn.hpp"
#include "oracles.hpp"

using namespace geoshear;
using doctest::Approx;

TEST_SUITE_BEGIN("funcore");

TEST_CASE("principal power on reference inputs") {
  CHECK(std::abs(principal_pow({4, 0}, {0.5, 0}) - Complex{2, 0}) < 1e-15);
  CHECK(std::abs(principal_pow({0, 1}, {2, 0}) - Complex{-1, 0}) < 1e-15);
  // 0.5^{-0.3} = exp(0.3 ln 2)
  double expected = std::exp(0.3 * std::log(2.0));
  CHECK(principal_pow({0.5, 0}, {-0.3, 0}).real() == Approx(expected).epsilon(1e-15));
}

TEST_CASE("principal power at the branch point") {
  CHECK(principal_pow({0, 0}, {2, 0}) == Complex{0, 0});
  CHECK_THROWS_AS(principal_pow({0, 0}, {-1, 0}), DomainError);
  CHECK_THROWS_AS(principal_pow({0, 0}, {0, 1}), DomainError);
}

TEST_CASE("principal power identities") {
  oracle::Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    Complex w{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    if (w == Complex{0, 0}) continue;
    CHECK(std::abs(principal_pow(w, {1, 0}) - w) < 1e-14);
    CHECK(std::abs(principal_pow(w, {0, 0}) - Complex{1, 0}) < 1e-14);
  }
}

TEST_CASE("power additivity holds in the right half-plane") {
  oracle::Rng rng(12);
  for (int k = 0; k < 1000; ++k) {
    Complex w{rng.uniform(0.01, 3), rng.uniform(-3, 3)};
    Complex a{rng.uniform(-1.5, 1.5), rng.uniform(-1, 1)};
    Complex b{rng.uniform(-1.5, 1.5), rng.uniform(-1, 1)};
    Complex lhs = principal_pow(w, a + b);
    Complex rhs = principal_pow(w, a) * principal_pow(w, b);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("1 - e^{i theta} z keeps positive real part on the disk") {
  for (int a = 0; a < 16; ++a) {
    double theta = 2 * std::numbers::pi * a / 16;
    for (int i = 1; i <= 20; ++i)
      for (int j = 0; j < 64; ++j) {
        Complex z = std::polar(0.999 * i / 20, 2 * std::numbers::pi * j / 64);
        CHECK((Complex{1, 0} - std::polar(1.0, theta) * z).real() > 0.0);
      }
  }
}

TEST_CASE("builtin values and derivatives") {
  CHECK(builtin(Family::Koebe).value({0.5, 0}).real() == Approx(2.0).epsilon(1e-14));
  CHECK(builtin(Family::Cayley).value({0.5, 0}).real() == Approx(1.0).epsilon(1e-14));
  CHECK(builtin(Family::Logmap).deriv({0, 0}).real() == Approx(1.0));
  CHECK(builtin(Family::Twostrip).value({0.6, 0}).real() == Approx(0.6 / 0.64));
}

TEST_CASE("builtin families are normalized") {
  for (Family tag : {Family::Identity, Family::Cayley, Family::Koebe,
                     Family::Twostrip, Family::Logmap}) {
    AnalyticFn f = builtin(tag);
    CHECK(std::abs(f.value({0, 0})) < 1e-12);
    CHECK(std::abs(f.deriv({0, 0}) - Complex{1, 0}) < 1e-12);
  }
}

TEST_CASE("unknown family tag") {
  CHECK_THROWS_AS(builtin("moebius"), DomainError);
  CHECK(family_name(parse_family("twostrip")) == "twostrip");
}

TEST_CASE("builtin derivatives agree with finite differences") {
  oracle::Rng rng(13);
  for (Family tag : {Family::Cayley, Family::Koebe, Family::Twostrip, Family::Logmap}) {
    AnalyticFn f = builtin(tag);
    AnalyticFn fp = f.derivative();
    for (int k = 0; k < 25; ++k) {
      Complex z = rng.in_disk(0.7);
      Complex fd = oracle::central_diff([&f](Complex w) { return f.value(w); }, z);
      CHECK(std::abs(f.deriv(z) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
      Complex fd2 = oracle::central_diff([&f](Complex w) { return f.deriv(w); }, z);
      CHECK(std::abs(fp.deriv(z) - fd2) < 1e-5 * std::max(1.0, std::abs(fd2)));
    }
  }
}

TEST_CASE("expression-backed derivative equals the symbolic tree") {
  ExprPtr tree = parse("z/(1-z)");
  AnalyticFn f = from_expr(tree);
  ExprPtr dtree = differentiate(tree);
  oracle::Rng rng(14);
  for (int k = 0; k < 20; ++k) {
    Complex z = rng.in_disk(0.8);
    CHECK(f.derivative().value(z) == eval(dtree, z));
    CHECK(f.deriv(z) == eval(dtree, z));
  }
}

TEST_CASE("rotation by zero and of the identity") {
  AnalyticFn k = builtin(Family::Koebe);
  AnalyticFn k0 = rotate_fn(k, 0.0);
  AnalyticFn id_rot = rotate_fn(builtin(Family::Identity), 1.234);
  oracle::Rng rng(15);
  for (int i = 0; i < 20; ++i) {
    Complex z = rng.in_disk();
    CHECK(std::abs(k0.value(z) - k.value(z)) == 0.0);
    CHECK(std::abs(id_rot.value(z) - z) < 1e-15);
  }
}

TEST_CASE("rotated koebe value by hand") {
  // theta = pi: e^{-i pi} koebe(-0.5) = -(-0.5/2.25) = 0.2222...
  AnalyticFn f = rotate_fn(builtin(Family::Koebe), std::numbers::pi);
  CHECK(f.value({0.5, 0}).real() == Approx(0.5 / 2.25).epsilon(1e-12));
}

TEST_CASE("rotation round-trip is the identity") {
  AnalyticFn f = builtin(Family::Twostrip);
  AnalyticFn g = rotate_fn(rotate_fn(f, 0.7), -0.7);
  oracle::Rng rng(16);
  for (int i = 0; i < 30; ++i) {
    Complex z = rng.in_disk();
    CHECK(std::abs(g.value(z) - f.value(z)) < 1e-14);
    CHECK(std::abs(g.deriv(z) - f.deriv(z)) < 1e-12);
  }
}

TEST_CASE("rotated derivative is f'(e^{i theta} z)") {
  double theta = 0.9;
  AnalyticFn f = builtin(Family::Cayley);
  AnalyticFn r = rotate_fn(f, theta);
  Complex z{0.4, -0.2};
  Complex w = std::polar(1.0, theta) * z;
  CHECK(std::abs(r.deriv(z) - f.deriv(w)) < 1e-15);
  CHECK(std::abs(r.pre_schwarzian(z) -
                 std::polar(1.0, theta) * f.pre_schwarzian(w)) < 1e-15);
}

TEST_SUITE_END();
