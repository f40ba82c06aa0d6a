#include <doctest.h>

#include "rdyn/equilibria.hpp"
#include "rdyn/errors.hpp"
#include "rdyn/stability.hpp"
#include "support/oracles.hpp"

using namespace rdyn;
using oracle::C;
using oracle::Kind;

TEST_CASE("eq6 worked example: linearization moduli and Clark verdicts") {
  const EquationForm f = EquationForm::eq6(0.5, C(0, 0.5));
  const EquilibriumSet s = equilibria(f);
  const Linearization l1 = linearize(f, s.points[0]);
  const Linearization l2 = linearize(f, s.points[1]);
  CHECK(std::abs(std::abs(l1.a0) - 2.06006) < 1e-4);
  CHECK(std::abs(std::abs(l1.a1) - 2.06006) < 1e-4);
  CHECK(std::abs(std::abs(l2.a0) - 0.242711) < 1e-4);
  CHECK(std::abs(std::abs(l2.a1) - 0.242711) < 1e-4);
  CHECK_FALSE(clark_test(l1));
  CHECK(clark_test(l2));
  CHECK(std::abs(l2.clark_sum - 0.485422) < 2e-4);
  CHECK(is_unstable(classify(l1)));
  CHECK(classify(l2) == StabilityClass::LocallyAsymptoticallyStable);
}

TEST_CASE("eq6 closed forms equal the derivative of the map at each equilibrium") {
  oracle::Random rng(31);
  for (int i = 0; i < 1000; ++i) {
    const C p = rng.complex_box(3), q = rng.complex_box(3);
    if (std::abs(p + q) < 1e-3) continue;
    const EquationForm f = EquationForm::eq6(p, q);
    for (const auto& e : equilibria(f).points) {
      const Linearization closed = linearize(f, e);
      const Linearization exact = linearize_exact(f, e.value);
      CHECK(oracle::rel_err(closed.a0, exact.a0) < 1e-8);
      CHECK(oracle::rel_err(closed.a1, exact.a1) < 1e-8);
      if (std::abs(p) > 1e-6) CHECK(oracle::rel_err(closed.a1 / closed.a0, q / p) < 1e-9);
    }
  }
}

TEST_CASE("eq8 nonzero equilibrium: closed form versus the map derivative") {
  // The closed-form characteristic coefficients for the nonzero equilibrium are
  // evaluated as written. They do not coincide with the derivative of the map,
  // which is what linearize_exact returns; both are kept and pinned here.
  const C p(1, 0.5), q(0.1, 1);
  const EquationForm f = EquationForm::eq8(p, q);
  const Equilibrium e = equilibria(f).points[1];
  const Linearization closed = linearize(f, e);
  CHECK(oracle::rel_err(closed.a0, (1.0 + p * q) / (1.0 + q)) < 1e-15);
  CHECK(oracle::rel_err(closed.a1, (p - 1.0) / (1.0 + q)) < 1e-15);
  CHECK(std::abs(std::abs(closed.a0) - 0.8134892168199607) < 1e-12);
  CHECK(std::abs(std::abs(closed.a1) - 0.3363363969981562) < 1e-12);
  CHECK(classify(closed) == StabilityClass::Saddle);

  const Linearization exact = linearize_exact(f, e.value);
  const C w = e.value;
  CHECK(oracle::rel_err(exact.a0, -q * w) < 1e-12);
  CHECK(oracle::rel_err(exact.a1, p + q * w) < 1e-12);
  CHECK(classify(exact) == StabilityClass::Repeller);
  // Brute-force confirmation: a tiny perturbation of the equilibrium grows.
  C a = w + 1e-10, b = w;
  for (int n = 0; n < 200; ++n) {
    const C next = oracle::map(Kind::Eq8, p, q, a, b);
    b = a;
    a = next;
  }
  CHECK(std::abs(a - w) > 1e-8);
}

TEST_CASE("classification examples") {
  CHECK(classify(linearize(EquationForm::eq7(2, 3), equilibria(EquationForm::eq7(2, 3)).points[0])) ==
        StabilityClass::NonHyperbolic);
  const auto eq8_zero = [](C p) {
    const EquationForm f = EquationForm::eq8(p, 0.3);
    return classify(linearize(f, equilibria(f).points[0]));
  };
  CHECK(eq8_zero(2) == StabilityClass::LocallyAsymptoticallyStable);
  CHECK(is_unstable(eq8_zero(0.5)));
  CHECK(eq8_zero(C(0, 1)) == StabilityClass::NonHyperbolic);
  CHECK(classify(make_linearization(0, 0)) == StabilityClass::LocallyAsymptoticallyStable);
  CHECK(clark_test(make_linearization(0, 0)));
  CHECK_THROWS_AS(classify(make_linearization(0, 0), 0.0), Error);
}

TEST_CASE("linearize rejects degenerate divisors and foreign branches") {
  const EquationForm f = EquationForm::eq8(0, 0.5);
  CHECK_THROWS_AS(linearize(f, equilibria(f).points[0]), Error);
  CHECK_THROWS_AS(linearize(EquationForm::eq7(1, 1), Equilibrium{0, Branch::Plus, 0}), Error);
}

TEST_CASE("property: roots, Clark implies stability, conjugation invariance") {
  oracle::Random rng(32);
  for (int i = 0; i < 10000; ++i) {
    // |a0| + |a1| < 1 drawn uniformly over the split.
    const double total = rng.uniform(0, 0.999999);
    const double split = rng.uniform(0, 1);
    const C a0 = std::polar(total * split, rng.uniform(-M_PI, M_PI));
    const C a1 = std::polar(total * (1 - split), rng.uniform(-M_PI, M_PI));
    const Linearization lin = make_linearization(a0, a1);
    REQUIRE(clark_test(lin));
    CHECK(std::abs(lin.roots[0]) < 1.0);
    CHECK(std::abs(lin.roots[1]) < 1.0);
    CHECK(classify(lin) == StabilityClass::LocallyAsymptoticallyStable);
  }
  for (int i = 0; i < 2000; ++i) {
    const C a0 = rng.complex_box(4), a1 = rng.complex_box(4);
    const Linearization lin = make_linearization(a0, a1);
    for (C r : lin.roots) CHECK(std::abs(r * r - a0 * r - a1) < 1e-9 * std::max(1.0, std::norm(r)));
    // Root moduli from an independent eigen-solver of the companion matrix.
    Eigen::Matrix2cd m;
    m << a0, a1, 1.0, 0.0;
    CHECK(std::abs(oracle::spectral_radius(m) - std::abs(lin.roots[0])) < 1e-9 * std::max(1.0, std::abs(lin.roots[0])));
    CHECK(classify(lin) == classify(make_linearization(std::conj(a0), std::conj(a1))));
  }
}

TEST_CASE("boundedness conditions") {
  const ConditionReport r6 = boundedness_condition(EquationForm::eq6(3, 1), 0.7);
  CHECK(r6.holds);
  CHECK(r6.margin == doctest::Approx(1.0));
  CHECK(boundedness_condition(EquationForm::eq7(5, 1), 1).holds);
  CHECK_FALSE(boundedness_condition(EquationForm::eq7(1.5, 1), 1).holds);
  CHECK(boundedness_condition(EquationForm::eq8(2, 1), 0.4).holds);
  CHECK_FALSE(boundedness_condition(EquationForm::eq8(2, 1), 0.6).holds);
  CHECK_FALSE(boundedness_condition(EquationForm::eq8(0.5, 0.1), 1e-6).holds);
  CHECK_THROWS_AS(boundedness_condition(EquationForm::eq8(2, 1), 0), Error);
}
