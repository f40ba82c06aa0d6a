#include <doctest.h>

#include <cstring>

#include "rdyn/errors.hpp"
#include "rdyn/period2.hpp"
#include "rdyn/random.hpp"
#include "rdyn/simulate.hpp"
#include "support/oracles.hpp"

using namespace rdyn;
using oracle::C;
using oracle::Kind;

namespace {

const C kRow1P(0.2037, 0.5444), kRow1Q(0.8749, 0.1210);

bool same_bits(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

}  // namespace

TEST_CASE("orbit layout and constant map") {
  const Orbit o = orbit(EquationForm::eq6(0, 0), C(3, 1), C(-2, 5), 10);
  REQUIRE(o.completed());
  REQUIRE(o.samples.size() == 12);
  CHECK(o.samples[0] == C(-2, 5));
  CHECK(o.samples[1] == C(3, 1));
  for (std::size_t k = 2; k < o.samples.size(); ++k) CHECK(o.samples[k] == C(1));
}

TEST_CASE("orbit converges to the stable eq6 equilibrium") {
  const EquationForm f = EquationForm::eq6(0.5, C(0, 0.5));
  const C w(0.6838022718621541, -0.1335517491618166);
  const Orbit o = orbit(f, w + C(0.01, -0.02), w + C(-0.015, 0.01), 200);
  REQUIRE(o.completed());
  CHECK(std::abs(o.samples.back() - w) < 1e-6);
  CHECK(std::abs(o.samples[150] - w) < std::abs(o.samples[10] - w));
}

TEST_CASE("chaotic orbit is bounded and aperiodic") {
  Rng rng(5);
  const C wm1 = rng.in_disk(1), w0 = rng.in_disk(1);
  const Orbit o = orbit(EquationForm::eq8(kRow1P, kRow1Q), w0, wm1, 10000);
  REQUIRE(o.completed());
  double maxmod = 0;
  for (C z : o.samples) maxmod = std::max(maxmod, std::abs(z));
  CHECK(maxmod < 1e3);
  CHECK_FALSE(detect_period(o, 1e-9, 64).has_value());
  CHECK(std::abs(o.samples.back() - o.samples[o.samples.size() - 3]) > 1e-6);
}

TEST_CASE("guards stop the orbit and are recorded") {
  // Eq8 with p = 1, q = 0: w_{n+1} = w_{n-1} / (1 + w_{n-1}); w_{-1} = -1 is a pole.
  const Orbit o = orbit(EquationForm::eq8(1, 0), 0.5, -1, 10);
  CHECK(o.termination == Termination::PoleHit);
  CHECK(o.termination_step == 1);
  CHECK(o.samples.size() == 2);
  Guards g;
  g.overflow_threshold = 10;
  const Orbit big = orbit(EquationForm::eq8(1, 0), 0.5, C(-1 + 0.01), 10, g);
  CHECK(big.termination == Termination::Overflow);
}

TEST_CASE("property: re-stepping invariance and guard monotonicity") {
  oracle::Random rng(51);
  for (int i = 0; i < 1000; ++i) {
    const Kind k = static_cast<Kind>(i % 3);
    const C p = rng.complex_box(2), q = rng.complex_box(2);
    const EquationForm f = oracle::form(k, p, q);
    const C w0 = rng.complex_box(1), wm1 = rng.complex_box(1);
    Guards tight;
    tight.overflow_threshold = 1e3;
    const Orbit a = orbit(f, w0, wm1, 200, tight);
    for (std::size_t n = 2; n < a.samples.size(); ++n) {
      const StepOutcome s = step(f, a.samples[n - 1], a.samples[n - 2]);
      REQUIRE(s.ok());
      CHECK(std::memcmp(&s.value, &a.samples[n], sizeof(Complex)) == 0);
    }
    CHECK(same_bits(orbit(f, w0, wm1, 200, tight).samples, a.samples));
    const Orbit b = orbit(f, w0, wm1, 200);
    REQUIRE(b.samples.size() >= a.samples.size());
    CHECK(same_bits({b.samples.begin(), b.samples.begin() + a.samples.size()}, a.samples));
  }
}

TEST_CASE("detect_period") {
  SUBCASE("constant tail") {
    const Orbit o = orbit(EquationForm::eq6(0, 0), 2, 3, 200);
    CHECK(detect_period(o, 1e-12, 8) == 1);
  }
  SUBCASE("seeded on the eq6 period-2 cycle") {
    const EquationForm f = EquationForm::eq6(C(100, 1), C(6, 0.1));
    const CyclePair c = period2_solutions(f).cycles.front();
    // The cycle is unstable, so keep the orbit short enough that rounding has
    // not grown past the tolerance.
    const Orbit o = orbit(f, c.psi, c.phi, 200);
    CHECK(detect_period(o, 1e-9, 8) == 2);
    CHECK(detect_period(o, 1e-9, 8, 0.8) == 2);
  }
  SUBCASE("period 3 constructed by hand") {
    Orbit o{EquationForm::eq6(0, 0), {}, Termination::Completed, 0};
    const C cyc[3] = {C(1, 0), C(0, 1), C(-1, 0)};
    for (int n = 0; n < 300; ++n) o.samples.push_back(cyc[n % 3]);
    CHECK(detect_period(o, 1e-12, 10) == 3);
    CHECK(detect_period(o, 1e-12, 2) == std::nullopt);
  }
  SUBCASE("errors") {
    const Orbit short_orbit = orbit(EquationForm::eq6(0, 0), 2, 3, 50);
    CHECK_THROWS_AS(detect_period(short_orbit, 1e-9, 64), Error);
    const Orbit hit = orbit(EquationForm::eq8(1, 0), 0.5, -1, 10);
    CHECK_THROWS_AS(detect_period(hit, 1e-9, 1), Error);
  }
}

TEST_CASE("ball containment") {
  SUBCASE("constant map lands on 1") {
    const ContainmentReport r = ball_containment(EquationForm::eq6(0, 0), 1.5, 50, 100, 3);
    CHECK(r.fraction_contained == 1.0);
    CHECK(r.condition.has_value());
  }
  SUBCASE("eq8 with p = 3, q = 1") {
    const ContainmentReport r = ball_containment(EquationForm::eq8(3, 1), 0.9, 100, 1000, 4);
    REQUIRE(r.condition.has_value());
    CHECK(r.condition->holds);
    MESSAGE("eq8 p=3 q=1 eps=0.9 containment " << r.fraction_contained);
    CHECK(r.n_seeds == 100);
    CHECK(r.first_escape.size() == 100);
  }
  SUBCASE("eq7 with p = 5, q = 1") {
    const ContainmentReport r = ball_containment(EquationForm::eq7(5, 1), 1.0, 100, 1000, 5);
    REQUIRE(r.condition.has_value());
    CHECK(r.condition->holds);
    MESSAGE("eq7 p=5 q=1 eps=1 containment " << r.fraction_contained);
  }
  SUBCASE("thread count does not change the report") {
    const EquationForm f = EquationForm::eq8(kRow1P, kRow1Q);
    const ContainmentReport a = ball_containment(f, 1.0, 40, 500, 9, {}, 1);
    const ContainmentReport b = ball_containment(f, 1.0, 40, 500, 9, {}, 7);
    CHECK(a.contained == b.contained);
    CHECK(a.first_escape == b.first_escape);
  }
}

TEST_CASE("seed sampling stays in the disk and is reproducible") {
  Rng a(77), b(77);
  double mean_r2 = 0;
  for (int i = 0; i < 20000; ++i) {
    const C z = a.in_disk(2.0);
    CHECK(std::abs(z) < 2.0);
    CHECK(z == b.in_disk(2.0));
    mean_r2 += std::norm(z);
  }
  // Uniform in the disk: E|z|^2 = R^2 / 2.
  CHECK(mean_r2 / 20000 == doctest::Approx(2.0).epsilon(0.02));
}
