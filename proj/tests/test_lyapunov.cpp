#include <doctest.h>

#include "rdyn/equilibria.hpp"
#include "rdyn/errors.hpp"
#include "rdyn/lyapunov.hpp"
#include "rdyn/period2.hpp"
#include "rdyn/stability.hpp"
#include "support/oracles.hpp"

using namespace rdyn;
using oracle::C;
using oracle::Kind;

namespace {

LyapunovOptions short_run(std::size_t n = 4000, std::size_t transient = 400) {
  LyapunovOptions o;
  o.n_steps = n;
  o.transient = transient;
  return o;
}

}  // namespace

TEST_CASE("planar jacobian: worked cases") {
  const Matrix2 z = planar_jacobian(EquationForm::eq6(0, 0), C(0.3, 1), C(2, -1));
  CHECK(z(0, 0) == C(0));
  CHECK(z(0, 1) == C(1));
  CHECK(z(1, 0) == C(0));
  CHECK(z(1, 1) == C(0));
  const C p(0.7, -1.2);
  const Matrix2 m = planar_jacobian(EquationForm::eq8(p, C(3, 1)), 0, 0);
  CHECK(oracle::rel_err(m(1, 0), 1.0 / p) < 1e-15);
  CHECK(m(1, 1) == C(0));
  CHECK_THROWS_AS(planar_jacobian(EquationForm::eq8(1, 0), -1, 0), Error);
}

TEST_CASE("property: planar jacobian agrees with central differences") {
  oracle::Random rng(61);
  int n = 0;
  for (int i = 0; i < 2000; ++i) {
    const Kind k = static_cast<Kind>(i % 3);
    const C p = rng.complex_box(2), q = rng.complex_box(2), u = rng.complex_box(1), v = rng.complex_box(1);
    const EquationForm f = oracle::form(k, p, q);
    const StepOutcome s = step(f, v, u);
    if (!s.ok() || std::abs(s.value) > 1e2) continue;
    const Matrix2 a = planar_jacobian(f, u, v);
    const Eigen::Matrix2cd fd = oracle::planar_fd(k, p, q, u, v);
    CHECK(oracle::rel_err(a(1, 0), fd(1, 0)) < 1e-5);
    CHECK(oracle::rel_err(a(1, 1), fd(1, 1)) < 1e-5);
    ++n;
  }
  CHECK(n >= 1000);
}

TEST_CASE("contraction toward the origin: exponent -ln(2)/2") {
  const EquationForm f = EquationForm::eq8(2, C(0.1, 0.1));
  const LyapunovEstimate e = largest_lyapunov(f, C(1e-3, 0), C(0, 1e-3));
  CHECK(e.status == LyapunovStatus::Converged);
  CHECK(std::abs(e.exponent + 0.5 * std::log(2.0)) < 0.01);
  // Independent fit: slope of log |w_n| along the orbit.
  C a_prev(0, 1e-3), a(1e-3, 0);
  std::vector<double> logs;
  for (int n = 0; n < 400; ++n) {
    const C next = oracle::map(Kind::Eq8, 2, C(0.1, 0.1), a, a_prev);
    a_prev = a;
    a = next;
    logs.push_back(std::log(std::hypot(std::abs(a), std::abs(a_prev))));
  }
  CHECK(std::abs((logs[399] - logs[99]) / 300.0 + 0.5 * std::log(2.0)) < 0.01);
}

TEST_CASE("stationary period-2 orbit: exponent is half the log spectral radius") {
  const EquationForm f = EquationForm::eq8(0.5, 2);
  const PeriodTwoCycle cyc = analyze_cycle(f, 0, 0.5);
  REQUIRE(cyc.eigen_criterion);
  const LyapunovEstimate e = largest_lyapunov(f, 0.5, 0, short_run());
  const double expected = 0.5 * std::log(std::abs(cyc.eigenvalues[0]));
  CHECK(expected < 0);
  CHECK(std::abs(e.exponent - expected) < 0.01);
}

TEST_CASE("equilibria: stable gives a negative exponent, repeller gives ln of the root modulus") {
  const EquationForm las = EquationForm::eq6(0.5, C(0, 0.5));
  const C w = equilibria(las).points[1].value;
  CHECK(largest_lyapunov(las, w + 0.01, w - 0.01, short_run()).exponent < 0);

  // The origin is an exactly stationary repelling equilibrium of Eq8 for |p| < 1.
  const EquationForm rep = EquationForm::eq8(C(0.3, 0.4), C(0.2, -0.7));
  const Linearization lin = linearize_exact(rep, 0);
  REQUIRE(classify(lin) == StabilityClass::Repeller);
  const LyapunovEstimate e = largest_lyapunov(rep, 0, 0, short_run());
  CHECK(std::abs(e.exponent - std::log(std::abs(lin.roots[0]))) < 0.01);
}

TEST_CASE("constant map hits the growth floor") {
  const LyapunovEstimate e = largest_lyapunov(EquationForm::eq6(0, 0), 0.3, 0.1, short_run());
  CHECK(e.floor_hit);
  CHECK(e.exponent < -100);
}

TEST_CASE("renormalization invariance and conjugation invariance") {
  oracle::Random rng(62);
  for (int i = 0; i < 20; ++i) {
    const EquationForm f = EquationForm::eq8(C(0.2037, 0.5444) + rng.complex_box(0.05), C(0.8749, 0.1210) + rng.complex_box(0.05));
    const C w0 = rng.complex_box(0.5), wm1 = rng.complex_box(0.5);
    LyapunovOptions a = short_run(3000, 300);
    LyapunovOptions b = a;
    b.initial_tangent *= C(-3.7, 12.5);
    const double ea = largest_lyapunov(f, w0, wm1, a).exponent;
    CHECK(std::abs(ea - largest_lyapunov(f, w0, wm1, b).exponent) < 1e-12);
    LyapunovOptions c = a;
    c.initial_tangent = c.initial_tangent.conjugate();
    const double ec = largest_lyapunov(f.conj(), std::conj(w0), std::conj(wm1), c).exponent;
    CHECK(std::abs(ea - ec) < 1e-10);
  }
}

TEST_CASE("property: tangent propagation matches the shadow-orbit oracle") {
  oracle::Random rng(63);
  int n = 0;
  while (n < 20) {
    Kind k;
    C p, q, w0, wm1;
    if (n % 2 == 0) {
      k = Kind::Eq8;
      p = rng.polar(1.5, 4.0);
      q = rng.complex_box(1);
      w0 = rng.complex_box(0.05);
      wm1 = rng.complex_box(0.05);
    } else {
      k = Kind::Eq6;
      p = rng.complex_box(0.3);
      q = rng.complex_box(0.3);
      w0 = rng.complex_box(0.5);
      wm1 = rng.complex_box(0.5);
    }
    const LyapunovEstimate e = largest_lyapunov(oracle::form(k, p, q), w0, wm1, short_run(3000, 300));
    if (e.status == LyapunovStatus::OrbitEscaped || e.status == LyapunovStatus::OrbitHitPole) continue;
    const double shadow = oracle::shadow_lyapunov(k, p, q, w0, wm1, 3000, 300);
    CHECK(std::abs(e.exponent - shadow) < 0.05);
    ++n;
  }
}

TEST_CASE("chaotic eq8 rows: scans are positive and thread-count independent") {
  const std::pair<C, C> rows[] = {{{0.4933, 0.7018}, {0.8878, 0.0551}}, {{0.2308, 0.6580}, {0.5629, 0.2818}}};
  for (const auto& [p, q] : rows) {
    ScanOptions o;
    o.threads = 1;
    const ScanReport a = lyapunov_scan(EquationForm::eq8(p, q), o);
    CHECK(a.fraction_positive == 1.0);
    CHECK(a.n_included == 10);
    CHECK(a.min > 0);
    o.threads = 5;
    const ScanReport b = lyapunov_scan(EquationForm::eq8(p, q), o);
    REQUIRE(b.estimates.size() == a.estimates.size());
    for (std::size_t i = 0; i < a.estimates.size(); ++i) CHECK(a.estimates[i].exponent == b.estimates[i].exponent);
    MESSAGE("p=" << p << " q=" << q << " interval (" << a.min << ", " << a.max << ")");
  }
}

TEST_CASE("stable configuration scans negative") {
  ScanOptions o;
  o.seed_count = 5;
  o.ball_radius = 0.05;
  const ScanReport r = lyapunov_scan(EquationForm::eq8(2, C(0.1, 0.1)), o);
  CHECK(r.fraction_positive == 0.0);
  CHECK(r.max < 0);
}

TEST_CASE("escaping orbits are excluded from the interval") {
  LyapunovOptions o = short_run(2000, 200);
  o.guards.overflow_threshold = 1e3;
  const LyapunovEstimate e = largest_lyapunov(EquationForm::eq6(C(-1, 0), C(0, 0)), 0.5, 0.5, o);
  // w_{n+1} = 1/(1 - w_n) cycles 0.5 -> 2 -> -1 -> 0.5: bounded, period 3.
  CHECK(e.status != LyapunovStatus::OrbitEscaped);
  const LyapunovEstimate hit = largest_lyapunov(EquationForm::eq6(C(-1, 0), C(0, 0)), 1.0, 1.0, o);
  CHECK(hit.status == LyapunovStatus::OrbitHitPole);
  CHECK(hit.retained == 0);
}
