#include "rdyn/period2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rdyn/equilibria.hpp"
#include "rdyn/lyapunov.hpp"

namespace rdyn {

std::string_view to_string(PairRelation relation) {
  switch (relation) {
    case PairRelation::Single: return "single";
    case PairRelation::Swap: return "swap";
    case PairRelation::Distinct: return "distinct";
  }
  return "unknown";
}

std::string_view to_string(T2Route route) {
  switch (route) {
    case T2Route::ClosedForm: return "closed_form";
    case T2Route::EquationLiteral: return "equation_literal";
  }
  return "unknown";
}

namespace {

constexpr double kDenominatorFloor = 1e-12;

bool close(Complex a, Complex b) {
  return std::abs(a - b) < kCycleSeparation * std::max({1.0, std::abs(a), std::abs(b)});
}

Complex div(Complex num, Complex den) {
  if (std::abs(den) < kDenominatorFloor) {
    throw Error(ErrorCode::DegenerateEvaluation, "vanishing denominator in second-iterate partials");
  }
  return num / den;
}

std::vector<CyclePair> closed_form_pairs(const EquationForm& form) {
  const Complex p = form.p();
  const Complex q = form.q();
  switch (form.kind()) {
    case FormKind::Eq6: {
      const Complex den = q * (q - p);
      if (std::abs(q) < kDenominatorFloor || std::abs(q - p) < kDenominatorFloor) {
        throw Error(ErrorCode::DegenerateParameters, "Eq6 period-2 forms need q != 0 and q != p");
      }
      const Complex d = std::sqrt(p * p + p * (-2.0 - 4.0 * q) * q + q * q + 4.0 * q * q * q);
      return {
          {0.5 * (p - q + d) / den, (0.5 * p - 0.5 * q - 0.5 * d) / den},
          {q / (-0.5 * p + 0.5 * q - 0.5 * d), (-0.5 - 0.5 * d / (p - q)) / q},
      };
    }
    case FormKind::Eq7: {
      if (std::abs(q) < kDenominatorFloor || std::abs(p - q) < kDenominatorFloor) {
        throw Error(ErrorCode::DegenerateParameters, "Eq7 period-2 forms need q != 0 and p != q");
      }
      const Complex d = std::sqrt(p * p - q * q);
      const Complex den = p * q - q * q;
      return {
          {1.0 / (0.5 * p - 0.5 * q - 0.5 * d), -1.0 / q + d / den},
          {1.0 / (0.5 * p - 0.5 * q + 0.5 * d), -1.0 / q - d / den},
      };
    }
    case FormKind::Eq8:
      return {{0.0, 1.0 - p}};
    case FormKind::Full:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "period-2 closed forms need a reduced form");
}

}  // namespace

Period2Solutions period2_solutions(const EquationForm& form) {
  const auto pairs = closed_form_pairs(form);
  std::vector<Complex> fixed_points;
  try {
    for (const auto& e : equilibria(form).points) fixed_points.push_back(e.value);
  } catch (const Error&) {
    // no equilibria to compare against
  }
  const auto is_fixed = [&](Complex z) {
    return std::any_of(fixed_points.begin(), fixed_points.end(), [&](Complex w) { return close(z, w); });
  };

  Period2Solutions out;
  int index = 0;
  for (const auto& pair : pairs) {
    ++index;
    Period2Candidate c{pair, index, false, ""};
    if (!is_finite(pair.phi) || !is_finite(pair.psi)) {
      c.spurious = true;
      c.reason = "non_finite";
    } else if (close(pair.phi, pair.psi)) {
      c.spurious = true;
      c.reason = "not_prime";
    } else if (is_fixed(pair.phi) && is_fixed(pair.psi)) {
      c.spurious = true;
      c.reason = "equilibria";
    }
    out.candidates.push_back(c);
    if (!c.spurious) out.cycles.push_back(pair);
  }
  if (out.cycles.empty()) {
    throw Error(ErrorCode::NoPrimePeriodTwo, "every closed-form candidate was filtered");
  }
  if (out.cycles.size() == 2) {
    const auto& a = out.cycles[0];
    const auto& b = out.cycles[1];
    if (close(a.phi, b.psi) && close(a.psi, b.phi)) {
      out.relation = PairRelation::Swap;
    } else if (close(a.phi, b.phi) && close(a.psi, b.psi)) {
      out.cycles.pop_back();
      out.relation = PairRelation::Single;
    } else {
      out.relation = PairRelation::Distinct;
    }
  }
  return out;
}

namespace {

Matrix2 closed_form_jacobian(const EquationForm& form, Complex phi, Complex psi) {
  const Complex p = form.p();
  const Complex q = form.q();
  Matrix2 j;
  switch (form.kind()) {
    case FormKind::Eq6: {
      const Complex d = 1.0 + q * phi + p * psi;
      const Complex e = (1.0 + q * phi) * (1.0 + q * psi) + p * (1.0 + psi + q * psi * psi);
      const Complex d2 = d * d;
      const Complex inner = 1.0 + q * psi + div(p, d);
      j(0, 0) = div(-q, d2);
      j(0, 1) = div(-p, d2);
      j(1, 0) = div(p * q, e * e);
      j(1, 1) = div(-q + div(p * p, d2), inner * inner);
      return j;
    }
    case FormKind::Eq7: {
      const Complex d = 1.0 + q * phi + p * psi;
      const Complex e = 1.0 + psi + p * psi + q * (phi + psi + q * phi * psi + p * psi * psi);
      j(0, 0) = div(-q * psi, d * d);
      j(0, 1) = div(1.0 + q * phi, d * d);
      j(1, 0) = div(-q * psi * (1.0 + q * psi), e * e);
      j(1, 1) = div(1.0 + q * (phi - p * psi * psi), e * e);
      return j;
    }
    case FormKind::Eq8: {
      const Complex d = p + phi + q * psi;
      const Complex e = p + phi + q * phi + (p + q + phi) * psi + q * psi * psi;
      j(0, 0) = div(p + q * psi, d * d);
      j(0, 1) = div(-q * phi, d * d);
      j(1, 0) = div((1.0 + psi) * (p + q * psi), e * e);
      j(1, 1) = div(-phi * (p + q + phi + 2.0 * q * psi), e * e);
      return j;
    }
    case FormKind::Full: break;
  }
  throw Error(ErrorCode::InvalidArgument, "closed-form partials exist only for reduced forms");
}

Matrix2 planar(const EquationForm& form, Complex u, Complex v) {
  Guards guards;
  guards.pole_tolerance = kDenominatorFloor;
  try {
    return planar_jacobian(form, u, v, guards);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateEvaluation, "orbit passes through a pole");
  }
}

Matrix2 equation_literal_jacobian(const EquationForm& form, Complex phi, Complex psi) {
  const StepOutcome next = step(form, psi, phi);
  if (!next.ok()) throw Error(ErrorCode::DegenerateEvaluation, "orbit passes through a pole");
  return planar(form, psi, next.value) * planar(form, phi, psi);
}

}  // namespace

Matrix2 second_iterate_jacobian(const EquationForm& form, Complex phi, Complex psi, T2Route route) {
  return route == T2Route::ClosedForm ? closed_form_jacobian(form, phi, psi)
                                        : equation_literal_jacobian(form, phi, psi);
}

ChiLambda chi_lambda(const EquationForm& form, Complex phi, Complex psi) {
  const Matrix2 j = closed_form_jacobian(form, phi, psi);
  const Complex p = form.p();
  const Complex q = form.q();
  const Complex chi = j(0, 0) + j(1, 1);
  switch (form.kind()) {
    case FormKind::Eq6: {
      const Complex e = (1.0 + q * phi) * (1.0 + q * psi) + p * (1.0 + psi + q * psi * psi);
      return {chi, div(q * q, e * e)};
    }
    case FormKind::Eq7: {
      const Complex d = 1.0 + q * phi + p * psi;
      const Complex e = 1.0 + psi + p * psi + q * (phi + psi + q * phi * psi + p * psi * psi);
      return {chi, div(q * q * psi * psi, d * e * e)};
    }
    case FormKind::Eq8: {
      const Complex d = p + phi + q * psi;
      const Complex e = p + phi + q * phi + (p + q + phi) * psi + q * psi * psi;
      return {chi, div(-phi * (p + q * psi), d * e * e)};
    }
    case FormKind::Full: break;
  }
  throw Error(ErrorCode::InvalidArgument, "chi/lambda exist only for reduced forms");
}

std::array<Complex, 2> eigenvalues(const Matrix2& m) {
  return quadratic_roots(1.0, -m.trace(), m.determinant());
}

CycleVerdicts cycle_stability(const Matrix2& jacobian, Complex chi, Complex lambda) {
  const double l = std::abs(lambda);
  const auto ev = eigenvalues(jacobian);
  return {std::abs(chi) < 1.0 + l && 1.0 + l < 2.0, std::abs(ev[0]) < 1.0 && std::abs(ev[1]) < 1.0};
}

CycleVerdicts cycle_stability(const PeriodTwoCycle& cycle) {
  return cycle_stability(cycle.jacobian, cycle.chi, cycle.lambda);
}

double verify_cycle(const EquationForm& form, Complex phi, Complex psi, const Guards& guards) {
  const auto eval = [&](Complex w_n, Complex w_prev) {
    const StepOutcome out = step(form, w_n, w_prev, guards);
    if (out.status == StepStatus::PoleHit) throw Error(ErrorCode::PoleHit, "cycle hits a pole");
    if (out.status == StepStatus::Overflow) throw Error(ErrorCode::Overflow, "cycle overflows");
    return out.value;
  };
  // From (w_{n-1}, w_n) = (phi, psi) the next sample must be phi, then psi.
  const Complex next = eval(psi, phi);
  const Complex after = eval(next, psi);
  const double alternation = std::max(std::abs(next - phi), std::abs(eval(phi, psi) - psi));
  const double t2 = std::max(std::abs(next - phi), std::abs(after - psi));
  return std::max(alternation, t2);
}

double closed_form_t2_residual(const EquationForm& form, Complex phi, Complex psi) {
  const Complex p = form.p();
  const Complex q = form.q();
  const Complex u = phi;
  const Complex v = psi;
  Complex g;
  Complex h;
  switch (form.kind()) {
    case FormKind::Eq6:
      g = 1.0 / (1.0 + p * v + q * u);
      h = 1.0 / (1.0 + p * g + q * v);
      break;
    case FormKind::Eq7:
      g = v / (1.0 + p * v + q * u);
      h = g / (1.0 + p * g + q * v);
      break;
    case FormKind::Eq8:
      g = u / (p + q * v + u);
      h = g / (p + q * g + v);
      break;
    case FormKind::Full:
      throw Error(ErrorCode::InvalidArgument, "closed-form second iterate exists only for reduced forms");
  }
  const double r = std::max(std::abs(g - phi), std::abs(h - psi));
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

PeriodTwoCycle analyze_cycle(const EquationForm& form, Complex phi, Complex psi) {
  PeriodTwoCycle c;
  c.phi = phi;
  c.psi = psi;
  c.jacobian = equation_literal_jacobian(form, phi, psi);
  c.closed_form_jacobian = closed_form_jacobian(form, phi, psi);
  const auto cl = chi_lambda(form, phi, psi);
  c.chi = cl.chi;
  c.lambda = cl.lambda;
  c.eigenvalues = eigenvalues(c.jacobian);
  const auto verdicts = cycle_stability(c);
  c.chi_lambda_criterion = verdicts.chi_lambda_criterion;
  c.eigen_criterion = verdicts.eigen_criterion;
  try {
    c.residual = verify_cycle(form, phi, psi);
  } catch (const Error&) {
    c.residual = std::numeric_limits<double>::infinity();
  }
  c.closed_form_t2_residual = closed_form_t2_residual(form, phi, psi);
  return c;
}

}  // namespace rdyn
