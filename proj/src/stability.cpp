#include "rdyn/stability.hpp"

#include <cmath>

namespace rdyn {

Linearization make_linearization(Complex a0, Complex a1) {
  return {a0, a1, quadratic_roots(1.0, -a0, -a1), std::abs(a0) + std::abs(a1)};
}

namespace {

Complex checked_div(Complex num, Complex den, const char* what) {
  if (std::abs(den) < kDegeneracyThreshold) throw Error(ErrorCode::DegenerateForm, what);
  return num / den;
}

[[noreturn]] void branch_mismatch(const EquationForm& form, Branch branch) {
  throw Error(ErrorCode::InvalidArgument, std::string("branch ") + std::string(to_string(branch)) +
                                              " does not belong to " +
                                              std::string(to_string(form.kind())));
}

}  // namespace

Linearization linearize(const EquationForm& form, const Equilibrium& eq) {
  const Complex p = form.p();
  const Complex q = form.q();
  switch (form.kind()) {
    case FormKind::Full:
      throw Error(ErrorCode::InvalidArgument, "linearize needs a reduced form");

    case FormKind::Eq6: {
      if (eq.branch == Branch::Unique) {
        const Complex w2 = eq.value * eq.value;
        return make_linearization(-p * w2, -q * w2);
      }
      const Complex root = std::sqrt(1.0 + 4.0 * p + 4.0 * q);
      Complex base;
      if (eq.branch == Branch::Minus) {
        base = -1.0 + root;
      } else if (eq.branch == Branch::Plus) {
        base = 1.0 + root;
      } else {
        branch_mismatch(form, eq.branch);
      }
      const Complex den = base * base;
      return make_linearization(checked_div(-4.0 * p, den, "(-1 +/- sqrt(1+4p+4q))^2 vanishes"),
                                checked_div(-4.0 * q, den, "(-1 +/- sqrt(1+4p+4q))^2 vanishes"));
    }

    case FormKind::Eq7:
      if (eq.branch != Branch::Zero) branch_mismatch(form, eq.branch);
      return make_linearization(1.0, 0.0);

    case FormKind::Eq8:
      if (eq.branch == Branch::Zero) {
        return make_linearization(checked_div(1.0, p, "p = 0"), 0.0);
      }
      if (eq.branch == Branch::Nonzero) {
        return make_linearization(checked_div(1.0 + p * q, 1.0 + q, "1 + q = 0"),
                                  checked_div(p - 1.0, 1.0 + q, "1 + q = 0"));
      }
      branch_mismatch(form, eq.branch);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown form");
}

Linearization linearize_exact(const EquationForm& form, Complex w) {
  try {
    const MapPartials d = map_partials(form, w, w);
    return make_linearization(d.d_wn, d.d_wprev);
  } catch (const Error& e) {
    throw Error(ErrorCode::DegenerateForm, e.what());
  }
}

bool clark_test(const Linearization& lin) { return lin.clark_sum < 1.0; }

std::string_view to_string(StabilityClass cls) {
  switch (cls) {
    case StabilityClass::LocallyAsymptoticallyStable: return "locally_asymptotically_stable";
    case StabilityClass::Unstable: return "unstable";
    case StabilityClass::Repeller: return "repeller";
    case StabilityClass::NonHyperbolic: return "non_hyperbolic";
    case StabilityClass::Saddle: return "saddle";
  }
  return "unknown";
}

StabilityClass classify(const Linearization& lin, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const double m1 = std::abs(lin.roots[0]);
  const double m2 = std::abs(lin.roots[1]);
  if (std::abs(m1 - 1.0) <= tol || std::abs(m2 - 1.0) <= tol) return StabilityClass::NonHyperbolic;
  if (m1 < 1.0 - tol && m2 < 1.0 - tol) return StabilityClass::LocallyAsymptoticallyStable;
  if (m1 > 1.0 + tol && m2 > 1.0 + tol) return StabilityClass::Repeller;
  return StabilityClass::Saddle;
}

ConditionReport boundedness_condition(const EquationForm& form, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const double ap = std::abs(form.p());
  const double aq = std::abs(form.q());
  switch (form.kind()) {
    case FormKind::Eq6: {
      const double margin = ap - (1.0 + aq);
      return {margin >= 0.0, margin, epsilon, "|p| >= 1 + |q|", "independent of epsilon"};
    }
    case FormKind::Eq7: {
      const double margin = ap - (aq + 1.0 / epsilon);
      return {margin >= 0.0, margin, epsilon, "|p| >= |q| + 1/epsilon", ""};
    }
    case FormKind::Eq8: {
      const double bound = (ap - 1.0) / (aq + 1.0);
      const double margin = std::min(bound - epsilon, ap - 1.0);
      return {ap > 1.0 && epsilon < bound, margin, epsilon,
              "|p| > 1 and epsilon < (|p| - 1)/(|q| + 1)",
              "the bound is positive only when |p| > 1"};
    }
    case FormKind::Full: break;
  }
  throw Error(ErrorCode::InvalidArgument, "boundedness conditions exist only for reduced forms");
}

}  // namespace rdyn
