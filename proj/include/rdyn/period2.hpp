#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rdyn/core.hpp"

namespace rdyn {

/// Alternating orbit ..., phi, psi, phi, psi, ... In planar coordinates the
/// state is (u, v) = (w_{n-1}, w_n) = (phi, psi).
struct CyclePair {
  Complex phi;
  Complex psi;
};

struct Period2Candidate {
  CyclePair pair;
  /// Which closed-form set produced it (1 or 2).
  int set_index;
  bool spurious;
  std::string reason;
};

enum class PairRelation { Single, Swap, Distinct };

std::string_view to_string(PairRelation relation);

struct Period2Solutions {
  std::vector<CyclePair> cycles;
  /// Every closed-form candidate, kept or filtered.
  std::vector<Period2Candidate> candidates;
  /// How the two kept pairs relate when there are two.
  PairRelation relation = PairRelation::Single;
};

inline constexpr double kCycleSeparation = 1e-9;

/// Closed-form prime-period-2 solutions.
///   Eq6: two sets built from sqrt(p^2 + p(-2-4q)q + q^2 + 4q^3) over q(q - p)
///   Eq7: two sets built from sqrt(p^2 - q^2)
///   Eq8: (0, 1 - p)
/// Candidates that collapse to a single point, or land on equilibria, are
/// filtered. Throws DegenerateParameters or NoPrimePeriodTwo.
Period2Solutions period2_solutions(const EquationForm& form);

/// How the Jacobian of the second iterate T^2(u, v) is evaluated.
///   ClosedForm: the closed-form partials of (g, h) per form.
///   EquationLiteral: chain rule through the actual planar map T.
enum class T2Route { ClosedForm, EquationLiteral };

std::string_view to_string(T2Route route);

/// Throws DegenerateEvaluation when a denominator is below 1e-12.
Matrix2 second_iterate_jacobian(const EquationForm& form, Complex phi, Complex psi,
                                T2Route route = T2Route::ClosedForm);

/// chi = dg/du + dh/dv and lambda in closed form per form (lambda equals the
/// determinant of the closed-form partials).
struct ChiLambda {
  Complex chi;
  Complex lambda;
};

ChiLambda chi_lambda(const EquationForm& form, Complex phi, Complex psi);

std::array<Complex, 2> eigenvalues(const Matrix2& m);

struct PeriodTwoCycle {
  Complex phi;
  Complex psi;
  /// Equation-literal Jacobian of T^2 at (phi, psi).
  Matrix2 jacobian;
  /// Closed-form Jacobian of T^2 at (phi, psi).
  Matrix2 closed_form_jacobian;
  Complex chi;
  Complex lambda;
  /// Eigenvalues of `jacobian`, decreasing modulus.
  std::array<Complex, 2> eigenvalues;
  bool chi_lambda_criterion;
  bool eigen_criterion;
  /// verify_cycle() on the actual equation.
  double residual;
  /// Fixed-point residual of the closed-form (g, h) second iterate.
  double closed_form_t2_residual;
};

struct CycleVerdicts {
  /// |chi| < 1 + |lambda| < 2
  bool chi_lambda_criterion;
  /// Both eigenvalues strictly inside the unit disk. Canonical verdict.
  bool eigen_criterion;
};

CycleVerdicts cycle_stability(const Matrix2& jacobian, Complex chi, Complex lambda);
CycleVerdicts cycle_stability(const PeriodTwoCycle& cycle);

PeriodTwoCycle analyze_cycle(const EquationForm& form, Complex phi, Complex psi);

/// max(|f(psi, phi) - phi|, |f(phi, psi) - psi|) together with the residual of
/// applying T twice from (phi, psi). Throws PoleHit.
double verify_cycle(const EquationForm& form, Complex phi, Complex psi, const Guards& guards = {});

/// max(|g(phi, psi) - phi|, |h(phi, psi) - psi|) for the closed-form (g, h).
double closed_form_t2_residual(const EquationForm& form, Complex phi, Complex psi);

}  // namespace rdyn
