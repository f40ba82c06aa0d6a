#pragma once

#include <array>
#include <string>
#include <string_view>

#include "rdyn/core.hpp"
#include "rdyn/equilibria.hpp"

namespace rdyn {

/// Characteristic polynomial lambda^2 - a0 lambda - a1 = 0 of the linearized
/// recurrence x_{n+1} = a0 x_n + a1 x_{n-1}.
struct Linearization {
  Complex a0;
  Complex a1;
  /// Ordered by decreasing modulus.
  std::array<Complex, 2> roots;
  /// |a0| + |a1|
  double clark_sum;
};

Linearization make_linearization(Complex a0, Complex a1);

/// Closed-form characteristic coefficients for each (form, branch) pair of the
/// canonical equations. Throws DegenerateForm on a zero divisor.
Linearization linearize(const EquationForm& form, const Equilibrium& eq);

/// Coefficients taken from the partial derivatives of the map at (w, w).
/// Agrees with linearize() for Eq6 and Eq7; differs for Eq8.
Linearization linearize_exact(const EquationForm& form, Complex w);

/// Sufficient condition for local asymptotic stability: |a0| + |a1| < 1.
bool clark_test(const Linearization& lin);

enum class StabilityClass { LocallyAsymptoticallyStable, Unstable, Repeller, NonHyperbolic, Saddle };

std::string_view to_string(StabilityClass cls);

inline constexpr double kNonHyperbolicTolerance = 1e-9;

/// Decides by root moduli m1 >= m2:
///   any |m - 1| <= tol      -> NonHyperbolic
///   m1 < 1 - tol            -> LocallyAsymptoticallyStable
///   m2 > 1 + tol            -> Repeller
///   otherwise               -> Saddle
StabilityClass classify(const Linearization& lin, double tol = kNonHyperbolicTolerance);

inline bool is_unstable(StabilityClass cls) {
  return cls == StabilityClass::Unstable || cls == StabilityClass::Repeller ||
         cls == StabilityClass::Saddle;
}

struct ConditionReport {
  bool holds;
  /// Positive when the inequality holds, by how much; negative otherwise.
  double margin;
  double epsilon;
  std::string condition;
  std::string note;
};

/// Sufficient conditions for the ball B(0, epsilon) to be forward invariant:
///   Eq6: |p| >= 1 + |q|
///   Eq7: |p| >= |q| + 1/epsilon
///   Eq8: |p| > 1 and epsilon < (|p| - 1) / (|q| + 1)
ConditionReport boundedness_condition(const EquationForm& form, double epsilon);

}  // namespace rdyn
