#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/LU>

#include "rdyn/errors.hpp"

namespace rdyn {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

/// Coefficients of z_{n+1} = (alpha + beta z_n + gamma z_{n-1}) / (a + b z_n + c z_{n-1}).
///
/// Construction rejects b == c == 0: the map would be affine over a constant.
class FullParameters {
 public:
  FullParameters(Complex alpha, Complex beta, Complex gamma, Complex a, Complex b, Complex c);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  Complex gamma() const { return gamma_; }
  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }

  FullParameters conj() const;

  friend bool operator==(const FullParameters&, const FullParameters&) = default;

 private:
  Complex alpha_, beta_, gamma_, a_, b_, c_;
};

enum class FormKind { Full, Eq6, Eq7, Eq8 };

std::string_view to_string(FormKind kind);
std::optional<FormKind> parse_form_kind(std::string_view text);

/// One of the canonical equations. The reduced kinds are
///   Eq6: w_{n+1} = 1 / (1 + p w_n + q w_{n-1})
///   Eq7: w_{n+1} = w_n / (1 + p w_n + q w_{n-1})
///   Eq8: w_{n+1} = w_{n-1} / (p + q w_n + w_{n-1})
class EquationForm {
 public:
  static EquationForm eq6(Complex p, Complex q) { return {FormKind::Eq6, p, q, std::nullopt}; }
  static EquationForm eq7(Complex p, Complex q) { return {FormKind::Eq7, p, q, std::nullopt}; }
  static EquationForm eq8(Complex p, Complex q) { return {FormKind::Eq8, p, q, std::nullopt}; }
  static EquationForm reduced(FormKind kind, Complex p, Complex q);
  static EquationForm full(const FullParameters& params) { return {FormKind::Full, {}, {}, params}; }

  FormKind kind() const { return kind_; }
  bool is_reduced() const { return kind_ != FormKind::Full; }
  Complex p() const { return p_; }
  Complex q() const { return q_; }
  /// Throws InvalidArgument unless kind() == Full.
  const FullParameters& full_parameters() const;

  EquationForm conj() const;

  friend bool operator==(const EquationForm&, const EquationForm&) = default;

 private:
  EquationForm(FormKind kind, Complex p, Complex q, std::optional<FullParameters> full)
      : kind_(kind), p_(p), q_(q), full_(std::move(full)) {}

  FormKind kind_;
  Complex p_;
  Complex q_;
  std::optional<FullParameters> full_;
};

struct Guards {
  double pole_tolerance = 1e-12;
  double overflow_threshold = 1e12;
};

enum class StepStatus { Ok, PoleHit, Overflow };

std::string_view to_string(StepStatus status);

struct StepOutcome {
  Complex value{};
  StepStatus status = StepStatus::Ok;

  bool ok() const { return status == StepStatus::Ok; }
};

/// Evaluates the map once. `w_n` is the newest sample, `w_prev` the one before it.
StepOutcome step(const EquationForm& form, Complex w_n, Complex w_prev, const Guards& guards = {});

/// Partial derivatives of the map with respect to its two arguments.
struct MapPartials {
  Complex d_wn;
  Complex d_wprev;
};

/// Throws Error(PoleHit) when the denominator is below the pole tolerance.
MapPartials map_partials(const EquationForm& form, Complex w_n, Complex w_prev,
                         const Guards& guards = {});

struct Reduction {
  EquationForm form;
  /// z_n = scale * w_n.
  Complex scale;
  /// False when the closed-form change of variables does not reproduce the
  /// full equation exactly (the Eq7 case unless beta == a and b == c).
  bool exact;
};

/// Maps a structurally degenerate full equation onto Eq6, Eq7 or Eq8.
/// Zero tests are exact: the caller declares the structural zeros.
Reduction reduce(const FullParameters& full);

/// Roots of a x^2 + b x + c with the principal square root, ordered by
/// decreasing modulus. Requires a != 0.
std::array<Complex, 2> quadratic_roots(Complex a, Complex b, Complex c);

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace rdyn
