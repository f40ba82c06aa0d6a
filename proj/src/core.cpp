#include "rdyn/core.hpp"

#include <algorithm>
#include <cmath>

namespace rdyn {

namespace {

constexpr Complex kZero{0.0, 0.0};

bool is_pole(Complex denominator, const Guards& guards) {
  return !(std::abs(denominator) >= guards.pole_tolerance);
}

}  // namespace

FullParameters::FullParameters(Complex alpha, Complex beta, Complex gamma, Complex a, Complex b,
                               Complex c)
    : alpha_(alpha), beta_(beta), gamma_(gamma), a_(a), b_(b), c_(c) {
  for (Complex z : {alpha, beta, gamma, a, b, c}) {
    if (!is_finite(z)) throw Error(ErrorCode::InvalidParameters, "coefficients must be finite");
  }
  if (b == kZero && c == kZero) {
    throw Error(ErrorCode::InvalidParameters,
                "B and C are both zero; the denominator must depend on z_n or z_{n-1}");
  }
}

FullParameters FullParameters::conj() const {
  return {std::conj(alpha_), std::conj(beta_), std::conj(gamma_),
          std::conj(a_),     std::conj(b_),    std::conj(c_)};
}

std::string_view to_string(FormKind kind) {
  switch (kind) {
    case FormKind::Full: return "full";
    case FormKind::Eq6: return "eq6";
    case FormKind::Eq7: return "eq7";
    case FormKind::Eq8: return "eq8";
  }
  return "unknown";
}

std::optional<FormKind> parse_form_kind(std::string_view text) {
  for (FormKind k : {FormKind::Full, FormKind::Eq6, FormKind::Eq7, FormKind::Eq8}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

EquationForm EquationForm::reduced(FormKind kind, Complex p, Complex q) {
  if (kind == FormKind::Full) {
    throw Error(ErrorCode::InvalidArgument, "reduced() needs eq6, eq7 or eq8");
  }
  if (!is_finite(p) || !is_finite(q)) {
    throw Error(ErrorCode::InvalidParameters, "p and q must be finite");
  }
  return {kind, p, q, std::nullopt};
}

const FullParameters& EquationForm::full_parameters() const {
  if (!full_) throw Error(ErrorCode::InvalidArgument, "form has no full parameters");
  return *full_;
}

EquationForm EquationForm::conj() const {
  if (full_) return full(full_->conj());
  return {kind_, std::conj(p_), std::conj(q_), std::nullopt};
}

std::string_view to_string(StepStatus status) {
  switch (status) {
    case StepStatus::Ok: return "ok";
    case StepStatus::PoleHit: return "pole_hit";
    case StepStatus::Overflow: return "overflow";
  }
  return "unknown";
}

namespace {

struct Fraction {
  Complex numerator;
  Complex denominator;
};

Fraction map_fraction(const EquationForm& form, Complex w_n, Complex w_prev) {
  const Complex p = form.p();
  const Complex q = form.q();
  switch (form.kind()) {
    case FormKind::Eq6: return {1.0, 1.0 + p * w_n + q * w_prev};
    case FormKind::Eq7: return {w_n, 1.0 + p * w_n + q * w_prev};
    case FormKind::Eq8: return {w_prev, p + q * w_n + w_prev};
    case FormKind::Full: {
      const auto& f = form.full_parameters();
      return {f.alpha() + f.beta() * w_n + f.gamma() * w_prev, f.a() + f.b() * w_n + f.c() * w_prev};
    }
  }
  return {};
}

}  // namespace

StepOutcome step(const EquationForm& form, Complex w_n, Complex w_prev, const Guards& guards) {
  const auto [num, den] = map_fraction(form, w_n, w_prev);
  if (is_pole(den, guards)) return {kZero, StepStatus::PoleHit};
  const Complex value = num / den;
  if (!is_finite(value) || std::abs(value) > guards.overflow_threshold) {
    return {kZero, StepStatus::Overflow};
  }
  return {value, StepStatus::Ok};
}

MapPartials map_partials(const EquationForm& form, Complex w_n, Complex w_prev,
                         const Guards& guards) {
  const auto [num, den] = map_fraction(form, w_n, w_prev);
  if (is_pole(den, guards)) throw Error(ErrorCode::PoleHit, "denominator vanishes");
  const Complex den2 = den * den;
  const Complex p = form.p();
  const Complex q = form.q();
  switch (form.kind()) {
    case FormKind::Eq6: return {-p / den2, -q / den2};
    case FormKind::Eq7: return {(1.0 + q * w_prev) / den2, -q * w_n / den2};
    case FormKind::Eq8: return {-q * w_prev / den2, (p + q * w_n) / den2};
    case FormKind::Full: {
      const auto& f = form.full_parameters();
      return {(f.beta() * den - num * f.b()) / den2, (f.gamma() * den - num * f.c()) / den2};
    }
  }
  return {};
}

Reduction reduce(const FullParameters& full) {
  const bool alpha0 = full.alpha() == kZero;
  const bool beta0 = full.beta() == kZero;
  const bool gamma0 = full.gamma() == kZero;
  const bool eq6 = beta0 && gamma0;
  const bool eq7 = alpha0 && gamma0;
  const bool eq8 = alpha0 && beta0;
  if (eq6 + eq7 + eq8 != 1) {
    throw Error(ErrorCode::NotReducible,
                "exactly one of (beta=gamma=0), (alpha=gamma=0), (alpha=beta=0) must hold");
  }

  const Complex a = full.a();
  const Complex b = full.b();
  const Complex c = full.c();
  if (eq6) {
    if (a == kZero) throw Error(ErrorCode::DegenerateDivisor, "A must be nonzero for Eq6");
    const Complex alpha = full.alpha();
    return {EquationForm::eq6(alpha * b / (a * a), alpha * c / (a * a)), alpha / a, true};
  }
  if (eq7) {
    if (a == kZero) throw Error(ErrorCode::DegenerateDivisor, "A must be nonzero for Eq7");
    if (c == kZero) throw Error(ErrorCode::DegenerateDivisor, "C must be nonzero for Eq7");
    const bool exact = full.beta() == a && b == c;
    return {EquationForm::eq7(full.beta() / a, b / c), a / c, exact};
  }
  if (c == kZero) throw Error(ErrorCode::DegenerateDivisor, "C must be nonzero for Eq8");
  return {EquationForm::eq8(a / full.gamma(), b / c), full.gamma() / c, true};
}

std::array<Complex, 2> quadratic_roots(Complex a, Complex b, Complex c) {
  if (a == kZero) throw Error(ErrorCode::InvalidArgument, "leading coefficient is zero");
  Complex s = std::sqrt(b * b - 4.0 * a * c);
  // Pick the sign that avoids cancellation in b + s.
  const Complex principal = s;
  if ((std::conj(b) * s).real() < 0.0) s = -s;
  const Complex t = -0.5 * (b + s);
  std::array<Complex, 2> roots{};
  if (t == kZero) {
    roots = {principal / (2.0 * a), -principal / (2.0 * a)};
  } else {
    roots = {t / a, c / t};
  }
  if (std::abs(roots[0]) < std::abs(roots[1])) std::swap(roots[0], roots[1]);
  return roots;
}

}  // namespace rdyn
