#include "rdyn/equilibria.hpp"

#include <limits>

namespace rdyn {

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::Minus: return "minus";
    case Branch::Plus: return "plus";
    case Branch::Zero: return "zero";
    case Branch::Nonzero: return "nonzero";
    case Branch::Unique: return "unique";
  }
  return "unknown";
}

double equilibrium_residual(const EquationForm& form, Complex w) {
  const StepOutcome out = step(form, w, w);
  if (!out.ok()) return std::numeric_limits<double>::infinity();
  return std::abs(out.value - w);
}

namespace {

Equilibrium make(const EquationForm& form, Complex w, Branch branch) {
  const double r = equilibrium_residual(form, w);
  return {w, branch, r, !std::isfinite(r)};
}

}  // namespace

EquilibriumSet equilibria(const EquationForm& form) {
  const Complex p = form.p();
  const Complex q = form.q();
  EquilibriumSet out;
  switch (form.kind()) {
    case FormKind::Full:
      throw Error(ErrorCode::InvalidArgument, "equilibria need a reduced form; call reduce() first");

    case FormKind::Eq6: {
      // (p+q) w^2 + w - 1 = 0
      const Complex s = p + q;
      if (std::abs(s) < kDegeneracyThreshold) {
        out.points.push_back(make(form, 1.0, Branch::Unique));
        break;
      }
      const Complex root = std::sqrt(1.0 + 4.0 * s);
      out.points.push_back(make(form, (-1.0 - root) / (2.0 * s), Branch::Minus));
      out.points.push_back(make(form, (-1.0 + root) / (2.0 * s), Branch::Plus));
      break;
    }

    case FormKind::Eq7:
      out.points.push_back(make(form, 0.0, Branch::Zero));
      break;

    case FormKind::Eq8: {
      out.points.push_back(make(form, 0.0, Branch::Zero));
      if (std::abs(1.0 + q) < kDegeneracyThreshold) {
        out.nonzero_branch_missing = true;
      } else {
        const Complex w = (1.0 - p) / (1.0 + q);
        // p = 1 folds the nonzero branch onto zero.
        if (std::abs(w) >= kDegeneracyThreshold) out.points.push_back(make(form, w, Branch::Nonzero));
      }
      break;
    }
  }

  bool any_valid = false;
  for (const auto& e : out.points) any_valid = any_valid || !e.degenerate;
  if (!any_valid) {
    throw Error(ErrorCode::DegenerateForm, "no equilibrium where the map is defined");
  }
  return out;
}

}  // namespace rdyn
