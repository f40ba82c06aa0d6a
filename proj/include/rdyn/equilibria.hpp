#pragma once

#include <string_view>
#include <vector>

#include "rdyn/core.hpp"

namespace rdyn {

enum class Branch { Minus, Plus, Zero, Nonzero, Unique };

std::string_view to_string(Branch branch);

struct Equilibrium {
  Complex value;
  Branch branch;
  /// |f(value, value) - value|, or +inf when the map is undefined there.
  double residual;
  /// Set when the map itself is undefined at the point (e.g. Eq8 zero with p = 0).
  bool degenerate = false;
};

struct EquilibriumSet {
  std::vector<Equilibrium> points;
  /// Eq8 with 1 + q = 0 has no nonzero equilibrium.
  bool nonzero_branch_missing = false;
};

inline constexpr double kDegeneracyThreshold = 1e-12;

/// Closed-form equilibria of a reduced form. Eq6 branches come back as
/// (Minus, Plus) using the principal square root.
EquilibriumSet equilibria(const EquationForm& form);

/// |f(w, w) - w| with the default guards; +inf at a pole.
double equilibrium_residual(const EquationForm& form, Complex w);

}  // namespace rdyn
