#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rdyn/core.hpp"
#include "rdyn/stability.hpp"

namespace rdyn {

enum class Termination { Completed, PoleHit, Overflow };

std::string_view to_string(Termination termination);

/// samples[0] = w_{-1}, samples[1] = w_0, samples[k] = w_{k-1}.
struct Orbit {
  EquationForm form;
  std::vector<Complex> samples;
  Termination termination = Termination::Completed;
  /// Index n of the sample w_n whose evaluation fired a guard; 0 when completed.
  std::size_t termination_step = 0;

  bool completed() const { return termination == Termination::Completed; }
};

/// Iterates up to n_steps times. Guard events stop the orbit and are recorded,
/// never thrown.
Orbit orbit(const EquationForm& form, Complex w0, Complex w_minus1, std::size_t n_steps,
            const Guards& guards = {});

inline constexpr double kDefaultTailFraction = 0.4;

/// Smallest t <= max_period with |w_{n+t} - w_n| < tol over the tail window of
/// max(20 t, tail_fraction * N) samples. Throws InvalidArgument for an orbit
/// that did not complete and InsufficientSamples when the orbit is too short
/// to test max_period.
std::optional<int> detect_period(const Orbit& orbit, double tol, int max_period,
                                 double tail_fraction = kDefaultTailFraction);

struct ContainmentReport {
  double epsilon = 0.0;
  std::size_t n_seeds = 0;
  std::size_t n_steps = 0;
  std::size_t contained = 0;
  double fraction_contained = 0.0;
  /// Orbits stopped by a pole or overflow guard (counted as escaped).
  std::size_t guard_terminated = 0;
  /// First step n at which |w_n| >= epsilon, per seed; nullopt if contained.
  std::vector<std::optional<std::size_t>> first_escape;
  std::optional<std::size_t> min_first_escape;
  std::optional<double> mean_first_escape;
  /// The sufficient condition for the same form and epsilon (reduced forms only).
  std::optional<ConditionReport> condition;
};

/// Samples (w_{-1}, w_0) uniformly in B(0, epsilon)^2 and reports how many
/// orbits stay inside for n_steps. Seeds are drawn sequentially from
/// Rng(rng_seed) before any orbit runs, so the report is thread-count independent.
ContainmentReport ball_containment(const EquationForm& form, double epsilon, std::size_t n_seeds,
                                   std::size_t n_steps, std::uint64_t rng_seed,
                                   const Guards& guards = {}, unsigned threads = 0);

}  // namespace rdyn
