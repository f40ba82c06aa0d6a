#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rdyn/core.hpp"

namespace rdyn {

/// Jacobian of the planar map T(u, v) = (v, f(v, u)) with u = w_{n-1}, v = w_n:
///   [ 0        1       ]
///   [ df/du    df/dv   ]
/// Throws Error(PoleHit) when the denominator is below the pole tolerance.
Matrix2 planar_jacobian(const EquationForm& form, Complex u, Complex v, const Guards& guards = {});

enum class LyapunovStatus { Converged, MaxIterations, OrbitEscaped, OrbitHitPole };

std::string_view to_string(LyapunovStatus status);

struct LyapunovOptions {
  std::size_t n_steps = 20'000;
  std::size_t transient = 2'000;
  std::size_t trace_every = 100;
  Guards guards;
  /// Starting tangent direction; any nonzero vector (it is normalized).
  Vector2 initial_tangent = Vector2(Complex(1.0), Complex(1.0));
  /// Converged when the running mean varies by less than this over the last
  /// 10% of trace checkpoints.
  double convergence_tolerance = 0.01;
  /// Growth factors below this are logged as log(floor) and flagged.
  double growth_floor = 1e-300;
};

struct LyapunovEstimate {
  /// Mean log growth per iteration (nats) over retained iterations; NaN if none.
  double exponent = 0.0;
  std::size_t n_iterations = 0;
  std::size_t transient_discarded = 0;
  std::size_t retained = 0;
  /// Running mean after every trace_every retained iterations.
  std::vector<double> convergence_trace;
  Complex w0;
  Complex w_minus1;
  LyapunovStatus status = LyapunovStatus::MaxIterations;
  bool floor_hit = false;
};

/// Largest Lyapunov exponent by tangent-vector propagation with per-step
/// renormalization in C^2 (Euclidean norm).
LyapunovEstimate largest_lyapunov(const EquationForm& form, Complex w0, Complex w_minus1,
                                  const LyapunovOptions& options = {});

struct ScanOptions {
  std::size_t seed_count = 10;
  double ball_radius = 1.0;
  std::uint64_t rng_seed = 20140101;
  LyapunovOptions lyapunov;
  unsigned threads = 0;
  /// Guard-terminated runs with fewer retained iterations are excluded.
  std::size_t min_retained = 100;
};

struct ScanReport {
  std::vector<LyapunovEstimate> estimates;
  std::vector<bool> included;
  std::size_t n_included = 0;
  std::size_t n_excluded = 0;
  /// Over included estimates; NaN when none are included.
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double fraction_positive = 0.0;
};

/// Runs largest_lyapunov over seed pairs drawn as (w_{-1}, w_0) from
/// Rng(rng_seed) in B(0, ball_radius)^2. Per-seed results are independent of
/// the thread count.
ScanReport lyapunov_scan(const EquationForm& form, const ScanOptions& options = {});

}  // namespace rdyn
