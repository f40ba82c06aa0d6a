#include "rdyn/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rdyn/parallel.hpp"
#include "rdyn/random.hpp"

namespace rdyn {

Matrix2 planar_jacobian(const EquationForm& form, Complex u, Complex v, const Guards& guards) {
  const MapPartials d = map_partials(form, v, u, guards);
  Matrix2 j;
  j << 0.0, 1.0, d.d_wprev, d.d_wn;
  return j;
}

std::string_view to_string(LyapunovStatus status) {
  switch (status) {
    case LyapunovStatus::Converged: return "converged";
    case LyapunovStatus::MaxIterations: return "max_iterations";
    case LyapunovStatus::OrbitEscaped: return "orbit_escaped";
    case LyapunovStatus::OrbitHitPole: return "orbit_hit_pole";
  }
  return "unknown";
}

namespace {

bool trace_settled(const std::vector<double>& trace, double tol) {
  if (trace.size() < 2) return false;
  const std::size_t tail = std::max<std::size_t>(2, trace.size() / 10);
  const auto first = trace.end() - static_cast<std::ptrdiff_t>(tail);
  const auto [lo, hi] = std::minmax_element(first, trace.end());
  return *hi - *lo < tol;
}

}  // namespace

LyapunovEstimate largest_lyapunov(const EquationForm& form, Complex w0, Complex w_minus1,
                                  const LyapunovOptions& options) {
  if (options.transient >= options.n_steps) {
    throw Error(ErrorCode::InvalidArgument, "transient must be smaller than n_steps");
  }
  const double tangent_norm = options.initial_tangent.norm();
  if (!(tangent_norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "initial tangent is zero");
  const Vector2 reseed = options.initial_tangent / tangent_norm;
  const double log_floor = std::log(options.growth_floor);
  const std::size_t trace_every = std::max<std::size_t>(1, options.trace_every);

  LyapunovEstimate est;
  est.w0 = w0;
  est.w_minus1 = w_minus1;
  est.status = LyapunovStatus::MaxIterations;

  Complex u = w_minus1;
  Complex v = w0;
  Vector2 tangent = reseed;
  double sum = 0.0;
  bool completed = true;

  for (std::size_t k = 0; k < options.n_steps; ++k) {
    Matrix2 jac;
    try {
      jac = planar_jacobian(form, u, v, options.guards);
    } catch (const Error&) {
      est.status = LyapunovStatus::OrbitHitPole;
      completed = false;
      break;
    }
    const StepOutcome next = step(form, v, u, options.guards);
    if (!next.ok()) {
      est.status = next.status == StepStatus::PoleHit ? LyapunovStatus::OrbitHitPole
                                                      : LyapunovStatus::OrbitEscaped;
      completed = false;
      break;
    }

    tangent = jac * tangent;
    const double growth = tangent.norm();
    double log_growth;
    if (!std::isfinite(growth)) {
      est.status = LyapunovStatus::OrbitEscaped;
      completed = false;
      break;
    }
    if (growth > options.growth_floor) {
      tangent /= growth;
      log_growth = std::log(growth);
    } else {
      tangent = reseed;
      log_growth = log_floor;
      est.floor_hit = true;
    }

    if (k >= options.transient) {
      sum += log_growth;
      ++est.retained;
      if (est.retained % trace_every == 0) {
        est.convergence_trace.push_back(sum / static_cast<double>(est.retained));
      }
    }
    u = v;
    v = next.value;
    ++est.n_iterations;
  }

  est.transient_discarded = std::min(est.n_iterations, options.transient);
  est.exponent = est.retained > 0 ? sum / static_cast<double>(est.retained)
                                  : std::numeric_limits<double>::quiet_NaN();
  if (completed) {
    est.status = trace_settled(est.convergence_trace, options.convergence_tolerance)
                     ? LyapunovStatus::Converged
                     : LyapunovStatus::MaxIterations;
  }
  return est;
}

ScanReport lyapunov_scan(const EquationForm& form, const ScanOptions& options) {
  if (options.seed_count < 2) throw Error(ErrorCode::InvalidArgument, "seed_count must be at least 2");
  if (!(options.ball_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball_radius must be positive");

  Rng rng(options.rng_seed);
  std::vector<std::pair<Complex, Complex>> seeds(options.seed_count);
  for (auto& [w_minus1, w0] : seeds) {
    w_minus1 = rng.in_disk(options.ball_radius);
    w0 = rng.in_disk(options.ball_radius);
  }

  ScanReport report;
  report.estimates.resize(seeds.size());
  parallel_for(seeds.size(), options.threads, [&](std::size_t i) {
    report.estimates[i] = largest_lyapunov(form, seeds[i].second, seeds[i].first, options.lyapunov);
  });

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::size_t positive = 0;
  for (const auto& e : report.estimates) {
    const bool sustained =
        e.status == LyapunovStatus::Converged || e.status == LyapunovStatus::MaxIterations;
    const bool use = std::isfinite(e.exponent) && (sustained || e.retained >= options.min_retained);
    report.included.push_back(use);
    if (!use) {
      ++report.n_excluded;
      continue;
    }
    ++report.n_included;
    lo = std::min(lo, e.exponent);
    hi = std::max(hi, e.exponent);
    sum += e.exponent;
    positive += e.exponent > 0.0 ? 1 : 0;
  }
  if (report.n_included == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.min = report.max = report.mean = report.fraction_positive = nan;
  } else {
    const auto n = static_cast<double>(report.n_included);
    report.min = lo;
    report.max = hi;
    report.mean = sum / n;
    report.fraction_positive = static_cast<double>(positive) / n;
  }
  return report;
}

}  // namespace rdyn
