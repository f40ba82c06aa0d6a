#include "rdyn/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rdyn/parallel.hpp"
#include "rdyn/random.hpp"

namespace rdyn {

std::string_view to_string(Termination termination) {
  switch (termination) {
    case Termination::Completed: return "completed";
    case Termination::PoleHit: return "pole_hit";
    case Termination::Overflow: return "overflow";
  }
  return "unknown";
}

Orbit orbit(const EquationForm& form, Complex w0, Complex w_minus1, std::size_t n_steps,
            const Guards& guards) {
  if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "n_steps must be at least 1");
  Orbit out{form, {}, Termination::Completed, 0};
  out.samples.reserve(n_steps + 2);
  out.samples.push_back(w_minus1);
  out.samples.push_back(w0);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const std::size_t k = out.samples.size();
    const StepOutcome s = step(form, out.samples[k - 1], out.samples[k - 2], guards);
    if (!s.ok()) {
      out.termination = s.status == StepStatus::PoleHit ? Termination::PoleHit : Termination::Overflow;
      out.termination_step = n;
      break;
    }
    out.samples.push_back(s.value);
  }
  return out;
}

std::optional<int> detect_period(const Orbit& orbit, double tol, int max_period,
                                 double tail_fraction) {
  if (!orbit.completed()) throw Error(ErrorCode::InvalidArgument, "orbit did not complete");
  if (max_period < 1) throw Error(ErrorCode::InvalidArgument, "max_period must be at least 1");
  const auto& w = orbit.samples;
  const std::size_t n = w.size();
  const auto needed = static_cast<std::size_t>(21 * max_period);
  if (n < needed) {
    throw Error(ErrorCode::InsufficientSamples,
                "need at least " + std::to_string(needed) + " samples, have " + std::to_string(n));
  }
  const auto tail = static_cast<std::size_t>(tail_fraction * static_cast<double>(n));
  for (int t = 1; t <= max_period; ++t) {
    const auto shift = static_cast<std::size_t>(t);
    const std::size_t window = std::min(n, std::max<std::size_t>(20 * shift, tail));
    bool periodic = true;
    for (std::size_t i = n - window; i + shift < n && periodic; ++i) {
      periodic = std::abs(w[i + shift] - w[i]) < tol;
    }
    if (periodic) return t;
  }
  return std::nullopt;
}

ContainmentReport ball_containment(const EquationForm& form, double epsilon, std::size_t n_seeds,
                                   std::size_t n_steps, std::uint64_t rng_seed,
                                   const Guards& guards, unsigned threads) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (n_seeds < 1) throw Error(ErrorCode::InvalidArgument, "n_seeds must be at least 1");

  Rng rng(rng_seed);
  std::vector<std::pair<Complex, Complex>> seeds(n_seeds);
  for (auto& [w_minus1, w0] : seeds) {
    w_minus1 = rng.in_disk(epsilon);
    w0 = rng.in_disk(epsilon);
  }

  ContainmentReport report;
  report.epsilon = epsilon;
  report.n_seeds = n_seeds;
  report.n_steps = n_steps;
  report.first_escape.resize(n_seeds);
  std::vector<char> guarded(n_seeds, 0);

  parallel_for(n_seeds, threads, [&](std::size_t i) {
    const auto [w_minus1, w0] = seeds[i];
    const Orbit o = orbit(form, w0, w_minus1, n_steps, guards);
    for (std::size_t k = 2; k < o.samples.size(); ++k) {
      if (std::abs(o.samples[k]) >= epsilon) {
        report.first_escape[i] = k - 1;
        return;
      }
    }
    if (!o.completed()) {
      guarded[i] = 1;
      report.first_escape[i] = o.termination_step;
    }
  });

  std::vector<std::size_t> escapes;
  for (std::size_t i = 0; i < n_seeds; ++i) {
    if (report.first_escape[i]) {
      escapes.push_back(*report.first_escape[i]);
    } else {
      ++report.contained;
    }
    report.guard_terminated += static_cast<std::size_t>(guarded[i]);
  }
  report.fraction_contained = static_cast<double>(report.contained) / static_cast<double>(n_seeds);
  if (!escapes.empty()) {
    report.min_first_escape = *std::min_element(escapes.begin(), escapes.end());
    report.mean_first_escape = std::accumulate(escapes.begin(), escapes.end(), 0.0) /
                               static_cast<double>(escapes.size());
  }
  if (form.is_reduced()) report.condition = boundedness_condition(form, epsilon);
  return report;
}

}  // namespace rdyn
