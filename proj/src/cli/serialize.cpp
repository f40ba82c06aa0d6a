#include "rdyn/cli/serialize.hpp"

#include <charconv>
#include <cmath>

namespace rdyn::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

namespace {

json moduli(const std::array<Complex, 2>& zs) { return json::array({std::abs(zs[0]), std::abs(zs[1])}); }

json complex_pair(const std::array<Complex, 2>& zs) {
  return json::array({complex_to_json(zs[0]), complex_to_json(zs[1])});
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json matrix_to_json(const Matrix2& m) {
  return json::array({json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1))}),
                      json::array({complex_to_json(m(1, 0)), complex_to_json(m(1, 1))})});
}

json linearization_to_json(const Linearization& lin) {
  return {{"a0", complex_to_json(lin.a0)},
          {"a1", complex_to_json(lin.a1)},
          {"a0_modulus", std::abs(lin.a0)},
          {"a1_modulus", std::abs(lin.a1)},
          {"roots", complex_pair(lin.roots)},
          {"root_moduli", moduli(lin.roots)},
          {"clark_sum", lin.clark_sum},
          {"clark", clark_test(lin)}};
}

json condition_to_json(const ConditionReport& r) {
  return {{"epsilon", r.epsilon},
          {"holds", r.holds},
          {"margin", r.margin},
          {"condition", r.condition},
          {"note", r.note}};
}

json cycle_to_json(const PeriodTwoCycle& c) {
  return {{"phi", complex_to_json(c.phi)},
          {"psi", complex_to_json(c.psi)},
          {"chi", complex_to_json(c.chi)},
          {"lambda", complex_to_json(c.lambda)},
          {"chi_modulus", std::abs(c.chi)},
          {"lambda_modulus", std::abs(c.lambda)},
          {"chi_lambda_criterion", c.chi_lambda_criterion},
          {"eigenvalues", complex_pair(c.eigenvalues)},
          {"eigen_moduli", moduli(c.eigenvalues)},
          {"eigen_criterion", c.eigen_criterion},
          {"criteria_agree", c.chi_lambda_criterion == c.eigen_criterion},
          {"residual", finite_or_null(c.residual)},
          {"closed_form_t2_residual", finite_or_null(c.closed_form_t2_residual)},
          {"jacobian", matrix_to_json(c.jacobian)},
          {"closed_form_jacobian", matrix_to_json(c.closed_form_jacobian)}};
}

json estimate_to_json(const LyapunovEstimate& e) {
  return {{"w_minus1", complex_to_json(e.w_minus1)},
          {"w0", complex_to_json(e.w0)},
          {"exponent", finite_or_null(e.exponent)},
          {"status", std::string(to_string(e.status))},
          {"n_iterations", e.n_iterations},
          {"transient_discarded", e.transient_discarded},
          {"retained", e.retained},
          {"floor_hit", e.floor_hit},
          {"convergence_trace", e.convergence_trace}};
}

json scan_to_json(const ScanReport& r) {
  json seeds = json::array();
  for (std::size_t i = 0; i < r.estimates.size(); ++i) {
    json e = estimate_to_json(r.estimates[i]);
    e["included"] = static_cast<bool>(r.included[i]);
    seeds.push_back(std::move(e));
  }
  return {{"min", finite_or_null(r.min)},
          {"max", finite_or_null(r.max)},
          {"mean", finite_or_null(r.mean)},
          {"fraction_positive", finite_or_null(r.fraction_positive)},
          {"n_included", r.n_included},
          {"n_excluded", r.n_excluded},
          {"seeds", seeds}};
}

json containment_to_json(const ContainmentReport& r) {
  json escapes = json::array();
  for (const auto& e : r.first_escape) escapes.push_back(e ? json(*e) : json(nullptr));
  json j = {{"epsilon", r.epsilon},
            {"n_seeds", r.n_seeds},
            {"n_steps", r.n_steps},
            {"contained", r.contained},
            {"fraction_contained", r.fraction_contained},
            {"guard_terminated", r.guard_terminated},
            {"min_first_escape", r.min_first_escape ? json(*r.min_first_escape) : json(nullptr)},
            {"mean_first_escape", r.mean_first_escape ? json(*r.mean_first_escape) : json(nullptr)},
            {"first_escape", escapes}};
  if (r.condition) j["condition"] = condition_to_json(*r.condition);
  return j;
}

json report_header(const std::string& command, const RunConfig& config) {
  return {{"tool", "rdyn"}, {"version", RDYN_VERSION}, {"command", command}, {"config", config_to_json(config)}};
}

}  // namespace rdyn::cli
