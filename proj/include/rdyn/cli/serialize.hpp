#pragma once

#include <string>

#include "rdyn/cli/config.hpp"
#include "rdyn/equilibria.hpp"
#include "rdyn/lyapunov.hpp"
#include "rdyn/period2.hpp"
#include "rdyn/simulate.hpp"
#include "rdyn/stability.hpp"

namespace rdyn::cli {

/// Locale-independent, round-trippable (17 significant digits). NaN -> "nan".
std::string format_double(double x);

json matrix_to_json(const Matrix2& m);
json linearization_to_json(const Linearization& lin);
json condition_to_json(const ConditionReport& r);
json cycle_to_json(const PeriodTwoCycle& c);
json estimate_to_json(const LyapunovEstimate& e);
json scan_to_json(const ScanReport& r);
json containment_to_json(const ContainmentReport& r);

/// Header common to every JSON report: tool, version, command, resolved config.
json report_header(const std::string& command, const RunConfig& config);

}  // namespace rdyn::cli
