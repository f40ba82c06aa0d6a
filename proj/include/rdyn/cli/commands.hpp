#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rdyn/cli/config.hpp"
#include "rdyn/simulate.hpp"

namespace rdyn::cli {

/// Equilibria, linearizations, Clark verdicts, classifications, boundedness
/// conditions and period-2 cycles as one JSON document.
json run_analyze(const RunConfig& config);

/// Period-2 cycles with both stability criteria.
json run_period2(const RunConfig& config);

struct SimulateResult {
  json report;
  std::vector<Orbit> orbits;
  std::string svg;
};

SimulateResult run_simulate(const RunConfig& config);

struct TableResult {
  json report;
  std::string csv;
};

/// One Lyapunov scan per parameter set.
TableResult run_lyapunov(const RunConfig& config);

/// Lyapunov scans over a Re(p) x Im(p) grid with q fixed.
TableResult run_sweep(const RunConfig& config);

/// step,re,im,modulus rows, step -1 for the first seed sample.
std::string orbit_csv(const Orbit& orbit);

/// Command-line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rdyn::cli
