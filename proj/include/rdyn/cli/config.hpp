#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdyn/core.hpp"

namespace rdyn::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitDegenerate = 3, kExitIo = 4 };

/// Failure that maps onto a process exit code.
class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

struct ParameterSet {
  Complex p;
  Complex q;
};

struct SeedPair {
  Complex w_minus1;
  Complex w0;
};

struct Tolerances {
  double pole = 1e-12;
  double overflow = 1e12;
  double residual = 1e-9;
  double period = 1e-9;
  double nonhyperbolic = 1e-9;
};

struct OutputSpec {
  std::string dir = "out";
  std::string prefix = "rdyn";
  bool csv = true;
  bool json = true;
  bool svg = true;
};

struct GridAxis {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 11;
};

/// Grid over Re(p) x Im(p) with q fixed.
struct SweepSpec {
  GridAxis p_re;
  GridAxis p_im;
};

/// Everything needed to reproduce a run.
struct RunConfig {
  FormKind form = FormKind::Eq8;
  Complex p{};
  Complex q{};
  /// alpha, beta, gamma, A, B, C when form == Full.
  std::optional<std::array<Complex, 6>> full;
  std::vector<ParameterSet> parameter_sets;
  bool parameter_sets_given = false;
  std::vector<double> epsilons;
  std::vector<SeedPair> seeds;
  std::size_t seed_count = 10;
  double ball_radius = 1.0;
  std::uint64_t rng_seed = 20140101;
  std::size_t steps = 20'000;
  std::size_t transient = 2'000;
  int max_period = 64;
  std::size_t svg_points_per_seed = 2'000;
  unsigned threads = 0;
  Tolerances tolerances;
  OutputSpec output;
  SweepSpec sweep;
};

json complex_to_json(Complex z);
/// Accepts {"re": x, "im": y}, [x, y] or a bare number.
Complex complex_from_json(const json& j);
/// Accepts "x", "x,y" or "x+yi"-free pairs like "0.5,-0.25".
Complex parse_complex(const std::string& text);

/// Unknown keys are rejected. Throws CliError(kExitConfig).
RunConfig config_from_json(const json& j, RunConfig base = {});
json config_to_json(const RunConfig& config);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Builds the equation form; FullParameters violations become CliError(kExitConfig).
EquationForm make_form(const RunConfig& config);
EquationForm make_form(const RunConfig& config, const ParameterSet& params);

Guards make_guards(const RunConfig& config);

}  // namespace rdyn::cli
