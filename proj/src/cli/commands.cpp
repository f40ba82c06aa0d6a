#include "rdyn/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rdyn/cli/serialize.hpp"
#include "rdyn/cli/svg.hpp"
#include "rdyn/equilibria.hpp"
#include "rdyn/lyapunov.hpp"
#include "rdyn/parallel.hpp"
#include "rdyn/period2.hpp"
#include "rdyn/random.hpp"
#include "rdyn/stability.hpp"

namespace rdyn::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidParameters:
      return kExitConfig;
    default:
      return kExitDegenerate;
  }
}

json form_to_json(const EquationForm& form) {
  json j = {{"kind", std::string(to_string(form.kind()))}};
  if (form.is_reduced()) {
    j["p"] = complex_to_json(form.p());
    j["q"] = complex_to_json(form.q());
  }
  return j;
}

struct ReducedForm {
  EquationForm form;
  json description;
};

ReducedForm reduce_for_analysis(const RunConfig& config) {
  const EquationForm form = make_form(config);
  if (form.is_reduced()) return {form, form_to_json(form)};
  try {
    const Reduction r = reduce(form.full_parameters());
    json j = form_to_json(r.form);
    j["reduced_from"] = "full";
    j["scale"] = complex_to_json(r.scale);
    j["exact"] = r.exact;
    return {r.form, j};
  } catch (const Error& e) {
    throw CliError(kExitDegenerate, e.what());
  }
}

json period2_block(const EquationForm& form) {
  json block;
  try {
    const Period2Solutions sol = period2_solutions(form);
    json cycles = json::array();
    for (const auto& pair : sol.cycles) {
      try {
        cycles.push_back(cycle_to_json(analyze_cycle(form, pair.phi, pair.psi)));
      } catch (const Error& e) {
        cycles.push_back({{"phi", complex_to_json(pair.phi)},
                          {"psi", complex_to_json(pair.psi)},
                          {"error", std::string(to_string(e.code()))},
                          {"message", e.what()}});
      }
    }
    json candidates = json::array();
    for (const auto& c : sol.candidates) {
      candidates.push_back({{"set", c.set_index},
                            {"phi", complex_to_json(c.pair.phi)},
                            {"psi", complex_to_json(c.pair.psi)},
                            {"spurious", c.spurious},
                            {"reason", c.reason}});
    }
    block = {{"cycles", cycles}, {"relation", std::string(to_string(sol.relation))}, {"candidates", candidates}};
  } catch (const Error& e) {
    block = {{"cycles", json::array()}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  return block;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw CliError(kExitIo, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kExitIo, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw CliError(kExitIo, "failed writing '" + path.string() + "'");
}

std::filesystem::path output_path(const RunConfig& c, const std::string& suffix) {
  return std::filesystem::path(c.output.dir) / (c.output.prefix + suffix);
}

std::vector<SeedPair> resolve_seeds(const RunConfig& c) {
  if (!c.seeds.empty()) return c.seeds;
  if (c.seed_count < 1) throw CliError(kExitConfig, "seed_count must be at least 1");
  Rng rng(c.rng_seed);
  std::vector<SeedPair> seeds(c.seed_count);
  for (auto& s : seeds) {
    s.w_minus1 = rng.in_disk(c.ball_radius);
    s.w0 = rng.in_disk(c.ball_radius);
  }
  return seeds;
}

std::vector<ParameterSet> resolve_parameter_sets(const RunConfig& c) {
  if (c.form == FormKind::Full) throw CliError(kExitConfig, "Lyapunov scans need a reduced form (eq6, eq7, eq8)");
  if (c.parameter_sets_given) {
    if (c.parameter_sets.empty()) throw CliError(kExitConfig, "parameter_sets is empty");
    return c.parameter_sets;
  }
  return {{c.p, c.q}};
}

ScanOptions scan_options(const RunConfig& c) {
  ScanOptions o;
  o.seed_count = c.seed_count;
  o.ball_radius = c.ball_radius;
  o.rng_seed = c.rng_seed;
  o.threads = c.threads;
  o.lyapunov.n_steps = c.steps;
  o.lyapunov.transient = c.transient;
  o.lyapunov.guards = make_guards(c);
  return o;
}

void csv_complex(std::ostringstream& out, Complex z) {
  out << format_double(z.real()) << ',' << format_double(z.imag());
}

}  // namespace

json run_analyze(const RunConfig& config) {
  json doc = report_header("analyze", config);
  const auto [form, description] = reduce_for_analysis(config);
  doc["form"] = description;

  EquilibriumSet eqs;
  try {
    eqs = equilibria(form);
  } catch (const Error& e) {
    throw CliError(kExitDegenerate, e.what());
  }

  json notes = json::array();
  json points = json::array();
  for (const auto& eq : eqs.points) {
    json entry = {{"value", complex_to_json(eq.value)},
                  {"branch", std::string(to_string(eq.branch))},
                  {"residual", std::isfinite(eq.residual) ? json(eq.residual) : json(nullptr)},
                  {"residual_ok", eq.residual < config.tolerances.residual},
                  {"degenerate", eq.degenerate}};
    std::optional<StabilityClass> closed_cls;
    try {
      const Linearization lin = linearize(form, eq);
      closed_cls = classify(lin, config.tolerances.nonhyperbolic);
      entry["linearization"] = linearization_to_json(lin);
      entry["classification"] = std::string(to_string(*closed_cls));
    } catch (const Error& e) {
      entry["linearization_error"] = e.what();
    }
    try {
      const Linearization exact = linearize_exact(form, eq.value);
      const StabilityClass cls = classify(exact, config.tolerances.nonhyperbolic);
      entry["exact_linearization"] = linearization_to_json(exact);
      entry["exact_classification"] = std::string(to_string(cls));
      if (closed_cls && *closed_cls != cls) {
        notes.push_back("closed-form and derivative-based linearizations classify the " +
                        std::string(to_string(eq.branch)) + " equilibrium differently");
      }
    } catch (const Error& e) {
      entry["exact_linearization_error"] = e.what();
    }
    points.push_back(std::move(entry));
  }
  doc["equilibria"] = points;
  doc["nonzero_branch_missing"] = eqs.nonzero_branch_missing;

  json bounded = json::array();
  for (double eps : config.epsilons) bounded.push_back(condition_to_json(boundedness_condition(form, eps)));
  doc["boundedness"] = bounded;
  doc["period2"] = period2_block(form);

  const double ap = std::abs(form.p());
  const double aq = std::abs(form.q());
  if (ap > 1.0) notes.push_back("|p| = " + format_double(ap) + " > 1");
  if (aq > 1.0) notes.push_back("|q| = " + format_double(aq) + " > 1");
  doc["notes"] = notes;
  return doc;
}

json run_period2(const RunConfig& config) {
  json doc = report_header("period2", config);
  const auto [form, description] = reduce_for_analysis(config);
  doc["form"] = description;
  doc["period2"] = period2_block(form);
  return doc;
}

std::string orbit_csv(const Orbit& orbit) {
  std::ostringstream out;
  out << "step,re,im,modulus\n";
  for (std::size_t k = 0; k < orbit.samples.size(); ++k) {
    const Complex z = orbit.samples[k];
    out << static_cast<long long>(k) - 1 << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
        << format_double(std::abs(z)) << '\n';
  }
  return out.str();
}

SimulateResult run_simulate(const RunConfig& config) {
  const EquationForm form = make_form(config);
  const Guards guards = make_guards(config);
  const auto seeds = resolve_seeds(config);

  SimulateResult result;
  result.orbits.resize(seeds.size(), Orbit{form, {}, Termination::Completed, 0});
  parallel_for(seeds.size(), config.threads, [&](std::size_t i) {
    result.orbits[i] = orbit(form, seeds[i].w0, seeds[i].w_minus1, config.steps, guards);
  });

  json doc = report_header("simulate", config);
  doc["form"] = form_to_json(form);
  json per_seed = json::array();
  std::vector<SvgSeries> series;
  std::size_t post_total = 0;
  std::size_t post_near = 0;
  std::vector<Complex> finals;
  for (std::size_t i = 0; i < result.orbits.size(); ++i) {
    const Orbit& o = result.orbits[i];
    const std::size_t first = std::min(o.samples.size(), config.transient + 2);
    const std::size_t start = first < o.samples.size() ? first : std::min<std::size_t>(2, o.samples.size());
    std::size_t near = 0;
    for (std::size_t k = start; k < o.samples.size(); ++k) near += std::abs(o.samples[k]) < 2.0 ? 1 : 0;
    const std::size_t count = o.samples.size() - start;
    post_total += count;
    post_near += near;

    json period;
    if (o.completed()) {
      try {
        const auto t = detect_period(o, config.tolerances.period, config.max_period);
        period = t ? json(*t) : json(nullptr);
      } catch (const Error&) {
        period = "insufficient_samples";
      }
      finals.push_back(o.samples.back());
    } else {
      period = "not_completed";
    }
    const Complex last = o.samples.back();
    per_seed.push_back({{"w_minus1", complex_to_json(seeds[i].w_minus1)},
                        {"w0", complex_to_json(seeds[i].w0)},
                        {"termination", std::string(to_string(o.termination))},
                        {"termination_step", o.termination_step},
                        {"n_samples", o.samples.size()},
                        {"final", complex_to_json(last)},
                        {"final_modulus", std::abs(last)},
                        {"period", period},
                        {"post_transient_points", count},
                        {"fraction_within_modulus_2", count ? json(double(near) / double(count)) : json(nullptr)}});

    SvgSeries s{"seed " + std::to_string(i), {}};
    const std::size_t stride =
        std::max<std::size_t>(1, (count + config.svg_points_per_seed - 1) / std::max<std::size_t>(1, config.svg_points_per_seed));
    for (std::size_t k = start; k < o.samples.size(); k += stride) s.points.push_back(o.samples[k]);
    series.push_back(std::move(s));
  }
  doc["seeds"] = per_seed;
  doc["post_transient_points"] = post_total;
  doc["fraction_within_modulus_2"] = post_total ? json(double(post_near) / double(post_total)) : json(nullptr);

  // Spread of the final points across seeds: collapses to 0 when every orbit
  // converges to the same equilibrium.
  if (!finals.empty()) {
    Complex centroid{};
    for (Complex z : finals) centroid += z;
    centroid /= static_cast<double>(finals.size());
    double radius = 0.0;
    for (Complex z : finals) radius = std::max(radius, std::abs(z - centroid));
    doc["final_cloud_centroid"] = complex_to_json(centroid);
    doc["final_cloud_radius"] = radius;
  }

  const SvgView view = percentile_view(series);
  doc["svg"] = {{"x_min", view.x_min},
                {"x_max", view.x_max},
                {"y_min", view.y_min},
                {"y_max", view.y_max},
                {"axis_percentiles", json::array({kSvgLowPercentile, kSvgHighPercentile})},
                {"points_per_seed_max", config.svg_points_per_seed}};
  result.svg = render_scatter_svg(series, "Orbits of " + std::string(to_string(form.kind())) + " (" +
                                             std::to_string(series.size()) + " seeds)");
  result.report = std::move(doc);
  return result;
}

TableResult run_lyapunov(const RunConfig& config) {
  const auto sets = resolve_parameter_sets(config);
  const ScanOptions options = scan_options(config);

  json doc = report_header("lyapunov", config);
  json rows = json::array();
  std::ostringstream csv;
  csv << "p_re,p_im,q_re,q_im,min,max,mean,fraction_positive,seed_count,included,steps,transient\n";
  for (const auto& set : sets) {
    const EquationForm form = make_form(config, set);
    ScanReport scan;
    try {
      scan = lyapunov_scan(form, options);
    } catch (const Error& e) {
      throw CliError(exit_code_for(e), e.what());
    }
    csv_complex(csv, set.p);
    csv << ',';
    csv_complex(csv, set.q);
    csv << ',' << format_double(scan.min) << ',' << format_double(scan.max) << ',' << format_double(scan.mean) << ','
        << format_double(scan.fraction_positive) << ',' << options.seed_count << ',' << scan.n_included << ','
        << options.lyapunov.n_steps << ',' << options.lyapunov.transient << '\n';
    json row = form_to_json(form);
    row["scan"] = scan_to_json(scan);
    rows.push_back(std::move(row));
  }
  doc["rows"] = rows;
  return {std::move(doc), csv.str()};
}

TableResult run_sweep(const RunConfig& config) {
  if (config.form == FormKind::Full) throw CliError(kExitConfig, "sweep needs a reduced form (eq6, eq7, eq8)");
  const auto& ax = config.sweep.p_re;
  const auto& ay = config.sweep.p_im;
  const auto coord = [](const GridAxis& a, std::size_t i) {
    return a.count == 1 ? a.min : a.min + (a.max - a.min) * static_cast<double>(i) / static_cast<double>(a.count - 1);
  };
  ScanOptions options = scan_options(config);
  options.threads = 1;

  const std::size_t n = ax.count * ay.count;
  std::vector<ScanReport> scans(n);
  std::vector<Complex> ps(n);
  for (std::size_t i = 0; i < ax.count; ++i) {
    for (std::size_t j = 0; j < ay.count; ++j) ps[i * ay.count + j] = {coord(ax, i), coord(ay, j)};
  }
  try {
    parallel_for(n, config.threads, [&](std::size_t k) {
      scans[k] = lyapunov_scan(EquationForm::reduced(config.form, ps[k], config.q), options);
    });
  } catch (const Error& e) {
    throw CliError(exit_code_for(e), e.what());
  }

  json doc = report_header("sweep", config);
  json points = json::array();
  std::ostringstream csv;
  csv << "p_re,p_im,q_re,q_im,min,max,mean,fraction_positive,included\n";
  for (std::size_t k = 0; k < n; ++k) {
    const ScanReport& s = scans[k];
    csv_complex(csv, ps[k]);
    csv << ',';
    csv_complex(csv, config.q);
    csv << ',' << format_double(s.min) << ',' << format_double(s.max) << ',' << format_double(s.mean) << ','
        << format_double(s.fraction_positive) << ',' << s.n_included << '\n';
    json exps = json::array();
    for (const auto& e : s.estimates) exps.push_back(std::isfinite(e.exponent) ? json(e.exponent) : json(nullptr));
    points.push_back({{"p", complex_to_json(ps[k])},
                      {"min", std::isfinite(s.min) ? json(s.min) : json(nullptr)},
                      {"max", std::isfinite(s.max) ? json(s.max) : json(nullptr)},
                      {"mean", std::isfinite(s.mean) ? json(s.mean) : json(nullptr)},
                      {"fraction_positive", std::isfinite(s.fraction_positive) ? json(s.fraction_positive) : json(nullptr)},
                      {"included", s.n_included},
                      {"exponents", exps}});
  }
  doc["points"] = points;
  return {std::move(doc), csv.str()};
}

namespace {

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> form;
  std::optional<std::string> p, q, alpha, beta, gamma, a, b, c;
  std::vector<double> epsilons;
  std::optional<std::size_t> seed_count;
  std::optional<double> ball_radius;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> transient;
  std::optional<int> max_period;
  std::optional<std::size_t> svg_points;
  std::optional<unsigned> threads;
  std::optional<double> pole_tol, overflow, residual_tol, period_tol, nonhyperbolic_tol;
  std::optional<std::string> out_dir, prefix;
  bool no_csv = false, no_json = false, no_svg = false;
};

void add_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_path, "JSON run configuration file");
  app.add_option("--form", o.form, "full | eq6 | eq7 | eq8");
  app.add_option("--p", o.p, "complex parameter p as re,im");
  app.add_option("--q", o.q, "complex parameter q as re,im");
  app.add_option("--alpha", o.alpha, "full form coefficient alpha (re,im)");
  app.add_option("--beta", o.beta, "full form coefficient beta (re,im)");
  app.add_option("--gamma", o.gamma, "full form coefficient gamma (re,im)");
  app.add_option("--A", o.a, "full form coefficient A (re,im)");
  app.add_option("--B", o.b, "full form coefficient B (re,im)");
  app.add_option("--C", o.c, "full form coefficient C (re,im)");
  app.add_option("--epsilon", o.epsilons, "ball radii for the boundedness conditions (repeatable)");
  app.add_option("--seed-count", o.seed_count, "number of sampled seed pairs");
  app.add_option("--ball-radius", o.ball_radius, "radius of the seed-sampling ball");
  app.add_option("--rng-seed", o.rng_seed, "pseudo-random generator seed");
  app.add_option("--steps", o.steps, "iterations per orbit");
  app.add_option("--transient", o.transient, "iterations discarded before measuring");
  app.add_option("--max-period", o.max_period, "largest period tested by period detection");
  app.add_option("--svg-points", o.svg_points, "maximum plotted points per seed");
  app.add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
  app.add_option("--pole-tol", o.pole_tol, "|denominator| below this is a pole");
  app.add_option("--overflow", o.overflow, "|value| above this is an overflow");
  app.add_option("--residual-tol", o.residual_tol, "equilibrium residual tolerance");
  app.add_option("--period-tol", o.period_tol, "period detection tolerance");
  app.add_option("--nonhyperbolic-tol", o.nonhyperbolic_tol, "band around modulus 1 treated as non-hyperbolic");
  app.add_option("--out-dir", o.out_dir, "output directory");
  app.add_option("--prefix", o.prefix, "output file prefix");
  app.add_flag("--no-csv", o.no_csv, "skip CSV output");
  app.add_flag("--no-json", o.no_json, "skip JSON output files");
  app.add_flag("--no-svg", o.no_svg, "skip SVG output");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c;
  if (o.config_path) c = load_config_file(*o.config_path);
  if (o.form) {
    const auto kind = parse_form_kind(*o.form);
    if (!kind) throw CliError(kExitConfig, "unknown form '" + *o.form + "'");
    c.form = *kind;
  }
  if (o.p) c.p = parse_complex(*o.p);
  if (o.q) c.q = parse_complex(*o.q);
  const std::array<const std::optional<std::string>*, 6> full{&o.alpha, &o.beta, &o.gamma, &o.a, &o.b, &o.c};
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (*full[i]) {
      auto coeffs = c.full.value_or(std::array<Complex, 6>{});
      coeffs[i] = parse_complex(**full[i]);
      c.full = coeffs;
    }
  }
  if (!o.epsilons.empty()) c.epsilons = o.epsilons;
  if (o.seed_count) c.seed_count = *o.seed_count;
  if (o.ball_radius) c.ball_radius = *o.ball_radius;
  if (o.rng_seed) c.rng_seed = *o.rng_seed;
  if (o.steps) c.steps = *o.steps;
  if (o.transient) c.transient = *o.transient;
  if (o.max_period) c.max_period = *o.max_period;
  if (o.svg_points) c.svg_points_per_seed = *o.svg_points;
  if (o.threads) c.threads = *o.threads;
  if (o.pole_tol) c.tolerances.pole = *o.pole_tol;
  if (o.overflow) c.tolerances.overflow = *o.overflow;
  if (o.residual_tol) c.tolerances.residual = *o.residual_tol;
  if (o.period_tol) c.tolerances.period = *o.period_tol;
  if (o.nonhyperbolic_tol) c.tolerances.nonhyperbolic = *o.nonhyperbolic_tol;
  if (o.out_dir) c.output.dir = *o.out_dir;
  if (o.prefix) c.output.prefix = *o.prefix;
  if (o.no_csv) c.output.csv = false;
  if (o.no_json) c.output.json = false;
  if (o.no_svg) c.output.svg = false;
  // Re-validate the merged result.
  return config_from_json(config_to_json(c));
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

int dispatch(const std::string& command, const RunConfig& c, std::ostream& out) {
  if (command == "analyze" || command == "period2") {
    const json doc = command == "analyze" ? run_analyze(c) : run_period2(c);
    const std::string text = pretty(doc);
    if (c.output.json) write_file(output_path(c, "_" + command + ".json"), text);
    out << text;
    return kExitOk;
  }
  if (command == "simulate") {
    const SimulateResult r = run_simulate(c);
    if (c.output.csv) {
      for (std::size_t i = 0; i < r.orbits.size(); ++i) {
        write_file(output_path(c, "_orbit_" + std::to_string(i) + ".csv"), orbit_csv(r.orbits[i]));
      }
    }
    if (c.output.svg) write_file(output_path(c, "_orbits.svg"), r.svg);
    if (c.output.json) write_file(output_path(c, "_simulate.json"), pretty(r.report));
    out << "simulate: " << r.orbits.size() << " orbits written to " << c.output.dir << "\n";
    return kExitOk;
  }
  const TableResult r = command == "lyapunov" ? run_lyapunov(c) : run_sweep(c);
  if (c.output.csv) write_file(output_path(c, "_" + command + ".csv"), r.csv);
  if (c.output.json) write_file(output_path(c, "_" + command + ".json"), pretty(r.report));
  out << r.csv;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis of z_{n+1} = (alpha + beta z_n + gamma z_{n-1}) / (A + B z_n + C z_{n-1})", "rdyn"};
  app.set_version_flag("--version", std::string("rdyn ") + RDYN_VERSION);
  app.require_subcommand(1);
  Overrides overrides;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"analyze", "equilibria, stability, boundedness and period-2 report (JSON)"},
      {"simulate", "orbits as CSV plus an SVG scatter"},
      {"lyapunov", "largest Lyapunov exponent scans per parameter set (CSV + JSON)"},
      {"period2", "prime period-2 cycles and their stability (JSON)"},
      {"sweep", "Lyapunov scans over a grid of p values (CSV + JSON)"}};
  for (const auto& [name, help] : commands) add_options(*app.add_subcommand(name, help), overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "rdyn: " << e.what() << "\n";
    return kExitConfig;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    const RunConfig config = resolve(overrides);
    return dispatch(command, config, out);
  } catch (const CliError& e) {
    err << "rdyn " << command << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const Error& e) {
    err << "rdyn " << command << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const json::exception& e) {
    err << "rdyn " << command << ": invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "rdyn " << command << ": " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace rdyn::cli
