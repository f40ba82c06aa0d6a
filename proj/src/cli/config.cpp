#include "rdyn/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>

namespace rdyn::cli {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw CliError(kExitConfig, what); }

double parse_double(std::string_view text) {
  double value = 0.0;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_error("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("bad value for '") + key + "': " + e.what());
  }
}

GridAxis axis_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 3) config_error(std::string(name) + " must be [min, max, count]");
  GridAxis a{j[0].get<double>(), j[1].get<double>(), j[2].get<std::size_t>()};
  if (a.count < 1) config_error(std::string(name) + " count must be positive");
  return a;
}

json axis_to_json(const GridAxis& a) { return json::array({a.min, a.max, a.count}); }

constexpr std::array<const char*, 6> kFullKeys{"alpha", "beta", "gamma", "A", "B", "C"};

}  // namespace

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j) {
  try {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_object()) {
      check_keys(j, {"re", "im"}, "complex value");
      return {j.value("re", 0.0), j.value("im", 0.0)};
    }
    if (j.is_string()) return parse_complex(j.get<std::string>());
  } catch (const json::exception& e) {
    config_error(std::string("bad complex value: ") + e.what());
  }
  config_error("complex values are {\"re\": x, \"im\": y}, [x, y] or a number");
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  return {parse_double(std::string_view(text).substr(0, comma)),
          parse_double(std::string_view(text).substr(comma + 1))};
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) config_error("config must be a JSON object");
  check_keys(j,
             {"form", "p", "q", "alpha", "beta", "gamma", "A", "B", "C", "parameter_sets", "epsilons",
              "seeds", "seed_count", "ball_radius", "rng_seed", "steps", "transient", "max_period",
              "svg_points_per_seed", "threads", "tolerances", "output", "sweep"},
             "config");

  if (j.contains("form")) {
    const auto text = get<std::string>(j, "form");
    const auto kind = parse_form_kind(text);
    if (!kind) config_error("form must be one of full, eq6, eq7, eq8 (got '" + text + "')");
    c.form = *kind;
  }
  if (j.contains("p")) c.p = complex_from_json(j["p"]);
  if (j.contains("q")) c.q = complex_from_json(j["q"]);

  bool any_full = false;
  for (const char* key : kFullKeys) any_full = any_full || j.contains(key);
  if (any_full) {
    std::array<Complex, 6> coeffs = c.full.value_or(std::array<Complex, 6>{});
    for (std::size_t i = 0; i < kFullKeys.size(); ++i) {
      if (j.contains(kFullKeys[i])) coeffs[i] = complex_from_json(j[kFullKeys[i]]);
    }
    c.full = coeffs;
  }

  if (j.contains("parameter_sets")) {
    const auto& sets = j["parameter_sets"];
    if (!sets.is_array()) config_error("parameter_sets must be an array");
    c.parameter_sets.clear();
    for (const auto& s : sets) {
      check_keys(s, {"p", "q"}, "parameter_sets entry");
      if (!s.contains("p") || !s.contains("q")) config_error("parameter_sets entries need p and q");
      c.parameter_sets.push_back({complex_from_json(s["p"]), complex_from_json(s["q"])});
    }
    c.parameter_sets_given = true;
  }
  if (j.contains("epsilons")) c.epsilons = get<std::vector<double>>(j, "epsilons");
  if (j.contains("seeds")) {
    c.seeds.clear();
    for (const auto& s : j["seeds"]) {
      check_keys(s, {"w_minus1", "w0"}, "seeds entry");
      if (!s.contains("w_minus1") || !s.contains("w0")) config_error("seeds entries need w_minus1 and w0");
      c.seeds.push_back({complex_from_json(s["w_minus1"]), complex_from_json(s["w0"])});
    }
  }
  if (j.contains("seed_count")) c.seed_count = get<std::size_t>(j, "seed_count");
  if (j.contains("ball_radius")) c.ball_radius = get<double>(j, "ball_radius");
  if (j.contains("rng_seed")) c.rng_seed = get<std::uint64_t>(j, "rng_seed");
  if (j.contains("steps")) c.steps = get<std::size_t>(j, "steps");
  if (j.contains("transient")) c.transient = get<std::size_t>(j, "transient");
  if (j.contains("max_period")) c.max_period = get<int>(j, "max_period");
  if (j.contains("svg_points_per_seed")) c.svg_points_per_seed = get<std::size_t>(j, "svg_points_per_seed");
  if (j.contains("threads")) c.threads = get<unsigned>(j, "threads");

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    check_keys(t, {"pole", "overflow", "residual", "period", "nonhyperbolic"}, "tolerances");
    c.tolerances.pole = t.value("pole", c.tolerances.pole);
    c.tolerances.overflow = t.value("overflow", c.tolerances.overflow);
    c.tolerances.residual = t.value("residual", c.tolerances.residual);
    c.tolerances.period = t.value("period", c.tolerances.period);
    c.tolerances.nonhyperbolic = t.value("nonhyperbolic", c.tolerances.nonhyperbolic);
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    check_keys(o, {"dir", "prefix", "csv", "json", "svg"}, "output");
    c.output.dir = o.value("dir", c.output.dir);
    c.output.prefix = o.value("prefix", c.output.prefix);
    c.output.csv = o.value("csv", c.output.csv);
    c.output.json = o.value("json", c.output.json);
    c.output.svg = o.value("svg", c.output.svg);
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    check_keys(s, {"p_re", "p_im"}, "sweep");
    if (s.contains("p_re")) c.sweep.p_re = axis_from_json(s["p_re"], "sweep.p_re");
    if (s.contains("p_im")) c.sweep.p_im = axis_from_json(s["p_im"], "sweep.p_im");
  }

  if (c.steps < 1) config_error("steps must be at least 1");
  if (c.transient >= c.steps) config_error("transient must be smaller than steps");
  if (!(c.ball_radius > 0.0)) config_error("ball_radius must be positive");
  for (double e : c.epsilons) {
    if (!(e > 0.0)) config_error("epsilons must be positive");
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["form"] = std::string(to_string(c.form));
  j["p"] = complex_to_json(c.p);
  j["q"] = complex_to_json(c.q);
  if (c.full) {
    for (std::size_t i = 0; i < kFullKeys.size(); ++i) j[kFullKeys[i]] = complex_to_json((*c.full)[i]);
  }
  if (c.parameter_sets_given) {
    json sets = json::array();
    for (const auto& s : c.parameter_sets) sets.push_back({{"p", complex_to_json(s.p)}, {"q", complex_to_json(s.q)}});
    j["parameter_sets"] = sets;
  }
  j["epsilons"] = c.epsilons;
  json seeds = json::array();
  for (const auto& s : c.seeds) {
    seeds.push_back({{"w_minus1", complex_to_json(s.w_minus1)}, {"w0", complex_to_json(s.w0)}});
  }
  j["seeds"] = seeds;
  j["seed_count"] = c.seed_count;
  j["ball_radius"] = c.ball_radius;
  j["rng_seed"] = c.rng_seed;
  j["steps"] = c.steps;
  j["transient"] = c.transient;
  j["max_period"] = c.max_period;
  j["svg_points_per_seed"] = c.svg_points_per_seed;
  j["threads"] = c.threads;
  j["tolerances"] = {{"pole", c.tolerances.pole},
                     {"overflow", c.tolerances.overflow},
                     {"residual", c.tolerances.residual},
                     {"period", c.tolerances.period},
                     {"nonhyperbolic", c.tolerances.nonhyperbolic}};
  j["output"] = {{"dir", c.output.dir},
                 {"prefix", c.output.prefix},
                 {"csv", c.output.csv},
                 {"json", c.output.json},
                 {"svg", c.output.svg}};
  j["sweep"] = {{"p_re", axis_to_json(c.sweep.p_re)}, {"p_im", axis_to_json(c.sweep.p_im)}};
  return j;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    config_error("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::move(base));
}

EquationForm make_form(const RunConfig& c) { return make_form(c, {c.p, c.q}); }

EquationForm make_form(const RunConfig& c, const ParameterSet& params) {
  try {
    if (c.form == FormKind::Full) {
      if (!c.full) config_error("form 'full' needs alpha, beta, gamma, A, B, C");
      const auto& f = *c.full;
      return EquationForm::full(FullParameters(f[0], f[1], f[2], f[3], f[4], f[5]));
    }
    return EquationForm::reduced(c.form, params.p, params.q);
  } catch (const Error& e) {
    throw CliError(kExitConfig, std::string("invalid parameters (FullParameters requires B and C not both zero, "
                                            "all coefficients finite): ") + e.what());
  }
}

Guards make_guards(const RunConfig& c) { return {c.tolerances.pole, c.tolerances.overflow}; }

}  // namespace rdyn::cli
