#include "kerrsync/config_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "kerrsync/presets.hpp"

namespace kerrsync {

using json = nlohmann::ordered_json;

namespace {

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key + " must be a number");
  return j.get<double>();
}

std::array<double, 2> pair(const json& j, const std::string& key) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return {v, v};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(key + " must be a number or a two-element array");
}

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
}

json nan_as_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void apply_params_json(ModelParams& p, const json& j) {
  require_object(j, "params");
  for (const auto& [key, value] : j.items()) {
    if (key == "omega") p.omega = pair(value, key);
    else if (key == "delta") p.delta = pair(value, key);
    else if (key == "chi") p.chi = pair(value, key);
    else if (key == "g") p.g = pair(value, key);
    else if (key == "kappa") p.kappa = number(value, key);
    else if (key == "gamma") p.gamma = number(value, key);
    else if (key == "drive_E") p.drive_E = number(value, key);
    else if (key == "eta_C") p.eta_C = number(value, key);
    else if (key == "Omega_C") p.Omega_C = number(value, key);
    else if (key == "eta_D") p.eta_D = number(value, key);
    else if (key == "Omega_D") p.Omega_D = number(value, key);
    else if (key == "mu") p.mu = number(value, key);
    else if (key == "lambda") p.lambda_ = number(value, key);
    else if (key == "n_b") p.n_b = number(value, key);
    else throw ConfigError("unknown parameter key: " + key);
  }
}

ModelParams params_from_json(const json& j) {
  ModelParams p;
  apply_params_json(p, j);
  return validate_params(p);
}

json params_to_json(const ModelParams& p) {
  return {{"omega", p.omega},     {"delta", p.delta},     {"chi", p.chi},
          {"g", p.g},             {"kappa", p.kappa},     {"gamma", p.gamma},
          {"drive_E", p.drive_E}, {"eta_C", p.eta_C},     {"Omega_C", p.Omega_C},
          {"eta_D", p.eta_D},     {"Omega_D", p.Omega_D}, {"mu", p.mu},
          {"lambda", p.lambda_},  {"n_b", p.n_b}};
}

void apply_integrator_json(IntegratorConfig& c, const json& j) {
  require_object(j, "integrator");
  for (const auto& [key, value] : j.items()) {
    if (key == "method") {
      const auto m = value.is_string() ? value.get<std::string>() : std::string();
      if (m == "rk4") c.method = Method::kRk4;
      else if (m == "dopri5") c.method = Method::kDormandPrince;
      else throw ConfigError("integrator.method must be \"rk4\" or \"dopri5\"");
    } else if (key == "dt") c.dt = number(value, key);
    else if (key == "rtol") c.rtol = number(value, key);
    else if (key == "atol") c.atol = number(value, key);
    else if (key == "dt_min") c.dt_min = number(value, key);
    else if (key == "dt_max") c.dt_max = number(value, key);
    else if (key == "t_end") c.t_end = number(value, key);
    else if (key == "sample_interval") c.sample_interval = number(value, key);
    else throw ConfigError("unknown integrator key: " + key);
  }
}

json integrator_to_json(const IntegratorConfig& c) {
  return {{"method", c.method == Method::kRk4 ? "rk4" : "dopri5"},
          {"dt", c.dt},
          {"rtol", c.rtol},
          {"atol", c.atol},
          {"dt_min", c.dt_min},
          {"dt_max", c.dt_max},
          {"t_end", c.t_end},
          {"sample_interval", c.sample_interval}};
}

json axes_to_json(const std::vector<SweepAxis>& axes) {
  json out = json::array();
  for (const auto& axis : axes) {
    json a = json::object();
    for (std::size_t k = 0; k < axis.names.size(); ++k) a[axis.names[k]] = axis.values[k];
    out.push_back(a);
  }
  return out;
}

namespace {

std::vector<double> number_list(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("sweep values for " + key + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, key));
  return out;
}

SweepAxis axis_from_object(const json& j) {
  require_object(j, "sweep axis");
  SweepAxis axis;
  for (const auto& [key, value] : j.items()) {
    axis.names.push_back(key);
    axis.values.push_back(number_list(value, key));
  }
  return axis;
}

void apply_sweep_json(RunConfig& rc, const json& j) {
  require_object(j, "sweep");
  std::vector<SweepAxis> axes;
  bool replaced = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "axes") {
      if (!value.is_array()) throw ConfigError("sweep.axes must be an array");
      for (const auto& a : value) axes.push_back(axis_from_object(a));
      replaced = true;
    } else if (key == "grid") {
      require_object(value, "sweep.grid");
      for (const auto& [name, list] : value.items())
        axes.push_back(SweepAxis::single(name, number_list(list, name)));
      replaced = true;
    } else if (key == "seeds") {
      if (!value.is_number_unsigned() || value.get<std::size_t>() < 1)
        throw ConfigError("sweep.seeds must be a positive integer");
      rc.seeds = value.get<std::size_t>();
    } else {
      throw ConfigError("unknown sweep key: " + key);
    }
  }
  if (replaced) rc.axes = std::move(axes);
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError("seed must be an unsigned 64-bit integer: " + text);
  return v;
}

}  // namespace

RunConfig run_config_from_json(const json& doc, const std::optional<std::string>& preset,
                               const std::optional<std::string>& seed_override) {
  require_object(doc, "config");
  static const std::vector<std::string> known = {
      "preset", "params", "integrator", "seed", "initial_covariance", "initial_mean",
      "window_fraction", "sweep", "preset_points"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key: " + key);

  RunConfig rc;
  if (doc.contains("preset_points")) {
    const auto& v = doc["preset_points"];
    if (!v.is_number_unsigned() || v.get<std::size_t>() < 2)
      throw ConfigError("preset_points must be an integer >= 2");
    rc.preset_points = v.get<std::size_t>();
  }
  std::optional<std::string> preset_name = preset;
  if (!preset_name && doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("preset must be a string");
    preset_name = doc["preset"].get<std::string>();
  }
  if (preset_name) {
    const auto found = find_preset(*preset_name, rc.preset_points);
    if (!found) throw ConfigError("unknown preset: " + *preset_name);
    rc.preset = found->name;
    rc.params = found->params;
    rc.axes = found->axes;
  }

  if (doc.contains("params")) apply_params_json(rc.params, doc["params"]);
  if (doc.contains("integrator")) apply_integrator_json(rc.integrator, doc["integrator"]);
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (s.is_number_unsigned()) rc.seed = s.get<std::uint64_t>();
    else if (s.is_string()) rc.seed = parse_seed(s.get<std::string>());
    else throw ConfigError("seed must be an unsigned integer");
  }
  if (doc.contains("initial_covariance")) {
    const auto& v = doc["initial_covariance"];
    const auto kind = v.is_string() ? v.get<std::string>() : std::string();
    if (kind == "random") rc.initial_covariance = InitialCovariance::kRandom;
    else if (kind == "vacuum") rc.initial_covariance = InitialCovariance::kVacuum;
    else throw ConfigError("initial_covariance must be \"random\" or \"vacuum\"");
  }
  if (doc.contains("initial_mean")) {
    const auto values = number_list(doc["initial_mean"], "initial_mean");
    if (values.size() != 8) throw ConfigError("initial_mean must have 8 entries");
    for (int i = 0; i < 8; ++i) rc.initial_mean.values[i] = values[i];
  }
  if (doc.contains("window_fraction")) {
    rc.window_fraction = number(doc["window_fraction"], "window_fraction");
    if (!(rc.window_fraction > 0.0 && rc.window_fraction <= 1.0))
      throw ConfigError("window_fraction must lie in (0, 1]");
  }
  if (doc.contains("sweep")) apply_sweep_json(rc, doc["sweep"]);
  if (seed_override) rc.seed = parse_seed(*seed_override);

  rc.params = validate_params(rc.params);
  rc.integrator.validate();
  return rc;
}

RunConfig resolve_run_config(const std::optional<std::string>& config_path,
                             const std::optional<std::string>& preset,
                             const std::optional<std::string>& seed_override) {
  if (!config_path && !preset) throw ConfigError("either --config or --preset is required");
  json doc = json::object();
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw ConfigError("cannot read config: " + *config_path);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("invalid JSON in config: ") + e.what());
    }
  }
  return run_config_from_json(doc, preset, seed_override);
}

json RunConfig::to_json() const {
  json j = {{"params", params_to_json(params)},
            {"integrator", integrator_to_json(integrator)},
            {"seed", seed},
            {"initial_covariance",
             initial_covariance == InitialCovariance::kVacuum ? "vacuum" : "random"},
            {"initial_mean", std::vector<double>(initial_mean.values.data(),
                                                 initial_mean.values.data() + 8)},
            {"window_fraction", window_fraction},
            {"sweep", {{"axes", axes_to_json(axes)}, {"seeds", seeds}}}};
  if (!preset.empty()) j["preset"] = preset;
  return j;
}

SweepGrid RunConfig::sweep_grid() const {
  SweepGrid grid;
  grid.base = params;
  grid.integrator = integrator;
  grid.axes = axes;
  grid.initial_mean = initial_mean;
  grid.initial_covariance = initial_covariance;
  grid.seed = seed;
  grid.seeds = seeds;
  grid.window_fraction = window_fraction;
  return grid;
}

std::string config_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,q1,p1,re_a1,im_a1,q2,p2,re_a2,im_a2,S_q,S_c\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_double(traj.t[k]);
    for (int i = 0; i < 8; ++i) os << ',' << format_double(traj.mean[k].values[i]);
    os << ',' << format_double(traj.s_q[k]) << ',' << format_double(traj.s_c[k]) << '\n';
  }
}

json stats_to_json(const SteadyStats& s) {
  return {{"S_q_mean", nan_as_null(s.sq_mean)}, {"S_c_mean", nan_as_null(s.sc_mean)},
          {"amp_q1", nan_as_null(s.amp_q1)},    {"amp_q2", nan_as_null(s.amp_q2)},
          {"amp_p1", nan_as_null(s.amp_p1)},    {"amp_p2", nan_as_null(s.amp_p2)},
          {"phase_lag", nan_as_null(s.phase_lag)}};
}

}  // namespace kerrsync
