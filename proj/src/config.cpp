// Copyright 2026 The satqr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "satqr/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "satqr/errors.hpp"

namespace satqr {

using nlohmann::ordered_json;

std::uint64_t SampleCounts::for_scenario(Scenario s) const {
  switch (s) {
    case Scenario::Scenario1: return scenario1;
    case Scenario::Scenario2: return scenario2;
    case Scenario::OneSatMemory: return one_sat_memory;
    case Scenario::OneSatBaseline: return 0;
  }
  return 0;
}

namespace {

enum class Bound { Any, Positive, NonNegative, Unit };

const char* bound_text(Bound b) {
  switch (b) {
    case Bound::Positive: return "must be > 0";
    case Bound::NonNegative: return "must be >= 0";
    case Bound::Unit: return "must lie in [0, 1]";
    case Bound::Any: break;
  }
  return "must be finite";
}

bool within(double v, Bound b) {
  if (!std::isfinite(v)) return false;
  switch (b) {
    case Bound::Positive: return v > 0;
    case Bound::NonNegative: return v >= 0;
    case Bound::Unit: return v >= 0 && v <= 1;
    case Bound::Any: break;
  }
  return true;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Reads the keys of one JSON object and remembers which were present.
class Section {
 public:
  Section(const ordered_json* obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (obj_ && !obj_->is_object()) throw ConfigError(path_, "expected a mapping");
  }

  ~Section() noexcept(false) {
    if (!obj_ || std::uncaught_exceptions()) return;
    for (auto it = obj_->begin(); it != obj_->end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown key");
  }

  const ordered_json* find(const std::string& key) {
    seen_.insert(key);
    if (!obj_) return nullptr;
    auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }

  bool has(const std::string& key) const { return obj_ && obj_->contains(key); }
  std::string path(const std::string& key) const { return join(path_, key); }

  void number(const std::string& key, double& dst, Bound b) {
    if (const ordered_json* v = find(key)) dst = as_number(*v, path(key), b);
  }

  template <typename Int>
  void integer(const std::string& key, Int& dst, std::uint64_t min_value) {
    if (const ordered_json* v = find(key)) dst = static_cast<Int>(as_integer(*v, path(key), min_value));
  }

  void boolean(const std::string& key, bool& dst) {
    if (const ordered_json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(path(key), "expected true or false");
      dst = v->get<bool>();
    }
  }

  void string(const std::string& key, std::string& dst) {
    if (const ordered_json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(path(key), "expected a string");
      dst = v->get<std::string>();
    }
  }

  static double as_number(const ordered_json& v, const std::string& path, Bound b) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    const double x = v.get<double>();
    if (!within(x, b)) throw ConfigError(path, bound_text(b));
    return x;
  }

  static std::uint64_t as_integer(const ordered_json& v, const std::string& path,
                                  std::uint64_t min_value) {
    std::uint64_t x = 0;
    if (v.is_number_unsigned()) {
      x = v.get<std::uint64_t>();
    } else if (v.is_number_integer()) {
      if (v.get<std::int64_t>() < 0) throw ConfigError(path, "must be >= " + std::to_string(min_value));
      x = static_cast<std::uint64_t>(v.get<std::int64_t>());
    } else if (v.is_number_float()) {
      const double d = v.get<double>();
      if (!(d >= 0 && d < 1.8e19 && std::floor(d) == d)) throw ConfigError(path, "expected an integer");
      x = static_cast<std::uint64_t>(d);
    } else {
      throw ConfigError(path, "expected an integer");
    }
    if (x < min_value) throw ConfigError(path, "must be >= " + std::to_string(min_value));
    return x;
  }

 private:
  const ordered_json* obj_;
  std::string path_;
  std::set<std::string> seen_;
};

std::optional<double> as_cutoff(const ordered_json& v, const std::string& path) {
  if (v.is_string() && v.get<std::string>() == "none") return std::nullopt;
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) throw ConfigError(path, "expected a time in seconds or \"none\"");
  return Section::as_number(v, path, Bound::Positive);
}

template <typename T, typename F>
void read_list(Section& s, const std::string& key, std::vector<T>& dst, F convert) {
  const ordered_json* v = s.find(key);
  if (!v) return;
  if (!v->is_array()) throw ConfigError(s.path(key), "expected a list");
  dst.clear();
  for (std::size_t i = 0; i < v->size(); ++i)
    dst.push_back(convert((*v)[i], s.path(key) + "[" + std::to_string(i) + "]"));
}

void number_list(Section& s, const std::string& key, std::vector<double>& dst, Bound b) {
  read_list(s, key, dst, [b](const ordered_json& v, const std::string& p) {
    return Section::as_number(v, p, b);
  });
}

ordered_json cutoff_json(const std::optional<double>& c) {
  return c ? ordered_json(*c) : ordered_json("none");
}

// Defaults that are not confirmed physical values.
struct Unconfirmed {
  const char* section;
  const char* key;
  const char* axis;  // sweep axis that also sets it, or nullptr
};

constexpr Unconfirmed kUnconfirmed[] = {
    {"optics", "receiver_radius_m", nullptr},
    {"optics", "pointing_error_rad", "pointing_error_rad"},
    {"protocol", "memory_modes", "memory_modes"},
    {"protocol", "cutoff_s", "cutoff_s"},
    {"protocol", "dephasing_time_s", "dephasing_time_s"},
};

RunConfig from_json(const ordered_json& root) {
  RunConfig cfg;
  Section top(&root, "");

  if (const ordered_json* v = top.find("seed")) cfg.seed = Section::as_integer(*v, "seed", 0);
  top.integer("workers", cfg.workers, 1);

  {
    Section s(top.find("geometry"), "geometry");
    GeometryConfig& g = cfg.setup.geometry;
    s.number("earth_radius_km", g.earth_radius_km, Bound::Positive);
    s.number("earth_mass_kg", g.earth_mass_kg, Bound::Positive);
    s.number("grav_const", g.grav_const, Bound::Positive);
    s.number("speed_of_light_m_s", g.speed_of_light_m_s, Bound::Positive);
  }
  {
    Section s(top.find("layout"), "layout");
    GroundTrackLayout& l = cfg.setup.layout;
    s.number("ground_distance_km", l.ground_distance_km, Bound::Positive);
    s.number("orbital_height_km", l.orbital_height_km, Bound::Positive);
    s.number("sat_a_offset", l.sat_a_offset, Bound::Any);
    s.number("sat_c_offset", l.sat_c_offset, Bound::Any);
    const bool explicit_b = s.has("sat_b_offset");
    s.number("sat_b_offset", l.sat_b_offset, Bound::Any);
    if (!explicit_b) l.sat_b_offset = 1.0 - l.sat_a_offset;
    s.number("orbit_phase_s", l.orbit_phase_s, Bound::Any);
  }
  {
    Section s(top.find("optics"), "optics");
    OpticalParams& o = cfg.setup.optics;
    s.number("wavelength_m", o.wavelength_m, Bound::Positive);
    s.number("divergence_rad", o.divergence_rad, Bound::Positive);
    s.number("pointing_error_rad", o.pointing_error_rad, Bound::NonNegative);
    s.number("receiver_radius_m", o.receiver_radius_m, Bound::Positive);
    s.number("zenith_transmittance", o.zenith_transmittance, Bound::Unit);
    s.number("detector_efficiency", o.detector_efficiency, Bound::Unit);
    s.number("memory_efficiency", o.memory_efficiency, Bound::Unit);
    s.number("dark_count_prob", o.dark_count_prob, Bound::Unit);
  }
  {
    Section s(top.find("background"), "background");
    BackgroundParams& b = cfg.setup.background;
    s.number("sky_brightness", b.sky_brightness, Bound::NonNegative);
    s.number("field_of_view_sr", b.field_of_view_sr, Bound::NonNegative);
    s.number("filter_bandwidth_nm", b.filter_bandwidth_nm, Bound::NonNegative);
    s.number("weather_factor", b.weather_factor, Bound::NonNegative);
    s.number("detection_window_s", b.detection_window_s, Bound::Positive);
  }
  {
    Section s(top.find("protocol"), "protocol");
    ProtocolConfig& p = cfg.protocol;
    s.number("clock_rate_hz", p.clock_rate_hz, Bound::Positive);
    if (const ordered_json* v = s.find("cutoff_s")) p.cutoff_s = as_cutoff(*v, s.path("cutoff_s"));
    s.integer("memory_modes", p.memory_modes, 1);
    s.number("dephasing_time_s", p.dephasing_time_s, Bound::Positive);
  }
  read_list(top, "scenarios", cfg.scenarios, [](const ordered_json& v, const std::string& p) {
    if (!v.is_string()) throw ConfigError(p, "expected a scenario name");
    const std::string name = v.get<std::string>();
    if (name != "loss") {
      try {
        parse_scenario(name);
      } catch (const InvalidArgument& e) {
        throw ConfigError(p, e.what());
      }
    }
    return name;
  });
  if (top.has("scenarios") && cfg.scenarios.empty())
    throw ConfigError("scenarios", "needs at least one entry");
  {
    Section s(top.find("samples"), "samples");
    s.integer("scenario1", cfg.samples.scenario1, 1);
    s.integer("scenario2", cfg.samples.scenario2, 1);
    s.integer("one_sat_memory", cfg.samples.one_sat_memory, 1);
    if (const ordered_json* v = s.find("max_sim_time_s"))
      cfg.samples.max_sim_time_s = as_cutoff(*v, s.path("max_sim_time_s"));
  }
  {
    Section s(top.find("sweep"), "sweep");
    SweepAxes& a = cfg.sweep;
    number_list(s, "ground_distance_km", a.ground_distance_km, Bound::Positive);
    number_list(s, "orbital_height_km", a.orbital_height_km, Bound::Positive);
    number_list(s, "sat_a_offset", a.sat_a_offset, Bound::Any);
    number_list(s, "divergence_rad", a.divergence_rad, Bound::Positive);
    number_list(s, "pointing_error_rad", a.pointing_error_rad, Bound::NonNegative);
    number_list(s, "dephasing_time_s", a.dephasing_time_s, Bound::Positive);
    read_list(s, "cutoff_s", a.cutoff_s, as_cutoff);
    read_list(s, "memory_modes", a.memory_modes, [](const ordered_json& v, const std::string& p) {
      return static_cast<std::uint32_t>(Section::as_integer(v, p, 1));
    });
    number_list(s, "weather_factor", a.weather_factor, Bound::NonNegative);
  }
  {
    Section s(top.find("orbit"), "orbit");
    s.number("step_s", cfg.orbit.step_s, Bound::Positive);
    s.integer("points_per_side", cfg.orbit.points_per_side, 1);
    s.number("max_sim_time_s", cfg.orbit.max_sim_time_s, Bound::Positive);
  }
  {
    Section s(top.find("output"), "output");
    s.string("dir", cfg.output.dir);
    s.string("format", cfg.output.format);
    s.boolean("dump_records", cfg.output.dump_records);
  }

  for (const Unconfirmed& u : kUnconfirmed) {
    const ordered_json* sec = root.contains(u.section) ? &root.at(u.section) : nullptr;
    const bool given = sec && sec->contains(u.key);
    const bool swept = u.axis && root.contains("sweep") && root.at("sweep").contains(u.axis);
    if (!given && !swept)
      cfg.warnings.push_back(std::string(u.section) + "." + u.key +
                             " not set; using an unconfirmed default");
  }

  try {
    cfg.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("", e.what());
  }
  return cfg;
}

ordered_json yaml_to_json(const YAML::Node& n, const std::string& path) {
  switch (n.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Sequence: {
      ordered_json arr = ordered_json::array();
      for (std::size_t i = 0; i < n.size(); ++i)
        arr.push_back(yaml_to_json(n[i], path + "[" + std::to_string(i) + "]"));
      return arr;
    }
    case YAML::NodeType::Map: {
      ordered_json obj = ordered_json::object();
      for (const auto& kv : n) {
        const std::string key = kv.first.as<std::string>();
        obj[key] = yaml_to_json(kv.second, join(path, key));
      }
      return obj;
    }
    case YAML::NodeType::Scalar: {
      const std::string s = n.Scalar();
      if (n.Tag() == "!") return s;  // quoted
      bool b;
      if (YAML::convert<bool>::decode(n, b)) return b;
      if (!s.empty() && s.find_first_not_of("+-0123456789") == std::string::npos) {
        try {
          std::size_t pos = 0;
          if (s[0] == '-') {
            const long long v = std::stoll(s, &pos);
            if (pos == s.size()) return v;
          } else {
            const unsigned long long v = std::stoull(s, &pos);
            if (pos == s.size()) return v;
          }
        } catch (const std::exception&) {
        }
      }
      try {
        std::size_t pos = 0;
        const double d = std::stod(s, &pos);
        if (pos == s.size()) return d;
      } catch (const std::exception&) {
      }
      return s;
    }
  }
  return nullptr;
}

bool blank(const std::string& text) {
  return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

void RunConfig::validate() const {
  setup.geometry.validate();
  setup.layout.validate();
  setup.optics.validate();
  setup.background.validate();
  protocol.validate();
  if (scenarios.empty()) throw ConfigError("scenarios", "needs at least one entry");
  if (workers < 1) throw ConfigError("workers", "must be >= 1");
  if (output.format != "csv" && output.format != "json" && output.format != "both")
    throw ConfigError("output.format", "must be csv, json or both");
}

RunConfig parse_config_json(const std::string& text) {
  if (blank(text)) return from_json(ordered_json::object());
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (root.is_null()) root = ordered_json::object();
  return from_json(root);
}

RunConfig parse_config_yaml(const std::string& text) {
  if (blank(text)) return from_json(ordered_json::object());
  YAML::Node node;
  try {
    node = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", std::string("invalid YAML: ") + e.what());
  }
  ordered_json root = yaml_to_json(node, "");
  if (root.is_null()) root = ordered_json::object();
  return from_json(root);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".yaml" || ext == ".yml") return parse_config_yaml(ss.str());
  return parse_config_json(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
  const GeometryConfig& g = cfg.setup.geometry;
  const GroundTrackLayout& l = cfg.setup.layout;
  const OpticalParams& o = cfg.setup.optics;
  const BackgroundParams& b = cfg.setup.background;
  const ProtocolConfig& p = cfg.protocol;
  const SweepAxes& a = cfg.sweep;

  ordered_json j;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["geometry"] = {{"earth_radius_km", g.earth_radius_km},
                   {"earth_mass_kg", g.earth_mass_kg},
                   {"grav_const", g.grav_const},
                   {"speed_of_light_m_s", g.speed_of_light_m_s}};
  j["layout"] = {{"ground_distance_km", l.ground_distance_km},
                 {"orbital_height_km", l.orbital_height_km},
                 {"sat_a_offset", l.sat_a_offset},
                 {"sat_c_offset", l.sat_c_offset},
                 {"sat_b_offset", l.sat_b_offset},
                 {"orbit_phase_s", l.orbit_phase_s}};
  j["optics"] = {{"wavelength_m", o.wavelength_m},
                 {"divergence_rad", o.divergence_rad},
                 {"pointing_error_rad", o.pointing_error_rad},
                 {"receiver_radius_m", o.receiver_radius_m},
                 {"zenith_transmittance", o.zenith_transmittance},
                 {"detector_efficiency", o.detector_efficiency},
                 {"memory_efficiency", o.memory_efficiency},
                 {"dark_count_prob", o.dark_count_prob}};
  j["background"] = {{"sky_brightness", b.sky_brightness},
                     {"field_of_view_sr", b.field_of_view_sr},
                     {"filter_bandwidth_nm", b.filter_bandwidth_nm},
                     {"weather_factor", b.weather_factor},
                     {"detection_window_s", b.detection_window_s}};
  j["protocol"] = {{"clock_rate_hz", p.clock_rate_hz},
                   {"cutoff_s", cutoff_json(p.cutoff_s)},
                   {"memory_modes", p.memory_modes},
                   {"dephasing_time_s", p.dephasing_time_s}};
  j["scenarios"] = cfg.scenarios;
  j["samples"] = {{"scenario1", cfg.samples.scenario1},
                  {"scenario2", cfg.samples.scenario2},
                  {"one_sat_memory", cfg.samples.one_sat_memory},
                  {"max_sim_time_s", cutoff_json(cfg.samples.max_sim_time_s)}};
  ordered_json sweep = ordered_json::object();
  auto put = [&](const char* key, const auto& v) {
    if (!v.empty()) sweep[key] = v;
  };
  put("ground_distance_km", a.ground_distance_km);
  put("orbital_height_km", a.orbital_height_km);
  put("sat_a_offset", a.sat_a_offset);
  put("divergence_rad", a.divergence_rad);
  put("pointing_error_rad", a.pointing_error_rad);
  put("dephasing_time_s", a.dephasing_time_s);
  if (!a.cutoff_s.empty()) {
    ordered_json c = ordered_json::array();
    for (const auto& v : a.cutoff_s) c.push_back(cutoff_json(v));
    sweep["cutoff_s"] = c;
  }
  put("memory_modes", a.memory_modes);
  put("weather_factor", a.weather_factor);
  j["sweep"] = sweep;
  j["orbit"] = {{"step_s", cfg.orbit.step_s},
                {"points_per_side", cfg.orbit.points_per_side},
                {"max_sim_time_s", cfg.orbit.max_sim_time_s}};
  j["output"] = {{"dir", cfg.output.dir},
                 {"format", cfg.output.format},
                 {"dump_records", cfg.output.dump_records}};
  return j.dump(2) + "\n";
}

void override_samples(RunConfig& cfg, std::uint64_t samples) {
  if (samples < 1) throw ConfigError("samples", "override must be >= 1");
  cfg.samples.scenario1 = cfg.samples.scenario2 = cfg.samples.one_sat_memory = samples;
}

}  // namespace satqr
