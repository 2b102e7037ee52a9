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

#pragma once

// Run configuration: a JSON (or equivalent YAML) key tree mapped onto the
// physics, protocol, sweep and output settings. Every key is optional;
// unknown keys are rejected with their full path.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satqr/protocols.hpp"

namespace satqr {

struct SampleCounts {
  std::uint64_t scenario1 = 100000;
  std::uint64_t scenario2 = 10000;
  std::uint64_t one_sat_memory = 10000;
  /// Simulated-time horizon for sweep points; nullopt runs to the target.
  std::optional<double> max_sim_time_s;

  std::uint64_t for_scenario(Scenario s) const;
};

/// Each non-empty axis replaces the matching base value; points are the
/// cartesian product, in the member order below (first axis outermost).
struct SweepAxes {
  std::vector<double> ground_distance_km;
  std::vector<double> orbital_height_km;
  std::vector<double> sat_a_offset;  // S_B mirrors to 1 - offset
  std::vector<double> divergence_rad;
  std::vector<double> pointing_error_rad;
  std::vector<double> dephasing_time_s;
  std::vector<std::optional<double>> cutoff_s;
  std::vector<std::uint32_t> memory_modes;
  std::vector<double> weather_factor;
};

struct OrbitSettings {
  double step_s = 30.0;
  std::uint32_t points_per_side = 14;
  /// Simulated-time horizon per phase. Near the horizon of a pass a link can
  /// be so slow that reaching the sample target takes days of simulated time.
  double max_sim_time_s = 300.0;
};

struct OutputSettings {
  std::string dir = "results";
  std::string format = "csv";  // csv, json or both
  bool dump_records = false;
};

struct RunConfig {
  PhysicalSetup setup;
  ProtocolConfig protocol;
  /// Protocol names accepted by parse_scenario, or "loss" for link budgets only.
  std::vector<std::string> scenarios{"scenario1"};
  std::uint64_t seed = 1;
  unsigned workers = 1;
  SampleCounts samples;
  SweepAxes sweep;
  OrbitSettings orbit;
  OutputSettings output;
  /// Filled by the parser: keys whose defaults are not confirmed values.
  std::vector<std::string> warnings;

  void validate() const;
};

/// Parses JSON text. Empty or whitespace-only text gives all defaults.
/// Throws ConfigError naming the offending key.
RunConfig parse_config_json(const std::string& text);
/// Parses YAML text with the same key tree.
RunConfig parse_config_yaml(const std::string& text);
/// Picks the parser from the extension (.yaml/.yml, otherwise JSON).
/// Throws IoError if the file cannot be read.
RunConfig load_config(const std::string& path);

/// Canonical JSON of the full configuration, defaults included. Parsing it
/// back yields an identical configuration.
std::string config_to_json(const RunConfig& cfg);

/// Applies one sample count to every scenario.
void override_samples(RunConfig& cfg, std::uint64_t samples);

}  // namespace satqr
