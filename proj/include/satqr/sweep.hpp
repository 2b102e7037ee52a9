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

// Expands a RunConfig into sweep points and runs them, one result row per
// (point, scenario). Orbit runs add one row per phase and a summary row.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satqr/analysis.hpp"
#include "satqr/config.hpp"

namespace satqr {

inline constexpr const char* kVersion = "0.1.0";

enum class RowKind { Point, OrbitPhase, OrbitSummary };
const char* to_string(RowKind k);

struct SweepPoint {
  std::string scenario;
  PhysicalSetup setup;
  ProtocolConfig protocol;
  std::uint64_t seed = 0;
  std::uint64_t target_samples = 0;
  std::optional<double> max_time_s;
};

struct ResultRow {
  RowKind kind = RowKind::Point;
  std::string scenario;
  std::string status = "ok";  // ok, not_visible or error
  std::string message;
  PhysicalSetup setup;
  ProtocolConfig protocol;
  std::uint64_t seed = 0;
  std::uint64_t target_samples = 0;
  std::optional<double> phase_s;

  RateResult rate;
  std::uint64_t events = 0;
  std::uint64_t swaps = 0;
  std::uint64_t discarded = 0;

  std::optional<double> loss_a_sc_db;
  std::optional<double> beam_loss_db;
  std::optional<double> noise_prob;
  std::optional<double> background_per_window;

  std::optional<double> tau_s;
  std::optional<double> orbital_period_s;
  std::optional<double> raw_bits_per_pass;
  std::optional<double> key_bits_per_pass;
  std::optional<double> effective_key_rate;

  double wall_time_s = 0.0;            // manifest only
  std::vector<SampleRecord> records;  // kept when dumping is requested
};

/// Points of the base configuration (`use_axes` false) or of the full
/// cartesian sweep, scenario outermost. Each seed is derived from the master
/// seed and the point's own parameter values, so adding points elsewhere in
/// the grid leaves existing seeds unchanged.
std::vector<SweepPoint> expand_points(const RunConfig& cfg, bool use_axes);

/// Runs every point on cfg.workers threads. Per-point failures become rows
/// with a non-ok status; rows keep the order of expand_points.
std::vector<ResultRow> run_points(const RunConfig& cfg, bool use_axes);

/// Orbit sweep for every point of the full sweep.
std::vector<ResultRow> run_orbits(const RunConfig& cfg);

/// Link-budget columns of one static configuration.
void fill_losses(ResultRow& row);

}  // namespace satqr
