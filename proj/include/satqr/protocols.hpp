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

// Repeater protocols over a linear chain A - ... - B.
//
// Every protocol is reduced to a ChainSpec: nodes with or without memory
// and one link process per neighbouring pair of nodes. Interior memory
// nodes swap as soon as both of their banks hold a confirmed qubit, oldest
// first. The chain engine is shared by Scenario 1 (two slotted links into
// the central satellite), Scenario 2 (four emissive/absorptive links) and
// the single satellite with memory.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satqr/geometry.hpp"
#include "satqr/optics.hpp"
#include "satqr/simcore.hpp"

namespace satqr {

enum class Scenario { Scenario1, Scenario2, OneSatMemory, OneSatBaseline };

const char* to_string(Scenario s);
/// Accepts "scenario1", "scenario2", "one_sat_memory", "one_sat_baseline".
Scenario parse_scenario(std::string_view name);

struct ProtocolConfig {
  Scenario scenario = Scenario::Scenario1;
  double clock_rate_hz = 20e6;
  std::optional<double> cutoff_s = 0.01;  // nullopt: never discard
  std::uint32_t memory_modes = 1000;
  double dephasing_time_s = 0.1;

  void validate() const;
};

/// Everything physical about one static snapshot of the constellation.
struct PhysicalSetup {
  GeometryConfig geometry;
  GroundTrackLayout layout;
  OpticalParams optics;
  BackgroundParams background;
};

enum class LinkKind {
  // Source without memory on a neighbouring satellite sends continuously;
  // the memory end loads at most one photon per mode every
  // modes * slot_period_s with probability p_load, then waits
  // confirm_delay_s for the ground detection, which succeeds with p_success.
  SlottedSource,
  // Both memory ends hold their qubit for a round trip trial_time_s; each
  // trial succeeds with p_success. Modes run independently in parallel.
  Emissive,
};

struct LinkSpec {
  LinkKind kind = LinkKind::Emissive;
  double p_success = 1.0;
  double trial_time_s = 0.0;
  double p_load = 1.0;
  double slot_period_s = 0.0;
  double confirm_delay_s = 0.0;
  /// Time each end's qubit has already spent in memory at confirmation.
  std::array<double, 2> stored_at_confirm_s{0.0, 0.0};
  /// Probability that a ground click at that end was a real photon.
  std::array<double, 2> alpha{1.0, 1.0};
};

struct ChainNode {
  std::string name;
  bool has_memory = false;
  double dephasing_time_s = 0.0;
  /// One-way classical delay to the end stations.
  double delay_to_a_s = 0.0;
  double delay_to_b_s = 0.0;
};

struct ChainSpec {
  std::vector<ChainNode> nodes;  // front() is A, back() is B
  std::vector<LinkSpec> links;   // links[i] joins nodes[i] and nodes[i+1]
  std::uint32_t memory_modes = 1;
  std::optional<double> cutoff_s;

  void validate() const;
};

struct RunOptions {
  std::uint64_t seed = 1;
  std::uint64_t target_samples = 1000;
  /// Apply dephasing to every stored pair at every event instead of lazily.
  bool eager_dephasing = false;
  /// Check bank/pair consistency and swap selection after every event.
  bool audit = false;
  std::uint64_t max_events = 4'000'000'000ULL;
  /// Stop once the next event lies beyond this simulated time, even if fewer
  /// than target_samples pairs were delivered. The run then reports this
  /// horizon as its total time.
  std::optional<double> max_time_s;
};

struct LinkStats {
  std::uint64_t established = 0;
  double sum_duration_s = 0.0;
  double sum_duration_sq = 0.0;

  double mean() const;
  double std_error() const;
};

struct RunOutput {
  std::vector<SampleRecord> records;
  std::vector<LinkStats> links;
  std::uint64_t events = 0;
  std::uint64_t swaps = 0;
  std::uint64_t discarded = 0;
  double total_time_s = 0.0;  // time of the last delivered record, or the horizon
  bool hit_time_limit = false;
};

/// Storage time at the central memory before the ground confirmation
/// arrives, for a source on S_A feeding A and S_C. Distances in km.
/// Throws DomainError when the distances violate the triangle inequality.
double t_mem(double d_sa_a_km, double d_sa_sc_km, double d_a_sc_km, double c_km_s);

enum class CutoffDecision { Keep, Discard };

/// Discard iff the pair has waited strictly longer than `cutoff_s` since
/// confirmation. No cutoff keeps everything.
CutoffDecision apply_cutoff(const TimedPair& pair, double now, std::optional<double> cutoff_s);

ChainSpec make_scenario1_chain(const PhysicalSetup& setup, const ProtocolConfig& proto);
ChainSpec make_scenario2_chain(const PhysicalSetup& setup, const ProtocolConfig& proto);
ChainSpec make_one_sat_memory_chain(const PhysicalSetup& setup, const ProtocolConfig& proto);

/// Runs the chain until `opts.target_samples` A-B pairs are delivered.
RunOutput run_chain(const ChainSpec& chain, const RunOptions& opts);

RunOutput run_scenario1(const PhysicalSetup& setup, const ProtocolConfig& proto,
                        const RunOptions& opts);
RunOutput run_scenario2(const PhysicalSetup& setup, const ProtocolConfig& proto,
                        const RunOptions& opts);
RunOutput run_one_sat_memory(const PhysicalSetup& setup, const ProtocolConfig& proto,
                             const RunOptions& opts);

/// Memoryless single satellite at the S_C position: pairs per second
/// f_clock * eta_A * eta_B with every loss but no noise.
double run_one_sat_baseline(const PhysicalSetup& setup, const ProtocolConfig& proto);

/// Builds the chain for `proto.scenario` (not the baseline).
ChainSpec make_chain(const PhysicalSetup& setup, const ProtocolConfig& proto);

}  // namespace satqr
