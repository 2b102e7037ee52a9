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

// Key rates from delivered samples, and orbit sweeps reduced to per-pass
// and per-second effective rates.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "satqr/protocols.hpp"

namespace satqr {

/// -p log2 p - (1-p) log2 (1-p). Throws DomainError outside [0, 1].
double binary_entropy(double p);

/// 1 - h(e_x) - h(e_z), possibly negative.
double secret_fraction(double e_x, double e_z);

struct RateResult {
  double raw_rate = 0.0;  // pairs per second
  double e_x = 0.0;
  double e_z = 0.0;
  double key_rate = 0.0;  // bits per second, >= 0
  std::uint64_t samples = 0;
  double total_time_s = 0.0;
  // Jackknife standard errors over consecutive record blocks.
  double raw_rate_se = 0.0;
  double e_x_se = 0.0;
  double e_z_se = 0.0;
  double key_rate_se = 0.0;
};

/// r = N / total_time, mean error rates, key = max(0, r (1 - h(e_x) - h(e_z))).
/// Throws InvalidArgument on an empty record list or non-positive time.
RateResult key_rate(std::span<const SampleRecord> records, double total_time_s,
                    std::size_t blocks = 40);

/// Rate of one static configuration. The memoryless baseline is evaluated in
/// closed form (no samples, zero errors). Visibility errors propagate.
RateResult simulate_point(const PhysicalSetup& setup, const ProtocolConfig& proto,
                          const RunOptions& opts);

/// Runs fn(i) for i in [0, n) on up to `workers` threads. The first
/// exception thrown by any call is rethrown after all threads finish.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

struct OrbitPoint {
  double phase_s = 0.0;
  bool visible = true;
  RateResult rate;
};

/// `points_per_side` phases on each side of 0 plus 0 itself, spaced `step_s`.
std::vector<double> symmetric_phase_grid(double step_s, std::size_t points_per_side);

/// One static simulation per phase (seed derived from opts.seed and the
/// point index). Phases at which a required link is below the horizon get
/// rate 0. Throws InvalidArgument unless the grid is symmetric about 0.
std::vector<OrbitPoint> orbit_sweep(const PhysicalSetup& setup, const ProtocolConfig& proto,
                                    std::span<const double> phases_s, const RunOptions& opts,
                                    unsigned workers = 1);

struct OrbitSweepResult {
  std::vector<OrbitPoint> points;
  double tau_s = 0.0;               // window is [-tau, tau]
  double raw_bits_per_pass = 0.0;
  double e_x = 0.0;                 // rate-weighted over the window
  double e_z = 0.0;
  double key_bits_per_pass = 0.0;
  double orbital_period_s = 0.0;
  double effective_key_rate = 0.0;  // key bits per pass / orbital period
};

/// Trapezoidal integral of y over x (x ascending).
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Chooses tau among the grid's |phase| values to maximise key bits per pass.
/// An all-zero sweep gives a zero result.
OrbitSweepResult effective_rate(std::vector<OrbitPoint> points, double orbital_period_s);

}  // namespace satqr
