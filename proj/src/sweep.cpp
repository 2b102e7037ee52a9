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

#include "satqr/sweep.hpp"

#include <charconv>
#include <chrono>
#include <cmath>

#include "satqr/errors.hpp"

namespace satqr {

const char* to_string(RowKind k) {
  switch (k) {
    case RowKind::Point: return "point";
    case RowKind::OrbitPhase: return "orbit_phase";
    case RowKind::OrbitSummary: return "orbit_summary";
  }
  return "unknown";
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void append(std::string& key, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  key.append(buf, res.ptr);
  key.push_back('|');
}

std::uint64_t point_seed(std::uint64_t master, const SweepPoint& p) {
  std::string key = p.scenario + "|";
  const GroundTrackLayout& l = p.setup.layout;
  for (double v : {l.ground_distance_km, l.orbital_height_km, l.sat_a_offset, l.sat_c_offset,
                   l.sat_b_offset, l.orbit_phase_s, p.setup.optics.divergence_rad,
                   p.setup.optics.pointing_error_rad, p.protocol.dephasing_time_s,
                   p.protocol.cutoff_s.value_or(-1.0), static_cast<double>(p.protocol.memory_modes),
                   p.setup.background.weather_factor})
    append(key, v);
  return derive_seed(master, fnv1a(key));
}

template <typename T>
std::vector<std::optional<T>> axis(const std::vector<T>& values, bool use) {
  if (!use || values.empty()) return {std::nullopt};
  return {values.begin(), values.end()};
}

std::uint64_t samples_for(const RunConfig& cfg, const std::string& scenario) {
  if (scenario == "loss") return 0;
  return cfg.samples.for_scenario(parse_scenario(scenario));
}

ResultRow blank_row(const SweepPoint& p, RowKind kind) {
  ResultRow row;
  row.kind = kind;
  row.scenario = p.scenario;
  row.setup = p.setup;
  row.protocol = p.protocol;
  row.seed = p.seed;
  row.target_samples = p.target_samples;
  return row;
}

void mark_failure(ResultRow& row, const Error& e) {
  row.status = e.category() == ErrorCategory::Visibility ? "not_visible" : "error";
  row.message = e.what();
}

ResultRow run_one(const SweepPoint& p, bool keep_records) {
  const auto t0 = std::chrono::steady_clock::now();
  ResultRow row = blank_row(p, RowKind::Point);
  fill_losses(row);
  try {
    if (p.scenario != "loss") {
      ProtocolConfig proto = p.protocol;
      proto.scenario = parse_scenario(p.scenario);
      if (proto.scenario == Scenario::OneSatBaseline) {
        row.rate = simulate_point(p.setup, proto, {});
      } else {
        RunOptions opts;
        opts.seed = p.seed;
        opts.target_samples = p.target_samples;
        opts.max_time_s = p.max_time_s;
        RunOutput out = run_chain(make_chain(p.setup, proto), opts);
        row.events = out.events;
        row.swaps = out.swaps;
        row.discarded = out.discarded;
        if (!out.records.empty()) row.rate = key_rate(out.records, out.total_time_s);
        row.rate.total_time_s = out.total_time_s;
        if (keep_records) row.records = std::move(out.records);
      }
    }
  } catch (const Error& e) {
    mark_failure(row, e);
  }
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

double db(double eta) { return -10.0 * std::log10(eta); }

}  // namespace

void fill_losses(ResultRow& row) {
  const PhysicalSetup& s = row.setup;
  try {
    const double dif = diffraction_efficiency(s.layout.ground_distance_km * 1e3, s.optics);
    if (dif > 0.0) row.beam_loss_db = db(dif);
  } catch (const Error&) {
  }
  try {
    Constellation c = node_positions(s.layout, s.geometry);
    c.sat_c.role = NodeRole::AbsorptiveMemory;
    const StationNode path[3] = {c.a, c.sat_a, c.sat_c};
    const LinkBudget lb = link_budget(LinkClass::GroundSatelliteSatellite, path, s.optics,
                                      s.background, s.geometry);
    if (lb.total > 0.0) row.loss_a_sc_db = db(lb.total);
  } catch (const Error&) {
  }
  try {
    row.noise_prob = noise_click_prob(s.optics, s.background);
    row.background_per_window =
        background_rate(s.background, s.optics).photons_per_s * s.background.detection_window_s;
  } catch (const Error&) {
  }
}

std::vector<SweepPoint> expand_points(const RunConfig& cfg, bool use_axes) {
  const SweepAxes& a = cfg.sweep;
  std::vector<SweepPoint> points;
  for (const std::string& scenario : cfg.scenarios)
    for (auto d : axis(a.ground_distance_km, use_axes))
      for (auto h : axis(a.orbital_height_km, use_axes))
        for (auto off : axis(a.sat_a_offset, use_axes))
          for (auto div : axis(a.divergence_rad, use_axes))
            for (auto pe : axis(a.pointing_error_rad, use_axes))
              for (auto tdp : axis(a.dephasing_time_s, use_axes))
                for (auto cut : axis(a.cutoff_s, use_axes))
                  for (auto modes : axis(a.memory_modes, use_axes))
                    for (auto k : axis(a.weather_factor, use_axes)) {
                      SweepPoint p;
                      p.scenario = scenario;
                      p.setup = cfg.setup;
                      p.protocol = cfg.protocol;
                      if (d) p.setup.layout.ground_distance_km = *d;
                      if (h) p.setup.layout.orbital_height_km = *h;
                      if (off) {
                        p.setup.layout.sat_a_offset = *off;
                        p.setup.layout.sat_b_offset = 1.0 - *off;
                      }
                      if (div) p.setup.optics.divergence_rad = *div;
                      if (pe) p.setup.optics.pointing_error_rad = *pe;
                      if (tdp) p.protocol.dephasing_time_s = *tdp;
                      if (cut) p.protocol.cutoff_s = *cut;
                      if (modes) p.protocol.memory_modes = *modes;
                      if (k) p.setup.background.weather_factor = *k;
                      if (scenario != "loss") p.protocol.scenario = parse_scenario(scenario);
                      p.target_samples = samples_for(cfg, scenario);
                      p.max_time_s = cfg.samples.max_sim_time_s;
                      p.seed = point_seed(cfg.seed, p);
                      points.push_back(std::move(p));
                    }
  return points;
}

std::vector<ResultRow> run_points(const RunConfig& cfg, bool use_axes) {
  cfg.validate();
  const std::vector<SweepPoint> points = expand_points(cfg, use_axes);
  std::vector<ResultRow> rows(points.size());
  parallel_for(points.size(), cfg.workers,
               [&](std::size_t i) { rows[i] = run_one(points[i], cfg.output.dump_records); });
  return rows;
}

std::vector<ResultRow> run_orbits(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<SweepPoint> points = expand_points(cfg, true);
  const std::vector<double> grid = symmetric_phase_grid(cfg.orbit.step_s, cfg.orbit.points_per_side);
  std::vector<std::vector<ResultRow>> blocks(points.size());

  // Parallelism sits inside each orbit sweep; points run one after another.
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SweepPoint& p = points[i];
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ResultRow>& out = blocks[i];
    for (double phase : grid) {
      SweepPoint at = p;
      at.setup.layout.orbit_phase_s = phase;
      ResultRow row = blank_row(at, RowKind::OrbitPhase);
      row.phase_s = phase;
      fill_losses(row);
      out.push_back(std::move(row));
    }
    ResultRow summary = blank_row(p, RowKind::OrbitSummary);
    if (p.scenario == "loss") {
      blocks[i].push_back(std::move(summary));
      continue;
    }
    try {
      RunOptions opts;
      opts.seed = p.seed;
      opts.target_samples = p.target_samples;
      opts.max_time_s = cfg.orbit.max_sim_time_s;
      const std::vector<OrbitPoint> sweep = orbit_sweep(p.setup, p.protocol, grid, opts, cfg.workers);
      for (std::size_t k = 0; k < sweep.size(); ++k) {
        out[k].rate = sweep[k].rate;
        out[k].seed = derive_seed(p.seed, k);
        if (!sweep[k].visible) {
          out[k].status = "not_visible";
          out[k].message = "a required link is below the horizon";
        }
      }
      const double period = orbital_period(p.setup.layout.orbital_height_km, p.setup.geometry);
      const OrbitSweepResult eff = effective_rate(sweep, period);
      summary.rate.e_x = eff.e_x;
      summary.rate.e_z = eff.e_z;
      summary.tau_s = eff.tau_s;
      summary.orbital_period_s = eff.orbital_period_s;
      summary.raw_bits_per_pass = eff.raw_bits_per_pass;
      summary.key_bits_per_pass = eff.key_bits_per_pass;
      summary.effective_key_rate = eff.effective_key_rate;
    } catch (const Error& e) {
      mark_failure(summary, e);
      for (ResultRow& r : out) mark_failure(r, e);
    }
    summary.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(summary));
  }
  std::vector<ResultRow> rows;
  for (auto& b : blocks)
    for (auto& r : b) rows.push_back(std::move(r));
  return rows;
}

}  // namespace satqr
