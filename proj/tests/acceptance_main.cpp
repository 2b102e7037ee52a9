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

// Acceptance suite: one PASS/FAIL line per headline criterion, at reduced
// scale. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles/oracles.hpp"
#include "satqr/analysis.hpp"
#include "satqr/config.hpp"
#include "satqr/emit.hpp"
#include "satqr/errors.hpp"
#include "satqr/geometry.hpp"
#include "satqr/optics.hpp"
#include "satqr/protocols.hpp"
#include "satqr/quantum.hpp"
#include "satqr/sweep.hpp"

using namespace satqr;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* name, const std::function<void(Verdict&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("%s %s %s:%s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.str().c_str(),
              secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Separation of two estimates in units of their combined standard error.
double sigmas(const RateResult& hi, const RateResult& lo) {
  const double se = std::hypot(hi.key_rate_se, lo.key_rate_se);
  return se > 0 ? (hi.key_rate - lo.key_rate) / se : INFINITY;
}

// Merges `patch` into the base config text at the top level.
RunConfig config_with(const std::string& patch) {
  nlohmann::ordered_json base = nlohmann::ordered_json::parse(R"({"seed": 1,
    "optics": {"receiver_radius_m": 0.5, "pointing_error_rad": 1e-6},
    "protocol": {"memory_modes": 100, "cutoff_s": 0.01, "dephasing_time_s": 0.1}})");
  base.merge_patch(nlohmann::ordered_json::parse(patch));
  return parse_config_json(base.dump());
}

const ResultRow& find_row(const std::vector<ResultRow>& rows,
                          const std::function<bool(const ResultRow&)>& pred) {
  for (const ResultRow& r : rows)
    if (pred(r)) return r;
  throw SimulationError("expected result row not found");
}

BellDiagonalState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  BellDiagonalState::Weights w{};
  for (double& x : w) x = u(rng);
  if (u(rng) < 0.2) w[static_cast<std::size_t>(u(rng) * 4)] = 0.0;
  w[0] += 1e-9;
  return BellDiagonalState(w);
}

double max_diff(const BellDiagonalState& s, const std::array<double, 4>& w) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(s[i] - w[i]));
  return m;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  criterion("C01", "geometry", [](Verdict& v) {
    const double minutes = orbital_period(400) / 60.0;
    const double joint = 2.0 * max_visible_ground_distance(400);
    v.detail << " period " << fmt("%.4f", minutes) << " min, joint visibility limit "
             << fmt("%.1f", joint) << " km";
    v.require(std::abs(minutes - 92.4) <= 0.05, "period within 92.4 +- 0.05 min");
    v.require(std::abs(joint - 4400.0) <= 44.0, "joint limit within 1% of 4400 km");
    v.require(std::abs(joint - oracle::joint_visibility_limit(400)) <= 1e-6 * joint,
              "joint limit matches the vector oracle");
  });

  criterion("C02", "optics", [](Verdict& v) {
    OpticalParams o;
    o.pointing_error_rad = 0.0;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const double z = 1e3 * std::pow(10.0, 5.0 * i / 99.0);  // 1 km .. 100000 km
      const double w0 = o.wavelength_m / (o.divergence_rad * M_PI);
      const double w = w0 * std::sqrt(1 + std::pow(o.divergence_rad * z / w0, 2));
      const double want = -std::expm1(-2 * o.receiver_radius_m * o.receiver_radius_m / (w * w));
      worst = std::max(worst, std::abs(diffraction_efficiency(z, o) - want) / want);
    }
    v.detail << " sigma_p=0 worst relative error " << fmt("%.2e", worst);
    v.require(worst <= 1e-6, "closed form to 1e-6");
    for (double sp : {0.5e-6, 1e-6, 2e-6}) {
      OpticalParams p;
      p.pointing_error_rad = sp;
      auto excess = [&](double z_km) {
        return -10 * std::log10(diffraction_efficiency(z_km * 1e3, p) / diffraction_efficiency(z_km * 1e3, o));
      };
      const double e1 = excess(20000), e2 = excess(40000);
      const double var = std::abs(e2 - e1) / std::max(e1, e2);
      v.detail << "; sigma_p=" << sp * 1e6 << "urad excess " << fmt("%.3f", e1) << "->"
               << fmt("%.3f", e2) << " dB (" << fmt("%.2f", 100 * var) << "%)";
      v.require(e1 > 0 && var < 0.02, "excess loss flat within 2%");
    }
  });

  criterion("C03", "background light", [](Verdict& v) {
    BackgroundParams bg;
    bg.weather_factor = 1e-7;
    OpticalParams o;
    o.receiver_radius_m = 0.5;
    const double p = background_rate(bg, o).prob_per_window;
    v.detail << " noise probability per 1 us window " << fmt("%.3e", p);
    v.require(p >= 1e-7 && p <= 1e-6, "within [1e-7, 1e-6]");
  });

  criterion("C04", "quantum oracle", [](Verdict& v) {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> u(0, 1);
    double worst_channel = 0, worst_swap = 0, worst_semigroup = 0;
    for (int i = 0; i < 1000; ++i) {
      const BellDiagonalState s = random_state(rng), t = random_state(rng);
      const int q = i % 2;
      const double T = 1e-3 + u(rng), dt = u(rng), dt2 = u(rng), alpha = u(rng);
      const auto rho = oracle::density(s.weights());
      worst_channel = std::max(worst_channel, max_diff(dephase(s, q, dt, T),
                                                       oracle::bell_weights(oracle::dephase(rho, q, dt, T))));
      worst_channel = std::max(worst_channel, max_diff(white_noise(s, q, alpha),
                                                       oracle::bell_weights(oracle::depolarize(rho, q, alpha))));
      const auto joint = oracle::swap(rho, oracle::density(t.weights()));
      worst_swap = std::max(worst_swap, max_diff(swap_states(s, t), oracle::bell_weights(joint)));
      worst_swap = std::max(worst_swap, std::abs(oracle::bell_offdiagonal(joint)));
      worst_semigroup = std::max(worst_semigroup,
                                 max_diff(dephase(dephase(s, q, dt, T), q, dt2, T),
                                          dephase(s, q, dt + dt2, T).weights()));
    }
    v.detail << " channels " << fmt("%.1e", worst_channel) << ", swap " << fmt("%.1e", worst_swap)
             << ", dephasing semigroup " << fmt("%.1e", worst_semigroup) << " over 1000 states";
    v.require(worst_channel <= 1e-10, "channels to 1e-10");
    v.require(worst_swap <= 1e-10, "swap to 1e-10");
    v.require(worst_semigroup <= 1e-12, "semigroup to 1e-12");
  });

  criterion("C05", "engine", [](Verdict& v) {
    PhysicalSetup s;
    s.layout.ground_distance_km = 2000;
    ProtocolConfig p;
    p.memory_modes = 1;
    p.cutoff_s = std::nullopt;
    const ChainSpec chain = make_scenario1_chain(s, p);
    RunOptions o;
    o.seed = 1;
    o.target_samples = 10000;
    const RunOutput out = run_chain(chain, o);

    // Independent timing: storage at S_C lasts until A's confirmation arrives.
    const double c = 299792.458;
    const double h = s.layout.orbital_height_km;
    const double half = s.layout.ground_distance_km / 2;
    const oracle::P3 a = oracle::on_equator(6371.0, 0.0);
    const oracle::P3 sa = oracle::on_equator(6371.0 + h, 0.0);
    const oracle::P3 sc = oracle::on_equator(6371.0 + h, half / 6371.0);
    const double tmem = (oracle::dist(sa, a) + oracle::dist(a, sc) - oracle::dist(sa, sc)) / c;
    const LinkSpec& l = chain.links[0];
    const double tp = 1.0 / p.clock_rate_hz;
    const double want = (tmem + tp / l.p_load) / l.p_success;
    const LinkStats& st = out.links[0];
    const double z = (st.mean() - want) / st.std_error();
    v.detail << " mean establishment " << fmt("%.6e", st.mean()) << " s vs "
             << fmt("%.6e", want) << " s (" << fmt("%.2f", z) << " sigma, n=" << st.established
             << ")";
    v.require(st.established >= 10000, "at least 1e4 establishments");
    v.require(std::abs(l.confirm_delay_s - tmem) <= 1e-9 * tmem, "confirmation delay equals t_mem");
    v.require(std::abs(z) <= 3, "within 3 sigma");

    ProtocolConfig q;
    q.memory_modes = 20;
    q.cutoff_s = 5e-3;
    RunOptions lazy;
    lazy.seed = 2;
    lazy.target_samples = 100;
    RunOptions eager = lazy;
    eager.eager_dephasing = true;
    double worst = 0;
    for (Scenario sc2 : {Scenario::Scenario1, Scenario::Scenario2, Scenario::OneSatMemory}) {
      q.scenario = sc2;
      const ChainSpec ch = make_chain(s, q);
      const RunOutput x = run_chain(ch, lazy), y = run_chain(ch, eager);
      v.require(x.records.size() == y.records.size(), "same number of records");
      for (std::size_t i = 0; i < x.records.size() && i < y.records.size(); ++i) {
        v.require(x.records[i].time == y.records[i].time, "same delivery times");
        worst = std::max(worst, max_diff(x.records[i].state, y.records[i].state.weights()));
      }
    }
    v.detail << "; lazy vs eager dephasing " << fmt("%.1e", worst);
    v.require(worst <= 1e-9, "lazy and eager agree to 1e-9");
  });

  criterion("C06", "noise-free purity", [](Verdict& v) {
    PhysicalSetup s;
    s.layout.ground_distance_km = 2500;
    s.optics.dark_count_prob = 0.0;
    s.background.weather_factor = 0.0;
    ProtocolConfig p;
    p.memory_modes = 50;
    RunOptions o;
    o.seed = 3;
    o.target_samples = 1000;
    for (Scenario sc : {Scenario::Scenario1, Scenario::Scenario2, Scenario::OneSatMemory}) {
      p.scenario = sc;
      std::size_t flipped = 0;
      const RunOutput out = run_chain(make_chain(s, p), o);
      for (const SampleRecord& r : out.records) flipped += error_rates(r.state).e_z != 0.0;
      v.detail << " " << to_string(sc) << " " << flipped << "/" << out.records.size() << ";";
      v.require(flipped == 0 && out.records.size() == 1000, std::string(to_string(sc)) + " e_z = 0");
    }
    p.scenario = Scenario::OneSatBaseline;
    const RateResult base = simulate_point(s, p, o);
    v.detail << " one_sat_baseline e_z " << base.e_z;
    v.require(base.e_z == 0.0 && base.raw_rate > 0, "baseline e_z = 0");
  });

  criterion("C07", "cutoff", [](Verdict& v) {
    // Longest distance at which S_A and S_C still see each other at 400 km.
    RunConfig cfg = config_with(R"({"scenarios": ["scenario1"],
      "layout": {"ground_distance_km": 8800},
      "optics": {"divergence_rad": 6e-6},
      "samples": {"scenario1": 1000},
      "sweep": {"cutoff_s": [0.002, 0.01, "none"]}})");
    const auto rows = run_points(cfg, true);
    auto at = [&](std::optional<double> c) -> const RateResult& {
      return find_row(rows, [&](const ResultRow& r) { return r.protocol.cutoff_s == c; }).rate;
    };
    const RateResult& tight = at(0.002);
    const RateResult& moderate = at(0.01);
    const RateResult& none = at(std::nullopt);
    v.detail << " d=8800 km: key rate 2 ms " << fmt("%.1f", tight.key_rate) << " +- "
             << fmt("%.1f", tight.key_rate_se) << ", 10 ms " << fmt("%.1f", moderate.key_rate)
             << " +- " << fmt("%.1f", moderate.key_rate_se) << ", none " << fmt("%.1f", none.key_rate)
             << " +- " << fmt("%.1f", none.key_rate_se) << " bit/s; moderate vs none "
             << fmt("%.1f", sigmas(moderate, none)) << " sigma, moderate vs tight "
             << fmt("%.1f", sigmas(moderate, tight)) << " sigma";
    v.require(sigmas(moderate, none) > 3, "moderate cutoff beats no cutoff by > 3 sigma");
    v.require(tight.key_rate < moderate.key_rate, "over-tight cutoff underperforms");
  });

  criterion("C08", "placement ordering", [](Verdict& v) {
    RunConfig cfg = config_with(R"({"scenarios": ["scenario1"],
      "layout": {"ground_distance_km": 4400},
      "samples": {"scenario1": 10000},
      "sweep": {"sat_a_offset": [0.0, 0.1, 0.2]}})");
    const auto rows = run_points(cfg, true);
    if (rows.size() != 3) throw SimulationError("expected three rows");
    const RateResult &r0 = rows[0].rate, &r1 = rows[1].rate, &r2 = rows[2].rate;
    v.detail << " d=4400 km key rate @0% " << fmt("%.4g", r0.key_rate) << ", @10% "
             << fmt("%.4g", r1.key_rate) << ", @20% " << fmt("%.4g", r2.key_rate)
             << " bit/s; gaps " << fmt("%.1f", sigmas(r0, r1)) << " and "
             << fmt("%.1f", sigmas(r1, r2)) << " sigma";
    v.require(sigmas(r0, r1) > 3, "@0% > @10% by > 3 sigma");
    v.require(sigmas(r1, r2) > 3, "@10% > @20% by > 3 sigma");
  });

  criterion("C09", "scenario 2 resilience", [](Verdict& v) {
    // 1000-mode memories as in the divergence study; 1e3 samples per point.
    RunConfig cfg = config_with(R"({"scenarios": ["scenario1", "scenario2"],
      "layout": {"ground_distance_km": 3000},
      "protocol": {"memory_modes": 1000},
      "samples": {"scenario1": 1000, "scenario2": 1000},
      "sweep": {"divergence_rad": [3e-6, 8e-6]}})");
    const auto rows = run_points(cfg, true);
    auto at = [&](const char* sc, double div) -> const RateResult& {
      return find_row(rows, [&](const ResultRow& r) {
               return r.scenario == sc && r.setup.optics.divergence_rad == div;
             }).rate;
    };
    const RateResult &s1a = at("scenario1", 3e-6), &s2a = at("scenario2", 3e-6);
    const RateResult &s1b = at("scenario1", 8e-6), &s2b = at("scenario2", 8e-6);
    auto ratio = [](const RateResult& n, const RateResult& d) {
      const double r = n.key_rate / d.key_rate;
      const double rel = std::hypot(n.key_rate_se / n.key_rate, d.key_rate_se / d.key_rate);
      return std::pair{r, r * rel};
    };
    const auto [ra, sa] = ratio(s2a, s1a);
    const auto [rb, sb] = ratio(s2b, s1b);
    const double z = (rb - ra) / std::hypot(sa, sb);
    v.detail << " d=3000 km: theta_d=3 urad S1 " << fmt("%.4g", s1a.key_rate) << ", S2 "
             << fmt("%.4g", s2a.key_rate) << " (" << fmt("%.1f", sigmas(s1a, s2a))
             << " sigma); S2/S1 ratio " << fmt("%.4f", ra) << " -> " << fmt("%.4f", rb)
             << " at 8 urad (" << fmt("%.1f", z) << " sigma)";
    v.require(sigmas(s1a, s2a) > 3, "Scenario 1 beats Scenario 2 at 3 urad");
    v.require(rb > ra, "ratio grows with divergence");
  });

  criterion("C10", "orbit machinery", [](Verdict& v) {
    // Synthetic constant sweep: every visible phase carries r0 and no errors.
    const double r0 = 123.0, step = 30.0, period = orbital_period(400);
    std::vector<OrbitPoint> flat;
    for (double t : symmetric_phase_grid(step, 6)) {
      OrbitPoint p;
      p.phase_s = t;
      p.visible = true;
      p.rate.raw_rate = p.rate.key_rate = r0;
      flat.push_back(p);
    }
    const OrbitSweepResult e = effective_rate(flat, period);
    const double want = 2 * e.tau_s * r0 / period;
    v.detail << " constant sweep " << fmt("%.12g", e.effective_key_rate) << " vs 2 tau r0 / T "
             << fmt("%.12g", want);
    v.require(e.tau_s == 180.0, "window covers the whole grid");
    v.require(std::abs(e.effective_key_rate - want) <= 1e-12 * want, "constant sweep exact");
    const std::vector<double> x{-2, -0.5, 1, 4}, y{-3, 0, 3, 9};  // y = 2x + 1
    const double lin = trapezoid(x, y);
    v.require(std::abs(lin - 18.0) <= 1e-12, "trapezoid exact on a line");

    RunConfig cfg = config_with(R"({"scenarios": ["scenario1"],
      "layout": {"ground_distance_km": 4400, "orbital_height_km": 400},
      "samples": {"scenario1": 2000},
      "sweep": {"sat_a_offset": [0.0, 0.1, 0.2, -0.1]},
      "orbit": {"step_s": 30, "points_per_side": 14}})");
    const auto rows = run_orbits(cfg);
    v.detail << "; windows 2 tau:";
    for (const ResultRow& r : rows) {
      if (r.kind != RowKind::OrbitSummary) continue;
      v.require(r.status == "ok", "orbit sweep ran");
      const double minutes = 2 * r.tau_s.value_or(0) / 60.0;
      v.detail << " @" << fmt("%.0f", 100 * r.setup.layout.sat_a_offset) << "% "
               << fmt("%.1f", minutes) << " min";
      v.require(minutes >= 4.0 && minutes <= 8.0,
                "window for S_A@" + fmt("%.0f", 100 * r.setup.layout.sat_a_offset) +
                    "% within 4-8 min");
    }
  });

  criterion("C11", "determinism", [](Verdict& v) {
    namespace fs = std::filesystem;
    RunConfig cfg = config_with(R"({"scenarios": ["scenario1", "scenario2", "one_sat_memory"],
      "samples": {"scenario1": 2000, "scenario2": 500, "one_sat_memory": 500},
      "sweep": {"ground_distance_km": [1500, 3000], "sat_a_offset": [0.0, 0.2]}})");
    const fs::path root = fs::temp_directory_path() / "satqr_acceptance_determinism";
    fs::remove_all(root);
    std::vector<std::string> csv;
    for (unsigned workers : {1u, 1u, 2u}) {
      cfg.workers = workers;
      const fs::path dir = root / std::to_string(csv.size());
      write_outputs(cfg, run_points(cfg, true), dir.string(), "csv");
      csv.push_back(read_file((dir / "results.csv").string()));
    }
    fs::remove_all(root);
    v.detail << " " << csv[0].size() << "-byte results.csv, three runs";
    v.require(csv[0] == csv[1], "identical reruns");
    v.require(csv[0] == csv[2], "identical across worker counts");
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
