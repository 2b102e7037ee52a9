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

#include "satqr/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "satqr/errors.hpp"

namespace satqr {

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary entropy needs p in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double secret_fraction(double e_x, double e_z) {
  return 1.0 - binary_entropy(e_x) - binary_entropy(e_z);
}

namespace {

struct Totals {
  double count = 0.0;
  double time = 0.0;
  double sum_x = 0.0;
  double sum_z = 0.0;
};

struct Estimate {
  double r, ex, ez, key;
};

Estimate estimate(const Totals& t) {
  Estimate e{t.count / t.time, t.sum_x / t.count, t.sum_z / t.count, 0.0};
  e.ex = std::clamp(e.ex, 0.0, 1.0);
  e.ez = std::clamp(e.ez, 0.0, 1.0);
  e.key = std::max(0.0, e.r * secret_fraction(e.ex, e.ez));
  return e;
}

}  // namespace

RateResult key_rate(std::span<const SampleRecord> records, double total_time_s,
                    std::size_t blocks) {
  if (records.empty()) throw InvalidArgument("key rate needs at least one record");
  if (!(total_time_s > 0.0)) throw InvalidArgument("key rate needs a positive total time");

  const std::size_t n = records.size();
  std::vector<ErrorRates> err(n);
  Totals all;
  all.count = static_cast<double>(n);
  all.time = total_time_s;
  for (std::size_t i = 0; i < n; ++i) {
    err[i] = error_rates(records[i].state);
    all.sum_x += err[i].e_x;
    all.sum_z += err[i].e_z;
  }
  const Estimate full = estimate(all);

  RateResult out;
  out.raw_rate = full.r;
  out.e_x = full.ex;
  out.e_z = full.ez;
  out.key_rate = full.key;
  out.samples = n;
  out.total_time_s = total_time_s;

  const std::size_t nb = std::min(blocks, n);
  if (nb < 2) return out;
  // Block b covers records [lo, hi) and the time since the previous block ended.
  std::vector<Estimate> loo(nb);
  double prev_end = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * n / nb, hi = (b + 1) * n / nb;
    const double end = b + 1 == nb ? total_time_s : records[hi - 1].time;
    Totals rest = all;
    rest.count -= static_cast<double>(hi - lo);
    rest.time -= end - prev_end;
    for (std::size_t i = lo; i < hi; ++i) {
      rest.sum_x -= err[i].e_x;
      rest.sum_z -= err[i].e_z;
    }
    prev_end = end;
    if (!(rest.time > 0.0)) rest.time = std::numeric_limits<double>::min();
    loo[b] = estimate(rest);
  }
  auto jackknife = [&](auto field) {
    double mean = 0.0;
    for (const Estimate& e : loo) mean += field(e);
    mean /= static_cast<double>(nb);
    double ss = 0.0;
    for (const Estimate& e : loo) ss += (field(e) - mean) * (field(e) - mean);
    return std::sqrt(ss * static_cast<double>(nb - 1) / static_cast<double>(nb));
  };
  out.raw_rate_se = jackknife([](const Estimate& e) { return e.r; });
  out.e_x_se = jackknife([](const Estimate& e) { return e.ex; });
  out.e_z_se = jackknife([](const Estimate& e) { return e.ez; });
  out.key_rate_se = jackknife([](const Estimate& e) { return e.key; });
  return out;
}

RateResult simulate_point(const PhysicalSetup& setup, const ProtocolConfig& proto,
                          const RunOptions& opts) {
  if (proto.scenario == Scenario::OneSatBaseline) {
    RateResult r;
    r.raw_rate = run_one_sat_baseline(setup, proto);
    r.key_rate = r.raw_rate;
    return r;
  }
  const RunOutput out = run_chain(make_chain(setup, proto), opts);
  if (out.records.empty()) {
    RateResult none;
    none.total_time_s = out.total_time_s;
    return none;
  }
  return key_rate(out.records, out.total_time_s);
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

std::vector<double> symmetric_phase_grid(double step_s, std::size_t points_per_side) {
  if (!(step_s > 0.0)) throw InvalidArgument("phase step must be > 0");
  std::vector<double> grid;
  const auto k = static_cast<std::ptrdiff_t>(points_per_side);
  for (std::ptrdiff_t i = -k; i <= k; ++i) grid.push_back(static_cast<double>(i) * step_s);
  return grid;
}

std::vector<OrbitPoint> orbit_sweep(const PhysicalSetup& setup, const ProtocolConfig& proto,
                                    std::span<const double> phases_s, const RunOptions& opts,
                                    unsigned workers) {
  const std::size_t n = phases_s.size();
  if (n < 2) throw InvalidArgument("orbit sweep needs at least two phases");
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(phases_s[i] > phases_s[i - 1]))
      throw InvalidArgument("orbit phases must be strictly increasing");
    const double mirror = phases_s[n - 1 - i];
    if (std::abs(phases_s[i] + mirror) > 1e-9 * std::max(1.0, std::abs(mirror)))
      throw InvalidArgument("orbit phase grid must be symmetric about 0");
  }
  std::vector<OrbitPoint> points(n);
  parallel_for(n, workers, [&](std::size_t i) {
    PhysicalSetup s = setup;
    s.layout.orbit_phase_s = phases_s[i];
    RunOptions o = opts;
    o.seed = derive_seed(opts.seed, i);
    points[i].phase_s = phases_s[i];
    try {
      points[i].rate = simulate_point(s, proto, o);
    } catch (const VisibilityError&) {
      points[i].visible = false;
      points[i].rate = {};
    }
  });
  return points;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("trapezoid needs matching x and y");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

OrbitSweepResult effective_rate(std::vector<OrbitPoint> points, double orbital_period_s) {
  if (points.size() < 2) throw InvalidArgument("effective rate needs at least two phases");
  if (!(orbital_period_s > 0.0)) throw InvalidArgument("orbital period must be > 0");
  std::sort(points.begin(), points.end(),
            [](const OrbitPoint& a, const OrbitPoint& b) { return a.phase_s < b.phase_s; });

  std::vector<double> taus;
  for (const OrbitPoint& p : points)
    if (p.phase_s >= 0.0) taus.push_back(p.phase_s);
  if (taus.empty()) throw InvalidArgument("orbit grid has no phase >= 0");

  OrbitSweepResult best;
  best.orbital_period_s = orbital_period_s;
  best.tau_s = taus.front();
  for (double tau : taus) {
    std::vector<double> t, r, rx, rz;
    for (const OrbitPoint& p : points) {
      if (std::abs(p.phase_s) > tau * (1.0 + 1e-12)) continue;
      t.push_back(p.phase_s);
      r.push_back(p.rate.raw_rate);
      rx.push_back(p.rate.raw_rate * p.rate.e_x);
      rz.push_back(p.rate.raw_rate * p.rate.e_z);
    }
    const double raw = trapezoid(t, r);
    if (!(raw > 0.0)) continue;
    const double ex = std::clamp(trapezoid(t, rx) / raw, 0.0, 1.0);
    const double ez = std::clamp(trapezoid(t, rz) / raw, 0.0, 1.0);
    const double key = std::max(0.0, raw * secret_fraction(ex, ez));
    if (key > best.key_bits_per_pass || best.raw_bits_per_pass == 0.0) {
      best.tau_s = tau;
      best.raw_bits_per_pass = raw;
      best.e_x = ex;
      best.e_z = ez;
      best.key_bits_per_pass = key;
    }
  }
  best.effective_key_rate = best.key_bits_per_pass / orbital_period_s;
  best.points = std::move(points);
  return best;
}

}  // namespace satqr
