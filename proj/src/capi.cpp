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

#include "satqr/satqr.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "satqr/analysis.hpp"
#include "satqr/config.hpp"
#include "satqr/emit.hpp"
#include "satqr/errors.hpp"
#include "satqr/geometry.hpp"
#include "satqr/sweep.hpp"

struct satqr_config {
  satqr::RunConfig cfg;
};

struct satqr_result {
  satqr::RunConfig cfg;
  std::vector<satqr::ResultRow> rows;
  std::vector<std::string> kinds;
};

namespace {

thread_local std::string g_last_error;

satqr_status status_of(satqr::ErrorCategory c) {
  using satqr::ErrorCategory;
  switch (c) {
    case ErrorCategory::InvalidArgument: return SATQR_ERR_INVALID_ARGUMENT;
    case ErrorCategory::Domain: return SATQR_ERR_DOMAIN;
    case ErrorCategory::Visibility: return SATQR_ERR_VISIBILITY;
    case ErrorCategory::Quadrature: return SATQR_ERR_QUADRATURE;
    case ErrorCategory::Config: return SATQR_ERR_CONFIG;
    case ErrorCategory::Io: return SATQR_ERR_IO;
    case ErrorCategory::Simulation: return SATQR_ERR_SIMULATION;
  }
  return SATQR_ERR_INTERNAL;
}

satqr_status fail(satqr_status s, const std::string& what) {
  g_last_error = what;
  return s;
}

template <typename F>
satqr_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SATQR_OK;
  } catch (const satqr::Error& e) {
    return fail(status_of(e.category()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SATQR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SATQR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SATQR_ERR_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw satqr::InvalidArgument(std::string(what) + " must not be NULL");
}

double or_nan(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

extern "C" {

const char* satqr_version(void) { return satqr::kVersion; }

const char* satqr_status_name(satqr_status status) {
  switch (status) {
    case SATQR_OK: return "ok";
    case SATQR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SATQR_ERR_DOMAIN: return "domain";
    case SATQR_ERR_VISIBILITY: return "visibility";
    case SATQR_ERR_QUADRATURE: return "quadrature";
    case SATQR_ERR_CONFIG: return "config";
    case SATQR_ERR_IO: return "io";
    case SATQR_ERR_SIMULATION: return "simulation";
    case SATQR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* satqr_last_error(void) { return g_last_error.c_str(); }

void satqr_string_free(char* s) { std::free(s); }

satqr_status satqr_config_load(const char* path, satqr_config** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new satqr_config{satqr::load_config(path)};
  });
}

satqr_status satqr_config_from_string(const char* text, const char* format, satqr_config** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    const std::string f = format ? format : "json";
    if (f == "json") {
      *out = new satqr_config{satqr::parse_config_json(text)};
    } else if (f == "yaml") {
      *out = new satqr_config{satqr::parse_config_yaml(text)};
    } else {
      throw satqr::InvalidArgument("config format must be json or yaml");
    }
  });
}

void satqr_config_free(satqr_config* cfg) { delete cfg; }

satqr_status satqr_config_set_seed(satqr_config* cfg, uint64_t seed) {
  return guard([&] {
    need(cfg, "config");
    cfg->cfg.seed = seed;
  });
}

satqr_status satqr_config_set_workers(satqr_config* cfg, unsigned workers) {
  return guard([&] {
    need(cfg, "config");
    if (workers < 1) throw satqr::InvalidArgument("workers must be >= 1");
    cfg->cfg.workers = workers;
  });
}

satqr_status satqr_config_override_samples(satqr_config* cfg, uint64_t samples) {
  return guard([&] {
    need(cfg, "config");
    satqr::override_samples(cfg->cfg, samples);
  });
}

satqr_status satqr_config_set_output(satqr_config* cfg, const char* dir, const char* format) {
  return guard([&] {
    need(cfg, "config");
    satqr::OutputSettings o = cfg->cfg.output;
    if (dir) o.dir = dir;
    if (format) o.format = format;
    if (o.format != "csv" && o.format != "json" && o.format != "both")
      throw satqr::InvalidArgument("format must be csv, json or both");
    cfg->cfg.output = o;
  });
}

size_t satqr_config_warning_count(const satqr_config* cfg) {
  return cfg ? cfg->cfg.warnings.size() : 0;
}

const char* satqr_config_warning(const satqr_config* cfg, size_t index) {
  if (!cfg || index >= cfg->cfg.warnings.size()) return nullptr;
  return cfg->cfg.warnings[index].c_str();
}

satqr_status satqr_config_to_json(const satqr_config* cfg, char** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = dup(satqr::config_to_json(cfg->cfg));
  });
}

const char* satqr_config_output_dir(const satqr_config* cfg) {
  return cfg ? cfg->cfg.output.dir.c_str() : nullptr;
}

const char* satqr_config_output_format(const satqr_config* cfg) {
  return cfg ? cfg->cfg.output.format.c_str() : nullptr;
}

satqr_status satqr_run(const satqr_config* cfg, satqr_mode mode, satqr_result** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    auto res = std::make_unique<satqr_result>();
    res->cfg = cfg->cfg;
    switch (mode) {
      case SATQR_MODE_RUN: res->rows = satqr::run_points(cfg->cfg, false); break;
      case SATQR_MODE_SWEEP: res->rows = satqr::run_points(cfg->cfg, true); break;
      case SATQR_MODE_ORBIT: res->rows = satqr::run_orbits(cfg->cfg); break;
      default: throw satqr::InvalidArgument("unknown run mode");
    }
    for (const satqr::ResultRow& r : res->rows) res->kinds.emplace_back(satqr::to_string(r.kind));
    *out = res.release();
  });
}

void satqr_result_free(satqr_result* res) { delete res; }

size_t satqr_result_rows(const satqr_result* res) { return res ? res->rows.size() : 0; }

size_t satqr_result_failed_rows(const satqr_result* res) {
  if (!res) return 0;
  size_t n = 0;
  for (const satqr::ResultRow& r : res->rows) n += r.status != "ok";
  return n;
}

satqr_status satqr_result_get(const satqr_result* res, size_t index, satqr_row* out) {
  return guard([&] {
    need(res, "result");
    need(out, "out");
    if (index >= res->rows.size()) throw satqr::InvalidArgument("row index out of range");
    const satqr::ResultRow& r = res->rows[index];
    satqr_row row{};
    row.row_kind = res->kinds[index].c_str();
    row.scenario = r.scenario.c_str();
    row.status = r.status.c_str();
    row.message = r.message.c_str();
    row.seed = r.seed;
    row.phase_s = or_nan(r.phase_s);
    row.ground_distance_km = r.setup.layout.ground_distance_km;
    row.orbital_height_km = r.setup.layout.orbital_height_km;
    row.sat_a_offset = r.setup.layout.sat_a_offset;
    row.divergence_rad = r.setup.optics.divergence_rad;
    row.dephasing_time_s = r.protocol.dephasing_time_s;
    row.cutoff_s = r.protocol.cutoff_s.value_or(std::numeric_limits<double>::infinity());
    row.memory_modes = r.protocol.memory_modes;
    row.samples = r.rate.samples;
    row.total_time_s = r.rate.total_time_s;
    row.raw_rate = r.rate.raw_rate;
    row.raw_rate_se = r.rate.raw_rate_se;
    row.e_x = r.rate.e_x;
    row.e_x_se = r.rate.e_x_se;
    row.e_z = r.rate.e_z;
    row.e_z_se = r.rate.e_z_se;
    row.key_rate = r.rate.key_rate;
    row.key_rate_se = r.rate.key_rate_se;
    row.events = r.events;
    row.discarded = r.discarded;
    row.loss_a_sc_db = or_nan(r.loss_a_sc_db);
    row.tau_s = or_nan(r.tau_s);
    row.raw_bits_per_pass = or_nan(r.raw_bits_per_pass);
    row.key_bits_per_pass = or_nan(r.key_bits_per_pass);
    row.effective_key_rate = or_nan(r.effective_key_rate);
    *out = row;
  });
}

satqr_status satqr_result_to_csv(const satqr_result* res, char** out) {
  return guard([&] {
    need(res, "result");
    need(out, "out");
    *out = dup(satqr::rows_to_csv(res->rows));
  });
}

satqr_status satqr_result_to_json(const satqr_result* res, char** out) {
  return guard([&] {
    need(res, "result");
    need(out, "out");
    *out = dup(satqr::rows_to_json(res->rows));
  });
}

satqr_status satqr_result_write(const satqr_result* res, const char* dir, const char* format) {
  return guard([&] {
    need(res, "result");
    satqr::write_outputs(res->cfg, res->rows, dir ? dir : res->cfg.output.dir,
                         format ? format : res->cfg.output.format);
  });
}

satqr_status satqr_report(const char* const* dump_paths, size_t count, char** out_csv) {
  return guard([&] {
    need(out_csv, "out");
    if (count > 0) need(dump_paths, "dump_paths");
    std::vector<satqr::ReportEntry> entries;
    for (size_t i = 0; i < count; ++i) {
      need(dump_paths[i], "dump path");
      entries.push_back(satqr::report_from_dump(dump_paths[i], satqr::read_file(dump_paths[i])));
    }
    *out_csv = dup(satqr::report_to_csv(entries));
  });
}

satqr_status satqr_orbital_period(double height_km, double* out_s) {
  return guard([&] {
    need(out_s, "out");
    *out_s = satqr::orbital_period(height_km);
  });
}

satqr_status satqr_max_visible_distance(double height_km, double* out_km) {
  return guard([&] {
    need(out_km, "out");
    *out_km = satqr::max_visible_ground_distance(height_km);
  });
}

satqr_status satqr_binary_entropy(double p, double* out) {
  return guard([&] {
    need(out, "out");
    *out = satqr::binary_entropy(p);
  });
}

}  // extern "C"
