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

// satqr command line: validate, run, sweep, orbit and report verbs on top of
// the C interface.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satqr/satqr.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kConfig = 2, kIo = 3, kSimulation = 4 };

struct Options {
  std::string config;
  std::uint64_t seed = 0;
  bool has_seed = false;
  unsigned workers = 0;
  std::string out;
  std::string format;
  std::uint64_t samples = 0;
  std::vector<std::string> dumps;
};

int exit_code(satqr_status s) {
  switch (s) {
    case SATQR_OK: return kOk;
    case SATQR_ERR_CONFIG:
    case SATQR_ERR_INVALID_ARGUMENT: return kConfig;
    case SATQR_ERR_IO: return kIo;
    default: return kSimulation;
  }
}

int report_failure(satqr_status s) {
  std::fprintf(stderr, "satqr: %s error: %s\n", satqr_status_name(s), satqr_last_error());
  return exit_code(s);
}

class Config {
 public:
  ~Config() { satqr_config_free(cfg_); }
  satqr_config* get() const { return cfg_; }
  satqr_config** out() { return &cfg_; }

 private:
  satqr_config* cfg_ = nullptr;
};

satqr_status load(const Options& o, Config& cfg) {
  satqr_status s = o.config.empty() ? satqr_config_from_string("", "json", cfg.out())
                                    : satqr_config_load(o.config.c_str(), cfg.out());
  if (s != SATQR_OK) return s;
  if (o.has_seed && (s = satqr_config_set_seed(cfg.get(), o.seed)) != SATQR_OK) return s;
  if (o.workers && (s = satqr_config_set_workers(cfg.get(), o.workers)) != SATQR_OK) return s;
  if (o.samples && (s = satqr_config_override_samples(cfg.get(), o.samples)) != SATQR_OK) return s;
  if (!o.out.empty() || !o.format.empty()) {
    s = satqr_config_set_output(cfg.get(), o.out.empty() ? nullptr : o.out.c_str(),
                                o.format.empty() ? nullptr : o.format.c_str());
    if (s != SATQR_OK) return s;
  }
  for (size_t i = 0; i < satqr_config_warning_count(cfg.get()); ++i)
    std::fprintf(stderr, "satqr: warning: %s\n", satqr_config_warning(cfg.get(), i));
  return SATQR_OK;
}

int cmd_validate(const Options& o) {
  Config cfg;
  if (satqr_status s = load(o, cfg); s != SATQR_OK) return report_failure(s);
  char* json = nullptr;
  if (satqr_status s = satqr_config_to_json(cfg.get(), &json); s != SATQR_OK)
    return report_failure(s);
  std::fputs(json, stdout);
  satqr_string_free(json);
  return kOk;
}

int cmd_run(const Options& o, satqr_mode mode) {
  Config cfg;
  if (satqr_status s = load(o, cfg); s != SATQR_OK) return report_failure(s);
  satqr_result* res = nullptr;
  if (satqr_status s = satqr_run(cfg.get(), mode, &res); s != SATQR_OK) return report_failure(s);
  const satqr_status ws = satqr_result_write(res, nullptr, nullptr);
  if (ws != SATQR_OK) {
    const int rc = report_failure(ws);
    satqr_result_free(res);
    return rc;
  }
  const size_t rows = satqr_result_rows(res);
  const size_t failed = satqr_result_failed_rows(res);
  for (size_t i = 0; i < rows; ++i) {
    satqr_row row;
    if (satqr_result_get(res, i, &row) != SATQR_OK) continue;
    if (std::string(row.status) != "ok")
      std::fprintf(stderr, "satqr: row %zu (%s): %s: %s\n", i, row.scenario, row.status,
                   row.message);
  }
  satqr_result_free(res);
  std::printf("%zu rows (%zu not ok) written to %s\n", rows, failed,
              satqr_config_output_dir(cfg.get()));
  return kOk;
}

int cmd_report(const Options& o) {
  std::vector<const char*> paths;
  for (const std::string& p : o.dumps) paths.push_back(p.c_str());
  char* csv = nullptr;
  if (satqr_status s = satqr_report(paths.data(), paths.size(), &csv); s != SATQR_OK)
    return report_failure(s);
  int rc = kOk;
  if (o.out.empty()) {
    std::fputs(csv, stdout);
  } else if (FILE* f = std::fopen(o.out.c_str(), "wb")) {
    std::fputs(csv, f);
    if (std::fclose(f) != 0) rc = kIo;
  } else {
    rc = kIo;
  }
  if (rc != kOk) std::fprintf(stderr, "satqr: io error: cannot write '%s'\n", o.out.c_str());
  satqr_string_free(csv);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satellite repeater-chain QKD simulator", "satqr"};
  app.set_version_flag("--version", satqr_version());
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "configuration file (.json, .yaml or .yml)");
    cmd->add_option("--seed", o.seed, "master seed")->each([&](const std::string&) {
      o.has_seed = true;
    });
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--format", o.format, "csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--samples-override", o.samples, "delivered pairs per point, all scenarios")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* validate = app.add_subcommand("validate", "check a configuration and print it in full");
  CLI::App* run = app.add_subcommand("run", "simulate the base configuration");
  CLI::App* sweep = app.add_subcommand("sweep", "simulate every point of the sweep axes");
  CLI::App* orbit = app.add_subcommand("orbit", "orbit sweep and effective rates per sweep point");
  CLI::App* report = app.add_subcommand("report", "key rates from record dumps");
  for (CLI::App* c : {validate, run, sweep, orbit}) add_common(c);
  report->add_option("dumps", o.dumps, "record dump files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", o.out, "write the report CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*validate) return cmd_validate(o);
  if (*run) return cmd_run(o, SATQR_MODE_RUN);
  if (*sweep) return cmd_run(o, SATQR_MODE_SWEEP);
  if (*orbit) return cmd_run(o, SATQR_MODE_ORBIT);
  if (*report) return cmd_report(o);
  return kUsage;
}
