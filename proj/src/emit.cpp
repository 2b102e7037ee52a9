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

#include "satqr/emit.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "satqr/errors.hpp"

namespace satqr {

namespace {

using Cell = std::variant<std::monostate, std::string, double, std::uint64_t>;

constexpr Column kResultColumns[] = {
    {"row_kind", "", "point, orbit_phase or orbit_summary"},
    {"scenario", "", "scenario1, scenario2, one_sat_memory, one_sat_baseline or loss"},
    {"status", "", "ok, not_visible or error"},
    {"message", "", "error text for non-ok rows"},
    {"seed", "", "seed of this row's random streams"},
    {"target_samples", "", "requested delivered pairs"},
    {"phase_s", "s", "orbit phase, 0 when S_C is above the ground-track midpoint"},
    {"ground_distance_km", "km", "ground distance between A and B"},
    {"orbital_height_km", "km", "orbital height of all satellites"},
    {"sat_a_offset", "", "S_A position as a fraction of the ground distance from A"},
    {"sat_c_offset", "", "S_C position as a fraction of the ground distance from A"},
    {"sat_b_offset", "", "S_B position as a fraction of the ground distance from A"},
    {"divergence_rad", "rad", "beam divergence half-angle"},
    {"pointing_error_rad", "rad", "pointing jitter standard deviation per axis"},
    {"receiver_radius_m", "m", "receiver aperture radius"},
    {"weather_factor", "", "relative sky brightness"},
    {"clock_rate_hz", "Hz", "source clock rate"},
    {"memory_modes", "", "modes per memory bank"},
    {"dephasing_time_s", "s", "memory dephasing time"},
    {"cutoff_s", "s", "memory cutoff time, or none"},
    {"samples", "", "delivered pairs"},
    {"total_time_s", "s", "simulated time until the last delivery"},
    {"raw_rate", "1/s", "delivered pairs per second"},
    {"raw_rate_se", "1/s", "standard error of raw_rate"},
    {"e_x", "", "mean X-basis error rate (window-weighted on summary rows)"},
    {"e_x_se", "", "standard error of e_x"},
    {"e_z", "", "mean Z-basis error rate (window-weighted on summary rows)"},
    {"e_z_se", "", "standard error of e_z"},
    {"key_rate", "1/s", "asymptotic secret key rate"},
    {"key_rate_se", "1/s", "standard error of key_rate"},
    {"events", "", "resolved simulation events"},
    {"swaps", "", "entanglement swaps performed"},
    {"discarded", "", "pairs discarded by the cutoff"},
    {"loss_a_sc_db", "dB", "loss from A to S_C with the source on S_A"},
    {"beam_loss_db", "dB", "diffraction loss of one link as long as ground_distance_km"},
    {"noise_prob", "", "noise click probability per detection window"},
    {"background_per_window", "", "mean background photons per detection window"},
    {"tau_s", "s", "half width of the optimal orbit window"},
    {"orbital_period_s", "s", "orbital period"},
    {"raw_bits_per_pass", "", "raw bits collected in the window"},
    {"key_bits_per_pass", "", "key bits from the window"},
    {"effective_key_rate", "1/s", "key bits per pass divided by the orbital period"},
};

constexpr Column kReportColumns[] = {
    {"source", "", "record dump path"},
    {"samples", "", "records in the dump"},
    {"total_time_s", "s", "time of the last record"},
    {"raw_rate", "1/s", "records per second"},
    {"raw_rate_se", "1/s", "standard error of raw_rate"},
    {"e_x", "", "mean X-basis error rate"},
    {"e_x_se", "", "standard error of e_x"},
    {"e_z", "", "mean Z-basis error rate"},
    {"e_z_se", "", "standard error of e_z"},
    {"key_rate", "1/s", "asymptotic secret key rate"},
    {"key_rate_se", "1/s", "standard error of key_rate"},
};

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

std::vector<Cell> rate_cells(const RateResult& r) {
  return {r.samples, r.total_time_s, r.raw_rate, r.raw_rate_se, r.e_x, r.e_x_se,
          r.e_z,     r.e_z_se,       r.key_rate, r.key_rate_se};
}

std::vector<Cell> row_cells(const ResultRow& row) {
  const GroundTrackLayout& l = row.setup.layout;
  const OpticalParams& o = row.setup.optics;
  std::vector<Cell> c = {
      std::string(to_string(row.kind)),
      row.scenario,
      row.status,
      row.message,
      row.seed,
      row.target_samples,
      opt(row.phase_s),
      l.ground_distance_km,
      l.orbital_height_km,
      l.sat_a_offset,
      l.sat_c_offset,
      l.sat_b_offset,
      o.divergence_rad,
      o.pointing_error_rad,
      o.receiver_radius_m,
      row.setup.background.weather_factor,
      row.protocol.clock_rate_hz,
      static_cast<std::uint64_t>(row.protocol.memory_modes),
      row.protocol.dephasing_time_s,
      row.protocol.cutoff_s ? Cell(*row.protocol.cutoff_s) : Cell(std::string("none")),
  };
  for (Cell& x : rate_cells(row.rate)) c.push_back(std::move(x));
  for (Cell x : {Cell(row.events), Cell(row.swaps), Cell(row.discarded), opt(row.loss_a_sc_db),
                 opt(row.beam_loss_db), opt(row.noise_prob), opt(row.background_per_window),
                 opt(row.tau_s), opt(row.orbital_period_s), opt(row.raw_bits_per_pass),
                 opt(row.key_bits_per_pass), opt(row.effective_key_rate)})
    c.push_back(std::move(x));
  return c;
}

std::string csv_text(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  if (const std::uint64_t* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

nlohmann::ordered_json json_value(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::stod(format_double(*d));
  }
  if (const std::uint64_t* u = std::get_if<std::uint64_t>(&c)) return *u;
  return std::get<std::string>(c);
}

template <typename Rows, typename ToCells>
std::string table_csv(std::span<const Column> cols, const Rows& rows, ToCells to_cells) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i].name;
  }
  out += '\n';
  for (const auto& row : rows) {
    const std::vector<Cell> cells = to_cells(row);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_text(cells[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<Cell> report_cells(const ReportEntry& e) {
  std::vector<Cell> c{e.source};
  for (Cell& x : rate_cells(e.rate)) c.push_back(std::move(x));
  return c;
}

std::string format_round_trip(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::span<const Column> result_columns() { return kResultColumns; }
std::span<const Column> report_columns() { return kReportColumns; }

std::string format_double(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 9);
  return std::string(buf, res.ptr);
}

std::string rows_to_csv(std::span<const ResultRow> rows) {
  return table_csv(result_columns(), rows, row_cells);
}

std::string rows_to_json(std::span<const ResultRow> rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ResultRow& row : rows) {
    const std::vector<Cell> cells = row_cells(row);
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) obj[kResultColumns[i].name] = json_value(cells[i]);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw IoError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string manifest_json(const RunConfig& cfg, std::span<const ResultRow> rows,
                          const std::vector<std::string>& outputs) {
  const std::string canonical = config_to_json(cfg);
  nlohmann::ordered_json m;
  m["version"] = kVersion;
  m["seed"] = cfg.seed;
  m["config_sha256"] = sha256_hex(canonical);
  m["config"] = nlohmann::ordered_json::parse(canonical);
  m["rows"] = rows.size();
  m["outputs"] = outputs;
  double total = 0.0;
  nlohmann::ordered_json walls = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows) {
    walls.push_back(r.wall_time_s);
    total += r.wall_time_s;
  }
  m["wall_time_s"] = total;
  m["row_wall_time_s"] = walls;
  m["warnings"] = cfg.warnings;
  return m.dump(2) + "\n";
}

std::string records_to_csv(std::span<const SampleRecord> records) {
  std::string out = "time,p1,p2,p3,p4\n";
  for (const SampleRecord& r : records) {
    out += format_round_trip(r.time);
    for (double w : r.state.weights()) {
      out += ',';
      out += format_round_trip(w);
    }
    out += '\n';
  }
  return out;
}

std::vector<SampleRecord> parse_records_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("record dump is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "time,p1,p2,p3,p4") throw IoError("record dump has an unexpected header");
  std::vector<SampleRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[5];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 5; ++i) {
      const auto res = std::from_chars(p, end, v[i]);
      if (res.ec != std::errc() || (i < 4 && (res.ptr == end || *res.ptr != ',')) ||
          (i == 4 && res.ptr != end))
        throw IoError("record dump line " + std::to_string(lineno) + " is malformed");
      p = res.ptr + 1;
    }
    try {
      out.push_back({v[0], BellDiagonalState({v[1], v[2], v[3], v[4]})});
    } catch (const Error& e) {
      throw IoError("record dump line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

ReportEntry report_from_dump(const std::string& source, const std::string& text) {
  const std::vector<SampleRecord> records = parse_records_csv(text);
  if (records.empty()) throw IoError("record dump '" + source + "' has no records");
  return {source, key_rate(records, records.back().time)};
}

std::string report_to_csv(std::span<const ReportEntry> entries) {
  return table_csv(report_columns(), entries, report_cells);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << data;
  if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

std::vector<std::string> write_outputs(const RunConfig& cfg, std::span<const ResultRow> rows,
                                       const std::string& dir, const std::string& format) {
  if (format != "csv" && format != "json" && format != "both")
    throw InvalidArgument("format must be csv, json or both");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
  std::vector<std::string> written;
  if (format != "json") {
    written.push_back((fs::path(dir) / "results.csv").string());
    write_file(written.back(), rows_to_csv(rows));
  }
  if (format != "csv") {
    written.push_back((fs::path(dir) / "results.json").string());
    write_file(written.back(), rows_to_json(rows));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].records.empty()) continue;
    const fs::path sub = fs::path(dir) / "records";
    fs::create_directories(sub, ec);
    if (ec) throw IoError("cannot create '" + sub.string() + "': " + ec.message());
    written.push_back((sub / ("row_" + std::to_string(i) + ".csv")).string());
    write_file(written.back(), records_to_csv(rows[i].records));
  }
  const std::string manifest = (fs::path(dir) / "manifest.json").string();
  write_file(manifest, manifest_json(cfg, rows, written));
  written.push_back(manifest);
  return written;
}

}  // namespace satqr
