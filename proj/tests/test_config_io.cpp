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

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "satqr/config.hpp"
#include "satqr/emit.hpp"
#include "satqr/errors.hpp"
#include "satqr/sweep.hpp"

using namespace satqr;
using json = nlohmann::ordered_json;

namespace {

const std::string kSource = SATQR_SOURCE_DIR;

std::string config_error_key(const std::string& text, bool yaml = false) {
  try {
    yaml ? parse_config_yaml(text) : parse_config_json(text);
  } catch (const ConfigError& e) {
    return e.key_path();
  }
  return "<no error>";
}

bool has_warning(const RunConfig& c, const std::string& key) {
  return std::any_of(c.warnings.begin(), c.warnings.end(),
                     [&](const std::string& w) { return w.find(key) != std::string::npos; });
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(split_csv_line(line));
  return rows;
}

RunConfig small_config() {
  RunConfig c = parse_config_json(R"({
    "seed": 5,
    "scenarios": ["scenario1", "one_sat_baseline"],
    "protocol": {"memory_modes": 20, "cutoff_s": 0.01, "dephasing_time_s": 0.1},
    "optics": {"receiver_radius_m": 0.5, "pointing_error_rad": 1e-6},
    "samples": {"scenario1": 300},
    "sweep": {"ground_distance_km": [1500, 2500, 3500]}
  })");
  return c;
}

}  // namespace

TEST_CASE("empty config gives the defaults and flags unconfirmed values") {
  const RunConfig c = parse_config_json("{}");
  const RunConfig d;
  CHECK(config_to_json(c).size() > 0);
  CHECK(c.seed == d.seed);
  CHECK(c.protocol.memory_modes == d.protocol.memory_modes);
  CHECK(c.setup.optics.divergence_rad == d.setup.optics.divergence_rad);
  CHECK(c.setup.layout.sat_b_offset == doctest::Approx(1.0 - c.setup.layout.sat_a_offset));
  CHECK(c.scenarios == std::vector<std::string>{"scenario1"});
  for (const char* key : {"receiver_radius_m", "pointing_error_rad", "memory_modes", "cutoff_s",
                          "dephasing_time_s"})
    CHECK_MESSAGE(has_warning(c, key), key);
}

TEST_CASE("explicit or swept values silence the default warnings") {
  const RunConfig c = parse_config_json(R"({
    "optics": {"receiver_radius_m": 0.5, "pointing_error_rad": 0},
    "protocol": {"memory_modes": 10, "dephasing_time_s": 1},
    "sweep": {"cutoff_s": [0.01, "none"]}
  })");
  CHECK(c.warnings.empty());
}

TEST_CASE("out-of-range values name their key") {
  CHECK(config_error_key(R"({"optics": {"divergence_rad": -1}})") == "optics.divergence_rad");
  CHECK(config_error_key(R"({"optics": {"detector_efficiency": 1.5}})") ==
        "optics.detector_efficiency");
  CHECK(config_error_key(R"({"protocol": {"memory_modes": 0}})") == "protocol.memory_modes");
  CHECK(config_error_key(R"({"layout": {"ground_distance_km": 0}})") ==
        "layout.ground_distance_km");
  CHECK(config_error_key(R"({"seed": "abc"})") == "seed");
  CHECK(config_error_key(R"({"scenarios": ["scenario9"]})").rfind("scenarios", 0) == 0);
  CHECK(config_error_key(R"({"scenarios": []})") == "scenarios");
  CHECK(config_error_key(R"({"output": {"format": "xml"}})").rfind("output", 0) == 0);
  CHECK(config_error_key("optics:\n  divergence_rad: -1\n", true) == "optics.divergence_rad");
}

TEST_CASE("unknown keys are rejected") {
  CHECK(config_error_key(R"({"optics": {"divergance_rad": 1e-5}})") == "optics.divergance_rad");
  CHECK(config_error_key(R"({"colour": 1})") == "colour");
  CHECK(config_error_key(R"({"sweep": {"height": [400]}})") == "sweep.height");
}

TEST_CASE("malformed documents raise config errors") {
  CHECK_THROWS_AS(parse_config_json("{"), ConfigError);
  CHECK_THROWS_AS(parse_config_json("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config_yaml("a: [1, 2"), ConfigError);
}

TEST_CASE("cutoff accepts a number, none or null") {
  CHECK(parse_config_json(R"({"protocol": {"cutoff_s": 0.005}})").protocol.cutoff_s == 0.005);
  CHECK_FALSE(parse_config_json(R"({"protocol": {"cutoff_s": "none"}})").protocol.cutoff_s);
  CHECK_FALSE(parse_config_json(R"({"protocol": {"cutoff_s": null}})").protocol.cutoff_s);
  CHECK_FALSE(parse_config_yaml("protocol:\n  cutoff_s: none\n").protocol.cutoff_s);
  CHECK(config_error_key(R"({"protocol": {"cutoff_s": -1}})") == "protocol.cutoff_s");
}

TEST_CASE("simulated-time limits parse and echo") {
  const RunConfig d = parse_config_json("{}");
  CHECK_FALSE(d.samples.max_sim_time_s);
  CHECK(d.orbit.max_sim_time_s == 300.0);
  const RunConfig c = parse_config_json(
      R"({"samples": {"max_sim_time_s": 20}, "orbit": {"max_sim_time_s": 60}})");
  CHECK(c.samples.max_sim_time_s == 20.0);
  CHECK(c.orbit.max_sim_time_s == 60.0);
  const auto echo = json::parse(config_to_json(c));
  CHECK(echo["samples"]["max_sim_time_s"] == 20.0);
  CHECK(echo["orbit"]["max_sim_time_s"] == 60.0);
  CHECK_FALSE(parse_config_json(R"({"samples": {"max_sim_time_s": "none"}})").samples.max_sim_time_s);
  CHECK(config_error_key(R"({"orbit": {"max_sim_time_s": 0}})") == "orbit.max_sim_time_s");
  CHECK(config_error_key(R"({"samples": {"max_sim_time_s": -1}})") == "samples.max_sim_time_s");
}

TEST_CASE("a point cut short by the horizon reports the horizon as its time") {
  const RunConfig cfg = parse_config_json(R"({"seed": 9, "scenarios": ["scenario1"],
    "layout": {"ground_distance_km": 4000},
    "protocol": {"memory_modes": 5},
    "samples": {"scenario1": 100000, "max_sim_time_s": 0.5}})");
  const auto rows = run_points(cfg, false);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == "ok");
  CHECK(rows[0].rate.total_time_s == 0.5);
  CHECK(rows[0].rate.samples < 100000);
}

TEST_CASE("canonical config survives a round trip") {
  for (const auto& entry : std::filesystem::directory_iterator(kSource + "/configs")) {
    const std::string path = entry.path().string();
    CAPTURE(path);
    const RunConfig a = load_config(path);
    const std::string canon = config_to_json(a);
    const RunConfig b = parse_config_json(canon);
    CHECK(config_to_json(b) == canon);
    CHECK(b.warnings.empty());
  }
}

TEST_CASE("YAML and JSON describe the same run") {
  const RunConfig j = load_config(kSource + "/configs/placement_sweep.json");
  const RunConfig y = parse_config_yaml(R"(
seed: 2023
scenarios: [scenario1, scenario2, one_sat_baseline]
protocol: {memory_modes: 1000, cutoff_s: 0.01, dephasing_time_s: 0.1}
optics:
  receiver_radius_m: 0.5
  pointing_error_rad: 1.0e-6
sweep:
  ground_distance_km: [1000, 1500, 2000, 2500, 3000, 3500, 4000, 4400, 5000, 6000, 7000, 8000]
  sat_a_offset: [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]
output: {dir: results/placement, format: both}
)");
  CHECK(config_to_json(j) == config_to_json(y));
}

TEST_CASE("config files load by extension") {
  CHECK_NOTHROW(load_config(kSource + "/configs/cutoff_sweep.yaml"));
  CHECK_THROWS_AS(load_config(kSource + "/configs/missing.json"), IoError);
  CHECK_THROWS_AS(load_config(kSource + "/CMakeLists.txt"), ConfigError);
}

TEST_CASE("sample override touches every scenario") {
  RunConfig c = parse_config_json("{}");
  override_samples(c, 77);
  CHECK(c.samples.for_scenario(Scenario::Scenario1) == 77);
  CHECK(c.samples.for_scenario(Scenario::Scenario2) == 77);
  CHECK(c.samples.for_scenario(Scenario::OneSatMemory) == 77);
}

TEST_CASE("sweep expansion order, mirroring and stable seeds") {
  RunConfig c = parse_config_json(R"({
    "scenarios": ["scenario1", "scenario2"],
    "sweep": {"ground_distance_km": [1000, 2000, 3000], "sat_a_offset": [0.1, 0.3]}
  })");
  const auto pts = expand_points(c, true);
  REQUIRE(pts.size() == 12);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(pts[i].scenario == "scenario1");
    CHECK(pts[i + 6].scenario == "scenario2");
  }
  for (const SweepPoint& p : pts)
    CHECK(p.setup.layout.sat_b_offset == doctest::Approx(1.0 - p.setup.layout.sat_a_offset));
  CHECK(pts[0].setup.layout.ground_distance_km == 1000);
  CHECK(expand_points(c, false).size() == 2);

  RunConfig wider = c;
  wider.sweep.ground_distance_km = {500, 1000, 2000, 3000};
  const auto more = expand_points(wider, true);
  for (const SweepPoint& p : pts) {
    const auto same = std::find_if(more.begin(), more.end(), [&](const SweepPoint& q) {
      return q.scenario == p.scenario &&
             q.setup.layout.ground_distance_km == p.setup.layout.ground_distance_km &&
             q.setup.layout.sat_a_offset == p.setup.layout.sat_a_offset;
    });
    REQUIRE(same != more.end());
    CHECK(same->seed == p.seed);
  }
  std::vector<std::uint64_t> seeds;
  for (const SweepPoint& p : pts) seeds.push_back(p.seed);
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("empty result table is a header line") {
  const std::string csv = rows_to_csv({});
  std::string header;
  for (const Column& col : result_columns()) header += std::string(header.empty() ? "" : ",") + col.name;
  CHECK(csv == header + "\n");
  CHECK(json::parse(rows_to_json({})).empty());
}

TEST_CASE("number formatting") {
  CHECK(format_double(1.0) == "1.000000000e+00");
  CHECK(format_double(-2.5e-7) == "-2.500000000e-07");
  CHECK(std::stod(format_double(0.1234567890123)) == 0.1234567890);
}

TEST_CASE("sweep runs are deterministic and ordered") {
  RunConfig c = small_config();
  const auto rows = run_points(c, true);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].scenario == "scenario1");
    CHECK(rows[i + 3].scenario == "one_sat_baseline");
    CHECK(rows[i].setup.layout.ground_distance_km == c.sweep.ground_distance_km[i]);
    CHECK(rows[i].status == "ok");
    CHECK(rows[i].rate.samples == 300);
  }
  const std::string first = rows_to_csv(rows);
  CHECK(rows_to_csv(run_points(c, true)) == first);
  c.workers = 3;
  CHECK(rows_to_csv(run_points(c, true)) == first);
  c.seed = 6;
  CHECK(rows_to_csv(run_points(c, true)) != first);
}

TEST_CASE("CSV and JSON carry the same values") {
  RunConfig c = small_config();
  c.scenarios.push_back("loss");
  c.sweep.ground_distance_km.push_back(20000);  // beyond the horizon
  const auto rows = run_points(c, true);
  const auto table = parse_csv(rows_to_csv(rows));
  const json arr = json::parse(rows_to_json(rows));
  const auto cols = result_columns();
  REQUIRE(table.size() == rows.size() + 1);
  REQUIRE(arr.size() == rows.size());
  bool saw_invisible = false;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    REQUIRE(table[r + 1].size() == cols.size());
    const json& obj = arr[r];
    REQUIRE(obj.size() == cols.size());
    std::size_t i = 0;
    for (const auto& [key, value] : obj.items()) {
      CAPTURE(key);
      CHECK(key == std::string(cols[i].name));
      const std::string& cell = table[r + 1][i];
      if (value.is_null()) {
        CHECK(cell.empty());
      } else if (value.is_string()) {
        CHECK(cell == value.get<std::string>());
      } else if (value.is_number_unsigned()) {
        CHECK(cell == std::to_string(value.get<std::uint64_t>()));
      } else {
        CHECK(std::stod(cell) == value.get<double>());
      }
      ++i;
    }
    if (obj["status"] == "not_visible") saw_invisible = true;
  }
  CHECK(saw_invisible);
}

TEST_CASE("loss rows carry the link budget") {
  RunConfig c = parse_config_json(R"({"scenarios": ["loss"],
                                      "sweep": {"ground_distance_km": [1000, 3000]}})");
  const auto rows = run_points(c, true);
  REQUIRE(rows.size() == 2);
  for (const ResultRow& r : rows) {
    REQUIRE(r.loss_a_sc_db);
    REQUIRE(r.beam_loss_db);
    CHECK(*r.loss_a_sc_db > 0);
    CHECK(r.rate.samples == 0);
  }
  CHECK(*rows[1].beam_loss_db > *rows[0].beam_loss_db);
}

TEST_CASE("every column is documented in the schema") {
  const json schema = json::parse(read_file(kSource + "/schema/results.schema.json"));
  auto check_table = [&](const char* def, const char* order, std::span<const Column> cols) {
    const json& props = schema["$defs"][def]["properties"];
    const json& names = schema["x-column-order"][order];
    REQUIRE(props.size() == cols.size());
    REQUIRE(names.size() == cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      CAPTURE(cols[i].name);
      CHECK(names[i] == cols[i].name);
      REQUIRE(props.contains(cols[i].name));
      CHECK(props[cols[i].name]["unit"] == cols[i].unit);
      CHECK(!props[cols[i].name]["description"].get<std::string>().empty());
    }
  };
  check_table("result_row", "results", result_columns());
  check_table("report_row", "report", report_columns());
}

TEST_CASE("manifest hash follows the canonical config") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  RunConfig a = small_config();
  const json m1 = json::parse(manifest_json(a, {}, {}));
  CHECK(m1["config_sha256"] == sha256_hex(config_to_json(a)));
  CHECK(m1["version"] == kVersion);
  CHECK(m1["seed"] == 5);

  RunConfig same = parse_config_json(config_to_json(a));
  CHECK(json::parse(manifest_json(same, {}, {}))["config_sha256"] == m1["config_sha256"]);
  a.setup.optics.divergence_rad *= 2;
  CHECK(json::parse(manifest_json(a, {}, {}))["config_sha256"] != m1["config_sha256"]);
}

TEST_CASE("record dumps round-trip exactly") {
  std::vector<SampleRecord> recs = {
      {0.1, BellDiagonalState({0.9, 0.05, 0.03, 0.02})},
      {0.30000000000000004, BellDiagonalState({1.0 / 3, 1.0 / 3, 1.0 / 6, 1.0 / 6})},
      {2.5e-3 + 1.0, BellDiagonalState({1, 0, 0, 0})},
  };
  const auto back = parse_records_csv(records_to_csv(recs));
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].time == recs[i].time);
    CHECK(back[i].state.weights() == recs[i].state.weights());
  }
  CHECK_THROWS_AS(parse_records_csv(""), IoError);
  CHECK_THROWS_AS(parse_records_csv("t,a,b,c,d\n"), IoError);
  CHECK_THROWS_AS(parse_records_csv("time,p1,p2,p3,p4\n1,0.5,0.5\n"), IoError);
  CHECK_THROWS_AS(parse_records_csv("time,p1,p2,p3,p4\n1,-1,0,0,0\n"), IoError);
  CHECK(parse_records_csv("time,p1,p2,p3,p4\r\n1,1,0,0,0\r\n").size() == 1);
}

TEST_CASE("report recomputes the key rate of a dump") {
  RunConfig c = small_config();
  c.scenarios = {"scenario1"};
  c.output.dump_records = true;
  const auto rows = run_points(c, false);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].records.size() == 300);
  const ReportEntry e = report_from_dump("x.csv", records_to_csv(rows[0].records));
  CHECK(e.rate.samples == rows[0].rate.samples);
  CHECK(e.rate.raw_rate == doctest::Approx(rows[0].rate.raw_rate).epsilon(1e-12));
  CHECK(e.rate.e_x == doctest::Approx(rows[0].rate.e_x).epsilon(1e-12));
  CHECK(e.rate.key_rate == doctest::Approx(rows[0].rate.key_rate).epsilon(1e-12));
  const auto table = parse_csv(report_to_csv(std::span<const ReportEntry>(&e, 1)));
  REQUIRE(table.size() == 2);
  CHECK(table[0].size() == report_columns().size());
  CHECK(table[1][0] == "x.csv");
}

TEST_CASE("outputs land on disk") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "satqr_test_outputs";
  fs::remove_all(dir);
  RunConfig c = small_config();
  c.scenarios = {"scenario1"};
  c.output.dump_records = true;
  const auto rows = run_points(c, true);
  const auto written = write_outputs(c, rows, dir.string(), "both");
  CHECK(fs::exists(dir / "results.csv"));
  CHECK(fs::exists(dir / "results.json"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "records" / "row_0.csv"));
  CHECK(read_file((dir / "results.csv").string()) == rows_to_csv(rows));
  const json m = json::parse(read_file((dir / "manifest.json").string()));
  CHECK(m["rows"] == rows.size());
  CHECK_THROWS_AS(write_outputs(c, rows, dir.string(), "xml"), InvalidArgument);
  CHECK_THROWS_AS(read_file((dir / "nope.csv").string()), IoError);
  fs::remove_all(dir);
}
