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

// Result emission: the flat CSV/JSON result table, run manifests, sample
// record dumps and the report table recomputed from dumps.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satqr/sweep.hpp"

namespace satqr {

struct Column {
  const char* name;
  const char* unit;
  const char* description;
};

/// Result table columns, in CSV order.
std::span<const Column> result_columns();
/// Columns of the table written by the report verb.
std::span<const Column> report_columns();

/// Scientific notation with 10 significant digits, '.' decimal.
std::string format_double(double v);

std::string rows_to_csv(std::span<const ResultRow> rows);
/// JSON array of objects keyed by column name; numbers carry exactly the
/// values printed in the CSV, empty cells are null.
std::string rows_to_json(std::span<const ResultRow> rows);

std::string sha256_hex(const std::string& data);
std::string manifest_json(const RunConfig& cfg, std::span<const ResultRow> rows,
                          const std::vector<std::string>& outputs);

/// CSV "time,p1,p2,p3,p4" with round-trip precision.
std::string records_to_csv(std::span<const SampleRecord> records);
/// Throws IoError on malformed input.
std::vector<SampleRecord> parse_records_csv(const std::string& text);

struct ReportEntry {
  std::string source;
  RateResult rate;
};
/// Key rate of one dump; total time is the last record's time.
ReportEntry report_from_dump(const std::string& source, const std::string& text);
std::string report_to_csv(std::span<const ReportEntry> entries);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

/// Writes results.csv and/or results.json, manifest.json and, for rows with
/// records, records/row_<index>.csv under `dir`. Returns the written paths.
std::vector<std::string> write_outputs(const RunConfig& cfg, std::span<const ResultRow> rows,
                                       const std::string& dir, const std::string& format);

}  // namespace satqr
