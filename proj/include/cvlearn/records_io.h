// Copyright 2026 The cvlearn Authors
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

#ifndef CVLEARN_RECORDS_IO_H_
#define CVLEARN_RECORDS_IO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvlearn/measurement.h"
#include "json.hpp"

namespace cvlearn {

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Strict decimal parse; throws InvalidInput on anything but a full number.
double parse_double(const std::string& text);

/// Sidecar metadata written next to every record CSV.
struct RecordMetadata {
  ProcessSpec process = ProcessSpec::gaussian(1, 0.3);
  std::size_t records = 0;  // N, data records only
  double squeezing_db = 0.0;
  double transmissivity = 1.0;
  double r_eff = 0.0;
  DriftModel drift;
  std::uint64_t seed = 0;
  std::size_t pilot_period = 0;  // 0 = no pilots
  double pilot_amplitude = 10.0;
};

nlohmann::json to_json(const RecordMetadata& meta);
RecordMetadata record_metadata_from_json(const nlohmann::json& j);

nlohmann::json affine_to_json(const Affine2& a);  // row-major [[a,b],[c,d]]
Affine2 affine_from_json(const nlohmann::json& j);

/// CSV with header sample_index,mode_index,zeta_re,zeta_im,pilot_tag; one row
/// per (record, mode).
void write_records_csv(std::ostream& out, std::span<const BellRecord> records);
void write_records_csv(const std::string& path,
                       std::span<const BellRecord> records);
std::vector<BellRecord> read_records_csv(std::istream& in);
std::vector<BellRecord> read_records_csv(const std::string& path);

}  // namespace cvlearn

#endif  // CVLEARN_RECORDS_IO_H_
