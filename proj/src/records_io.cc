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

#include "cvlearn/records_io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cvlearn/error.h"

namespace cvlearn {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T v{};
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw InvalidInput(std::string("cannot parse ") + what + " from '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text) {
  return parse_number<double>(text, "a number");
}

nlohmann::json affine_to_json(const Affine2& a) {
  return nlohmann::json::array({{a.m[0], a.m[1]}, {a.m[2], a.m[3]}});
}

Affine2 affine_from_json(const nlohmann::json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_array() &&
              j[0].size() == 2 && j[1].is_array() && j[1].size() == 2,
          "affine matrix must be [[a, b], [c, d]]");
  return Affine2::from_rows(j[0][0].get<double>(), j[0][1].get<double>(),
                            j[1][0].get<double>(), j[1][1].get<double>());
}

nlohmann::json to_json(const RecordMetadata& meta) {
  nlohmann::ordered_json j;
  j["process"] = to_json(meta.process);
  j["n"] = meta.process.modes();
  j["N"] = meta.records;
  j["squeezing_db"] = meta.squeezing_db;
  j["transmissivity"] = meta.transmissivity;
  j["r_eff"] = meta.r_eff;
  j["drift"] = affine_to_json(meta.drift.affine);
  j["noise_scale"] = meta.drift.noise_scale;
  j["seed"] = meta.seed;
  j["simulation_chunk"] = kSimulationChunk;
  j["pilot_period"] = meta.pilot_period;
  j["pilot_amplitude"] = meta.pilot_amplitude;
  return nlohmann::json(j);
}

RecordMetadata record_metadata_from_json(const nlohmann::json& j) {
  require(j.is_object(), "metadata must be a JSON object");
  RecordMetadata m;
  m.process = process_from_json(j.at("process"));
  m.records = j.at("N").get<std::size_t>();
  m.squeezing_db = j.at("squeezing_db").get<double>();
  m.transmissivity = j.at("transmissivity").get<double>();
  m.r_eff = j.at("r_eff").get<double>();
  m.drift.affine = affine_from_json(j.at("drift"));
  m.drift.noise_scale = j.value("noise_scale", 1.0);
  m.seed = j.at("seed").get<std::uint64_t>();
  m.pilot_period = j.value("pilot_period", std::size_t{0});
  m.pilot_amplitude = j.value("pilot_amplitude", 10.0);
  require(j.at("n").get<std::size_t>() == m.process.modes(),
          "metadata 'n' disagrees with the process spec");
  return m;
}

void write_records_csv(std::ostream& out, std::span<const BellRecord> records) {
  out << "sample_index,mode_index,zeta_re,zeta_im,pilot_tag\n";
  for (const auto& r : records) {
    const std::string tag = to_string(r.pilot_tag);
    for (std::size_t j = 0; j < r.zeta.size(); ++j) {
      out << r.sample_index << ',' << j << ',' << format_double(r.zeta[j].real())
          << ',' << format_double(r.zeta[j].imag()) << ',' << tag << '\n';
    }
  }
}

void write_records_csv(const std::string& path,
                       std::span<const BellRecord> records) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot open " + path + " for writing");
  write_records_csv(out, records);
}

std::vector<BellRecord> read_records_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) &&
              line == "sample_index,mode_index,zeta_re,zeta_im,pilot_tag",
          "record CSV header mismatch");
  std::vector<BellRecord> out;
  std::vector<Complex> current;
  std::int64_t current_index = 0;
  PilotTag current_tag = PilotTag::kNone;
  bool open = false;
  auto flush = [&] {
    if (open) {
      out.push_back(BellRecord{ComplexVec(std::move(current)), current_index,
                               current_tag});
      current.clear();
    }
  };
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f[5];
    for (int k = 0; k < 5; ++k) {
      require(static_cast<bool>(std::getline(ss, f[k], ',')),
              "malformed record row at line " + std::to_string(line_no));
    }
    const auto idx = parse_number<std::int64_t>(f[0], "sample_index");
    const auto mode = parse_number<std::size_t>(f[1], "mode_index");
    if (!open || idx != current_index) {
      flush();
      open = true;
      current_index = idx;
      current_tag = pilot_tag_from_string(f[4]);
    }
    require(mode == current.size(),
            "mode indices must be consecutive at line " + std::to_string(line_no));
    current.emplace_back(parse_double(f[2]), parse_double(f[3]));
  }
  flush();
  return out;
}

std::vector<BellRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + path);
  return read_records_csv(in);
}

}  // namespace cvlearn
