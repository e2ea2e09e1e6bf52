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

#include <sstream>

#include <gtest/gtest.h>

#include "cvlearn/error.h"

namespace cvlearn {
namespace {

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  for (double v : {1.0 / 3.0, -2.718281828459045, 6.02214076e23}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(RecordsCsv, RoundTripIsExact) {
  DriftModel drift;
  auto recs = simulate_bell_batch(ProcessSpec::gaussian(3, 0.3), 0.2, drift, 50, 1);
  recs = inject_pilots(recs, 5, 10.0, 2, 0.2, drift);
  std::stringstream ss;
  write_records_csv(ss, recs);
  const auto back = read_records_csv(ss);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].zeta, recs[i].zeta);
    EXPECT_EQ(back[i].sample_index, recs[i].sample_index);
    EXPECT_EQ(back[i].pilot_tag, recs[i].pilot_tag);
  }
}

TEST(RecordsCsv, RowsPerMode) {
  const auto recs = simulate_bell_batch(ProcessSpec::gaussian(4, 0.3), 0.0, DriftModel{}, 7, 1);
  std::stringstream ss;
  write_records_csv(ss, recs);
  std::string line;
  int rows = 0;
  std::getline(ss, line);
  EXPECT_EQ(line, "sample_index,mode_index,zeta_re,zeta_im,pilot_tag");
  while (std::getline(ss, line)) ++rows;
  EXPECT_EQ(rows, 28);
}

TEST(RecordsCsv, RejectsMalformedInput) {
  std::stringstream bad_header("a,b,c\n");
  EXPECT_THROW(read_records_csv(bad_header), InvalidInput);
  std::stringstream bad_row(
      "sample_index,mode_index,zeta_re,zeta_im,pilot_tag\n0,0,1.0,xyz,none\n");
  EXPECT_THROW(read_records_csv(bad_row), InvalidInput);
}

TEST(Metadata, JsonRoundTrip) {
  RecordMetadata m;
  m.process = ProcessSpec::three_peak(ComplexVec::filled(2, {0.3, 0.3}), 0.3, 0.25);
  m.records = 1234;
  m.squeezing_db = 4.78;
  m.transmissivity = 0.9;
  m.r_eff = 0.42;
  m.drift.affine = Affine2::from_rows(1.0, 0.0, 0.05, 1.0);
  m.drift.noise_scale = 1.5;
  m.seed = 99;
  m.pilot_period = 500;
  m.pilot_amplitude = 10.0;
  const RecordMetadata back = record_metadata_from_json(to_json(m));
  EXPECT_EQ(back.process, m.process);
  EXPECT_EQ(back.records, m.records);
  EXPECT_EQ(back.r_eff, m.r_eff);
  EXPECT_EQ(back.drift.affine, m.drift.affine);
  EXPECT_EQ(back.drift.noise_scale, 1.5);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.pilot_period, 500u);
}

}  // namespace
}  // namespace cvlearn
