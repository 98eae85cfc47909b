// Copyright 2026 The rshadow Authors
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
#include "rshadow/records.hpp"

#include <sstream>

#include <gtest/gtest.h>

namespace rshadow {
namespace {

std::vector<ShadowShot> some_shots() {
  StateVector s(3);
  s.apply_single(0, gates::hadamard());
  DenseSampler sampler(s);
  SimulatedReadout device(ReadoutNoiseModel::symmetric(3, 0.1));
  return run_shadow_acquisition(sampler, 25, device, RandomStream(1), 2, 40);
}

TEST(Records, ShadowRoundTrip) {
  const auto shots = some_shots();
  std::stringstream io;
  write_header(io, {kShadowSchema, kRecordSchemaVersion, 3, 99});
  append_records(io, std::span<const ShadowShot>(shots));
  const auto back = read_shadow_records(io);
  EXPECT_EQ(back.header.seed, 99u);
  EXPECT_EQ(back.header.width, 3);
  ASSERT_EQ(back.shots.size(), shots.size());
  for (std::size_t k = 0; k < shots.size(); ++k) {
    EXPECT_EQ(back.shots[k].basis, shots[k].basis);
    EXPECT_EQ(back.shots[k].flip_mask, shots[k].flip_mask);
    EXPECT_EQ(back.shots[k].outcome, shots[k].outcome);
    EXPECT_EQ(back.shots[k].batch, 2);
    EXPECT_EQ(back.shots[k].shot_index, shots[k].shot_index);
  }
}

TEST(Records, CalibrationRoundTripAndLineFormat) {
  SimulatedReadout device(ReadoutNoiseModel::symmetric(2, 0.1));
  const auto shots = run_calibration(2, 4, device, RandomStream(2), 1, 7);
  std::stringstream io;
  write_header(io, {kCalibrationSchema, kRecordSchemaVersion, 2, 5});
  append_records(io, std::span<const CalibrationShot>(shots));
  const std::string text = io.str();
  EXPECT_NE(text.find(R"("schema":"rshadow.calibration")"), std::string::npos);
  EXPECT_NE(text.find(R"({"shot":7,"batch":1,"flip":")"), std::string::npos);
  const auto back = read_calibration_records(io);
  ASSERT_EQ(back.shots.size(), 4u);
  EXPECT_EQ(back.shots[3].error(), shots[3].error());
}

TEST(Records, RejectsWrongSchemaAndBadLines) {
  std::stringstream wrong;
  write_header(wrong, {kCalibrationSchema, kRecordSchemaVersion, 2, 5});
  EXPECT_THROW(read_shadow_records(wrong), std::invalid_argument);

  std::stringstream future(R"({"schema":"rshadow.shadow","version":99,"width":2,"seed":1})" "\n");
  EXPECT_THROW(read_shadow_records(future), std::invalid_argument);

  std::stringstream bad;
  write_header(bad, {kShadowSchema, kRecordSchemaVersion, 2, 5});
  bad << R"({"shot":0,"batch":0,"basis":"ZX","flip":"00","outcome":"01"})" "\n";
  bad << R"({"shot":1,"batch":0,"basis":"ZXY","flip":"000","outcome":"010"})" "\n";
  try {
    read_shadow_records(bad);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::stringstream empty;
  EXPECT_THROW(read_calibration_records(empty), std::invalid_argument);
  EXPECT_THROW(read_calibration_records(std::filesystem::path("/nonexistent/file.jsonl")), std::invalid_argument);
}

}  // namespace
}  // namespace rshadow
