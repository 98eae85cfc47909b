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
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rshadow/calibration.hpp"
#include "rshadow/shadows.hpp"

namespace rshadow {

inline constexpr int kRecordSchemaVersion = 1;
inline constexpr const char* kCalibrationSchema = "rshadow.calibration";
inline constexpr const char* kShadowSchema = "rshadow.shadow";

/// First line of every record file.
struct RecordHeader {
  std::string schema;
  int version = kRecordSchemaVersion;
  int width = 0;
  std::uint64_t seed = 0;
};

/// Line-delimited JSON: the header, then one object per shot.
///   calibration: {"shot":..,"batch":..,"flip":"0101","outcome":"0111"}
///   shadow:      {"shot":..,"batch":..,"basis":"ZXYZ","flip":..,"outcome":..}
void write_header(std::ostream& out, const RecordHeader& header);
void append_records(std::ostream& out, std::span<const CalibrationShot> shots);
void append_records(std::ostream& out, std::span<const ShadowShot> shots);

struct CalibrationRecords {
  RecordHeader header;
  std::vector<CalibrationShot> shots;
};

struct ShadowRecords {
  RecordHeader header;
  std::vector<ShadowShot> shots;
};

/// Throw std::invalid_argument naming the offending line.
CalibrationRecords read_calibration_records(std::istream& in);
ShadowRecords read_shadow_records(std::istream& in);
CalibrationRecords read_calibration_records(const std::filesystem::path& path);
ShadowRecords read_shadow_records(const std::filesystem::path& path);

}  // namespace rshadow
