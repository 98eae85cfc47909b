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

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rshadow {
namespace {

using nlohmann::json;

RecordHeader parse_header(const std::string& line, const char* expected) {
  RecordHeader h;
  try {
    const json j = json::parse(line);
    h.schema = j.at("schema").get<std::string>();
    h.version = j.at("version").get<int>();
    h.width = j.at("width").get<int>();
    h.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("record header: ") + e.what());
  }
  if (h.schema != expected) {
    throw std::invalid_argument("record header: expected schema '" + std::string(expected) + "', found '" +
                                h.schema + "'");
  }
  if (h.version != kRecordSchemaVersion) {
    throw std::invalid_argument("record header: unsupported schema version " + std::to_string(h.version));
  }
  if (h.width < 1 || h.width > kMaxQubits) throw std::invalid_argument("record header: invalid width");
  return h;
}

template <typename Record, typename Parse>
std::vector<Record> read_body(std::istream& in, const RecordHeader& h, Parse parse) {
  std::vector<Record> out;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      Record r = parse(j);
      if (r.outcome.width() != h.width || r.flip_mask.width() != h.width) {
        throw std::invalid_argument("width does not match header");
      }
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::invalid_argument("record line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string first_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("record file is empty");
  return line;
}

}  // namespace

void write_header(std::ostream& out, const RecordHeader& header) {
  out << "{\"schema\":\"" << header.schema << "\",\"version\":" << header.version
      << ",\"width\":" << header.width << ",\"seed\":" << header.seed << "}\n";
}

void append_records(std::ostream& out, std::span<const CalibrationShot> shots) {
  for (const auto& s : shots) {
    out << "{\"shot\":" << s.shot_index << ",\"batch\":" << s.batch << ",\"flip\":\""
        << s.flip_mask.to_string() << "\",\"outcome\":\"" << s.outcome.to_string() << "\"}\n";
  }
}

void append_records(std::ostream& out, std::span<const ShadowShot> shots) {
  for (const auto& s : shots) {
    out << "{\"shot\":" << s.shot_index << ",\"batch\":" << s.batch << ",\"basis\":\""
        << s.basis.to_string() << "\",\"flip\":\"" << s.flip_mask.to_string() << "\",\"outcome\":\""
        << s.outcome.to_string() << "\"}\n";
  }
}

CalibrationRecords read_calibration_records(std::istream& in) {
  CalibrationRecords r;
  r.header = parse_header(first_line(in), kCalibrationSchema);
  r.shots = read_body<CalibrationShot>(in, r.header, [](const json& j) {
    return CalibrationShot{Bitstring::parse(j.at("flip").get<std::string>()),
                           Bitstring::parse(j.at("outcome").get<std::string>()), j.at("batch").get<int>(),
                           j.at("shot").get<std::int64_t>()};
  });
  return r;
}

ShadowRecords read_shadow_records(std::istream& in) {
  ShadowRecords r;
  r.header = parse_header(first_line(in), kShadowSchema);
  r.shots = read_body<ShadowShot>(in, r.header, [&](const json& j) {
    ShadowShot s{BasisString::parse(j.at("basis").get<std::string>()),
                 Bitstring::parse(j.at("flip").get<std::string>()),
                 Bitstring::parse(j.at("outcome").get<std::string>()), j.at("batch").get<int>(),
                 j.at("shot").get<std::int64_t>()};
    if (s.basis.width() != r.header.width) throw std::invalid_argument("basis width does not match header");
    return s;
  });
  return r;
}

CalibrationRecords read_calibration_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return read_calibration_records(in);
}

ShadowRecords read_shadow_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return read_shadow_records(in);
}

}  // namespace rshadow
